//! Reproducible random instance generation and a Monte-Carlo estimate of the
//! probability that a random probe occurs in a random sequence.
//!
//! Generation is fully specified so runs reproduce across platforms and
//! thread counts: each sequence draws from its own ChaCha8 stream keyed by
//! the 32-byte seed `[spec.seed (le) | sequence index (le) | zeros]`, and
//! each base is the low two bits of one `next_u32` call (0=a, 1=c, 2=g, 3=t,
//! uniform over the four nucleotides). Splitting the seed by sequence index
//! means sequence `i` has the same content in any instance generated with
//! the same seed, regardless of the instance's sequence count.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::sequence::{InstanceSet, ModelError, Nucleotide};

/// Shape and seed of a uniformly random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    /// Number of sequences (>= 1).
    pub count: usize,
    /// Exact length of every sequence (>= 1).
    pub length: usize,
    pub seed: u64,
}

fn stream(seed: u64, index: u64, tag: u8) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16] = tag;
    ChaCha8Rng::from_seed(key)
}

fn draw_bases(rng: &mut ChaCha8Rng, length: usize) -> Vec<Nucleotide> {
    (0..length)
        .map(|_| Nucleotide::from_code((rng.next_u32() & 3) as u8))
        .collect()
}

/// Generates `spec.count` sequences of i.i.d. uniform plain bases, named
/// `s0..s{count-1}`. Deterministic for a fixed spec.
pub fn random_instance(spec: &RandomSpec) -> Result<InstanceSet, ModelError> {
    if spec.count == 0 {
        return Err(ModelError::Empty);
    }
    if spec.length == 0 {
        return Err(ModelError::EmptySequence("s0".into()));
    }
    let records = (0..spec.count)
        .map(|i| {
            let mut rng = stream(spec.seed, i as u64, 0);
            let bases = draw_bases(&mut rng, spec.length)
                .into_iter()
                .map(Into::into)
                .collect();
            (format!("s{i}"), bases)
        })
        .collect();
    InstanceSet::from_named_bases(records)
}

/// Monte-Carlo estimate of the probability that a uniformly random probe of
/// length `probe_len` occurs as a substring of an independent uniformly
/// random sequence of length `length`. Each trial draws a fresh sequence and
/// a fresh probe from a dedicated ChaCha8 stream keyed by `(seed, trial)`.
pub fn containment_probability(
    length: usize,
    probe_len: usize,
    trials: usize,
    seed: u64,
) -> f64 {
    assert!(probe_len >= 1 && probe_len <= length, "need 1 <= probe_len <= length");
    assert!(trials >= 1, "need at least one trial");
    let mut hits = 0usize;
    for trial in 0..trials {
        let mut rng = stream(seed, trial as u64, 1);
        let seq: Vec<u8> = (0..length)
            .map(|_| (rng.next_u32() & 3) as u8)
            .collect();
        let probe: Vec<u8> = (0..probe_len)
            .map(|_| (rng.next_u32() & 3) as u8)
            .collect();
        if seq.windows(probe_len).any(|w| w == probe.as_slice()) {
            hits += 1;
        }
    }
    hits as f64 / trials as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fasta::{fasta_string, parse_fasta_str};

    #[test]
    fn deterministic_for_fixed_seed() {
        let spec = RandomSpec {
            count: 2,
            length: 5,
            seed: 42,
        };
        let a = random_instance(&spec).unwrap();
        let b = random_instance(&spec).unwrap();
        assert_eq!(a, b);
        let c = random_instance(&RandomSpec { seed: 43, ..spec }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn per_sequence_streams_are_prefix_stable() {
        let small = random_instance(&RandomSpec {
            count: 3,
            length: 40,
            seed: 7,
        })
        .unwrap();
        let large = random_instance(&RandomSpec {
            count: 6,
            length: 40,
            seed: 7,
        })
        .unwrap();
        for i in 0..3 {
            assert_eq!(small.get(i).bases(), large.get(i).bases());
        }
    }

    #[test]
    fn base_frequencies_are_uniform() {
        // 10 sequences of 100k bases: binomial concentration puts each
        // frequency within 0.25 +/- 0.005 with enormous margin.
        let inst = random_instance(&RandomSpec {
            count: 10,
            length: 100_000,
            seed: 1,
        })
        .unwrap();
        let mut counts = [0usize; 4];
        for seq in inst.sequences() {
            for base in seq.bases() {
                counts[base.as_nucleotide().unwrap().code() as usize] += 1;
            }
        }
        let total: usize = counts.iter().sum();
        for c in counts {
            let freq = c as f64 / total as f64;
            assert!((freq - 0.25).abs() < 0.005, "frequency {freq} out of range");
        }
    }

    #[test]
    fn rejects_degenerate_specs() {
        assert!(random_instance(&RandomSpec {
            count: 0,
            length: 5,
            seed: 0
        })
        .is_err());
        assert!(random_instance(&RandomSpec {
            count: 1,
            length: 0,
            seed: 0
        })
        .is_err());
    }

    #[test]
    fn emitted_fasta_round_trips() {
        let inst = random_instance(&RandomSpec {
            count: 4,
            length: 37,
            seed: 99,
        })
        .unwrap();
        let reparsed = parse_fasta_str(&fasta_string(&inst)).unwrap();
        assert_eq!(inst, reparsed);
    }

    #[test]
    fn containment_extremes() {
        // Single-letter probes are found almost surely once the sequence is
        // long: 1 - (3/4)^60 ~ 1.
        let p1 = containment_probability(60, 1, 400, 5);
        assert!(p1 > 0.99, "p1 = {p1}");
        // A probe as long as the sequence matches with probability 4^-len.
        let pfull = containment_probability(12, 12, 2000, 5);
        assert!(pfull < 0.01, "pfull = {pfull}");
    }

    #[test]
    fn containment_monotone_in_probe_length() {
        let l = 2000;
        let estimates: Vec<f64> = [4usize, 6, 8]
            .iter()
            .map(|&k| containment_probability(l, k, 3000, 11))
            .collect();
        // Generous slack: Monte-Carlo noise at 3000 trials is ~0.01.
        assert!(estimates[0] >= estimates[1] - 0.03);
        assert!(estimates[1] >= estimates[2] - 0.03);
    }
}
