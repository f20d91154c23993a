//! Brute-force reference implementations for tests and acceptance runs.
//!
//! Everything here trades time for obviousness: exhaustive substring
//! enumeration, quadratic gain counting, and exact minimum solutions by
//! subset search. Size guards keep the exponential parts honest.

use std::collections::HashMap;

use thiserror::Error;

use crate::candidates::Candidate;
use crate::select::SelectionState;
use crate::sequence::{
    occurrence_class, InstanceSet, Nucleotide, OccurrenceClass,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for exhaustive enumeration (total length {total} > {max})")]
    InstanceTooLarge { total: usize, max: usize },
    #[error("substring length cap {l_max} exceeds the supported {max}")]
    LengthCapTooLarge { l_max: usize, max: usize },
    #[error("too many signature classes for subset search ({classes} > {max})")]
    TooManyClasses { classes: usize, max: usize },
}

pub const MAX_TOTAL_LEN: usize = 400;
pub const MAX_SUBSTRING_LEN: usize = 16;
pub const MAX_CLASSES: usize = 22;

/// One equivalence class of candidate texts: all texts sharing the same
/// (perfect, uncertain) membership pattern are interchangeable for coverage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureClass {
    pub perfect: Vec<u32>,
    pub uncertain: Vec<u32>,
    /// Shortest (then lexicographically least) text realizing the signature.
    pub representative: String,
}

impl SignatureClass {
    pub fn separates(&self, a: u32, b: u32) -> bool {
        let in_p = |x: u32| self.perfect.binary_search(&x).is_ok();
        let in_u = |x: u32| self.uncertain.binary_search(&x).is_ok();
        (in_p(a) && !in_p(b) && !in_u(b)) || (in_p(b) && !in_p(a) && !in_u(a))
    }
}

/// Classifies every degenerate-free substring of every sequence (up to
/// `l_max`) against the whole instance and deduplicates by signature.
/// Signatures that can separate nothing — occurring in every sequence,
/// or mismatching nowhere useful (`P` empty or `M` empty) — are dropped.
pub fn enumerate_signatures(
    instance: &InstanceSet,
    l_max: usize,
) -> Result<Vec<SignatureClass>, OracleError> {
    let total = instance.total_len();
    if total > MAX_TOTAL_LEN {
        return Err(OracleError::InstanceTooLarge {
            total,
            max: MAX_TOTAL_LEN,
        });
    }
    if l_max > MAX_SUBSTRING_LEN {
        return Err(OracleError::LengthCapTooLarge {
            l_max,
            max: MAX_SUBSTRING_LEN,
        });
    }
    let n = instance.n();

    let mut by_signature: HashMap<(Vec<u32>, Vec<u32>), String> = HashMap::new();
    let mut seen_texts: HashMap<String, ()> = HashMap::new();
    for seq in instance.sequences() {
        let bases = seq.bases();
        for start in 0..bases.len() {
            for len in 1..=l_max.min(bases.len() - start) {
                let window = &bases[start..start + len];
                if window.iter().any(|b| !b.is_exact()) {
                    // Not a plain substring of the sequence; longer windows
                    // from this start keep the degenerate base, so stop.
                    break;
                }
                let text: String = window
                    .iter()
                    .map(|b| b.as_nucleotide().unwrap().to_ascii() as char)
                    .collect();
                if seen_texts.insert(text.clone(), ()).is_some() {
                    continue;
                }
                let probe: Vec<Nucleotide> =
                    window.iter().map(|b| b.as_nucleotide().unwrap()).collect();
                let mut perfect = Vec::new();
                let mut uncertain = Vec::new();
                for other in instance.sequences() {
                    match occurrence_class(&probe, other) {
                        OccurrenceClass::HasPerfect => perfect.push(other.id()),
                        OccurrenceClass::UncertainOnly => uncertain.push(other.id()),
                        OccurrenceClass::AllMismatch => {}
                    }
                }
                if perfect.is_empty() || perfect.len() + uncertain.len() == n {
                    continue;
                }
                let entry = by_signature
                    .entry((perfect, uncertain))
                    .or_insert_with(|| text.clone());
                if (text.len(), text.as_str()) < (entry.len(), entry.as_str()) {
                    *entry = text;
                }
            }
        }
    }

    let mut classes: Vec<SignatureClass> = by_signature
        .into_iter()
        .map(|((perfect, uncertain), representative)| SignatureClass {
            perfect,
            uncertain,
            representative,
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.representative.len(), &a.representative)
            .cmp(&(b.representative.len(), &b.representative))
    });
    Ok(classes)
}

/// Gain of a candidate by direct double loop over all pairs: counts pairs
/// with one perfect side, one all-mismatch side, and coverage still below
/// the redundancy target. Must agree with the selection module's gain on
/// every input.
pub fn brute_force_gain(c: &Candidate, state: &SelectionState, n: usize) -> u64 {
    let mut gain = 0u64;
    for j in 1..n as u32 {
        for i in 0..j {
            if state.cover_count(i, j) >= state.redundancy() {
                continue;
            }
            let sep = (c.matches_perfectly(i)
                && !c.matches_perfectly(j)
                && !c.matches_uncertainly(j))
                || (c.matches_perfectly(j)
                    && !c.matches_perfectly(i)
                    && !c.matches_uncertainly(i));
            if sep {
                gain += 1;
            }
        }
    }
    gain
}

/// Size of the smallest set of signature classes that covers every pair to
/// `min(redundancy, achievable)` — pairs no class separates are excluded,
/// exactly as greedy selection excludes them. Exhaustive subset search in
/// increasing cardinality; guarded to tiny inputs.
pub fn exact_minimum(instance: &InstanceSet, redundancy: u32) -> Result<usize, OracleError> {
    let classes = enumerate_signatures(instance, MAX_SUBSTRING_LEN.min(instance.max_len()))?;
    if classes.len() > MAX_CLASSES {
        return Err(OracleError::TooManyClasses {
            classes: classes.len(),
            max: MAX_CLASSES,
        });
    }
    let n = instance.n() as u32;
    let mut pairs = Vec::new();
    for j in 1..n {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    // Per-pair separation bitmask over classes, and the achievable target.
    let masks: Vec<u32> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut mask = 0u32;
            for (k, class) in classes.iter().enumerate() {
                if class.separates(i, j) {
                    mask |= 1 << k;
                }
            }
            mask
        })
        .collect();
    let targets: Vec<u32> = masks
        .iter()
        .map(|m| redundancy.min(m.count_ones()))
        .collect();

    let k = classes.len();
    for size in 0..=k {
        let mut found = false;
        let mut combo: Vec<usize> = (0..size).collect();
        'combos: loop {
            let subset: u32 = combo.iter().fold(0, |acc, &i| acc | (1 << i));
            if masks
                .iter()
                .zip(&targets)
                .all(|(mask, target)| (mask & subset).count_ones() >= *target)
            {
                found = true;
                break 'combos;
            }
            // Next combination of `size` indices out of `k`.
            let mut i = size;
            loop {
                if i == 0 {
                    break 'combos;
                }
                i -= 1;
                if combo[i] != i + k - size {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                    continue 'combos;
                }
            }
        }
        if found {
            return Ok(size);
        }
    }
    unreachable!("the full class set always meets the achievable targets")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::{generate_candidates, GenerationConfig};
    use crate::fasta::parse_fasta_str;
    use crate::select::{select_greedy, SelectionConfig};

    fn inst(texts: &[&str]) -> InstanceSet {
        let fasta: String = texts
            .iter()
            .enumerate()
            .map(|(i, t)| format!(">s{i}\n{t}\n"))
            .collect();
        parse_fasta_str(&fasta).unwrap()
    }

    #[test]
    fn signatures_for_small_pair() {
        let instance = inst(&["acgt", "ttgt"]);
        let classes = enumerate_signatures(&instance, 4).unwrap();
        // Exactly two useful signatures exist: texts confined to s0 and
        // texts confined to s1. "gt"-like texts occur in both and are
        // suppressed.
        assert_eq!(classes.len(), 2);
        let sigs: Vec<(&[u32], &[u32])> = classes
            .iter()
            .map(|c| (c.perfect.as_slice(), c.uncertain.as_slice()))
            .collect();
        assert!(sigs.contains(&(&[0][..], &[][..])));
        assert!(sigs.contains(&(&[1][..], &[][..])));
        // Representative of the s0 class is the shortest lexicographically
        // least realizer: "a".
        let s0 = classes.iter().find(|c| c.perfect == vec![0]).unwrap();
        assert_eq!(s0.representative, "a");
        // The s1 class is first realized at length 2; "tg" precedes "tt".
        let s1 = classes.iter().find(|c| c.perfect == vec![1]).unwrap();
        assert_eq!(s1.representative, "tg");
    }

    #[test]
    fn degenerate_and_trivial_instances() {
        let single = inst(&["acgtacgt"]);
        assert!(enumerate_signatures(&single, 8).unwrap().is_empty());
        let twins = inst(&["acgtacgt", "acgtacgt"]);
        assert!(enumerate_signatures(&twins, 8).unwrap().is_empty());
    }

    #[test]
    fn representatives_realize_their_signature() {
        let instance = inst(&["acgtcag", "ttgtcaa", "gggtcat"]);
        for class in enumerate_signatures(&instance, 7).unwrap() {
            let probe = crate::sequence::parse_probe(&class.representative).unwrap();
            let mut perfect = Vec::new();
            let mut uncertain = Vec::new();
            for seq in instance.sequences() {
                match occurrence_class(&probe, seq) {
                    OccurrenceClass::HasPerfect => perfect.push(seq.id()),
                    OccurrenceClass::UncertainOnly => uncertain.push(seq.id()),
                    OccurrenceClass::AllMismatch => {}
                }
            }
            assert_eq!(class.perfect, perfect);
            assert_eq!(class.uncertain, uncertain);
        }
    }

    #[test]
    fn size_guards_fire() {
        let instance = inst(&["acgt", "ttgt"]);
        assert!(matches!(
            enumerate_signatures(&instance, 17),
            Err(OracleError::LengthCapTooLarge { .. })
        ));
    }

    #[test]
    fn exact_minimum_on_tiny_instances() {
        // Two distinct sequences: one separating substring suffices.
        assert_eq!(exact_minimum(&inst(&["acgt", "ttgt"]), 1).unwrap(), 1);
        // Four pairwise separable sequences need at least ceil(log2 4) = 2.
        let four = inst(&["aacc", "ggtt", "acac", "gtgt"]);
        let opt = exact_minimum(&four, 1).unwrap();
        assert!(opt >= 2, "optimum {opt} beats the information bound");
    }

    #[test]
    fn greedy_never_beats_exact() {
        for seed in [1u64, 2, 3, 4, 5] {
            let instance = crate::random::random_instance(&crate::random::RandomSpec {
                count: 5,
                length: 12,
                seed,
            })
            .unwrap();
            let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
            let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();
            if !solution.uncovered.is_empty() {
                continue;
            }
            let opt = exact_minimum(&instance, 1).unwrap();
            assert!(opt <= solution.distinguishers.len());
            let bound = 1.0 + 2.0 * (instance.n() as f64).ln();
            assert!(
                solution.distinguishers.len() as f64 <= bound * opt as f64,
                "greedy {} vs optimum {opt} exceeds factor {bound:.2}",
                solution.distinguishers.len()
            );
        }
    }

    #[test]
    fn brute_gain_agrees_with_state_gain() {
        let instance = inst(&["acgtcaggtt", "ttgtaacgca", "ggccaattgg", "catgcatgca"]);
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let mut state = SelectionState::new(instance.n(), 1, true, pool.len());
        for step in 0..3 {
            for c in &pool.candidates {
                assert_eq!(
                    brute_force_gain(c, &state, instance.n()),
                    state.gain(c),
                    "candidate {} at step {step}",
                    c.text
                );
            }
            state.apply_candidate(&pool.candidates[step * 5 % pool.len()]);
        }
    }
}
