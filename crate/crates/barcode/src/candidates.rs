//! Incremental candidate-distinguisher generation.
//!
//! Candidates are enumerated in increasing length order. Every position of a
//! source sequence carries a flag; at each length the sweep visits active
//! positions, derives the occurrence list of the window starting there (by
//! extending the stored occurrences of the one-shorter window, or from a
//! shared index at the minimum length), and then either suppresses, saves, or
//! retires the window:
//!
//! * windows that reach into a degenerate base stop producing candidates;
//! * windows occurring (perfectly or uncertainly) in *every* sequence are
//!   skipped but stay active, since an extension may become selective;
//! * windows occurring only inside their own source sequence are capped at a
//!   single saved candidate per sequence and then stop;
//! * everything else is saved (subject to the per-candidate filters), and all
//!   positions holding a duplicate of the window are marked so the same text
//!   is evaluated at most once per length.
//!
//! Generation for disjoint source subsets is independent, so the public entry
//! point runs one sweep per source sequence (in parallel) and merges the
//! results deterministically; the merged pool is identical to the one a
//! single sweep over all sources produces.

use std::collections::HashSet;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::sequence::{
    occurrence_class, DegenerateBase, GenomicSequence, InstanceSet, Nucleotide, OccurrenceClass,
};

/// Evaluation state of one (source sequence, position) pair.
///
/// `Done` and `Retired` are absorbing. `Duplicate` means the window of the
/// current length starting here was already handled via another position and
/// resets to `Active` when the length increments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionFlag {
    Active,
    Duplicate,
    Done,
    Retired,
}

/// A saved candidate distinguisher: a plain substring of one source sequence
/// together with the ids of the sequences it perfectly matches (`perfect`)
/// and the ids it matches only uncertainly (`uncertain`). Ids absent from
/// both lists mismatch the candidate everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    /// Dense rank in generation order: ascending length, then source
    /// sequence id, then start position.
    pub id: u32,
    /// Lowercase `acgt` text.
    pub text: String,
    pub source_seq: u32,
    /// 1-based start position within the source sequence.
    pub source_pos: usize,
    /// Sorted ids of sequences with at least one perfect match.
    pub perfect: Vec<u32>,
    /// Sorted ids of sequences with uncertain matches only.
    pub uncertain: Vec<u32>,
}

impl Candidate {
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn matches_perfectly(&self, seq_id: u32) -> bool {
        self.perfect.binary_search(&seq_id).is_ok()
    }

    pub fn matches_uncertainly(&self, seq_id: u32) -> bool {
        self.uncertain.binary_search(&seq_id).is_ok()
    }

    pub fn probe(&self) -> Vec<Nucleotide> {
        crate::sequence::parse_probe(&self.text).expect("candidate text is plain acgt")
    }
}

#[derive(Debug, Clone, Default)]
pub struct PoolStats {
    pub candidates: usize,
    /// Total perfect plus uncertain sequence matches over all candidates.
    pub matches: u64,
    pub generation_time: Duration,
}

#[derive(Debug, Clone)]
pub struct CandidatePool {
    pub candidates: Vec<Candidate>,
    pub stats: PoolStats,
    pub n_sequences: usize,
    /// True when any candidate has a non-empty uncertain list.
    pub has_uncertainty: bool,
}

impl CandidatePool {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Whether some candidate separates the pair `(a, b)`.
    pub fn separates(&self, a: u32, b: u32) -> bool {
        self.candidates.iter().any(|c| {
            (c.matches_perfectly(a)
                && !c.matches_perfectly(b)
                && !c.matches_uncertainly(b))
                || (c.matches_perfectly(b)
                    && !c.matches_perfectly(a)
                    && !c.matches_uncertainly(a))
        })
    }
}

/// Bounds and filters applied during generation.
#[derive(Debug, Clone)]
pub struct GenerationConfig {
    /// Minimum candidate length (>= 1). Generation starts at this length.
    pub min_length: usize,
    /// Inclusive maximum candidate length; `None` leaves it unbounded.
    pub max_length: Option<usize>,
    /// Sequence ids candidates are read from; `None` means all sequences.
    pub source_ids: Option<Vec<u32>>,
    /// Inclusive GC-content bounds as fractions of the candidate length.
    pub gc_bounds: (f64, f64),
    /// Inclusive melting-temperature bounds in degrees Celsius.
    pub tm_bounds: Option<(f64, f64)>,
    /// Contaminant sequences; candidates occurring in any of them (perfectly
    /// or uncertainly) are rejected.
    pub forbidden: Vec<GenomicSequence>,
    /// When true (the default), uncertain occurrences outside the source
    /// block the "occurs only in its source sequence" classification, so a
    /// window with a possible match elsewhere is never treated as a unique
    /// marker. When false only perfect occurrences are considered.
    pub uncertain_blocks_unique: bool,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        GenerationConfig {
            min_length: 1,
            max_length: None,
            source_ids: None,
            gc_bounds: (0.0, 1.0),
            tm_bounds: None,
            forbidden: Vec::new(),
            uncertain_blocks_unique: true,
        }
    }
}

impl GenerationConfig {
    fn has_content_filters(&self) -> bool {
        self.gc_bounds != (0.0, 1.0) || self.tm_bounds.is_some() || !self.forbidden.is_empty()
    }

    /// Resolves the configured sources to a sorted, deduplicated id list.
    pub fn resolve_sources(&self, instance: &InstanceSet) -> Result<Vec<u32>, GenerationError> {
        if self.min_length == 0 {
            return Err(GenerationError::InvalidLengthBounds);
        }
        if let Some(max) = self.max_length {
            if max < self.min_length {
                return Err(GenerationError::InvalidLengthBounds);
            }
        }
        let (lo, hi) = self.gc_bounds;
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(GenerationError::InvalidGcBounds);
        }
        if let Some((lo, hi)) = self.tm_bounds {
            if lo > hi {
                return Err(GenerationError::InvalidTmBounds);
            }
        }
        let mut ids = match &self.source_ids {
            None => (0..instance.n() as u32).collect::<Vec<_>>(),
            Some(ids) => {
                let mut ids = ids.clone();
                ids.sort_unstable();
                ids.dedup();
                ids
            }
        };
        if ids.is_empty() {
            return Err(GenerationError::EmptySources);
        }
        if let Some(&bad) = ids.iter().find(|&&id| id as usize >= instance.n()) {
            return Err(GenerationError::UnknownSource(bad));
        }
        ids.shrink_to_fit();
        Ok(ids)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerationError {
    #[error("invalid length bounds: need 1 <= min_length <= max_length")]
    InvalidLengthBounds,
    #[error("invalid GC bounds: need 0 <= gc_min <= gc_max <= 1")]
    InvalidGcBounds,
    #[error("invalid melting-temperature bounds: need tm_min <= tm_max")]
    InvalidTmBounds,
    #[error("source id list is empty")]
    EmptySources,
    #[error("source id {0} does not name an input sequence")]
    UnknownSource(u32),
}

/// Fraction of `g`/`c` bases in the probe.
pub fn gc_content(probe: &[Nucleotide]) -> f64 {
    assert!(!probe.is_empty(), "gc_content of an empty probe");
    let gc = probe
        .iter()
        .filter(|n| matches!(n, Nucleotide::G | Nucleotide::C))
        .count();
    gc as f64 / probe.len() as f64
}

/// Wallace-rule melting temperature: `2(#a + #t) + 4(#g + #c)` degrees.
pub fn melting_temperature(probe: &[Nucleotide]) -> f64 {
    assert!(!probe.is_empty(), "melting temperature of an empty probe");
    let gc = probe
        .iter()
        .filter(|n| matches!(n, Nucleotide::G | Nucleotide::C))
        .count();
    let at = probe.len() - gc;
    (2 * at + 4 * gc) as f64
}

/// Whether the probe satisfies every per-candidate constraint in `config`:
/// length and GC bounds, melting-temperature bounds when set, and absence
/// from all forbidden sequences (an uncertain occurrence in a contaminant
/// also rejects, since the match might be real).
pub fn passes_filters(probe: &[Nucleotide], config: &GenerationConfig) -> bool {
    if probe.len() < config.min_length {
        return false;
    }
    if let Some(max) = config.max_length {
        if probe.len() > max {
            return false;
        }
    }
    let gc = gc_content(probe);
    if gc < config.gc_bounds.0 || gc > config.gc_bounds.1 {
        return false;
    }
    if let Some((lo, hi)) = config.tm_bounds {
        let tm = melting_temperature(probe);
        if tm < lo || tm > hi {
            return false;
        }
    }
    config
        .forbidden
        .iter()
        .all(|f| occurrence_class(probe, f) == OccurrenceClass::AllMismatch)
}

// ---------------------------------------------------------------------------
// Occurrence bookkeeping
//
// An occurrence is packed into a u64 as (seq << 33) | (pos << 1) | uncertain,
// so occurrence lists sort by (sequence, position) with the kind carried in
// the low bit.
// ---------------------------------------------------------------------------

#[inline]
fn pack(seq: u32, pos: u32, uncertain: bool) -> u64 {
    ((seq as u64) << 33) | ((pos as u64) << 1) | uncertain as u64
}

#[inline]
fn unpack(value: u64) -> (u32, u32, bool) {
    (
        (value >> 33) as u32,
        ((value >> 1) & 0xFFFF_FFFF) as u32,
        value & 1 == 1,
    )
}

fn next_degenerate_table(bases: &[DegenerateBase]) -> Vec<u32> {
    let mut table = vec![u32::MAX; bases.len()];
    let mut next = u32::MAX;
    for i in (0..bases.len()).rev() {
        if !bases[i].is_exact() {
            next = i as u32;
        }
        table[i] = next;
    }
    table
}

/// Expansion cap for windows containing degenerate bases during index
/// construction. Windows whose prefix admits more plain texts than this are
/// kept on a fallback list and checked per query instead.
const EXPANSION_CAP: usize = 4096;

/// Instance-wide index of windows of the minimum candidate length, used to
/// bootstrap occurrence lists before length extension takes over.
struct OccurrenceIndex {
    probe_len: usize,
    key_len: usize,
    /// (key, packed occurrence) for degenerate-free windows, sorted.
    perfect: Vec<(u64, u64)>,
    /// Expanded plain texts admitted by degenerate windows, sorted.
    uncertain: Vec<(u64, u64)>,
    /// Degenerate windows too ambiguous to expand; scanned per query.
    hard: Vec<(u32, u32)>,
}

fn window_key(bases: &[DegenerateBase]) -> u64 {
    bases.iter().fold(0u64, |key, b| {
        (key << 2) | b.as_nucleotide().expect("plain window").code() as u64
    })
}

fn for_each_expansion(prefix: &[DegenerateBase], f: &mut impl FnMut(u64)) {
    fn rec(prefix: &[DegenerateBase], i: usize, key: u64, f: &mut impl FnMut(u64)) {
        if i == prefix.len() {
            f(key);
            return;
        }
        for n in prefix[i].nucleotides() {
            rec(prefix, i + 1, (key << 2) | n.code() as u64, f);
        }
    }
    rec(prefix, 0, 0, f);
}

impl OccurrenceIndex {
    fn build(instance: &InstanceSet, probe_len: usize, next_deg: &[Vec<u32>]) -> Self {
        let key_len = probe_len.min(32);
        let mut perfect = Vec::new();
        let mut uncertain = Vec::new();
        let mut hard = Vec::new();

        for seq in instance.sequences() {
            let bases = seq.bases();
            if bases.len() < probe_len {
                continue;
            }
            let deg = &next_deg[seq.id() as usize];
            let mut key = 0u64;
            let key_mask = if key_len == 32 {
                u64::MAX
            } else {
                (1u64 << (2 * key_len)) - 1
            };
            for end in 0..bases.len() {
                let code = bases[end].as_nucleotide().map_or(0, |n| n.code());
                key = ((key << 2) | code as u64) & key_mask;
                if end + 1 < key_len {
                    continue;
                }
                let pos = end + 1 - key_len;
                if pos + probe_len > bases.len() {
                    continue;
                }
                if deg[pos] as usize >= pos + probe_len {
                    perfect.push((key, pack(seq.id(), pos as u32, false)));
                    continue;
                }
                // Degenerate window: enumerate the plain prefixes it admits,
                // unless that blows past the cap.
                let prefix = &bases[pos..pos + key_len];
                let mut product = 1usize;
                for b in prefix {
                    product = product.saturating_mul(b.degeneracy() as usize);
                    if product > EXPANSION_CAP {
                        break;
                    }
                }
                if product > EXPANSION_CAP {
                    hard.push((seq.id(), pos as u32));
                } else {
                    let packed = pack(seq.id(), pos as u32, true);
                    for_each_expansion(prefix, &mut |k| uncertain.push((k, packed)));
                }
            }
        }

        perfect.par_sort_unstable();
        uncertain.par_sort_unstable();
        OccurrenceIndex {
            probe_len,
            key_len,
            perfect,
            uncertain,
            hard,
        }
    }

    /// All occurrences of the plain window starting at `pos` in sequence
    /// `seq_id`, sorted by (sequence, position).
    fn query(&self, instance: &InstanceSet, seq_id: u32, pos: usize) -> Vec<u64> {
        let probe = &instance.get(seq_id).bases()[pos..pos + self.probe_len];
        let key = window_key(&probe[..self.key_len]);
        let needs_verify = self.probe_len > self.key_len;

        let perfect = equal_range(&self.perfect, key);
        let mut from_uncertain: Vec<u64> = Vec::new();
        for &(_, packed) in equal_range(&self.uncertain, key) {
            if !needs_verify || self.admits_suffix(instance, packed, probe) {
                from_uncertain.push(packed);
            }
        }
        from_uncertain.dedup();
        let mut from_hard: Vec<u64> = Vec::new();
        for &(hseq, hpos) in &self.hard {
            let window = &instance.get(hseq).bases()[hpos as usize..hpos as usize + self.probe_len];
            if probe
                .iter()
                .zip(window)
                .all(|(p, w)| w.admits(p.as_nucleotide().expect("plain window")))
            {
                from_hard.push(pack(hseq, hpos, true));
            }
        }

        let mut out = Vec::with_capacity(perfect.len() + from_uncertain.len() + from_hard.len());
        let mut pi = perfect.iter().map(|&(_, p)| p).peekable();
        let mut verified_perfect = Vec::new();
        if needs_verify {
            for &(_, packed) in perfect {
                if self.equals_suffix(instance, packed, probe) {
                    verified_perfect.push(packed);
                }
            }
        }
        let mut vi = verified_perfect.iter().copied().peekable();
        let mut ui = from_uncertain.iter().copied().peekable();
        let mut hi = from_hard.iter().copied().peekable();
        loop {
            let mut best: Option<u64> = None;
            if !needs_verify {
                if let Some(&v) = pi.peek() {
                    best = Some(v);
                }
            } else if let Some(&v) = vi.peek() {
                best = Some(v);
            }
            if let Some(&v) = ui.peek() {
                best = Some(best.map_or(v, |b| b.min(v)));
            }
            if let Some(&v) = hi.peek() {
                best = Some(best.map_or(v, |b| b.min(v)));
            }
            let Some(next) = best else { break };
            if !needs_verify {
                if pi.peek() == Some(&next) {
                    pi.next();
                }
            } else if vi.peek() == Some(&next) {
                vi.next();
            }
            if ui.peek() == Some(&next) {
                ui.next();
            }
            if hi.peek() == Some(&next) {
                hi.next();
            }
            out.push(next);
        }
        out
    }

    fn admits_suffix(&self, instance: &InstanceSet, packed: u64, probe: &[DegenerateBase]) -> bool {
        let (seq, pos, _) = unpack(packed);
        let bases = instance.get(seq).bases();
        probe[self.key_len..]
            .iter()
            .zip(&bases[pos as usize + self.key_len..pos as usize + self.probe_len])
            .all(|(p, w)| w.admits(p.as_nucleotide().expect("plain window")))
    }

    fn equals_suffix(&self, instance: &InstanceSet, packed: u64, probe: &[DegenerateBase]) -> bool {
        let (seq, pos, _) = unpack(packed);
        let bases = instance.get(seq).bases();
        probe[self.key_len..]
            .iter()
            .zip(&bases[pos as usize + self.key_len..pos as usize + self.probe_len])
            .all(|(p, w)| p == w)
    }
}

fn equal_range(sorted: &[(u64, u64)], key: u64) -> &[(u64, u64)] {
    let lo = sorted.partition_point(|&(k, _)| k < key);
    let hi = sorted.partition_point(|&(k, _)| k <= key);
    &sorted[lo..hi]
}

// ---------------------------------------------------------------------------
// The per-context sweep
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct PendingCandidate {
    length: usize,
    source_seq: u32,
    source_pos: u32,
    text: String,
    perfect: Vec<u32>,
    uncertain: Vec<u32>,
}

fn window_text(bases: &[DegenerateBase]) -> String {
    bases
        .iter()
        .map(|b| b.as_nucleotide().expect("plain window").to_ascii() as char)
        .collect()
}

fn window_probe(bases: &[DegenerateBase]) -> Vec<Nucleotide> {
    bases
        .iter()
        .map(|b| b.as_nucleotide().expect("plain window"))
        .collect()
}

/// Extends every length `new_len - 1` occurrence of a group by one base, in
/// one pass, bucketing by the extending nucleotide. Occurrences that run off
/// their sequence are dropped; a degenerate extension base lands the
/// occurrence in every admitted bucket with its kind downgraded to
/// uncertain. Each bucket is the occurrence list of prefix-text + letter.
fn split_group(instance: &InstanceSet, prev: &[u64], new_len: usize) -> [Vec<u64>; 4] {
    let mut buckets: [Vec<u64>; 4] = Default::default();
    let mut cur_seq = u32::MAX;
    let mut cur_bases: &[DegenerateBase] = &[];
    for &e in prev {
        let (seq, pos, _) = unpack(e);
        if seq != cur_seq {
            cur_seq = seq;
            cur_bases = instance.get(seq).bases();
        }
        let end = pos as usize + new_len - 1;
        if end >= cur_bases.len() {
            continue;
        }
        let mask = cur_bases[end].mask();
        if mask.count_ones() == 1 {
            buckets[mask.trailing_zeros() as usize].push(e);
        } else {
            for code in 0..4u8 {
                if mask & (1 << code) != 0 {
                    buckets[code as usize].push(e | 1);
                }
            }
        }
    }
    buckets
}

/// Runs the full length sweep for the given set of source sequences. Windows
/// duplicated across sequences of the same context are evaluated once; the
/// caller is responsible for deduplicating texts across contexts.
fn run_context(
    instance: &InstanceSet,
    config: &GenerationConfig,
    assigned: &[u32],
    next_deg: &[Vec<u32>],
    index: &OccurrenceIndex,
) -> Vec<PendingCandidate> {
    let n = instance.n();
    let l_min = config.min_length;
    let l_max = config.max_length.unwrap_or(usize::MAX);
    let filters_active = config.has_content_filters();

    // member[seq] = local index + 1; 0 marks sequences outside this context.
    let mut member = vec![0u32; n];
    for (li, &sid) in assigned.iter().enumerate() {
        member[sid as usize] = li as u32 + 1;
    }
    let mut flags: Vec<Vec<PositionFlag>> = assigned
        .iter()
        .map(|&sid| vec![PositionFlag::Active; instance.get(sid).len()])
        .collect();
    let mut groups: Vec<Vec<u32>> = assigned
        .iter()
        .map(|&sid| vec![0u32; instance.get(sid).len()])
        .collect();
    let mut alive: usize = flags.iter().map(|f| f.len()).sum();
    let mut unique_saved = vec![false; assigned.len()];
    let mut lists: Vec<Vec<u64>> = Vec::new();
    // Lazily computed extension buckets per previous-length group. A given
    // (group, letter) bucket is consumed by at most one evaluation per
    // length: any second position with the same text was marked Duplicate by
    // the first.
    let mut split_cache: Vec<Option<Box<[Vec<u64>; 4]>>> = Vec::new();
    let mut pending = Vec::new();
    let mut perfect_buf: Vec<u32> = Vec::new();
    let mut uncertain_buf: Vec<u32> = Vec::new();

    let mut length = l_min;
    while alive > 0 && length <= l_max {
        if length > l_min {
            for flag in flags.iter_mut().flatten() {
                if *flag == PositionFlag::Duplicate {
                    *flag = PositionFlag::Active;
                }
            }
        }
        let mut new_lists: Vec<Vec<u64>> = Vec::new();

        for (li, &sid) in assigned.iter().enumerate() {
            let bases = instance.get(sid).bases();
            let deg = &next_deg[sid as usize];
            for pos in 0..bases.len() {
                if flags[li][pos] != PositionFlag::Active {
                    continue;
                }
                if pos + length > bases.len() {
                    flags[li][pos] = PositionFlag::Retired;
                    alive -= 1;
                    continue;
                }
                if (deg[pos] as usize) < pos + length {
                    flags[li][pos] = PositionFlag::Done;
                    alive -= 1;
                    continue;
                }
                let occ = if length == l_min {
                    index.query(instance, sid, pos)
                } else {
                    let g = groups[li][pos] as usize;
                    if split_cache[g].is_none() {
                        split_cache[g] = Some(Box::new(split_group(instance, &lists[g], length)));
                        lists[g] = Vec::new();
                    }
                    let next = bases[pos + length - 1]
                        .as_nucleotide()
                        .expect("window is degenerate-free")
                        .code() as usize;
                    std::mem::take(&mut split_cache[g].as_mut().expect("just filled")[next])
                };
                debug_assert!(!occ.is_empty(), "a window always occurs at its own start");

                // Classify the occurrence list and mark duplicate starts in
                // one pass. Runs are grouped by sequence because the list is
                // sorted.
                let group = new_lists.len() as u32;
                let mut distinct = 0usize;
                let mut confined_all = true;
                let mut confined_perfect = true;
                perfect_buf.clear();
                uncertain_buf.clear();
                let perfect = &mut perfect_buf;
                let uncertain = &mut uncertain_buf;
                let mut run_seq = u32::MAX;
                let mut run_perfect = false;
                let mut run_uncertain = false;
                let flush = |seq: u32,
                                 has_perfect: bool,
                                 has_uncertain: bool,
                                 perfect: &mut Vec<u32>,
                                 uncertain: &mut Vec<u32>| {
                    if has_perfect {
                        perfect.push(seq);
                    } else if has_uncertain {
                        uncertain.push(seq);
                    }
                };
                for &e in &occ {
                    let (oseq, opos, ounc) = unpack(e);
                    if oseq != run_seq {
                        if run_seq != u32::MAX {
                            flush(run_seq, run_perfect, run_uncertain, &mut *perfect, &mut *uncertain);
                        }
                        run_seq = oseq;
                        run_perfect = false;
                        run_uncertain = false;
                        distinct += 1;
                        if oseq != sid {
                            confined_all = false;
                        }
                    }
                    if ounc {
                        run_uncertain = true;
                    } else {
                        run_perfect = true;
                        if oseq != sid {
                            confined_perfect = false;
                        }
                    }
                    let m = member[oseq as usize];
                    if m != 0 {
                        let ml = (m - 1) as usize;
                        let flag = &mut flags[ml][opos as usize];
                        if *flag == PositionFlag::Active {
                            *flag = PositionFlag::Duplicate;
                            groups[ml][opos as usize] = group;
                        }
                    }
                }
                flush(run_seq, run_perfect, run_uncertain, &mut *perfect, &mut *uncertain);

                let confined = if config.uncertain_blocks_unique {
                    confined_all
                } else {
                    confined_perfect
                };

                if distinct == n {
                    // Occurs in every sequence: nothing to save, but longer
                    // windows may become selective.
                    flags[li][pos] = PositionFlag::Active;
                } else if confined {
                    if unique_saved[li] {
                        flags[li][pos] = PositionFlag::Done;
                        alive -= 1;
                    } else {
                        let window = &bases[pos..pos + length];
                        if !filters_active || passes_filters(&window_probe(window), config) {
                            pending.push(PendingCandidate {
                                length,
                                source_seq: sid,
                                source_pos: pos as u32,
                                text: window_text(window),
                                perfect: perfect.clone(),
                                uncertain: uncertain.clone(),
                            });
                            unique_saved[li] = true;
                            flags[li][pos] = PositionFlag::Done;
                            alive -= 1;
                        } else {
                            // Filtered out: a longer window may pass, so the
                            // position keeps extending.
                            flags[li][pos] = PositionFlag::Active;
                        }
                    }
                } else {
                    let window = &bases[pos..pos + length];
                    if !filters_active || passes_filters(&window_probe(window), config) {
                        pending.push(PendingCandidate {
                            length,
                            source_seq: sid,
                            source_pos: pos as u32,
                            text: window_text(window),
                            perfect: perfect.clone(),
                            uncertain: uncertain.clone(),
                        });
                        // The marking pass above set this position Duplicate.
                    } else {
                        flags[li][pos] = PositionFlag::Active;
                    }
                }
                new_lists.push(occ);
            }
        }
        lists = new_lists;
        split_cache = (0..lists.len()).map(|_| None).collect();
        length += 1;
    }
    pending
}

/// Sources are swept in chunks of roughly this much sequence content. The
/// chunking depends only on the instance and config — never on the thread
/// count — and the merged pool is identical for any chunking anyway.
const CONTEXT_CHUNK_BASES: usize = 128 * 1024;

/// Generates the candidate pool for `instance` under `config`.
///
/// Disjoint chunks of the source list are swept independently (in parallel
/// when a rayon pool with multiple threads is installed); results are merged
/// in (length, source, position) order and exact duplicate texts are
/// collapsed to the first occurrence. The outcome is byte-identical
/// regardless of thread count.
pub fn generate_candidates(
    instance: &InstanceSet,
    config: &GenerationConfig,
) -> Result<CandidatePool, GenerationError> {
    let sources = config.resolve_sources(instance)?;
    let mut contexts: Vec<Vec<u32>> = Vec::new();
    let mut chunk: Vec<u32> = Vec::new();
    let mut chunk_bases = 0usize;
    for &sid in &sources {
        chunk.push(sid);
        chunk_bases += instance.get(sid).len();
        if chunk_bases >= CONTEXT_CHUNK_BASES {
            contexts.push(std::mem::take(&mut chunk));
            chunk_bases = 0;
        }
    }
    if !chunk.is_empty() {
        contexts.push(chunk);
    }
    Ok(generate_with_contexts(instance, config, &contexts))
}

/// Runs one sweep per context and merges. `generate_candidates` uses one
/// context per source sequence; a single context holding every source is the
/// strictly sequential sweep, and both partitions produce the same pool.
pub(crate) fn generate_with_contexts(
    instance: &InstanceSet,
    config: &GenerationConfig,
    contexts: &[Vec<u32>],
) -> CandidatePool {
    let start = Instant::now();
    let next_deg: Vec<Vec<u32>> = instance
        .sequences()
        .iter()
        .map(|s| next_degenerate_table(s.bases()))
        .collect();
    let index = OccurrenceIndex::build(instance, config.min_length, &next_deg);

    let mut all: Vec<PendingCandidate> = contexts
        .par_iter()
        .map(|assigned| run_context(instance, config, assigned, &next_deg, &index))
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    all.sort_unstable_by_key(|p| (p.length, p.source_seq, p.source_pos));

    let mut keep = vec![true; all.len()];
    {
        let mut seen: HashSet<&str> = HashSet::with_capacity(all.len());
        for (i, p) in all.iter().enumerate() {
            if !seen.insert(p.text.as_str()) {
                keep[i] = false;
            }
        }
    }

    let mut candidates = Vec::with_capacity(keep.iter().filter(|&&k| k).count());
    let mut matches = 0u64;
    let mut has_uncertainty = false;
    for (i, p) in all.into_iter().enumerate() {
        if !keep[i] {
            continue;
        }
        matches += (p.perfect.len() + p.uncertain.len()) as u64;
        has_uncertainty |= !p.uncertain.is_empty();
        candidates.push(Candidate {
            id: candidates.len() as u32,
            text: p.text,
            source_seq: p.source_seq,
            source_pos: p.source_pos as usize + 1,
            perfect: p.perfect,
            uncertain: p.uncertain,
        });
    }

    CandidatePool {
        stats: PoolStats {
            candidates: candidates.len(),
            matches,
            generation_time: start.elapsed(),
        },
        n_sequences: instance.n(),
        has_uncertainty,
        candidates,
    }
}

/// Dumps the pool as TSV: cand_id, text, source_seq, source_pos (1-based),
/// perfect_ids, uncertain_ids (comma-separated).
pub fn write_pool_tsv<W: Write>(pool: &CandidatePool, mut writer: W) -> io::Result<()> {
    writeln!(
        writer,
        "cand_id\ttext\tsource_seq\tsource_pos\tperfect_ids\tuncertain_ids"
    )?;
    let join = |ids: &[u32]| {
        ids.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    for c in &pool.candidates {
        writeln!(
            writer,
            "{}\t{}\t{}\t{}\t{}\t{}",
            c.id,
            c.text,
            c.source_seq,
            c.source_pos,
            join(&c.perfect),
            join(&c.uncertain)
        )?;
    }
    Ok(())
}
