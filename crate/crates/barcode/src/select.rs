//! Greedy distinguisher selection with lazy gain re-evaluation.
//!
//! Selection repeatedly picks the candidate separating the most sequence
//! pairs that still need coverage. Two facts make this fast:
//!
//! * a candidate's gain never increases as the selected set grows, so a
//!   stale cached gain is a sound upper bound and candidates whose cached
//!   value cannot beat the current best are skipped without re-evaluation;
//! * with redundancy 1 and no uncertain matches, "not yet distinguished" is
//!   an equivalence relation, and the gain of a candidate with perfect set
//!   `P` is `sum over blocks S of |S ∩ P| * |S \ P|`, computable in
//!   O(blocks + |P|) instead of probing the pair matrix.
//!
//! The pair-count matrix is always maintained (it is cheap and keeps
//! verification on one code path); the partition is maintained additionally
//! when the fast gain formula applies. Tie-breaking is by smallest candidate
//! id among the maximum-gain candidates, which is exactly what a strict
//! greater-than scan over a fixed candidate order produces, so lazy,
//! exhaustive and parallel evaluation all select identical sets.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::candidates::{Candidate, CandidatePool};
use crate::sequence::{occurrence_class, parse_probe, InstanceSet, OccurrenceClass};

/// How gains are computed and re-evaluated during selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainStrategy {
    /// Lazy re-evaluation; partition gains when redundancy is 1 and the pool
    /// has no uncertain matches, pair-matrix gains otherwise.
    #[default]
    Auto,
    /// Lazy re-evaluation over pair-matrix gains.
    MatrixLazy,
    /// Lazy re-evaluation over partition gains (requires redundancy 1 and an
    /// uncertainty-free pool).
    PartitionLazy,
    /// Re-evaluates every surviving candidate each round, matrix gains.
    MatrixExhaustive,
    /// Re-evaluates every surviving candidate each round, partition gains.
    PartitionExhaustive,
}

impl GainStrategy {
    fn is_lazy(self) -> bool {
        matches!(
            self,
            GainStrategy::Auto | GainStrategy::MatrixLazy | GainStrategy::PartitionLazy
        )
    }
}

#[derive(Debug, Clone)]
pub struct SelectionConfig {
    /// Required number of distinct distinguishers per sequence pair (>= 1).
    pub redundancy: u32,
    /// Minimum edit distance between selected distinguishers; 0 disables the
    /// constraint. After each selection, every unselected candidate closer
    /// than this to the chosen text is permanently eliminated.
    pub min_edit_distance: usize,
    pub strategy: GainStrategy,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            redundancy: 1,
            min_edit_distance: 0,
            strategy: GainStrategy::Auto,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SelectionError {
    #[error("redundancy must be at least 1")]
    InvalidRedundancy,
    #[error("partition gains require redundancy 1 and a pool without uncertain matches")]
    PartitionUnavailable,
}

/// A pair of sequences left under-covered after selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCoverage {
    pub i: u32,
    pub j: u32,
    /// Number of selected distinguishers separating the pair (< redundancy).
    pub count: u32,
    /// True when no candidate in the pool separates the pair at all, so no
    /// selection could have covered it.
    pub impossible: bool,
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// Selected candidates in selection order.
    pub distinguishers: Vec<Candidate>,
    /// One row per sequence over `1` (perfect match), `0` (mismatch),
    /// `?` (uncertain), column order matching `distinguishers`.
    pub barcodes: Vec<String>,
    /// Pairs whose final coverage is below the redundancy target.
    pub uncovered: Vec<PairCoverage>,
    /// Greedy rounds that selected a candidate.
    pub iterations: usize,
    pub selection_time: Duration,
}

// ---------------------------------------------------------------------------
// Selection state: pair-count matrix, optional partition, cached gains
// ---------------------------------------------------------------------------

/// Equivalence classes of "not yet distinguished" sequences, maintained by
/// splitting each block into its perfect / non-perfect halves whenever a
/// candidate is applied. Blocks may become empty; they simply stop mattering.
#[derive(Debug, Clone)]
struct Partition {
    block_of: Vec<u32>,
    sizes: Vec<u32>,
    remap: Vec<u32>,
    touched: Vec<u32>,
}

impl Partition {
    fn new(n: usize) -> Self {
        Partition {
            block_of: vec![0; n],
            sizes: vec![n as u32],
            remap: vec![u32::MAX],
            touched: Vec::new(),
        }
    }

    fn split(&mut self, perfect: &[u32]) {
        for &i in perfect {
            let b = self.block_of[i as usize] as usize;
            if self.remap[b] == u32::MAX {
                let nb = self.sizes.len() as u32;
                self.sizes.push(0);
                self.remap.push(u32::MAX);
                self.remap[b] = nb;
                self.touched.push(b as u32);
            }
            let nb = self.remap[b];
            self.block_of[i as usize] = nb;
            self.sizes[b] -= 1;
            self.sizes[nb as usize] += 1;
        }
        for &b in &self.touched {
            self.remap[b as usize] = u32::MAX;
        }
        self.touched.clear();
    }
}

/// Scratch buffers for partition-gain evaluation, reused across candidates.
#[derive(Debug, Default, Clone)]
pub struct GainScratch {
    counts: Vec<u32>,
    touched: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct SelectionState {
    n: usize,
    m: u32,
    /// Triangular pair-count matrix, entry for i < j at j(j-1)/2 + i,
    /// saturated at `m`.
    cover: Vec<u32>,
    partition: Option<Partition>,
    /// Cached gain upper bounds, one per candidate; `u64::MAX` = never
    /// evaluated. Selected or eliminated candidates are pinned to 0.
    cached_gain: Vec<u64>,
    removed: Vec<bool>,
    selected: Vec<u32>,
}

#[inline]
fn pair_index(i: u32, j: u32) -> usize {
    debug_assert!(i < j);
    (j as usize * (j as usize - 1)) / 2 + i as usize
}

impl SelectionState {
    /// `with_partition` additionally maintains the not-yet-distinguished
    /// partition; it requires redundancy 1.
    pub fn new(n: usize, redundancy: u32, with_partition: bool, pool_size: usize) -> Self {
        assert!(redundancy >= 1);
        assert!(
            !with_partition || redundancy == 1,
            "the partition models single coverage only"
        );
        SelectionState {
            n,
            m: redundancy,
            cover: vec![0; n * n.saturating_sub(1) / 2],
            partition: with_partition.then(|| Partition::new(n)),
            cached_gain: vec![u64::MAX; pool_size],
            removed: vec![false; pool_size],
            selected: Vec::new(),
        }
    }

    pub fn redundancy(&self) -> u32 {
        self.m
    }

    pub fn has_partition(&self) -> bool {
        self.partition.is_some()
    }

    pub fn selected(&self) -> &[u32] {
        &self.selected
    }

    /// Coverage count for an unordered pair.
    pub fn cover_count(&self, a: u32, b: u32) -> u32 {
        assert!(a != b);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.cover[pair_index(i, j)]
    }

    /// Pair-matrix gain: the number of pairs (one perfect side, one
    /// all-mismatch side) still below the redundancy target.
    pub fn gain_matrix(&self, c: &Candidate) -> u64 {
        let mut gain = 0u64;
        let mut pi = c.perfect.iter().copied().peekable();
        let mut ui = c.uncertain.iter().copied().peekable();
        for j in 0..self.n as u32 {
            if pi.peek() == Some(&j) {
                pi.next();
                continue;
            }
            if ui.peek() == Some(&j) {
                ui.next();
                continue;
            }
            for &i in &c.perfect {
                let idx = if i < j {
                    pair_index(i, j)
                } else {
                    pair_index(j, i)
                };
                if self.cover[idx] < self.m {
                    gain += 1;
                }
            }
        }
        gain
    }

    /// Partition gain: `sum over blocks |S ∩ P| * |S \ P|`. Equals the
    /// matrix gain whenever the partition is valid (redundancy 1, no
    /// uncertain matches in the pool).
    pub fn gain_partition(&self, c: &Candidate, scratch: &mut GainScratch) -> u64 {
        let part = self
            .partition
            .as_ref()
            .expect("partition gain requested without a partition");
        scratch.counts.resize(part.sizes.len(), 0);
        for &i in &c.perfect {
            let b = part.block_of[i as usize] as usize;
            if scratch.counts[b] == 0 {
                scratch.touched.push(b as u32);
            }
            scratch.counts[b] += 1;
        }
        let mut gain = 0u64;
        for &b in &scratch.touched {
            let inside = scratch.counts[b as usize] as u64;
            let size = part.sizes[b as usize] as u64;
            gain += inside * (size - inside);
            scratch.counts[b as usize] = 0;
        }
        scratch.touched.clear();
        gain
    }

    /// Gain via the fast path when available, the matrix otherwise.
    pub fn gain(&self, c: &Candidate) -> u64 {
        if self.partition.is_some() {
            self.gain_partition(c, &mut GainScratch::default())
        } else {
            self.gain_matrix(c)
        }
    }

    /// Applies a candidate: increments (saturating at the redundancy target)
    /// the count of every pair it separates and splits the partition.
    pub fn apply_candidate(&mut self, c: &Candidate) {
        let mut pi = c.perfect.iter().copied().peekable();
        let mut ui = c.uncertain.iter().copied().peekable();
        for j in 0..self.n as u32 {
            if pi.peek() == Some(&j) {
                pi.next();
                continue;
            }
            if ui.peek() == Some(&j) {
                ui.next();
                continue;
            }
            for &i in &c.perfect {
                let idx = if i < j {
                    pair_index(i, j)
                } else {
                    pair_index(j, i)
                };
                if self.cover[idx] < self.m {
                    self.cover[idx] += 1;
                }
            }
        }
        if let Some(part) = &mut self.partition {
            part.split(&c.perfect);
        }
    }

    fn mark_selected(&mut self, id: u32) {
        self.selected.push(id);
        self.removed[id as usize] = true;
        self.cached_gain[id as usize] = 0;
    }

    /// Permanently eliminates every surviving candidate whose text is within
    /// edit distance `< min_distance` of the chosen text.
    pub fn prune_within_edit_distance(
        &mut self,
        chosen: &Candidate,
        pool: &CandidatePool,
        min_distance: usize,
    ) {
        if min_distance == 0 {
            return;
        }
        let chosen_text = chosen.text.as_str();
        self.removed
            .par_iter_mut()
            .zip(self.cached_gain.par_iter_mut())
            .zip(pool.candidates.par_iter())
            .for_each(|((removed, cached), c)| {
                if *removed {
                    return;
                }
                if !edit_distance_at_least(&c.text, chosen_text, min_distance) {
                    *removed = true;
                    *cached = 0;
                }
            });
    }
}

// ---------------------------------------------------------------------------
// Edit distance
// ---------------------------------------------------------------------------

/// Unit-cost Levenshtein distance.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a = a.as_bytes();
    let b = b.as_bytes();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut diagonal = row[0];
        row[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let above = row[j + 1];
            row[j + 1] = (above + 1)
                .min(row[j] + 1)
                .min(diagonal + usize::from(ca != cb));
            diagonal = above;
        }
    }
    row[b.len()]
}

/// Whether the Levenshtein distance is at least `bound`. Equivalent to
/// `edit_distance(a, b) >= bound` but abandons the table as soon as a full
/// row proves the bound holds.
pub fn edit_distance_at_least(a: &str, b: &str, bound: usize) -> bool {
    if bound == 0 {
        return true;
    }
    if a.len().abs_diff(b.len()) >= bound {
        return true;
    }
    let a = a.as_bytes();
    let b = b.as_bytes();
    if a.is_empty() || b.is_empty() {
        return a.len().max(b.len()) >= bound;
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut diagonal = row[0];
        row[0] = i + 1;
        let mut row_min = row[0];
        for (j, &cb) in b.iter().enumerate() {
            let above = row[j + 1];
            row[j + 1] = (above + 1)
                .min(row[j] + 1)
                .min(diagonal + usize::from(ca != cb));
            diagonal = above;
            row_min = row_min.min(row[j + 1]);
        }
        if row_min >= bound {
            return true;
        }
    }
    row[b.len()] >= bound
}

// ---------------------------------------------------------------------------
// The greedy loop
// ---------------------------------------------------------------------------

/// Chunk width for gain evaluation. Fixed (not derived from the thread
/// count) so cached gains and selections are identical however many worker
/// threads run the chunks.
const GAIN_CHUNK: usize = 8192;

fn best_by_gain_then_id(results: impl IntoIterator<Item = (u64, u32)>) -> (u64, u32) {
    let mut best = (0u64, u32::MAX);
    for (gain, id) in results {
        if gain > best.0 {
            best = (gain, id);
        }
    }
    best
}

fn lazy_round(
    pool: &CandidatePool,
    state: &mut SelectionState,
    use_partition: bool,
) -> (u64, u32) {
    let n = state.n;
    let m = state.m;
    let cover = std::mem::take(&mut state.cover);
    let partition = state.partition.take();
    let frozen = SelectionState {
        n,
        m,
        cover,
        partition,
        cached_gain: Vec::new(),
        removed: Vec::new(),
        selected: Vec::new(),
    };
    let results: Vec<(u64, u32)> = state
        .cached_gain
        .par_chunks_mut(GAIN_CHUNK)
        .zip(pool.candidates.par_chunks(GAIN_CHUNK))
        .map(|(cache, cands)| {
            let mut scratch = GainScratch::default();
            let mut best = (0u64, u32::MAX);
            for (slot, c) in cache.iter_mut().zip(cands) {
                if *slot <= best.0 {
                    continue;
                }
                let gain = if use_partition {
                    frozen.gain_partition(c, &mut scratch)
                } else {
                    frozen.gain_matrix(c)
                };
                *slot = gain;
                if gain > best.0 {
                    best = (gain, c.id);
                }
            }
            best
        })
        .collect();
    state.cover = frozen.cover;
    state.partition = frozen.partition;
    best_by_gain_then_id(results)
}

fn exhaustive_round(
    pool: &CandidatePool,
    state: &mut SelectionState,
    use_partition: bool,
) -> (u64, u32) {
    let n = state.n;
    let m = state.m;
    let cover = std::mem::take(&mut state.cover);
    let partition = state.partition.take();
    let frozen = SelectionState {
        n,
        m,
        cover,
        partition,
        cached_gain: Vec::new(),
        removed: Vec::new(),
        selected: Vec::new(),
    };
    let results: Vec<(u64, u32)> = state
        .cached_gain
        .par_chunks_mut(GAIN_CHUNK)
        .zip(state.removed.par_chunks(GAIN_CHUNK))
        .zip(pool.candidates.par_chunks(GAIN_CHUNK))
        .map(|((cache, removed), cands)| {
            let mut scratch = GainScratch::default();
            let mut best = (0u64, u32::MAX);
            for ((slot, gone), c) in cache.iter_mut().zip(removed).zip(cands) {
                if *gone {
                    continue;
                }
                let gain = if use_partition {
                    frozen.gain_partition(c, &mut scratch)
                } else {
                    frozen.gain_matrix(c)
                };
                *slot = gain;
                if gain > best.0 {
                    best = (gain, c.id);
                }
            }
            best
        })
        .collect();
    state.cover = frozen.cover;
    state.partition = frozen.partition;
    best_by_gain_then_id(results)
}

/// Runs greedy selection over the pool until no candidate improves coverage,
/// then reports the selected distinguishers, the barcode matrix, and every
/// pair left below the redundancy target.
pub fn select_greedy(
    pool: &CandidatePool,
    instance: &InstanceSet,
    config: &SelectionConfig,
) -> Result<Solution, SelectionError> {
    if config.redundancy < 1 {
        return Err(SelectionError::InvalidRedundancy);
    }
    let partition_ok = config.redundancy == 1 && !pool.has_uncertainty;
    let use_partition = match config.strategy {
        GainStrategy::Auto => partition_ok,
        GainStrategy::PartitionLazy | GainStrategy::PartitionExhaustive => {
            if !partition_ok {
                return Err(SelectionError::PartitionUnavailable);
            }
            true
        }
        GainStrategy::MatrixLazy | GainStrategy::MatrixExhaustive => false,
    };
    let lazy = config.strategy.is_lazy();

    let start = Instant::now();
    let n = instance.n();
    let mut state = SelectionState::new(n, config.redundancy, use_partition, pool.len());
    let mut iterations = 0;
    loop {
        let (best_gain, best_id) = if lazy {
            lazy_round(pool, &mut state, use_partition)
        } else {
            exhaustive_round(pool, &mut state, use_partition)
        };
        if best_gain == 0 {
            break;
        }
        let chosen = &pool.candidates[best_id as usize];
        state.mark_selected(best_id);
        state.apply_candidate(chosen);
        state.prune_within_edit_distance(chosen, pool, config.min_edit_distance);
        iterations += 1;
    }

    let distinguishers: Vec<Candidate> = state
        .selected
        .iter()
        .map(|&id| pool.candidates[id as usize].clone())
        .collect();
    let barcodes = barcode_rows(&distinguishers, n);
    let mut uncovered = Vec::new();
    for j in 1..n as u32 {
        for i in 0..j {
            let count = state.cover_count(i, j);
            if count < config.redundancy {
                uncovered.push(PairCoverage {
                    i,
                    j,
                    count,
                    impossible: !pool.separates(i, j),
                });
            }
        }
    }

    Ok(Solution {
        distinguishers,
        barcodes,
        uncovered,
        iterations,
        selection_time: start.elapsed(),
    })
}

fn barcode_rows(distinguishers: &[Candidate], n: usize) -> Vec<String> {
    (0..n as u32)
        .map(|i| {
            distinguishers
                .iter()
                .map(|c| {
                    if c.matches_perfectly(i) {
                        '1'
                    } else if c.matches_uncertainly(i) {
                        '?'
                    } else {
                        '0'
                    }
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// End-to-end verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub ok: bool,
    pub issues: Vec<String>,
}

/// Recomputes, from the raw sequences alone, what each selected distinguisher
/// matches, and checks the solution's barcodes and coverage report against
/// the recomputation. This is the end-to-end oracle for the whole pipeline:
/// any disagreement means a bug upstream.
pub fn verify_solution(
    solution: &Solution,
    instance: &InstanceSet,
    redundancy: u32,
) -> VerificationReport {
    let n = instance.n();
    let mut issues = Vec::new();

    let mut recomputed_rows = vec![String::new(); n];
    let mut cover = vec![0u32; n * n.saturating_sub(1) / 2];
    for c in &solution.distinguishers {
        let probe = match parse_probe(&c.text) {
            Ok(p) => p,
            Err(e) => {
                issues.push(format!("distinguisher {} has invalid text: {e}", c.id));
                continue;
            }
        };
        let mut perfect = Vec::new();
        let mut mismatch = Vec::new();
        for seq in instance.sequences() {
            let class = occurrence_class(&probe, seq);
            recomputed_rows[seq.id() as usize].push(match class {
                OccurrenceClass::HasPerfect => '1',
                OccurrenceClass::UncertainOnly => '?',
                OccurrenceClass::AllMismatch => '0',
            });
            match class {
                OccurrenceClass::HasPerfect => perfect.push(seq.id()),
                OccurrenceClass::AllMismatch => mismatch.push(seq.id()),
                OccurrenceClass::UncertainOnly => {}
            }
        }
        for &i in &perfect {
            for &j in &mismatch {
                let idx = if i < j {
                    pair_index(i, j)
                } else {
                    pair_index(j, i)
                };
                if cover[idx] < redundancy {
                    cover[idx] += 1;
                }
            }
        }
    }

    if recomputed_rows != solution.barcodes {
        for (i, (got, want)) in solution
            .barcodes
            .iter()
            .zip(&recomputed_rows)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
        {
            issues.push(format!(
                "barcode row {i} is `{got}` but raw sequences give `{want}`"
            ));
        }
    }

    let mut recomputed_uncovered = Vec::new();
    for j in 1..n as u32 {
        for i in 0..j {
            let count = cover[pair_index(i, j)];
            if count < redundancy {
                recomputed_uncovered.push((i, j, count));
            }
        }
    }
    let reported: Vec<(u32, u32, u32)> = solution
        .uncovered
        .iter()
        .map(|p| (p.i, p.j, p.count))
        .collect();
    if reported != recomputed_uncovered {
        issues.push(format!(
            "coverage report lists {:?} but raw sequences give {:?}",
            reported, recomputed_uncovered
        ));
    }

    if recomputed_uncovered.is_empty() {
        let mut rows: Vec<&String> = recomputed_rows.iter().collect();
        rows.sort();
        for pair in rows.windows(2) {
            if pair[0] == pair[1] {
                issues.push(format!("duplicate barcode `{}` despite full coverage", pair[0]));
            }
        }
    }

    VerificationReport {
        ok: issues.is_empty(),
        issues,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::{generate_candidates, GenerationConfig};
    use crate::fasta::parse_fasta_str;
    use crate::random::{random_instance, RandomSpec};

    fn inst(texts: &[&str]) -> InstanceSet {
        let fasta: String = texts
            .iter()
            .enumerate()
            .map(|(i, t)| format!(">s{i}\n{t}\n"))
            .collect();
        parse_fasta_str(&fasta).unwrap()
    }

    fn candidate(id: u32, perfect: Vec<u32>, uncertain: Vec<u32>) -> Candidate {
        Candidate {
            id,
            text: "acgt".into(),
            source_seq: perfect[0],
            source_pos: 1,
            perfect,
            uncertain,
        }
    }

    #[test]
    fn gain_on_empty_selection_single_block() {
        // n=10, |P|=4: one block, 4 * 6 = 24.
        let state = SelectionState::new(10, 1, true, 0);
        let c = candidate(0, vec![0, 1, 2, 3], vec![]);
        assert_eq!(state.gain(&c), 24);
        assert_eq!(state.gain_matrix(&c), 24);
    }

    #[test]
    fn gain_after_split_matches_matrix() {
        // Split {0..4} into {0,1,2} and {3,4}, then evaluate P = {0,3}:
        // 1*2 + 1*1 = 3 by the partition formula.
        let mut state = SelectionState::new(5, 1, true, 0);
        state.apply_candidate(&candidate(0, vec![3, 4], vec![]));
        let c = candidate(1, vec![0, 3], vec![]);
        let mut scratch = GainScratch::default();
        assert_eq!(state.gain_partition(&c, &mut scratch), 3);
        assert_eq!(state.gain_matrix(&c), 3);
    }

    #[test]
    fn uncertain_sequences_do_not_count() {
        // n=3, P={0}, U={1}: only the pair (0,2) counts.
        let state = SelectionState::new(3, 1, false, 0);
        let c = candidate(0, vec![0], vec![1]);
        assert_eq!(state.gain_matrix(&c), 1);
    }

    #[test]
    fn cover_saturates_at_redundancy() {
        let mut state = SelectionState::new(3, 2, false, 0);
        let c = candidate(0, vec![0], vec![]);
        for _ in 0..4 {
            state.apply_candidate(&c);
        }
        assert_eq!(state.cover_count(0, 1), 2);
        assert_eq!(state.cover_count(0, 2), 2);
        assert_eq!(state.cover_count(1, 2), 0);
    }

    #[test]
    fn gains_never_increase_during_a_run() {
        let instance = random_instance(&RandomSpec {
            count: 8,
            length: 120,
            seed: 5,
        })
        .unwrap();
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let mut state = SelectionState::new(instance.n(), 1, true, pool.len());
        let probes: Vec<&Candidate> = pool.candidates.iter().step_by(7).collect();
        let mut last: Vec<u64> = probes.iter().map(|c| state.gain(c)).collect();
        // Apply a few arbitrary candidates and watch all gains fall or hold.
        for step in 0..4 {
            state.apply_candidate(&pool.candidates[step * 3 % pool.len()]);
            let now: Vec<u64> = probes.iter().map(|c| state.gain(c)).collect();
            for (before, after) in last.iter().zip(&now) {
                assert!(after <= before, "gain increased from {before} to {after}");
            }
            last = now;
        }
    }

    #[test]
    fn edit_distance_cases() {
        assert_eq!(edit_distance("", "acg"), 3);
        assert_eq!(edit_distance("acgt", "acgt"), 0);
        assert_eq!(edit_distance("acgt", "agt"), 1);
        assert_eq!(edit_distance("aaaa", "tttt"), 4);
        assert_eq!(edit_distance("acgtacgt", "acgtacga"), 1);
    }

    #[test]
    fn bounded_check_agrees_with_exact_distance() {
        let words = ["", "a", "acg", "acgt", "tgca", "acgtacgt", "acgtacga", "ttttacgt"];
        for a in words {
            for b in words {
                let d = edit_distance(a, b);
                for bound in 0..10 {
                    assert_eq!(
                        edit_distance_at_least(a, b, bound),
                        d >= bound,
                        "a={a} b={b} bound={bound} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn edit_pruning_examples() {
        let instance = inst(&["acgtacgt", "ttttcccc"]);
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let mut state = SelectionState::new(2, 1, false, pool.len());
        let chosen = candidate(u32::MAX - 1, vec![0], vec![]);
        // d=6 removes everything within distance 5 of "acgt"-like text.
        let mut with_text = chosen.clone();
        with_text.text = "acgtacgt".into();
        state.prune_within_edit_distance(&with_text, &pool, 6);
        for (c, removed) in pool.candidates.iter().zip(&state.removed) {
            let keep = edit_distance(&c.text, "acgtacgt") >= 6;
            assert_eq!(*removed, !keep, "text {}", c.text);
        }
    }

    #[test]
    fn selects_single_distinguisher_for_pair() {
        let instance = inst(&["acgt", "ttgt"]);
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();
        assert_eq!(solution.distinguishers.len(), 1);
        assert!(solution.uncovered.is_empty());
        assert_eq!(solution.barcodes, vec!["1", "0"]);
        let report = verify_solution(&solution, &instance, 1);
        assert!(report.ok, "{:?}", report.issues);
    }

    #[test]
    fn identical_pair_reported_impossible() {
        let instance = inst(&["acgtacgtgg", "acgtacgtgg", "ttaaccggtt"]);
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();
        assert_eq!(solution.uncovered.len(), 1);
        let pair = solution.uncovered[0];
        assert_eq!((pair.i, pair.j), (0, 1));
        assert!(pair.impossible);
        assert_eq!(pair.count, 0);
        // The other two pairs are covered.
        assert_ne!(solution.barcodes[0], solution.barcodes[2]);
        let report = verify_solution(&solution, &instance, 1);
        assert!(report.ok, "{:?}", report.issues);
    }

    #[test]
    fn all_strategies_agree() {
        for seed in [11u64, 12, 13] {
            let instance = random_instance(&RandomSpec {
                count: 12,
                length: 300,
                seed,
            })
            .unwrap();
            let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
            let runs: Vec<Vec<u32>> = [
                GainStrategy::Auto,
                GainStrategy::MatrixLazy,
                GainStrategy::PartitionLazy,
                GainStrategy::MatrixExhaustive,
                GainStrategy::PartitionExhaustive,
            ]
            .into_iter()
            .map(|strategy| {
                let config = SelectionConfig {
                    strategy,
                    ..Default::default()
                };
                select_greedy(&pool, &instance, &config)
                    .unwrap()
                    .distinguishers
                    .iter()
                    .map(|c| c.id)
                    .collect()
            })
            .collect();
            for other in &runs[1..] {
                assert_eq!(&runs[0], other);
            }
        }
    }

    #[test]
    fn redundancy_requires_more_distinguishers() {
        let instance = random_instance(&RandomSpec {
            count: 6,
            length: 400,
            seed: 17,
        })
        .unwrap();
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let mut sizes = Vec::new();
        for m in [1u32, 2, 3] {
            let config = SelectionConfig {
                redundancy: m,
                ..Default::default()
            };
            let solution = select_greedy(&pool, &instance, &config).unwrap();
            assert!(solution.uncovered.is_empty());
            // No candidate may be selected twice: redundancy needs distinct
            // distinguishers.
            let mut ids: Vec<u32> = solution.distinguishers.iter().map(|c| c.id).collect();
            ids.sort_unstable();
            ids.dedup();
            assert_eq!(ids.len(), solution.distinguishers.len());
            sizes.push(solution.distinguishers.len());
            let report = verify_solution(&solution, &instance, m);
            assert!(report.ok, "{:?}", report.issues);
        }
        assert!(sizes[0] < sizes[1] && sizes[1] < sizes[2], "{sizes:?}");
    }

    #[test]
    fn partition_strategy_rejected_when_invalid() {
        let instance = inst(&["acgt", "ttgt"]);
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let config = SelectionConfig {
            redundancy: 2,
            strategy: GainStrategy::PartitionLazy,
            ..Default::default()
        };
        assert_eq!(
            select_greedy(&pool, &instance, &config).unwrap_err(),
            SelectionError::PartitionUnavailable
        );
    }

    #[test]
    fn verification_catches_tampering() {
        let instance = inst(&["acgtcaggtt", "ttgtaacgca", "ggccaattgg"]);
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();
        assert!(verify_solution(&solution, &instance, 1).ok);

        let mut broken = solution.clone();
        broken.distinguishers.pop();
        let report = verify_solution(&broken, &instance, 1);
        assert!(!report.ok);
    }
}
