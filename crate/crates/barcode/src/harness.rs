//! Desk-scale benchmark suites: solution quality across sequence counts and
//! redundancy targets, the effect of restricting candidate sources, the
//! speed of the selection strategies, and the probe-containment estimate.
//!
//! The same helpers back the `barcode bench` subcommand and the acceptance
//! test suite, so the numbers the tests assert are the numbers the command
//! reports.

use std::io::{self, Write};
use std::time::Instant;

use crate::candidates::{generate_candidates, GenerationConfig};
use crate::random::{containment_probability, random_instance, RandomSpec};
use crate::select::{select_greedy, GainStrategy, SelectionConfig};
use crate::sequence::InstanceSet;

/// Instance seed for run `index` of a cell. Cells are salted so different
/// cells never share instances unless they mean to.
pub fn run_seed(base: u64, salt: u64, index: u64) -> u64 {
    base ^ (salt.wrapping_add(index).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn instance_for(n: usize, length: usize, seed: u64) -> InstanceSet {
    random_instance(&RandomSpec {
        count: n,
        length,
        seed,
    })
    .expect("bench specs are valid")
}

/// Distinguisher counts for `seeds` random instances of `n` sequences of the
/// given length at the given redundancy. Panics if any run leaves a pair
/// uncovered; uniform random instances of these sizes never do.
pub fn quality_counts(
    n: usize,
    length: usize,
    redundancy: u32,
    base_seed: u64,
    seeds: usize,
) -> Vec<usize> {
    let salt = (n as u64) << 20 | (redundancy as u64);
    (0..seeds)
        .map(|i| {
            let instance = instance_for(n, length, run_seed(base_seed, salt, i as u64));
            let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
            let solution = select_greedy(
                &pool,
                &instance,
                &SelectionConfig {
                    redundancy,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(
                solution.uncovered.is_empty(),
                "random instance left pairs uncovered (n={n}, r={redundancy})"
            );
            solution.distinguishers.len()
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct SourceRunMetrics {
    pub candidates: usize,
    pub matches: u64,
    pub generation_secs: f64,
    pub selection_secs: f64,
    pub distinguishers: usize,
}

/// One generation + selection run with candidates drawn from the first
/// `source_count` sequences only.
pub fn source_restriction_run(
    n: usize,
    length: usize,
    seed: u64,
    source_count: usize,
) -> SourceRunMetrics {
    let instance = instance_for(n, length, seed);
    let config = GenerationConfig {
        source_ids: Some((0..source_count as u32).collect()),
        ..Default::default()
    };
    let pool = generate_candidates(&instance, &config).unwrap();
    let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();
    SourceRunMetrics {
        candidates: pool.stats.candidates,
        matches: pool.stats.matches,
        generation_secs: pool.stats.generation_time.as_secs_f64(),
        selection_secs: solution.selection_time.as_secs_f64(),
        distinguishers: solution.distinguishers.len(),
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StrategyTimes {
    /// Re-evaluate every candidate per round through the pair matrix.
    pub naive_secs: f64,
    /// Re-evaluate every candidate per round through the partition.
    pub partition_secs: f64,
    /// Partition gains with lazy re-evaluation.
    pub partition_lazy_secs: f64,
}

/// Selection times of the three strategies on the same instance and pool.
/// Candidates come from `source_count` sequences; all strategies select the
/// identical distinguisher list, only the work differs.
pub fn strategy_times(n: usize, length: usize, seed: u64, source_count: usize) -> StrategyTimes {
    let instance = instance_for(n, length, seed);
    let config = GenerationConfig {
        source_ids: Some((0..source_count as u32).collect()),
        ..Default::default()
    };
    let pool = generate_candidates(&instance, &config).unwrap();
    let mut times = StrategyTimes::default();
    let mut reference: Option<Vec<u32>> = None;
    for (strategy, slot) in [
        (GainStrategy::MatrixExhaustive, 0usize),
        (GainStrategy::PartitionExhaustive, 1),
        (GainStrategy::PartitionLazy, 2),
    ] {
        let start = Instant::now();
        let solution = select_greedy(
            &pool,
            &instance,
            &SelectionConfig {
                strategy,
                ..Default::default()
            },
        )
        .unwrap();
        let secs = start.elapsed().as_secs_f64();
        match slot {
            0 => times.naive_secs = secs,
            1 => times.partition_secs = secs,
            _ => times.partition_lazy_secs = secs,
        }
        let ids: Vec<u32> = solution.distinguishers.iter().map(|c| c.id).collect();
        match &reference {
            None => reference = Some(ids),
            Some(expected) => assert_eq!(expected, &ids, "strategies disagree"),
        }
    }
    times
}

/// One output row of a bench suite.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub suite: String,
    pub cell: String,
    pub seed_count: usize,
    pub mean: f64,
    pub stddev: f64,
    pub wall_secs: f64,
}

fn stats(values: &[f64]) -> (f64, f64) {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / values.len() as f64;
    (mean, var.sqrt())
}

fn row(suite: &str, cell: String, values: &[f64], wall_secs: f64) -> BenchRow {
    let (mean, stddev) = stats(values);
    BenchRow {
        suite: suite.to_string(),
        cell,
        seed_count: values.len(),
        mean,
        stddev,
        wall_secs,
    }
}

pub const SUITES: [&str; 4] = ["table2-desk", "table1-desk", "speedup-desk", "theorem1"];

/// Runs a named suite. Unknown names return `None`.
pub fn run_suite(suite: &str, base_seed: u64) -> Option<Vec<BenchRow>> {
    match suite {
        "table2-desk" => Some(quality_suite(base_seed)),
        "table1-desk" => Some(source_suite(base_seed)),
        "speedup-desk" => Some(speedup_suite(base_seed)),
        "theorem1" => Some(containment_suite(base_seed)),
        _ => None,
    }
}

/// Mean distinguisher counts over 10 seeds per (n, redundancy) cell,
/// length 10,000.
fn quality_suite(base_seed: u64) -> Vec<BenchRow> {
    let cells: [(usize, u32); 7] = [
        (10, 1),
        (20, 1),
        (50, 1),
        (100, 1),
        (10, 2),
        (10, 5),
        (50, 10),
    ];
    cells
        .iter()
        .map(|&(n, r)| {
            let start = Instant::now();
            let counts = quality_counts(n, 10_000, r, base_seed, 10);
            let values: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
            row(
                "table2-desk",
                format!("n={n}/r={r}"),
                &values,
                start.elapsed().as_secs_f64(),
            )
        })
        .collect()
}

/// Generation/selection statistics for 100 sequences of length 10,000 as the
/// number of source sequences shrinks.
fn source_suite(base_seed: u64) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    const SEEDS: usize = 3;
    for source_count in [100usize, 10, 5, 2, 1] {
        let start = Instant::now();
        let metrics: Vec<SourceRunMetrics> = (0..SEEDS)
            .map(|i| {
                source_restriction_run(
                    100,
                    10_000,
                    run_seed(base_seed, 0x7ab1e1, i as u64),
                    source_count,
                )
            })
            .collect();
        let wall = start.elapsed().as_secs_f64();
        let field = |f: fn(&SourceRunMetrics) -> f64| -> Vec<f64> { metrics.iter().map(f).collect() };
        for (metric, values) in [
            ("candidates", field(|m| m.candidates as f64)),
            ("matches", field(|m| m.matches as f64)),
            ("gen_time", field(|m| m.generation_secs)),
            ("select_time", field(|m| m.selection_secs)),
            ("distinguishers", field(|m| m.distinguishers as f64)),
        ] {
            rows.push(row(
                "table1-desk",
                format!("sources={source_count}/{metric}"),
                &values,
                wall,
            ));
        }
    }
    rows
}

/// Selection time of naive, partition-only and partition+lazy strategies on
/// identical instances.
fn speedup_suite(base_seed: u64) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    const SEEDS: usize = 3;
    for n in [50usize, 100, 200] {
        let start = Instant::now();
        let all: Vec<StrategyTimes> = (0..SEEDS)
            .map(|i| strategy_times(n, 10_000, run_seed(base_seed, 0x5eed + n as u64, i as u64), 2))
            .collect();
        let wall = start.elapsed().as_secs_f64();
        for (name, pick) in [
            ("naive", (|t: &StrategyTimes| t.naive_secs) as fn(&StrategyTimes) -> f64),
            ("partition", |t| t.partition_secs),
            ("partition_lazy", |t| t.partition_lazy_secs),
        ] {
            let values: Vec<f64> = all.iter().map(pick).collect();
            rows.push(row("speedup-desk", format!("n={n}/{name}"), &values, wall));
        }
    }
    rows
}

/// Monte-Carlo probe-containment probabilities for sequences of length
/// 10,000 at a few probe lengths.
fn containment_suite(base_seed: u64) -> Vec<BenchRow> {
    [4usize, 8, 12]
        .iter()
        .map(|&k| {
            let start = Instant::now();
            let p = containment_probability(10_000, k, 20_000, base_seed);
            row(
                "theorem1",
                format!("len=10000/k={k}"),
                &[p],
                start.elapsed().as_secs_f64(),
            )
        })
        .collect()
}

/// Writes rows as TSV: suite, cell, seed_count, mean, stddev, wall_time.
pub fn write_rows_tsv<W: Write>(rows: &[BenchRow], mut writer: W) -> io::Result<()> {
    writeln!(writer, "suite\tcell\tseed_count\tmean\tstddev\twall_time")?;
    for r in rows {
        writeln!(
            writer,
            "{}\t{}\t{}\t{:.6}\t{:.6}\t{:.3}",
            r.suite, r.cell, r.seed_count, r.mean, r.stddev, r.wall_secs
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quality_counts_are_deterministic() {
        let a = quality_counts(6, 300, 1, 42, 3);
        let b = quality_counts(6, 300, 1, 42, 3);
        assert_eq!(a, b);
        assert!(a.iter().all(|&c| c >= 3), "{a:?}"); // ceil(log2 6)
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nope", 1).is_none());
    }

    #[test]
    fn strategy_times_share_solutions() {
        // Asserts internally that all three strategies select identically.
        let times = strategy_times(10, 400, 9, 2);
        assert!(times.naive_secs >= 0.0 && times.partition_lazy_secs >= 0.0);
    }
}
