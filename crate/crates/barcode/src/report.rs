//! Solution reports: the JSON document written after a selection run, and
//! the TSV barcode matrix alternative.
//!
//! The JSON layout is stable and thread-count independent. Wall-clock
//! timings are only embedded when explicitly requested, so reports from
//! identical inputs compare byte-for-byte.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::candidates::{gc_content, melting_temperature, CandidatePool, GenerationConfig};
use crate::select::{SelectionConfig, Solution};
use crate::sequence::InstanceSet;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportConfig {
    pub redundancy: u32,
    pub min_edit_distance: usize,
    pub min_length: usize,
    pub max_length: Option<usize>,
    pub gc_min: f64,
    pub gc_max: f64,
    pub tm_min: Option<f64>,
    pub tm_max: Option<f64>,
    pub sources: Vec<u32>,
    pub forbidden_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PoolStatsReport {
    pub candidates: usize,
    pub matches: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DistinguisherReport {
    pub id: u32,
    pub text: String,
    pub length: usize,
    pub gc: f64,
    pub tm: f64,
    /// Ids of sequences the distinguisher perfectly matches.
    pub perfect_ids: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct UncoveredPair {
    pub i: u32,
    pub j: u32,
    pub count: u32,
    pub impossible: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WallTimes {
    pub generation_secs: f64,
    pub selection_secs: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolutionReport {
    pub config: ReportConfig,
    pub n: usize,
    /// Sequence names in barcode row order.
    pub sequences: Vec<String>,
    pub pool_stats: PoolStatsReport,
    pub distinguishers: Vec<DistinguisherReport>,
    /// One row per sequence over `0`, `1`, `?`.
    pub barcodes: Vec<String>,
    pub uncovered_pairs: Vec<UncoveredPair>,
    pub iterations: usize,
    /// Omitted by default so identical runs produce identical bytes.
    pub wall_times: Option<WallTimes>,
}

impl SolutionReport {
    pub fn new(
        instance: &InstanceSet,
        pool: &CandidatePool,
        solution: &Solution,
        gen_config: &GenerationConfig,
        sel_config: &SelectionConfig,
        sources: &[u32],
        with_timings: bool,
    ) -> Self {
        let distinguishers = solution
            .distinguishers
            .iter()
            .map(|c| {
                let probe = c.probe();
                DistinguisherReport {
                    id: c.id,
                    text: c.text.clone(),
                    length: c.len(),
                    gc: gc_content(&probe),
                    tm: melting_temperature(&probe),
                    perfect_ids: c.perfect.clone(),
                }
            })
            .collect();
        SolutionReport {
            config: ReportConfig {
                redundancy: sel_config.redundancy,
                min_edit_distance: sel_config.min_edit_distance,
                min_length: gen_config.min_length,
                max_length: gen_config.max_length,
                gc_min: gen_config.gc_bounds.0,
                gc_max: gen_config.gc_bounds.1,
                tm_min: gen_config.tm_bounds.map(|(lo, _)| lo),
                tm_max: gen_config.tm_bounds.map(|(_, hi)| hi),
                sources: sources.to_vec(),
                forbidden_count: gen_config.forbidden.len(),
            },
            n: instance.n(),
            sequences: instance
                .sequences()
                .iter()
                .map(|s| s.name().to_string())
                .collect(),
            pool_stats: PoolStatsReport {
                candidates: pool.stats.candidates,
                matches: pool.stats.matches,
            },
            distinguishers,
            barcodes: solution.barcodes.clone(),
            uncovered_pairs: solution
                .uncovered
                .iter()
                .map(|p| UncoveredPair {
                    i: p.i,
                    j: p.j,
                    count: p.count,
                    impossible: p.impossible,
                })
                .collect(),
            iterations: solution.iterations,
            wall_times: with_timings.then(|| WallTimes {
                generation_secs: pool.stats.generation_time.as_secs_f64(),
                selection_secs: solution.selection_time.as_secs_f64(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Writes the barcode matrix as TSV: a header row of distinguisher texts,
/// then one row per sequence.
pub fn write_barcode_tsv<W: Write>(report: &SolutionReport, mut writer: W) -> io::Result<()> {
    let header: Vec<&str> = report
        .distinguishers
        .iter()
        .map(|d| d.text.as_str())
        .collect();
    writeln!(writer, "sequence\t{}", header.join("\t"))?;
    for (name, row) in report.sequences.iter().zip(&report.barcodes) {
        let cells: Vec<String> = row.chars().map(|c| c.to_string()).collect();
        writeln!(writer, "{name}\t{}", cells.join("\t"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::generate_candidates;
    use crate::fasta::parse_fasta_str;
    use crate::select::select_greedy;

    fn build() -> (InstanceSet, CandidatePool, Solution) {
        let instance = parse_fasta_str(">a\nacgtcaggtt\n>b\nttgtaacgca\n").unwrap();
        let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
        let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();
        (instance, pool, solution)
    }

    #[test]
    fn json_round_trips() {
        let (instance, pool, solution) = build();
        let report = SolutionReport::new(
            &instance,
            &pool,
            &solution,
            &GenerationConfig::default(),
            &SelectionConfig::default(),
            &[0, 1],
            false,
        );
        let parsed = SolutionReport::from_json(&report.to_json()).unwrap();
        assert_eq!(report, parsed);
        assert!(parsed.wall_times.is_none());
        assert_eq!(parsed.sequences, vec!["a", "b"]);
    }

    #[test]
    fn reports_without_timings_are_reproducible() {
        let (instance, pool, solution) = build();
        let make = || {
            SolutionReport::new(
                &instance,
                &pool,
                &solution,
                &GenerationConfig::default(),
                &SelectionConfig::default(),
                &[0, 1],
                false,
            )
            .to_json()
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn barcode_tsv_shape() {
        let (instance, pool, solution) = build();
        let report = SolutionReport::new(
            &instance,
            &pool,
            &solution,
            &GenerationConfig::default(),
            &SelectionConfig::default(),
            &[0, 1],
            false,
        );
        let mut out = Vec::new();
        write_barcode_tsv(&report, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("sequence\t"));
        assert!(lines[1].starts_with("a\t"));
        assert!(lines[2].starts_with("b\t"));
    }
}
