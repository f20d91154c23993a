//! Command-line front end: `select`, `random`, `verify`, `bench`, plus a
//! hidden `exact-min` oracle subcommand for acceptance runs.
//!
//! Exit codes: 0 success; 1 partial coverage or failed verification (the
//! report is still written); 2 usage or input errors.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use barcode::candidates::{generate_candidates, write_pool_tsv, GenerationConfig};
use barcode::fasta::{parse_fasta, write_fasta};
use barcode::harness::{run_suite, write_rows_tsv, SUITES};
use barcode::oracle::exact_minimum;
use barcode::random::{random_instance, RandomSpec};
use barcode::report::{write_barcode_tsv, SolutionReport};
use barcode::select::{select_greedy, verify_solution, SelectionConfig, Solution};
use barcode::sequence::InstanceSet;
use barcode::Candidate;

#[derive(Parser)]
#[command(name = "barcode", version, about = "Distinguishing-substring selection for DNA sequence collections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select distinguishers for the sequences in a FASTA file.
    Select(SelectArgs),
    /// Write a uniformly random FASTA instance.
    Random(RandomArgs),
    /// Re-check a selection report against its FASTA input.
    Verify(VerifyArgs),
    /// Run a benchmark suite and emit a TSV of averaged results.
    Bench(BenchArgs),
    /// Exact minimum distinguisher count by exhaustive search (tiny inputs).
    #[command(hide = true)]
    ExactMin(ExactMinArgs),
}

#[derive(clap::Args)]
struct SelectArgs {
    /// Input FASTA file.
    input: PathBuf,
    /// Report destination.
    #[arg(short, long, default_value = "report.json")]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Distinct distinguishers required per sequence pair.
    #[arg(long, default_value_t = 1)]
    redundancy: u32,
    #[arg(long, default_value_t = 1)]
    min_length: usize,
    #[arg(long)]
    max_length: Option<usize>,
    /// Minimum edit distance between selected distinguishers (0 = off).
    #[arg(long, default_value_t = 0)]
    min_edit: usize,
    #[arg(long, default_value_t = 0.0)]
    gc_min: f64,
    #[arg(long, default_value_t = 1.0)]
    gc_max: f64,
    #[arg(long)]
    tm_min: Option<f64>,
    #[arg(long)]
    tm_max: Option<f64>,
    /// Candidate sources: a count K (the first K sequences) or a
    /// comma-separated list of sequence names. Default: all sequences.
    #[arg(long)]
    sources: Option<String>,
    /// FASTA of contaminant sequences; candidates occurring in them are
    /// rejected.
    #[arg(long)]
    forbidden: Option<PathBuf>,
    /// Worker threads (0 = all available). Output is identical either way.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Also dump the candidate pool as TSV.
    #[arg(long)]
    dump_candidates: Option<PathBuf>,
    /// Embed wall-clock timings in the report. Off by default so identical
    /// inputs produce byte-identical reports.
    #[arg(long)]
    emit_timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(clap::Args)]
struct RandomArgs {
    /// Output FASTA file.
    output: PathBuf,
    /// Number of sequences.
    #[arg(short = 'n', long)]
    count: usize,
    /// Length of every sequence.
    #[arg(short = 'l', long)]
    length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Input FASTA file.
    input: PathBuf,
    /// JSON report produced by `select`.
    report: PathBuf,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Suite name: table2-desk, table1-desk, speedup-desk, theorem1.
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// TSV destination; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(clap::Args)]
struct ExactMinArgs {
    /// Input FASTA file (guarded to tiny instances).
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    redundancy: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Select(args) => cmd_select(args),
        Command::Random(args) => cmd_random(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::ExactMin(args) => cmd_exact_min(args),
    };
    match code {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_instance(path: &PathBuf) -> Result<InstanceSet, String> {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_fasta(BufReader::new(file)).map_err(|e| format!("{}: {e}", path.display()))
}

fn install_threads(threads: usize) -> Result<Option<rayon::ThreadPool>, String> {
    if threads == 0 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(Some)
        .map_err(|e| e.to_string())
}

fn parse_sources(spec: &str, instance: &InstanceSet) -> Result<Vec<u32>, String> {
    if let Ok(count) = spec.parse::<usize>() {
        if count == 0 || count > instance.n() {
            return Err(format!(
                "source count {count} out of range 1..={}",
                instance.n()
            ));
        }
        return Ok((0..count as u32).collect());
    }
    spec.split(',')
        .map(|name| {
            let name = name.trim();
            instance
                .by_name(name)
                .map(|s| s.id())
                .ok_or_else(|| format!("unknown source sequence `{name}`"))
        })
        .collect()
}

fn cmd_select(args: SelectArgs) -> Result<ExitCode, String> {
    let instance = read_instance(&args.input)?;
    let sources = match &args.sources {
        Some(spec) => Some(parse_sources(spec, &instance)?),
        None => None,
    };
    let forbidden = match &args.forbidden {
        Some(path) => read_instance(path)?.sequences().to_vec(),
        None => Vec::new(),
    };
    let gen_config = GenerationConfig {
        min_length: args.min_length,
        max_length: args.max_length,
        source_ids: sources,
        gc_bounds: (args.gc_min, args.gc_max),
        tm_bounds: match (args.tm_min, args.tm_max) {
            (None, None) => None,
            (lo, hi) => Some((lo.unwrap_or(f64::MIN), hi.unwrap_or(f64::MAX))),
        },
        forbidden,
        ..Default::default()
    };
    let sel_config = SelectionConfig {
        redundancy: args.redundancy,
        min_edit_distance: args.min_edit,
        ..Default::default()
    };
    let resolved_sources = gen_config
        .resolve_sources(&instance)
        .map_err(|e| e.to_string())?;

    let pool_guard = install_threads(args.threads)?;
    let run = || -> Result<_, String> {
        let pool = generate_candidates(&instance, &gen_config).map_err(|e| e.to_string())?;
        let solution = select_greedy(&pool, &instance, &sel_config).map_err(|e| e.to_string())?;
        Ok((pool, solution))
    };
    let (pool, solution) = match &pool_guard {
        Some(tp) => tp.install(run)?,
        None => run()?,
    };

    let verification = verify_solution(&solution, &instance, sel_config.redundancy);
    if !verification.ok {
        for issue in &verification.issues {
            eprintln!("internal verification failure: {issue}");
        }
        return Err("solution failed internal verification".into());
    }

    if let Some(path) = &args.dump_candidates {
        let file = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
        write_pool_tsv(&pool, BufWriter::new(file)).map_err(|e| e.to_string())?;
    }

    let report = SolutionReport::new(
        &instance,
        &pool,
        &solution,
        &gen_config,
        &sel_config,
        &resolved_sources,
        args.emit_timings,
    );
    let file = File::create(&args.output).map_err(|e| format!("{}: {e}", args.output.display()))?;
    let mut writer = BufWriter::new(file);
    match args.format {
        Format::Json => {
            writer
                .write_all(report.to_json().as_bytes())
                .and_then(|_| writer.write_all(b"\n"))
                .map_err(|e| e.to_string())?;
        }
        Format::Tsv => write_barcode_tsv(&report, writer).map_err(|e| e.to_string())?,
    }

    println!("#Sequences       {}", instance.n());
    println!("#Candidates      {}", pool.stats.candidates);
    println!("#Matches         {}", pool.stats.matches);
    println!(
        "Gen. time        {:.2}",
        pool.stats.generation_time.as_secs_f64()
    );
    println!(
        "Selection time   {:.2}",
        solution.selection_time.as_secs_f64()
    );
    println!("#Distinguishers  {}", solution.distinguishers.len());

    if solution.uncovered.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        let impossible = solution.uncovered.iter().filter(|p| p.impossible).count();
        eprintln!(
            "warning: {} pair(s) below redundancy {} ({} impossible to separate); see {}",
            solution.uncovered.len(),
            sel_config.redundancy,
            impossible,
            args.output.display()
        );
        Ok(ExitCode::from(1))
    }
}

fn cmd_random(args: RandomArgs) -> Result<ExitCode, String> {
    if args.count == 0 || args.length == 0 {
        return Err("count and length must be at least 1".into());
    }
    let instance = random_instance(&RandomSpec {
        count: args.count,
        length: args.length,
        seed: args.seed,
    })
    .map_err(|e| e.to_string())?;
    let file = File::create(&args.output).map_err(|e| format!("{}: {e}", args.output.display()))?;
    write_fasta(&instance, BufWriter::new(file)).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let parsed = read_instance(&args.input)?;
    let text = std::fs::read_to_string(&args.report)
        .map_err(|e| format!("{}: {e}", args.report.display()))?;
    let report = SolutionReport::from_json(&text)
        .map_err(|e| format!("{}: {e}", args.report.display()))?;

    if report.sequences.len() != parsed.n() {
        return Err(format!(
            "report names {} sequences but the FASTA contains {}",
            report.sequences.len(),
            parsed.n()
        ));
    }
    // Rebuild the instance in the report's row order so ids line up.
    let records = report
        .sequences
        .iter()
        .map(|name| {
            parsed
                .by_name(name)
                .map(|s| (name.clone(), s.bases().to_vec()))
                .ok_or_else(|| format!("report references missing sequence `{name}`"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let instance = InstanceSet::from_named_bases(records).map_err(|e| e.to_string())?;

    let solution = Solution {
        distinguishers: report
            .distinguishers
            .iter()
            .map(|d| Candidate {
                id: d.id,
                text: d.text.clone(),
                source_seq: d.perfect_ids.first().copied().unwrap_or(0),
                source_pos: 1,
                perfect: d.perfect_ids.clone(),
                uncertain: Vec::new(),
            })
            .collect(),
        barcodes: report.barcodes.clone(),
        uncovered: report
            .uncovered_pairs
            .iter()
            .map(|p| barcode::select::PairCoverage {
                i: p.i,
                j: p.j,
                count: p.count,
                impossible: p.impossible,
            })
            .collect(),
        iterations: report.iterations,
        selection_time: std::time::Duration::ZERO,
    };

    let verification = verify_solution(&solution, &instance, report.config.redundancy);
    if verification.ok {
        println!("verification passed: {} distinguishers, {} sequences", report.distinguishers.len(), report.n);
        Ok(ExitCode::SUCCESS)
    } else {
        for issue in &verification.issues {
            eprintln!("mismatch: {issue}");
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, String> {
    let pool_guard = install_threads(args.threads)?;
    let run = || run_suite(&args.suite, args.seed);
    let rows = match &pool_guard {
        Some(tp) => tp.install(run),
        None => run(),
    }
    .ok_or_else(|| format!("unknown suite `{}` (expected one of {})", args.suite, SUITES.join(", ")))?;
    match &args.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
            write_rows_tsv(&rows, BufWriter::new(file)).map_err(|e| e.to_string())?;
        }
        None => {
            let stdout = std::io::stdout();
            write_rows_tsv(&rows, stdout.lock()).map_err(|e| e.to_string())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_exact_min(args: ExactMinArgs) -> Result<ExitCode, String> {
    let instance = read_instance(&args.input)?;
    let optimum = exact_minimum(&instance, args.redundancy).map_err(|e| e.to_string())?;
    println!("{optimum}");
    Ok(ExitCode::SUCCESS)
}
