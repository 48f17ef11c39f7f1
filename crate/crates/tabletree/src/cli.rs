//! Command-line front door: profile a table, search dependencies, emit
//! schema trees, materialize features, and benchmark the search cost.
//!
//! Exit codes: 0 success, 1 usage or input errors, 2 when a search found no
//! solution within its constraints. Data goes to stdout, diagnostics to
//! stderr, and identical invocations produce identical stdout bytes.

use std::fs::File;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::best::{
    shortest_min_error, shortest_minimal_unique, shortest_with_error_bound, BestSolution, Optimize,
    SearchConfig,
};
use crate::colset::ColumnSet;
use crate::error::{Error, Result};
use crate::features::{materialize_features, plan_features, AggregationConfig};
use crate::measure::{descendants, ErrorMeasure, EvalCounter};
use crate::search::{be_minimal_unique, fa_minimal_unique, random_permutation};
use crate::synth::{planted_pair, planted_single};
use crate::table::{LoadOptions, Table};
use crate::tree::build_schema_tree;

#[derive(Parser)]
#[command(
    name = "tabletree",
    version,
    about = "Single-table profiling: minimal uniques, functional dependencies, schema trees, features"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the shortest minimal unique column combination.
    Profile(ProfileArgs),
    /// Find the best determinant set for a target column combination.
    Fd(FdArgs),
    /// Build the schema tree and print it as JSON or DOT.
    Schema(SchemaArgs),
    /// Plan and materialize per-anchor features as delimited text.
    Features(FeatureArgs),
    /// Benchmark forward addition against backward elimination on planted
    /// keys.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Error bound in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    /// Largest solution size considered.
    #[arg(long = "max-size", default_value_t = 3)]
    max_size: usize,
    /// Consecutive failed attempts before a search gives up.
    #[arg(long = "max-failures", default_value_t = 10)]
    max_failures: usize,
    /// RNG seed; identical seeds give identical output.
    #[arg(long, env = "TABLETREE_SEED", default_value_t = 0)]
    seed: u64,
    /// Dependency error measure.
    #[arg(long, value_enum, default_value_t = MeasureArg::G3)]
    measure: MeasureArg,
    /// Field delimiter of the input (and of feature output).
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Output format; defaults to json (csv for `features`).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Search flavor: shortest size, or minimal error then size.
    #[arg(long, value_enum, default_value_t = OptimizeArg::Size)]
    optimize: OptimizeArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    G3,
    Ratio,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
    Dot,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OptimizeArg {
    Size,
    #[value(name = "error-then-size")]
    ErrorThenSize,
}

#[derive(Args)]
struct ProfileArgs {
    /// Input delimited file.
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct FdArgs {
    input: PathBuf,
    /// Target column names, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    target: Vec<String>,
    /// Candidate determinant columns; defaults to every other column (exact
    /// descendants of the target for the ratio measure).
    #[arg(long, value_delimiter = ',')]
    candidates: Option<Vec<String>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SchemaArgs {
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct FeatureArgs {
    input: PathBuf,
    /// Anchor column the features describe.
    #[arg(long, required = true)]
    anchor: String,
    /// Marker written for null feature values.
    #[arg(long = "null-marker", default_value = "")]
    null_marker: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BenchArgs {
    /// Number of columns in the synthetic table.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Planted minimal-unique sizes: one size, or two comma-separated sizes
    /// for the preference comparison.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    plant: Vec<usize>,
    /// Number of seeded trials.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    common: Common,
}

/// Parses arguments, runs the requested subcommand, returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    let outcome = match cli.command {
        Command::Profile(args) => cmd_profile(args),
        Command::Fd(args) => cmd_fd(args),
        Command::Schema(args) => cmd_schema(args),
        Command::Features(args) => cmd_features(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

impl Common {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            epsilon: self.epsilon,
            max_size: self.max_size,
            max_failures: self.max_failures,
            seed: self.seed,
            measure: match self.measure {
                MeasureArg::G3 => ErrorMeasure::G3,
                MeasureArg::Ratio => ErrorMeasure::Ratio,
            },
            optimize: match self.optimize {
                OptimizeArg::Size => Optimize::Size,
                OptimizeArg::ErrorThenSize => Optimize::ErrorThenSize,
            },
        }
    }

    fn load_options(&self) -> Result<LoadOptions> {
        if !self.delimiter.is_ascii() {
            return Err(Error::InvalidConfig(format!(
                "delimiter `{}` is not a single ASCII byte",
                self.delimiter
            )));
        }
        Ok(LoadOptions {
            delimiter: self.delimiter as u8,
            ..LoadOptions::default()
        })
    }

    fn format_or(&self, default: FormatArg, allowed: &[FormatArg]) -> Result<FormatArg> {
        let format = self.format.unwrap_or(default);
        if allowed.contains(&format) {
            Ok(format)
        } else {
            Err(Error::InvalidConfig(
                "unsupported --format for this command".into(),
            ))
        }
    }

    fn load(&self, path: &PathBuf) -> Result<Table> {
        let file = File::open(path)?;
        let table = Table::load(file, &self.load_options()?)?;
        if table.duplicates_dropped() > 0 {
            eprintln!(
                "warning: dropped {} duplicate row(s)",
                table.duplicates_dropped()
            );
        }
        Ok(table)
    }
}

#[derive(Serialize)]
struct SolutionReport {
    columns: Vec<String>,
    size: usize,
    error: f64,
    runs: usize,
    evals: u64,
}

impl SolutionReport {
    fn new(table: &Table, best: &BestSolution) -> Self {
        SolutionReport {
            columns: table.names(&best.columns),
            size: best.columns.len(),
            runs: best.runs_used,
            error: best.achieved_error,
            evals: best.evals,
        }
    }
}

#[derive(Serialize)]
struct SearchReport {
    command: &'static str,
    input: String,
    rows: usize,
    columns: usize,
    duplicates_dropped: usize,
    epsilon: f64,
    max_size: usize,
    max_failures: usize,
    seed: u64,
    measure: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    candidates: Option<Vec<String>>,
    solution: Option<SolutionReport>,
}

fn print_search_report(report: &SearchReport, format: FormatArg) {
    match format {
        FormatArg::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
        _ => {
            if let Some(target) = &report.target {
                println!("target: {}", target.join(", "));
            }
            match &report.solution {
                Some(s) => {
                    println!("columns: {}", s.columns.join(", "));
                    println!("size: {}", s.size);
                    println!("error: {}", s.error);
                    println!("runs: {}", s.runs);
                    println!("evals: {}", s.evals);
                }
                None => println!("no solution within the given constraints"),
            }
            println!("seed: {}", report.seed);
        }
    }
}

fn cmd_profile(args: ProfileArgs) -> Result<i32> {
    let format = args
        .common
        .format_or(FormatArg::Json, &[FormatArg::Json, FormatArg::Text])?;
    let cfg = args.common.config();
    cfg.validate()?;
    let table = args.common.load(&args.input)?;
    let best = shortest_minimal_unique(&table, &cfg)?;
    let report = SearchReport {
        command: "profile",
        input: args.input.display().to_string(),
        rows: table.row_count(),
        columns: table.col_count(),
        duplicates_dropped: table.duplicates_dropped(),
        epsilon: cfg.epsilon,
        max_size: cfg.max_size,
        max_failures: cfg.max_failures,
        seed: cfg.seed,
        measure: cfg.measure.name(),
        target: None,
        candidates: None,
        solution: best.as_ref().map(|b| SolutionReport::new(&table, b)),
    };
    print_search_report(&report, format);
    Ok(if best.is_some() { 0 } else { 2 })
}

fn cmd_fd(args: FdArgs) -> Result<i32> {
    let format = args
        .common
        .format_or(FormatArg::Json, &[FormatArg::Json, FormatArg::Text])?;
    let cfg = args.common.config();
    cfg.validate()?;
    let table = args.common.load(&args.input)?;

    let y: ColumnSet = args
        .target
        .iter()
        .map(|name| table.column_id(name))
        .collect::<Result<_>>()?;
    let candidates: ColumnSet = match &args.candidates {
        Some(names) => names
            .iter()
            .map(|name| table.column_id(name))
            .collect::<Result<_>>()?,
        None => match cfg.measure {
            ErrorMeasure::G3 => table.all_columns().difference(&y),
            ErrorMeasure::Ratio => {
                let mut scratch = EvalCounter::new();
                descendants(&table, &y, 0.0, cfg.measure, &mut scratch)?.difference(&y)
            }
        },
    };

    let best = match cfg.optimize {
        Optimize::Size => shortest_with_error_bound(&table, &y, &candidates, &cfg)?,
        Optimize::ErrorThenSize => shortest_min_error(&table, &y, &candidates, &cfg)?,
    };
    let report = SearchReport {
        command: "fd",
        input: args.input.display().to_string(),
        rows: table.row_count(),
        columns: table.col_count(),
        duplicates_dropped: table.duplicates_dropped(),
        epsilon: cfg.epsilon,
        max_size: cfg.max_size,
        max_failures: cfg.max_failures,
        seed: cfg.seed,
        measure: cfg.measure.name(),
        target: Some(table.names(&y)),
        candidates: Some(table.names(&candidates)),
        solution: best.as_ref().map(|b| SolutionReport::new(&table, b)),
    };
    print_search_report(&report, format);
    Ok(if best.is_some() { 0 } else { 2 })
}

fn cmd_schema(args: SchemaArgs) -> Result<i32> {
    let format = args
        .common
        .format_or(FormatArg::Json, &[FormatArg::Json, FormatArg::Dot])?;
    let cfg = args.common.config();
    cfg.validate()?;
    let table = args.common.load(&args.input)?;
    let tree = build_schema_tree(&table, &cfg)?;
    match format {
        FormatArg::Dot => print!("{}", tree.to_dot()),
        _ => print!("{}", tree.to_json()),
    }
    Ok(0)
}

fn cmd_features(args: FeatureArgs) -> Result<i32> {
    args.common.format_or(FormatArg::Csv, &[FormatArg::Csv])?;
    let cfg = args.common.config();
    cfg.validate()?;
    let table = args.common.load(&args.input)?;
    let anchor = table.column_id(&args.anchor)?;
    let tree = build_schema_tree(&table, &cfg)?;
    let plan = plan_features(&tree, &table, anchor, &AggregationConfig::default())?;
    let features = materialize_features(&table, &plan)?;
    for (feature, count) in &features.violations {
        eprintln!("warning: feature `{feature}`: {count} row(s) disagree with the modal value");
    }
    print!(
        "{}",
        features.to_delimited(args.common.load_options()?.delimiter, &args.null_marker)
    );
    Ok(0)
}

#[derive(Serialize)]
struct EvalStats {
    min: u64,
    median: u64,
    max: u64,
}

impl EvalStats {
    fn from(mut samples: Vec<u64>) -> Option<Self> {
        if samples.is_empty() {
            return None;
        }
        samples.sort_unstable();
        Some(EvalStats {
            min: samples[0],
            median: samples[samples.len() / 2],
            max: samples[samples.len() - 1],
        })
    }
}

#[derive(Serialize)]
struct PreferenceReport {
    wins_shorter: usize,
    frequency: f64,
}

#[derive(Serialize)]
struct BenchReport {
    command: &'static str,
    columns: usize,
    planted: Vec<usize>,
    trials: usize,
    seed: u64,
    fa_evals: Option<EvalStats>,
    be_evals: Option<EvalStats>,
    preference: Option<PreferenceReport>,
}

fn cmd_bench(args: BenchArgs) -> Result<i32> {
    let format = args
        .common
        .format_or(FormatArg::Json, &[FormatArg::Json, FormatArg::Text])?;
    if args.plant.is_empty() || args.plant.len() > 2 {
        return Err(Error::InvalidConfig(
            "--plant takes one or two comma-separated sizes".into(),
        ));
    }
    let mut rng = StdRng::seed_from_u64(args.common.seed);
    let (table, sets) = if args.plant.len() == 1 {
        let (t, a) = planted_single(args.n, args.plant[0], args.common.seed)?;
        (t, vec![a])
    } else {
        let (t, a, b) = planted_pair(args.n, args.plant[0], args.plant[1], args.common.seed)?;
        (t, vec![a, b])
    };
    let d_max = args.plant.iter().copied().max().unwrap();

    let mut fa_evals = Vec::with_capacity(args.trials);
    let mut be_evals = Vec::with_capacity(args.trials);
    let mut wins_shorter = 0usize;
    for _ in 0..args.trials {
        let perm = random_permutation(args.n, &mut rng)?;
        let mut counter = EvalCounter::new();
        let out = fa_minimal_unique(&table, &perm, d_max, &mut counter)?;
        fa_evals.push(out.evals);
        if sets.len() == 2 {
            if let Some(solution) = &out.solution {
                if *solution == sets[0] {
                    wins_shorter += 1;
                }
            }
        }
        let mut counter = EvalCounter::new();
        be_minimal_unique(&table, &perm, &mut counter)?;
        be_evals.push(counter.value());
    }

    let report = BenchReport {
        command: "bench",
        columns: args.n,
        planted: args.plant.clone(),
        trials: args.trials,
        seed: args.common.seed,
        fa_evals: EvalStats::from(fa_evals),
        be_evals: EvalStats::from(be_evals),
        preference: (sets.len() == 2 && args.trials > 0).then(|| PreferenceReport {
            wins_shorter,
            frequency: wins_shorter as f64 / args.trials as f64,
        }),
    };
    match format {
        FormatArg::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        _ => {
            println!("columns: {}", report.columns);
            println!(
                "planted: {}",
                report
                    .planted
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            println!("trials: {}", report.trials);
            if let (Some(fa), Some(be)) = (&report.fa_evals, &report.be_evals) {
                println!(
                    "fa evals: min {} median {} max {}",
                    fa.min, fa.median, fa.max
                );
                println!(
                    "be evals: min {} median {} max {}",
                    be.min, be.median, be.max
                );
            }
            if let Some(p) = &report.preference {
                println!("shorter-set wins: {} ({:.4})", p.wins_shorter, p.frequency);
            }
        }
    }
    Ok(0)
}
