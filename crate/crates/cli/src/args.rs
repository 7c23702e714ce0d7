use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use etsearch::BoundMode;

#[derive(Debug, Parser)]
#[command(
    name = "etsearch",
    version,
    about = "Exhaustive search for elementary trapping sets of LDPC codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate every ETS in range and print the multiplicity table.
    Analyze(AnalyzeArgs),
    /// Print the per-size bound vector and the expansion table.
    Bounds(BoundsArgs),
    /// Compare the search against brute-force enumeration on generated graphs.
    OracleCheck(OracleCheckArgs),
    /// Classify one variable-node set.
    Classify(ClassifyArgs),
    /// Write a manifest of seeded random fixtures.
    Corpus(CorpusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Heuristic,
}

impl From<ModeArg> for BoundMode {
    fn from(m: ModeArg) -> BoundMode {
        match m {
            ModeArg::Exact => BoundMode::Exact,
            ModeArg::Heuristic => BoundMode::Heuristic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub alist: PathBuf,
    #[arg(long)]
    pub a_max: usize,
    #[arg(long)]
    pub b_max: usize,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Add the FEAS* column.
    #[arg(long)]
    pub feas_star: bool,
    /// Smallest size reported; 1 exposes single-node rows.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub min_a: u64,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Write one line per applied expansion to this file.
    #[arg(long)]
    pub audit_log: Option<PathBuf>,
    /// Leave wall-clock times out of the report.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["alist", "degrees"]))]
pub struct BoundsArgs {
    #[arg(long)]
    pub alist: Option<PathBuf>,
    /// Variable-node degrees, e.g. `2,3,5,10`.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<usize>>,
    /// Girth; required with `--degrees`, computed from `--alist` otherwise.
    #[arg(long, short = 'g')]
    pub girth: Option<usize>,
    #[arg(long)]
    pub a_max: usize,
    #[arg(long)]
    pub b_max: usize,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("fixtures").required(true).args(["manifest", "genspec"]))]
pub struct OracleCheckArgs {
    /// Corpus manifest, one fixture per line.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// A single fixture line: `seed n m dc_max d:k,d:k girth_min`.
    #[arg(long)]
    pub genspec: Option<String>,
    #[arg(long)]
    pub a_max: usize,
    #[arg(long)]
    pub b_max: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["exact", "heuristic"])]
    pub modes: Vec<ModeArg>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Lower every bound below `a_max` by this much (negative control).
    #[arg(long, hide = true, default_value_t = 0)]
    pub truncate_bounds: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub alist: PathBuf,
    /// Variable indices, separated by spaces or commas.
    #[arg(required = true, num_args = 1..)]
    pub vars: Vec<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, default_value_t = 12)]
    pub n_min: usize,
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5])]
    pub degrees: Vec<usize>,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}
