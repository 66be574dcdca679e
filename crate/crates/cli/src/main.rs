mod analyze;
mod experiment;
mod golden;
mod input;
mod oracle;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::input::Seed;

/// Seed used when neither `--seed` nor `PPSZ_LAB_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_100_613;

#[derive(Debug, Parser)]
#[command(name = "ppsz-lab", version, about = "PPSZ-family k-SAT solvers, oracles and bound constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a DIMACS formula with repeated randomized runs.
    Solve(SolveArgs),
    /// Compute bound constants, tables and derived objects.
    #[command(subcommand)]
    Analyze(AnalyzeTarget),
    /// Brute-force facts about a small formula.
    Oracle(OracleArgs),
    /// Seeded statistical studies with CSV output.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Ppsz,
    Schoening,
    Comb,
    Wrapper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InnerArg {
    Ppsz,
    Schoening,
    Comb,
}

#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    /// Integer seed or `random`.
    #[arg(long, env = "PPSZ_LAB_SEED", default_value_t = Seed::Fixed(DEFAULT_SEED))]
    pub seed: Seed,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// DIMACS file, or `-` for stdin.
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgoArg::Comb)]
    pub algo: AlgoArg,
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Maximum repetitions.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Critical fraction targeted by the wrapper.
    #[arg(long)]
    pub cstar: Option<f64>,
    /// Algorithm run inside the wrapper.
    #[arg(long, value_enum, default_value_t = InnerArg::Comb)]
    pub inner: InnerArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Main,
    Weak,
    Appendix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Piecewise,
    ClampLinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    DefiningLeaf,
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeTarget {
    /// Bound constant for k = 3 or 4 with every intermediate quantity.
    Bounds(BoundsArgs),
    /// Clause-type and pattern tables of the preprocessed walk.
    Istt(ReportArgs),
    /// A distribution curve with its integrals.
    Hcurve(HcurveArgs),
    /// Bounded resolution closure, as DIMACS.
    Resolve(ResolveArgs),
    /// Critical clause tree for one variable, with its minimal cuts.
    Tree(TreeArgs),
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// JSON file of expected values and tolerances; a breach exits with 1.
    #[arg(long)]
    pub golden: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = Variant::Main)]
    pub variant: Variant,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub cstar: Option<f64>,
    /// Preprocessing share for the weak and appendix variants.
    #[arg(long)]
    pub mstar: Option<f64>,
    /// Search for the optimal θ instead of using the fixed one.
    #[arg(long)]
    pub optimize: bool,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct HcurveArgs {
    #[arg(long)]
    pub theta: f64,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    /// Defaults to the piecewise curve for k = 3, clamp-linear otherwise.
    #[arg(long, value_enum)]
    pub kind: Option<CurveKind>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    pub path: PathBuf,
    /// Width bound; defaults to max(1, ⌊log₂ |vbl(F)|⌋).
    #[arg(long)]
    pub s: Option<usize>,
    /// Print the deduction of every derived clause as comments.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    pub path: PathBuf,
    /// Root variable (1-based).
    #[arg(long)]
    pub var: u32,
    /// Satisfying assignment as a bit string; defaults to the least model.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Comma-separated defining variables.
    #[arg(long, value_delimiter = ',')]
    pub defining: Vec<u32>,
    #[arg(long, value_enum, default_value_t = ModeArg::DefiningLeaf)]
    pub mode: ModeArg,
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub node_budget: Option<usize>,
    /// Certify each cut against the closure of this width.
    #[arg(long)]
    pub certify: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    PpszSuccess,
    SchoeningSuccess,
    ForcedFraction,
    WrapperPreservation,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    pub kind: ExperimentKind,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, default_value_t = 20)]
    pub instances: u64,
    #[arg(long, default_value_t = 10_000)]
    pub runs: u64,
    /// Clauses per instance; defaults to a near-threshold density.
    #[arg(long)]
    pub clauses: Option<usize>,
    /// Use planted formulas with exactly one model.
    #[arg(long)]
    pub unique: bool,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn main() -> ExitCode {
    // Die quietly when piped into `head` and friends.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve::run(&args),
        Command::Analyze(target) => analyze::run(&target),
        Command::Oracle(args) => oracle::run(&args),
        Command::Experiment(args) => experiment::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
