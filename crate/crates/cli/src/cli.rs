use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gswf",
    version,
    about = "Irrationality probability of three-alternative social welfare functions"
)]
pub struct Cli {
    /// Output format; `curve` defaults to csv, everything else to json.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier-Walsh spectrum of one function.
    Spectrum(SpectrumArgs),
    /// Probability W of an irrational outcome.
    Rationality(RationalityArgs),
    /// Run bound checks and report each as PASS or FAIL.
    Verify(VerifyArgs),
    /// Extremal W over classes of functions.
    Search(SearchArgs),
    /// Monte Carlo estimate of W.
    Simulate(SimulateArgs),
    /// Function families and presets.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// CSV plot data for the asymptotic claims.
    Curve(CurveArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// `maj:5`, `thr:15:12`, `hex:3:e8`, ...
    pub function: String,
}

#[derive(Debug, Args, Clone)]
pub struct TripleArgs {
    /// Preset name (see `catalog list`).
    #[arg(long, conflicts_with_all = ["f", "g", "h"])]
    pub preset: Option<String>,
    /// Voter count for presets.
    #[arg(long)]
    pub n: Option<usize>,
    /// Dictator voter for `dictator_triple`.
    #[arg(long)]
    pub voter: Option<usize>,
    /// Parameter of `threshold_instability`.
    #[arg(long)]
    pub q: Option<f64>,
    /// Function for the pair (A,B).
    #[arg(long, requires_all = ["g", "h"])]
    pub f: Option<String>,
    /// Function for the pair (B,C).
    #[arg(long, requires_all = ["f", "h"])]
    pub g: Option<String>,
    /// Function for the pair (C,A).
    #[arg(long, requires_all = ["f", "g"])]
    pub h: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct DistArgs {
    /// Uniform distribution over the six orders (the default).
    #[arg(long, conflicts_with_all = ["alpha", "beta", "gamma", "triples"])]
    pub uniform: bool,
    /// Pr[110] = Pr[001].
    #[arg(long, requires = "beta", conflicts_with = "triples")]
    pub alpha: Option<f64>,
    /// Pr[011] = Pr[100].
    #[arg(long, requires = "alpha", conflicts_with = "triples")]
    pub beta: Option<f64>,
    /// Pr[101] = Pr[010]; defaults to 1/2 - alpha - beta.
    #[arg(long, requires = "alpha", conflicts_with = "triples")]
    pub gamma: Option<f64>,
    /// General per-voter distribution `p110,p011,p101,p001,p100,p010`.
    #[arg(long)]
    pub triples: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Formula for even product distributions, oracle otherwise.
    Auto,
    Formula,
    Oracle,
    Mc,
    /// Formula and oracle side by side.
    Both,
}

#[derive(Debug, Args)]
pub struct RationalityArgs {
    #[command(flatten)]
    pub triple: TripleArgs,
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Seed for Monte Carlo.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run every registered check.
    #[arg(long, conflicts_with = "check", required_unless_present_any = ["check", "list"])]
    pub all: bool,
    /// Run one check by name (repeatable).
    #[arg(long)]
    pub check: Vec<String>,
    /// Print the registered check names.
    #[arg(long)]
    pub list: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    MinW,
    MaxW,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    /// Class for all three functions, e.g. `balanced,monotone`.
    #[arg(long, default_value = "non_constant")]
    pub class: String,
    #[arg(long)]
    pub class_f: Option<String>,
    #[arg(long)]
    pub class_g: Option<String>,
    #[arg(long)]
    pub class_h: Option<String>,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::MaxW)]
    pub objective: ObjectiveArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Required in random mode.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Skip triples with f = g = h a dictator or anti-dictator.
    #[arg(long)]
    pub exclude_dictators: bool,
    /// Also append the result as one JSON line to this file.
    #[arg(long)]
    pub append: Option<PathBuf>,
    #[command(flatten)]
    pub dist: DistArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub triple: TripleArgs,
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    MajorityStability,
    Instability,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(value_enum)]
    pub kind: CurveKind,
    /// Odd voter counts: `3,5,7` or the inclusive range `3..19` (odd members).
    #[arg(long)]
    pub n: String,
    /// Comma-separated correlations for `majority-stability`.
    #[arg(long, default_value = "0.3333333333333333")]
    pub rho: String,
    /// Parameter for `instability`.
    #[arg(long, default_value_t = 0.2)]
    pub q: f64,
}
