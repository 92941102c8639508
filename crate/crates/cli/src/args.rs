//! Command line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qexp", version, about = "Quantum Rényi information measures and error exponents")]
pub struct Cli {
    /// Unit of every reported entropic quantity (rates given with `--rate`
    /// are read in the same unit).
    #[arg(long, value_enum, default_value_t = Units::Nats, global = true)]
    pub units: Units,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    /// Factor from nats to the chosen unit.
    pub fn scale(self) -> f64 {
        match self {
            Units::Nats => 1.0,
            Units::Bits => 1.0 / std::f64::consts::LN_2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rényi divergence D_α(ρ‖σ) at one or more orders.
    Divergence(DivergenceArgs),
    /// Rényi (i = 1) or Augustin (i = 2) information and its optimal state.
    Info(InfoArgs),
    /// Rényi or Augustin mean (the optimal state) with its information value.
    Mean(InfoArgs),
    /// Order-α capacity sup_P I_α(P, W) and the mean at the optimal prior.
    Capacity(CapacityArgs),
    /// Auxiliary function E0 on a grid of s values, as CSV.
    E0Curve(E0CurveArgs),
    /// Channel or source error exponents at one or more rates, as CSV.
    Exponent(ExponentArgs),
    /// Run property suites and print their reports as JSON.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct DivergenceArgs {
    /// First argument ρ (matrix JSON).
    pub rho: PathBuf,
    /// Second argument σ (matrix JSON).
    pub sigma: PathBuf,
    #[arg(long, default_value = "petz")]
    pub kind: String,
    /// Order α; repeat for several. Accepts `inf`.
    #[arg(long = "alpha", required = true, num_args = 1)]
    pub alphas: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct PriorArgs {
    /// Prior JSON file.
    #[arg(long, conflicts_with = "uniform")]
    pub prior: Option<PathBuf>,
    /// Use the uniform prior.
    #[arg(long)]
    pub uniform: bool,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    /// Channel JSON file.
    #[arg(long)]
    pub channel: PathBuf,
    #[command(flatten)]
    pub prior: PriorArgs,
    /// `1` for Rényi (Sibson) information, `2` for Augustin information.
    #[arg(long = "i", default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub variant: u8,
    #[arg(long, default_value = "petz")]
    pub kind: String,
    #[arg(long)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long = "i", default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub variant: u8,
    #[arg(long, default_value = "petz")]
    pub kind: String,
    #[arg(long)]
    pub alpha: f64,
    /// Seed of the random restarts of the prior search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CurveOutput {
    /// Write the CSV here instead of stdout; the manifest goes next to it
    /// as `<out>.manifest.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Explicit manifest path (required for a manifest when writing to
    /// stdout).
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct E0CurveArgs {
    /// Channel JSON file (channel auxiliary functions).
    #[arg(long, conflicts_with = "source", required_unless_present = "source")]
    pub channel: Option<PathBuf>,
    /// Source JSON file (source auxiliary functions).
    #[arg(long)]
    pub source: Option<PathBuf>,
    #[command(flatten)]
    pub prior: PriorArgs,
    #[arg(long = "i", default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub variant: u8,
    #[arg(long, default_value = "petz")]
    pub kind: String,
    /// Type-dependent source auxiliary instead of the i.i.d. one.
    #[arg(long, requires = "source")]
    pub type_dependent: bool,
    /// Values of s; repeat or separate by commas.
    #[arg(long = "s-grid", required = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub s_grid: Vec<f64>,
    #[command(flatten)]
    pub output: CurveOutput,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    /// Channel JSON file.
    #[arg(long, conflicts_with = "source", required_unless_present = "source")]
    pub channel: Option<PathBuf>,
    /// Source JSON file.
    #[arg(long)]
    pub source: Option<PathBuf>,
    /// Channel prior; without it (and without `--uniform`) the exponent is
    /// optimized over priors.
    #[command(flatten)]
    pub prior: PriorArgs,
    /// Fixed type for the type-dependent source exponent (prior JSON).
    #[arg(long = "type", requires = "source")]
    pub fixed_type: Option<PathBuf>,
    /// Rates; repeat or separate by commas.
    #[arg(long = "rate", required = true, value_delimiter = ',')]
    pub rates: Vec<f64>,
    /// Upper end of the s search.
    #[arg(long, default_value_t = qexp_core::exponents::S_UPPER)]
    pub s_max: f64,
    /// Seed of the random restarts of the prior search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: CurveOutput,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Suite name, comma-separated list, `all` or `none`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Run seed; every instance seed is derived from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random instances per suite (defaults differ per suite).
    #[arg(long)]
    pub trials: Option<usize>,
    /// Dimension for suites whose instances are not tied to qubits (1 to 8).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
