use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "clausen",
    version,
    about = "Circular and elliptic Clausen hierarchies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the normalized theta function θ₁(x|τ)/θ₁′(0|τ) on a real grid.
    Theta(ThetaArgs),
    /// Tabulate the unwrapped argument of the normalized theta function.
    Phase(ThetaArgs),
    /// Build a hierarchy tower and tabulate F_n, A(n) and B(n).
    Tower(TowerArgs),
    /// Sweep residuals of the truncated generating series.
    Generating(GeneratingArgs),
    /// Run verification suites and emit JSON reports.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedArg {
    Polylog,
    Circular,
    Elliptic,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    /// Real part of τ.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub tau_re: f64,
    /// Imaginary part of τ.
    #[arg(long, default_value_t = 1.0)]
    pub tau_im: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; relative paths resolve against $CLAUSEN_OUTPUT_DIR when set.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Grid as LO HI POINTS.
    #[arg(long, num_args = 3, value_names = ["LO", "HI", "POINTS"], allow_hyphen_values = true)]
    pub grid: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[command(flatten)]
    pub tau: TauArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    #[arg(long, value_enum, default_value_t = SeedArg::Elliptic)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub tau: TauArgs,
    /// Highest order N.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=32))]
    pub n: u32,
    /// Initial interpolation resolution.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(16..=4096))]
    pub resolution: u64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GeneratingArgs {
    #[arg(long, value_enum, default_value_t = SeedArg::Circular)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub tau: TauArgs,
    /// Truncation order N.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=32))]
    pub n: u32,
    /// Deformation parameter λ; repeat for several values.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Vec<f64>,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,
    /// Report ∂𝓕 - λ𝓕 without the F_1′ and truncation corrections.
    #[arg(long, visible_alias = "paper-form")]
    pub uncorrected: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all` for every suite in order.
    #[arg(long, default_value = "all", value_parser = [
        "all", "theta-cross", "backbone", "degeneration", "boundary", "phase", "generating", "clausen-values",
    ])]
    pub suite: String,
    /// Seed for the sampling stream.
    #[arg(long)]
    pub rng_seed: Option<u64>,
    /// Report file; relative paths resolve against $CLAUSEN_OUTPUT_DIR when set.
    #[arg(long)]
    pub output: Option<PathBuf>,
}
