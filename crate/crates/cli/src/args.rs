use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "beatty-lab", version, about = "Sums of arithmetic functions over Beatty sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Master seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Significant digits for `dec:` values.
    #[arg(long, global = true, default_value_t = beatty_core::alpha::DEFAULT_PRECISION)]
    pub precision: u32,

    /// Output file; stdout when absent. For `sieve` this is the binary table.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate f on 1..=N; optionally write the binary table to --out.
    Sieve(SieveArgs),
    /// Decide membership in the Beatty set floor(n alpha + beta).
    Membership(MembershipArgs),
    /// Split S_{alpha,beta}(f, x) into main term, sawtooth sums and residual.
    Decompose(DecomposeArgs),
    /// Beatty error against S(f, x)/alpha over a geometric grid of x.
    ErrorCurve(ErrorCurveArgs),
    /// Coefficient energy of Q(f, x) against its FFT quadrature.
    QEnergy(QEnergyArgs),
    /// Monte Carlo estimate of the maximal L2 integral.
    MaximalL2(MaximalArgs),
    /// Random-sign walks S_x with their LIL statistic.
    Lil(LilArgs),
    /// Per-seed witness max |S_x| / sqrt(x log log x).
    LowerBound(LowerBoundArgs),
    /// Maximal partial sums of a trigonometric polynomial against its energy.
    CarlesonCheck(CarlesonArgs),
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    /// Function spec, e.g. tau2, prime, phi, chi4.
    #[arg(long = "f")]
    pub f: String,
    #[arg(long = "n")]
    pub n: usize,
    /// Print dyadic growth ratios instead of the summary.
    #[arg(long)]
    pub growth: bool,
}

#[derive(Debug, Args)]
pub struct MembershipArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "0")]
    pub beta: String,
    /// Report every m in 1..=x.
    #[arg(long = "x", conflicts_with = "m", required_unless_present = "m")]
    pub x: Option<u64>,
    /// Report only these m.
    #[arg(long = "m", value_delimiter = ',', allow_negative_numbers = true)]
    pub m: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long = "f")]
    pub f: String,
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "0")]
    pub beta: String,
    #[arg(long = "x")]
    pub x: u64,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    /// Shorthand for --format json.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ErrorCurveArgs {
    #[arg(long = "f")]
    pub f: String,
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "0")]
    pub beta: String,
    #[arg(long)]
    pub xmax: u64,
    #[arg(long, default_value_t = 8)]
    pub xmin: u64,
    #[arg(long, default_value_t = beatty_core::grid::DEFAULT_RATIO)]
    pub ratio: f64,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct QEnergyArgs {
    #[arg(long = "f")]
    pub f: String,
    #[arg(long = "x")]
    pub x: u64,
    /// Quadrature points; defaults to 2K + 2.
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MaximalArgs {
    #[arg(long = "f")]
    pub f: String,
    #[arg(long = "X")]
    pub x_max: u64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub ell: i64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct LilArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long = "X")]
    pub x_max: u64,
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    #[arg(long, default_value_t = beatty_core::grid::DEFAULT_RATIO)]
    pub ratio: f64,
}

#[derive(Debug, Args)]
pub struct LowerBoundArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long = "X")]
    pub x_max: u64,
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffKind {
    /// c_k = -1/(2 pi i k).
    Sawtooth,
    /// Independent random signs.
    Signs,
}

impl CoeffKind {
    pub fn name(self) -> &'static str {
        match self {
            CoeffKind::Sawtooth => "sawtooth",
            CoeffKind::Signs => "signs",
        }
    }
}

#[derive(Debug, Args)]
pub struct CarlesonArgs {
    #[arg(long = "Y")]
    pub y: usize,
    #[arg(long, value_enum, default_value_t = CoeffKind::Sawtooth)]
    pub coeffs: CoeffKind,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}
