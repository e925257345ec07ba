use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gq_core::bs::Params;

#[derive(Parser)]
#[command(name = "gq", version, about = "Bohr–Sommerfeld groupoids of the Poisson pencil on CP_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// List the units of a window with their c-coordinates
    Enumerate(EnumerateArgs),
    /// Run a verification suite and print a JSON report
    Verify(VerifyArgs),
    /// Convolve two algebra elements given as JSON files
    Convolve(ConvolveArgs),
}

/// `ln2` is accepted for the dyadic examples.
fn parse_hbar(s: &str) -> Result<f64, String> {
    match s.trim() {
        "ln2" => Ok(std::f64::consts::LN_2),
        v => v.parse::<f64>().map_err(|e| e.to_string()),
    }
}

#[derive(Args, Clone)]
pub struct Geometry {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: f64,
    /// Decimal, or `ln2`
    #[arg(long, default_value = "1", value_parser = parse_hbar)]
    pub hbar: f64,
    /// Slack when locating the lowest admissible levels
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

impl Geometry {
    pub fn params(&self) -> anyhow::Result<Params> {
        Ok(Params::new(self.n, self.t, self.hbar)?.with_tol(self.tol)?)
    }
}

#[derive(Args, Clone)]
pub struct WindowArgs {
    #[arg(long, default_value_t = 3)]
    pub max_level: i64,
    #[arg(long, default_value_t = 2)]
    pub max_shift: i64,
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    #[arg(long, conflicts_with_all = ["csv", "svg"])]
    pub json: bool,
    #[arg(long, conflicts_with = "svg")]
    pub csv: bool,
    /// Only for n = 1 or 2
    #[arg(long)]
    pub svg: bool,
    /// Write here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub geometry: Geometry,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Include the arrows in JSON output
    #[arg(long)]
    pub arrows: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Groupoid,
    Sheu,
    Algebra,
    Poisson,
    Cross,
    All,
}

impl Suite {
    pub fn is_random(self) -> bool {
        matches!(self, Suite::Algebra | Suite::Poisson | Suite::Cross | Suite::All)
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub geometry: Geometry,
    #[command(flatten)]
    pub window: WindowArgs,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Required by the randomized suites
    #[arg(long, env = "GQ_SEED")]
    pub seed: Option<u64>,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// One row per check
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ConvolveArgs {
    #[command(flatten)]
    pub geometry: Geometry,
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// 2-cocycle: `{"kind": "trivial" | "bilinear" | "square"}` or a table of values
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
    /// Also compare φ(a*b) with φ(b*σ(a)); exit 1 if they differ
    #[arg(long)]
    pub kms: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
