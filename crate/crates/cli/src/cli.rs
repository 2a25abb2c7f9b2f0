use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raygeo::Flavor;

#[derive(Debug, Parser)]
#[command(name = "raygeo", version, about = "Check and compute ray geometry of complex Hilbert spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the registered laws on seeded random instances.
    Verify(VerifyArgs),
    /// Evaluate one quantity on rays and subspaces read from JSON files.
    Compute {
        #[command(subcommand)]
        what: ComputeCmd,
    },
    /// Build a superposition from a JSON spec `{y, z, r}`.
    Superpose(SuperposeArgs),
    /// Search real 3-dimensional instances for a violation of the unsquared interference inequality.
    Search(SearchArgs),
    /// Compare quantum and classical detection probabilities for a two-slit configuration.
    DemoTwoSlit(DemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Dimensions: `2..8` (inclusive), `2..=8`, or a list `2,3,5`.
    #[arg(long, default_value = "2..8")]
    pub dims: String,
    /// Trials per law per dimension.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, env = "RAYGEO_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Glob over law ids, e.g. `lemma.p*`.
    #[arg(long, default_value = "*")]
    pub laws: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance replacing every law's own.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Instance family replacing every law's own.
    #[arg(long, value_parser = parse_flavor)]
    pub flavor: Option<Flavor>,
    /// Include wall-clock times (the report is then no longer reproducible byte for byte).
    #[arg(long)]
    pub timings: bool,
    /// Run trials on one thread.
    #[arg(long)]
    pub sequential: bool,
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse()
}

#[derive(Debug, Args)]
pub struct Pair {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
}

#[derive(Debug, Args)]
pub struct Triple {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub c: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum ComputeCmd {
    /// `p(a, b)`; `b` may be a ray or a subspace.
    P(Pair),
    /// Triple phase of three rays.
    Theta(Triple),
    /// Projection of ray `a` onto subspace (or ray) `b`; `null` when it vanishes.
    Project(Pair),
    /// Whether three rays lie in a common plane.
    Coplanar(Triple),
}

#[derive(Debug, Args)]
pub struct SuperposeArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Also report closed-form and direct similarity of the result to this ray.
    #[arg(long)]
    pub report_p: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, env = "RAYGEO_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// JSON `{y, z, r, detectors}`; a built-in configuration is used when absent.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}
