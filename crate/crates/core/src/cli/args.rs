use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::treeoracle::DEFAULT_CAP;

#[derive(Parser, Debug)]
#[command(name = "ellipta", version, about = "Exact Jacobian elliptic coefficient polynomials and their gamma certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a polynomial, a triangle or a certificate.
    Compute(ComputeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Manage the on-disk triangle cache.
    Cache(CacheArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    J,
    P,
    S,
    T,
    Gamma,
    Theta,
    Decompose,
    Closure,
    /// Iterate a grammar loaded from a file.
    Derive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Worker threads for enumeration (default: available cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Largest n the permutation and tree oracles will enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Seed for randomized instances.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cache directory (overrides ELLIPTA_CACHE_DIR).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    pub target: Target,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Route, or a comma-separated list of routes to compute and compare.
    #[arg(long)]
    pub route: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Polynomial in x to analyze instead of J_n (decompose).
    #[arg(long)]
    pub poly: Option<String>,
    /// Center for --poly (default: its degree).
    #[arg(long)]
    pub center: Option<usize>,
    /// Grammar file, one `letter -> expression` rule per line (derive).
    #[arg(long)]
    pub grammar: Option<PathBuf>,
    /// Starting polynomial for derive (default: the first letter).
    #[arg(long)]
    pub start: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// routes, dumont, viennot-symmetry, thm1, thm2, lemma5, theorem13,
    /// corollary15, lemma9, closure or all.
    pub suite: String,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Random instances for the closure suite.
    #[arg(long, default_value_t = crate::verify::CLOSURE_INSTANCES)]
    pub instances: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    Write,
    Read,
    Clear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CachedTriangle {
    S,
    Gamma,
    T,
}

#[derive(Args, Debug)]
pub struct CacheArgs {
    pub action: CacheAction,
    /// Triangles to act on (default: all three).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub target: Vec<CachedTriangle>,
    /// Last row to write, or to rebuild after a corrupted read.
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    #[command(flatten)]
    pub common: Common,
}
