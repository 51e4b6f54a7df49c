//! `polardeg`: degrees of polar maps and of Gauss maps of logarithmic
//! foliations from the command line.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "polardeg", version, about = "Higher degrees of polar maps and Gauss maps of logarithmic foliations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degrees deg_i of the (weighted) polar map.
    Polar(PolarArgs),
    /// Degrees e_i^k of the Gauss map of a foliation built from polynomials and weights.
    Gauss(GaussArgs),
    /// Build a logarithmic foliation and report its invariants.
    Foliation(FoliationArgs),
    /// Run one of the verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Prime modulus used for the randomized computations.
    #[arg(long, default_value_t = polardeg::DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Extra attempts per trial after a degenerate fiber system.
    #[arg(long, default_value_t = 3)]
    pub retries: usize,
    /// Emit a JSON document instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// A homogeneous polynomial in x0, x1, ...; repeat for several factors.
    #[arg(long = "poly", value_name = "POLY")]
    pub polys: Vec<String>,
    /// Comma-separated nonzero rational weights, one per factor (default all 1).
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Number of variables (default: one more than the largest index used).
    #[arg(long)]
    pub nvars: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PolarArgs {
    #[command(flatten)]
    pub input: Input,
    /// Compute only deg_i.
    #[arg(long, conflicts_with = "profile")]
    pub i: Option<usize>,
    /// Compute deg_0, ..., deg_{n-1} (the default).
    #[arg(long)]
    pub profile: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoliationKind {
    /// The foliation of P^{n+1} attached to the weighted product.
    Associated,
    /// The foliation of P^n given by the logarithmic form (needs total degree zero).
    Log,
}

#[derive(Args, Debug)]
pub struct GaussArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long = "foliation-from", value_enum, default_value_t = FoliationKind::Associated)]
    pub foliation_from: FoliationKind,
    /// Dimension of the generic linear subspace (default: the ambient dimension).
    #[arg(long)]
    pub k: Option<usize>,
    /// Level; all levels 0..k-1 when omitted.
    #[arg(long)]
    pub i: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct FoliationArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long = "from", value_enum, default_value_t = FoliationKind::Log)]
    pub from: FoliationKind,
    /// Degree of the singular scheme (foliations of P^2 only).
    #[arg(long = "sing-degree")]
    pub sing_degree: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Dolgachev,
    GaussTheorem,
    PolarRelation,
    CorollaryDeg,
    Invariance,
    ProductBound,
    Resonance,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub input: Input,
    /// Dimension k for gauss-theorem, or the number of concurrent lines for resonance.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub i: Option<usize>,
    /// A weight vector for invariance; repeat for several.
    #[arg(long = "weight-set", allow_hyphen_values = true)]
    pub weight_sets: Vec<String>,
    /// Run invariance with weights of mixed sign; the outcome is labeled.
    #[arg(long)]
    pub allow_unverified: bool,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = commands::run(cli.command);
    print!("{text}");
    ExitCode::from(code)
}
