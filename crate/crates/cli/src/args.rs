use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_BASIS_LIMIT: usize = 2_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "symgamma",
    version,
    about = "Exact Hochschild, Harrison, gamma and symmetric homology of weight-graded augmented commutative algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute homology dimensions for one theory and write a report.
    Compute(ComputeArgs),
    /// Run a certification suite; exits nonzero if any certificate fails.
    Verify(VerifyArgs),
    /// List the built-in algebras.
    Presets,
    /// Check an algebra description against the axioms.
    Validate(AlgebraArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    /// Built-in algebra: dual-numbers, trunc<m> or xy-square-zero.
    #[arg(long, conflicts_with = "algebra")]
    pub preset: Option<String>,
    /// Algebra description file (TOML, or JSON with a .json extension).
    #[arg(long, value_name = "FILE")]
    pub algebra: Option<PathBuf>,
    /// Field override: Q or Fp:<p>.
    #[arg(long, value_name = "FIELD")]
    pub field: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Coefficient bimodule.
    #[arg(long, value_enum, default_value_t = CoefficientArg::K)]
    pub coefficients: CoefficientArg,
    /// Largest homological degree N.
    #[arg(long, visible_alias = "max-n", default_value_t = 3)]
    pub max_degree: usize,
    /// Largest weight W.
    #[arg(long, default_value_t = 3)]
    pub max_weight: u32,
    /// Largest initial domain kept in gamma slices over A (default: the weight).
    #[arg(long)]
    pub arity_bound: Option<usize>,
    /// Abort when a chain group basis would exceed this size.
    #[arg(long, default_value_t = DEFAULT_BASIS_LIMIT)]
    pub basis_limit: usize,
    /// Worker threads for independent slices.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Record wall-clock time per slice (makes reports nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long, value_enum)]
    pub theory: Theory,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoefficientArg {
    #[value(name = "k")]
    K,
    #[value(name = "A")]
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    Hochschild,
    Harrison,
    Gamma,
    Symmetric,
    Comparison,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Eulerian,
    Hodge,
    Augsplit,
    Harrison,
    Pruning,
    GammaIso,
    Comparison,
    Les,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Hochschild => "hochschild",
            Theory::Harrison => "harrison",
            Theory::Gamma => "gamma",
            Theory::Symmetric => "symmetric",
            Theory::Comparison => "comparison",
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Eulerian => "eulerian",
            Suite::Hodge => "hodge",
            Suite::Augsplit => "augsplit",
            Suite::Harrison => "harrison",
            Suite::Pruning => "pruning",
            Suite::GammaIso => "gamma-iso",
            Suite::Comparison => "comparison",
            Suite::Les => "les",
        }
    }

    /// Suites that only need a field, not an algebra.
    pub fn needs_algebra(self) -> bool {
        self != Suite::Eulerian
    }
}
