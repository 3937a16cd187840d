use std::fmt;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use symgamma::algebra::{preset, AlgebraSpec, Coefficients, GradedAlgebra, ValidationReport};
use symgamma::linalg::Field;

use crate::args::{AlgebraArgs, CoefficientArg, Format, RunArgs};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSource {
    Preset(String),
    File(PathBuf),
}

impl fmt::Display for AlgebraSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSource::Preset(name) => write!(f, "preset:{name}"),
            AlgebraSource::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

/// Everything a `compute` or `verify` run depends on.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algebra: Option<AlgebraSource>,
    pub field: Option<Field>,
    pub coefficients: Coefficients,
    pub max_degree: usize,
    pub max_weight: u32,
    pub arity_bound: Option<usize>,
    pub basis_limit: usize,
    pub jobs: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(algebra: &AlgebraArgs, run: &RunArgs) -> Result<RunConfig> {
        let source = match (&algebra.preset, &algebra.algebra) {
            (Some(name), _) => Some(AlgebraSource::Preset(name.clone())),
            (None, Some(path)) => Some(AlgebraSource::File(path.clone())),
            (None, None) => None,
        };
        let field = algebra
            .field
            .as_deref()
            .map(|s| s.parse::<Field>().with_context(|| format!("bad --field {s:?}")))
            .transpose()?;
        if run.jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        Ok(RunConfig {
            algebra: source,
            field,
            coefficients: match run.coefficients {
                CoefficientArg::K => Coefficients::Ground,
                CoefficientArg::A => Coefficients::Algebra,
            },
            max_degree: run.max_degree,
            max_weight: run.max_weight,
            arity_bound: run.arity_bound,
            basis_limit: run.basis_limit,
            jobs: run.jobs,
            output: run.output.clone(),
            format: run.format,
            timings: run.timings,
        })
    }

    /// A sequential JSON run on a preset with the given bounds.
    pub fn preset(name: &str, coefficients: Coefficients, max_degree: usize, max_weight: u32) -> RunConfig {
        RunConfig {
            algebra: Some(AlgebraSource::Preset(name.into())),
            field: None,
            coefficients,
            max_degree,
            max_weight,
            arity_bound: None,
            basis_limit: crate::args::DEFAULT_BASIS_LIMIT,
            jobs: 1,
            output: None,
            format: Format::Json,
            timings: false,
        }
    }
}

/// The validation outcome of an algebra that fails the axioms.
#[derive(Debug)]
pub struct InvalidAlgebra(pub ValidationReport);

impl fmt::Display for InvalidAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.violation {
            Some(v) => write!(f, "algebra {:?} is invalid: {v}", self.0.algebra),
            None => write!(f, "algebra {:?} is valid", self.0.algebra),
        }
    }
}

impl std::error::Error for InvalidAlgebra {}

pub fn load_spec(source: &AlgebraSource) -> Result<AlgebraSpec> {
    match source {
        AlgebraSource::Preset(name) => Ok(preset(name)?),
        AlgebraSource::File(path) => {
            AlgebraSpec::load(path).with_context(|| format!("cannot read algebra file {}", path.display()))
        }
    }
}

/// Builds the algebra and returns it with its validation report.
pub fn build_algebra(source: &AlgebraSource, field: Option<Field>) -> Result<(GradedAlgebra, ValidationReport)> {
    let spec = load_spec(source)?;
    let alg = GradedAlgebra::from_spec(&spec, field)?;
    let report = alg.validate();
    Ok((alg, report))
}

/// Builds the algebra, failing with [`InvalidAlgebra`] when an axiom breaks.
pub fn load_algebra(source: &AlgebraSource, field: Option<Field>) -> Result<GradedAlgebra> {
    let (alg, report) = build_algebra(source, field)?;
    if !report.is_valid() {
        return Err(InvalidAlgebra(report).into());
    }
    Ok(alg)
}
