//! Command-line driver: loads algebras, runs computations and certification
//! suites, and writes deterministic reports.

pub mod args;
pub mod config;
pub mod report;
pub mod run;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use serde::Serialize;
use symgamma::algebra::{preset, ValidationReport};

pub use args::{Cli, Command, Format, Suite, Theory};
pub use config::{AlgebraSource, InvalidAlgebra, RunConfig};
pub use report::Report;
pub use run::{compute, verify};

/// A certificate failed.
pub const EXIT_FAILED: u8 = 1;
/// The algebra violates an axiom.
pub const EXIT_INVALID_ALGEBRA: u8 = 3;
/// Any other error, including the basis-size ceiling.
pub const EXIT_ERROR: u8 = 4;

#[derive(Serialize)]
struct ValidationOutput<'a> {
    tool: &'static str,
    version: &'static str,
    valid: bool,
    #[serde(flatten)]
    report: &'a ValidationReport,
}

fn validation_json(report: &ValidationReport) -> String {
    let out = ValidationOutput {
        tool: report::TOOL,
        version: report::VERSION,
        valid: report.is_valid(),
        report,
    };
    let mut s = serde_json::to_string_pretty(&out).expect("validation reports serialize");
    s.push('\n');
    s
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render(cfg: &RunConfig, report: &Report) -> Result<String> {
    match cfg.format {
        Format::Json => Ok(report.to_json()),
        Format::Csv => report.to_csv(),
    }
}

fn finish(cfg: &RunConfig, outcome: Result<Report>) -> Result<ExitCode> {
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            if let Some(InvalidAlgebra(v)) = e.downcast_ref::<InvalidAlgebra>() {
                emit(cfg, &validation_json(v))?;
                eprintln!("error: {e}");
                return Ok(ExitCode::from(EXIT_INVALID_ALGEBRA));
            }
            return Err(e);
        }
    };
    emit(cfg, &render(cfg, &report)?)?;
    for c in report.failures() {
        eprintln!("FAIL {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    })
}

const PRESETS: [(&str, &str); 3] = [
    ("dual-numbers", "k[x]/(x^2), x in weight 1"),
    ("trunc<m>", "k[x]/(x^m) for 2 <= m <= 64, x in weight 1"),
    ("xy-square-zero", "k[x,y]/(x^2, xy, y^2), x and y in weight 1"),
];

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Presets => {
            let mut out = std::io::stdout().lock();
            for (name, description) in PRESETS {
                writeln!(out, "{name:<16}{description}")?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate(a) => {
            let source = match (&a.preset, &a.algebra) {
                (Some(name), _) => AlgebraSource::Preset(name.clone()),
                (None, Some(path)) => AlgebraSource::File(path.clone()),
                (None, None) => anyhow::bail!("validate needs --preset or --algebra"),
            };
            if let AlgebraSource::Preset(name) = &source {
                preset(name)?;
            }
            let field = a.field.as_deref().map(str::parse).transpose()?;
            let (_, report) = config::build_algebra(&source, field)?;
            print!("{}", validation_json(&report));
            Ok(if report.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INVALID_ALGEBRA)
            })
        }
        Command::Compute(a) => {
            let cfg = RunConfig::new(&a.algebra, &a.run)?;
            finish(&cfg, compute(&cfg, a.theory))
        }
        Command::Verify(a) => {
            let cfg = RunConfig::new(&a.algebra, &a.run)?;
            finish(&cfg, verify(&cfg, a.suite))
        }
    }
}
