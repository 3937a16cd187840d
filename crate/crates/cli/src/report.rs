use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

pub const TOOL: &str = "symgamma";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    /// `compute` or `verify`
    pub command: String,
    pub config: ConfigEcho,
    pub notes: Vec<String>,
    pub dimensions: Vec<DimensionRow>,
    pub certifications: Vec<Certification>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub algebra: Option<String>,
    pub source: Option<String>,
    pub field: String,
    pub coefficients: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    pub max_degree: usize,
    pub max_weight: u32,
    pub arity_bound: Option<usize>,
    pub basis_limit: usize,
}

impl ConfigEcho {
    pub fn new(cfg: &RunConfig, algebra: Option<&str>, field: String) -> ConfigEcho {
        ConfigEcho {
            algebra: algebra.map(str::to_string),
            source: cfg.algebra.as_ref().map(|s| s.to_string()),
            field,
            coefficients: cfg.coefficients.to_string(),
            theory: None,
            suite: None,
            max_degree: cfg.max_degree,
            max_weight: cfg.max_weight,
            arity_bound: cfg.arity_bound,
            basis_limit: cfg.basis_limit,
        }
    }
}

/// `dim H_n` of `theory` in weight `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub theory: String,
    pub n: usize,
    pub w: u32,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certification {
    pub name: String,
    pub passed: bool,
    /// Why the certificate failed; `null` on success.
    pub witness: Option<String>,
    pub detail: Value,
}

impl Certification {
    /// A certificate whose failing boolean fields become the witness.
    pub fn from_certificate(name: String, passed: bool, cert: &impl Serialize) -> Certification {
        let detail = serde_json::to_value(cert).expect("certificates serialize");
        let witness = (!passed).then(|| {
            let failing: Vec<&str> = detail
                .as_object()
                .map(|o| {
                    o.iter()
                        .filter(|(_, v)| v.as_bool() == Some(false))
                        .map(|(k, _)| k.as_str())
                        .collect()
                })
                .unwrap_or_default();
            if failing.is_empty() {
                "certificate failed".to_string()
            } else {
                format!("failed: {}", failing.join(", "))
            }
        });
        Certification {
            name,
            passed,
            witness,
            detail,
        }
    }

    pub fn check(name: String, passed: bool, witness: impl FnOnce() -> String, detail: Value) -> Certification {
        Certification {
            name,
            passed,
            witness: (!passed).then(witness),
            detail,
        }
    }

    /// A check that either succeeds or returns the reason it did not.
    pub fn from_result(name: String, outcome: std::result::Result<(), String>) -> Certification {
        Certification {
            name,
            passed: outcome.is_ok(),
            witness: outcome.err(),
            detail: Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub slice: String,
    pub seconds: String,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Certification> {
        self.certifications.iter().filter(|c| !c.passed)
    }

    pub fn dims(&self, theory: &str, w: u32) -> Vec<usize> {
        self.dimensions
            .iter()
            .filter(|r| r.theory == theory && r.w == w)
            .map(|r| r.dim)
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The dimension table as `theory,n,w,dim`.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["theory", "n", "w", "dim"])?;
        for row in &self.dimensions {
            w.write_record([row.theory.clone(), row.n.to_string(), row.w.to_string(), row.dim.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf)?)
    }
}
