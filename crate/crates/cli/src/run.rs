use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use symgamma::algebra::{Bimodule, Coefficients, GradedAlgebra};
use symgamma::delta_s::{Comparison, SymVariant, SymmetricComplex};
use symgamma::gamma::{certify_pruning, GammaComplex, GammaOptions, Variant};
use symgamma::hochschild::{harrison_in_weight, HochschildComplex};
use symgamma::linalg::{homology, ChainSlice, Field, LongExactSequence};
use symgamma::symmetric::{certify_idempotents, eulerian_idempotents};

use crate::args::{Suite, Theory};
use crate::config::{load_algebra, RunConfig};
use crate::report::{Certification, ConfigEcho, DimensionRow, Report, Timing, TOOL, VERSION};

/// What one independent slice contributes to a report.
#[derive(Default)]
struct SliceOut {
    rows: Vec<DimensionRow>,
    certs: Vec<Certification>,
}

type Job<'a> = Box<dyn Fn() -> Result<SliceOut> + Send + Sync + 'a>;

struct Task<'a> {
    label: String,
    job: Job<'a>,
}

fn task<'a>(label: String, job: impl Fn() -> Result<SliceOut> + Send + Sync + 'a) -> Task<'a> {
    Task {
        label,
        job: Box::new(job),
    }
}

fn rows(theory: &str, w: u32, dims: &[usize]) -> Vec<DimensionRow> {
    dims.iter()
        .enumerate()
        .map(|(n, &dim)| DimensionRow {
            theory: theory.to_string(),
            n,
            w,
            dim,
        })
        .collect()
}

fn homology_dims(c: &ChainSlice, max_n: usize) -> Result<Vec<usize>> {
    Ok(homology(c)?.truncated(max_n).dims())
}

fn les_certification(name: String, les: &LongExactSequence) -> Certification {
    Certification::check(
        name,
        les.is_exact(),
        || match les.first_failure() {
            Some(node) => format!(
                "not exact at {}_{}: dim {}, incoming rank {}, outgoing rank {}",
                node.complex, node.degree, node.dim, node.rank_in, node.rank_out
            ),
            None => "not exact".into(),
        },
        serde_json::to_value(&les.nodes).expect("nodes serialize"),
    )
}

/// Runs the slices, in parallel when `jobs > 1`; results keep task order.
fn execute(cfg: &RunConfig, tasks: Vec<Task<'_>>) -> Result<(Vec<DimensionRow>, Vec<Certification>, Vec<Timing>)> {
    let run = |t: &Task<'_>| -> Result<(SliceOut, Timing)> {
        let start = Instant::now();
        let out = (t.job)().with_context(|| format!("slice {}", t.label))?;
        let seconds = format!("{:.3}", start.elapsed().as_secs_f64());
        Ok((out, Timing { slice: t.label.clone(), seconds }))
    };
    let results: Vec<(SliceOut, Timing)> = if cfg.jobs <= 1 {
        tasks.iter().map(run).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
        pool.install(|| tasks.par_iter().map(run).collect::<Result<_>>())?
    };
    let mut all_rows = Vec::new();
    let mut certs = Vec::new();
    let mut timings = Vec::new();
    for (out, t) in results {
        all_rows.extend(out.rows);
        certs.extend(out.certs);
        timings.push(t);
    }
    Ok((all_rows, certs, timings))
}

fn assemble(
    cfg: &RunConfig,
    command: &str,
    config: ConfigEcho,
    notes: Vec<String>,
    tasks: Vec<Task<'_>>,
) -> Result<Report> {
    let (dimensions, certifications, timings) = execute(cfg, tasks)?;
    Ok(Report {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: command.into(),
        config,
        notes,
        dimensions,
        passed: certifications.iter().all(|c| c.passed),
        certifications,
        timings: cfg.timings.then_some(timings),
    })
}

fn require_ground(cfg: &RunConfig, what: &str) -> Result<()> {
    if cfg.coefficients != Coefficients::Ground {
        bail!("{what} is only defined with coefficients k");
    }
    Ok(())
}

fn algebra_for(cfg: &RunConfig, verb: &str) -> Result<GradedAlgebra> {
    let source = cfg
        .algebra
        .as_ref()
        .with_context(|| format!("{verb} needs --preset or --algebra"))?;
    load_algebra(source, cfg.field)
}

fn gamma_notes(cfg: &RunConfig) -> Vec<String> {
    let bound = match cfg.arity_bound {
        Some(b) => b.to_string(),
        None => "w".into(),
    };
    vec![
        format!("gamma-A slices keep strings whose initial domain x satisfies x <= {bound}"),
        "gamma-I slices keep strings whose initial domain x satisfies x <= w / (least ideal weight), which loses nothing"
            .into(),
    ]
}

const DEGREE_NOTE: &str = "slices are built one degree above max_degree so that homology is exact through max_degree";

/// Homology dimensions of one theory for `n <= max_degree`, `w <= max_weight`.
pub fn compute(cfg: &RunConfig, theory: Theory) -> Result<Report> {
    let alg = algebra_for(cfg, "compute")?;
    if matches!(theory, Theory::Symmetric | Theory::Comparison) {
        require_ground(cfg, &format!("the {} theory", theory.name()))?;
    }
    let module = Bimodule::new(&alg, cfg.coefficients);
    let alg = &alg;
    let limit = Some(cfg.basis_limit);
    let n = cfg.max_degree;
    let arity = cfg.arity_bound;
    let mut notes = vec![DEGREE_NOTE.to_string()];
    let label = |w: u32| format!("{}/w={w}", theory.name());
    let weights = 0..=cfg.max_weight;
    let tasks: Vec<Task<'_>> = match theory {
        Theory::Hochschild => weights
            .map(|w| {
                task(label(w), move || {
                    let c = HochschildComplex::build(module, n + 1, w, limit)?;
                    Ok(SliceOut {
                        rows: rows("hochschild", w, &homology_dims(c.slice(), n)?),
                        certs: Vec::new(),
                    })
                })
            })
            .collect(),
        Theory::Harrison => weights
            .map(|w| {
                task(label(w), move || {
                    let c = HochschildComplex::build(module, n + 1, w, limit)?;
                    let hw = harrison_in_weight(&c, n)?;
                    let agree = hw.quotient_dims == hw.normalized_dims;
                    Ok(SliceOut {
                        rows: rows("harrison", w, &hw.quotient_dims),
                        certs: vec![Certification::from_certificate(
                            format!("harrison-pipelines/w={w}"),
                            agree,
                            &hw,
                        )],
                    })
                })
            })
            .collect(),
        Theory::Gamma => {
            notes.extend(gamma_notes(cfg));
            weights
                .map(|w| {
                    task(label(w), move || {
                        let mut out = SliceOut::default();
                        for (variant, name) in [(Variant::A, "gamma-A"), (Variant::I, "gamma-I")] {
                            let mut opts = GammaOptions::new(variant);
                            opts.arity_bound = arity;
                            opts.basis_limit = limit;
                            let c = GammaComplex::build(module, n + 1, w, opts)?;
                            out.rows.extend(rows(name, w, &homology_dims(c.slice(), n)?));
                        }
                        Ok(out)
                    })
                })
                .collect()
        }
        Theory::Symmetric => weights
            .map(|w| {
                task(label(w), move || {
                    let c = SymmetricComplex::build(alg, n + 1, w, SymVariant::Full, limit)?;
                    Ok(SliceOut {
                        rows: rows("symmetric-reduced", w, &homology_dims(c.slice(), n)?),
                        certs: Vec::new(),
                    })
                })
            })
            .collect(),
        Theory::Comparison => {
            notes.push("the comparison map lands in the normalized gamma complex over I with coefficients k".into());
            weights
                .map(|w| {
                    task(label(w), move || {
                        let cmp = Comparison::build(alg, n + 1, w, limit)?;
                        let mut out = SliceOut::default();
                        for (name, c) in [
                            ("symmetric-reduced", &cmp.full),
                            ("symmetric-quotient", &cmp.quotient),
                            ("gamma-I", &cmp.gamma),
                            ("kernel", &cmp.kernel),
                        ] {
                            out.rows.extend(rows(name, w, &homology_dims(c, n)?));
                        }
                        let cert = cmp.certify()?;
                        out.certs.push(Certification::from_certificate(
                            format!("comparison/w={w}"),
                            cert.passed(),
                            &cert,
                        ));
                        out.certs
                            .push(les_certification(format!("les/w={w}"), &cmp.long_exact_sequence()?));
                        Ok(out)
                    })
                })
                .collect()
        }
    };
    let mut config = ConfigEcho::new(cfg, Some(alg.name()), alg.field().to_string());
    config.theory = Some(theory.name().into());
    assemble(cfg, "compute", config, notes, tasks)
}

/// Runs one certification suite at the configured bounds.
pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<Report> {
    if suite == Suite::Eulerian {
        return verify_eulerian(cfg);
    }
    let alg = algebra_for(cfg, "verify")?;
    if matches!(suite, Suite::GammaIso | Suite::Comparison | Suite::Les) {
        require_ground(cfg, &format!("the {} suite", suite.name()))?;
    }
    let module = Bimodule::new(&alg, cfg.coefficients);
    let alg = &alg;
    let limit = Some(cfg.basis_limit);
    let n = cfg.max_degree;
    let arity = cfg.arity_bound;
    let mut notes = Vec::new();
    let label = |w: u32| format!("{}/w={w}", suite.name());
    let weights = 0..=cfg.max_weight;
    let tasks: Vec<Task<'_>> = match suite {
        Suite::Eulerian => unreachable!("handled above"),
        Suite::Hodge => weights
            .map(|w| {
                task(label(w), move || {
                    let cert = HochschildComplex::build(module, n, w, limit)?.certify_hodge()?;
                    Ok(SliceOut {
                        rows: Vec::new(),
                        certs: vec![Certification::from_certificate(format!("hodge/w={w}"), cert.passed(), &cert)],
                    })
                })
            })
            .collect(),
        Suite::Augsplit => weights
            .map(|w| {
                task(label(w), move || {
                    let c = HochschildComplex::build(module, n, w, limit)?;
                    let outcome = c.aug_split()?.certify().map_err(|e| e.to_string());
                    Ok(SliceOut {
                        rows: Vec::new(),
                        certs: vec![Certification::from_result(format!("augsplit/w={w}"), outcome)],
                    })
                })
            })
            .collect(),
        Suite::Harrison => {
            notes.push(DEGREE_NOTE.into());
            weights
                .map(|w| {
                    task(label(w), move || {
                        let c = HochschildComplex::build(module, n + 1, w, limit)?;
                        let mut out = SliceOut::default();
                        for i in 1..=n + 1 {
                            let cert = c.normalized_harrison(i)?.certify()?;
                            out.certs.push(Certification::from_certificate(
                                format!("harrison/e{i}/w={w}"),
                                cert.passed(),
                                &cert,
                            ));
                        }
                        let hw = harrison_in_weight(&c, n)?;
                        out.rows = rows("harrison", w, &hw.quotient_dims);
                        out.certs.push(Certification::from_certificate(
                            format!("harrison-pipelines/w={w}"),
                            hw.quotient_dims == hw.normalized_dims,
                            &hw,
                        ));
                        let barr = c.certify_barr()?;
                        out.certs
                            .push(Certification::from_certificate(format!("barr/w={w}"), barr.passed(), &barr));
                        Ok(out)
                    })
                })
                .collect()
        }
        Suite::Pruning => {
            notes.extend(gamma_notes(cfg));
            notes.push("the top degree is checked generator by generator; homology is compared two degrees below it".into());
            weights
                .map(|w| {
                    task(label(w), move || {
                        let cert = certify_pruning(module, w, n.max(1), arity)?;
                        Ok(SliceOut {
                            rows: Vec::new(),
                            certs: vec![Certification::from_certificate(format!("pruning/w={w}"), cert.passed(), &cert)],
                        })
                    })
                })
                .collect()
        }
        Suite::GammaIso => {
            notes.extend(gamma_notes(cfg));
            notes.push("degree-shift compares gamma-I in degree n - 1 with Harrison homology in degree n".into());
            weights
                .map(|w| {
                    task(label(w), move || {
                        let mut dims = Vec::new();
                        let mut out = SliceOut::default();
                        for (variant, name) in [(Variant::A, "gamma-A"), (Variant::I, "gamma-I")] {
                            let mut opts = GammaOptions::new(variant);
                            opts.arity_bound = arity;
                            opts.basis_limit = limit;
                            let c = GammaComplex::build(module, n + 1, w, opts)?;
                            let d = homology_dims(c.slice(), n)?;
                            out.rows.extend(rows(name, w, &d));
                            dims.push(d);
                        }
                        let (a, i) = (&dims[0], &dims[1]);
                        out.certs.push(Certification::check(
                            format!("gamma-iso/w={w}"),
                            a == i,
                            || format!("gamma-A {a:?} differs from gamma-I {i:?}"),
                            serde_json::json!({ "gamma_a": a, "gamma_i": i }),
                        ));
                        let c = HochschildComplex::build(module, n + 2, w, limit)?;
                        let harr = harrison_in_weight(&c, n + 1)?.quotient_dims;
                        out.rows.extend(rows("harrison", w, &harr));
                        let shifted = &harr[1..];
                        out.certs.push(Certification::check(
                            format!("degree-shift/w={w}"),
                            shifted == i.as_slice(),
                            || format!("gamma-I {i:?} differs from Harrison degrees 1.. {shifted:?}"),
                            serde_json::json!({ "gamma_i": i, "harrison": harr }),
                        ));
                        Ok(out)
                    })
                })
                .collect()
        }
        Suite::Comparison => weights
            .map(|w| {
                task(label(w), move || {
                    let cert = Comparison::build(alg, n, w, limit)?.certify()?;
                    Ok(SliceOut {
                        rows: Vec::new(),
                        certs: vec![Certification::from_certificate(format!("comparison/w={w}"), cert.passed(), &cert)],
                    })
                })
            })
            .collect(),
        Suite::Les => {
            notes.push(DEGREE_NOTE.into());
            weights
                .map(|w| {
                    task(label(w), move || {
                        let cmp = Comparison::build(alg, n + 1, w, limit)?;
                        Ok(SliceOut {
                            rows: Vec::new(),
                            certs: vec![les_certification(format!("les/w={w}"), &cmp.long_exact_sequence()?)],
                        })
                    })
                })
                .collect()
        }
    };
    let mut config = ConfigEcho::new(cfg, Some(alg.name()), alg.field().to_string());
    config.suite = Some(suite.name().into());
    assemble(cfg, "verify", config, notes, tasks)
}

fn verify_eulerian(cfg: &RunConfig) -> Result<Report> {
    let (name, field) = match &cfg.algebra {
        Some(source) => {
            let alg = load_algebra(source, cfg.field)?;
            (Some(alg.name().to_string()), alg.field())
        }
        None => (None, cfg.field.unwrap_or(Field::Rationals)),
    };
    let tasks = (1..=cfg.max_degree)
        .map(|k| {
            task(format!("eulerian/n={k}"), move || {
                let cert = certify_idempotents(&eulerian_idempotents(k, field)?)?;
                Ok(SliceOut {
                    rows: Vec::new(),
                    certs: vec![Certification::from_certificate(
                        format!("eulerian/n={k}"),
                        cert.passed(),
                        &cert,
                    )],
                })
            })
        })
        .collect();
    let mut config = ConfigEcho::new(cfg, name.as_deref(), field.to_string());
    config.suite = Some(Suite::Eulerian.name().into());
    assemble(cfg, "verify", config, Vec::new(), tasks)
}
