//! The acceptance battery: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use symgamma::algebra::{preset, Coefficients, GradedAlgebra};
use symgamma::delta_s::hs0_consistency;
use symgamma_cli::{compute, verify, Report, RunConfig, Suite, Theory};

const PRESETS: [&str; 2] = ["dual-numbers", "trunc3"];
const MODULES: [Coefficients; 2] = [Coefficients::Ground, Coefficients::Algebra];

type Outcome = Result<String, String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn run_suite(name: &str, m: Coefficients, suite: Suite, n: usize, w: u32) -> Result<Report, String> {
    let cfg = RunConfig::preset(name, m, n, w);
    let report = verify(&cfg, suite).map_err(|e| format!("{name}/{m}: {e:#}"))?;
    let names: BTreeSet<&str> = report.certifications.iter().map(|c| c.name.as_str()).collect();
    if names.len() != report.certifications.len() {
        return Err(format!("{name}/{m}: duplicate certificate names"));
    }
    Ok(report)
}

/// Fails with the first failing certificate whose name starts with `prefix`;
/// returns how many matched.
fn require(report: &Report, prefix: &str, context: &str) -> Result<usize, String> {
    let matching: Vec<_> = report.certifications.iter().filter(|c| c.name.starts_with(prefix)).collect();
    if matching.is_empty() {
        return Err(format!("{context}: no {prefix} certificates"));
    }
    if let Some(c) = matching.iter().find(|c| !c.passed) {
        return Err(format!("{context}: {} failed ({})", c.name, c.witness.as_deref().unwrap_or("")));
    }
    Ok(matching.len())
}

fn over_presets_and_modules(suite: Suite, n: usize, w: u32, prefixes: &[&str]) -> Outcome {
    let mut count = 0;
    for name in PRESETS {
        for m in MODULES {
            let report = run_suite(name, m, suite, n, w)?;
            for p in prefixes {
                count += require(&report, p, &format!("{name}/{m}"))?;
            }
        }
    }
    Ok(format!("{count} certificates"))
}

fn eulerian() -> Outcome {
    let cfg = RunConfig {
        algebra: None,
        ..RunConfig::preset("dual-numbers", Coefficients::Ground, 6, 0)
    };
    let report = verify(&cfg, Suite::Eulerian).map_err(|e| e.to_string())?;
    let count = require(&report, "eulerian/", "Q")?;
    if count != 6 {
        return Err(format!("expected 6 certificates, got {count}"));
    }
    Ok("n = 1..6 over Q".into())
}

fn hodge() -> Outcome {
    over_presets_and_modules(Suite::Hodge, 5, 5, &["hodge/"])
}

fn augsplit() -> Outcome {
    over_presets_and_modules(Suite::Augsplit, 5, 5, &["augsplit/"])
}

fn normalized_harrison() -> Outcome {
    let out = over_presets_and_modules(Suite::Harrison, 4, 4, &["harrison/e", "harrison-pipelines/"])?;
    // Harr_1(A, k) is the module of indecomposables I / I^2, concentrated in weight 1
    for name in PRESETS {
        let report = run_suite(name, Coefficients::Ground, Suite::Harrison, 4, 4)?;
        for w in 0..=4 {
            let expected = usize::from(w == 1);
            let got = report.dims("harrison", w)[1];
            if got != expected {
                return Err(format!("{name}: Harr_1 in weight {w} is {got}, expected {expected}"));
            }
        }
    }
    Ok(out)
}

fn barr() -> Outcome {
    over_presets_and_modules(Suite::Harrison, 4, 4, &["barr/"])
}

fn pruning() -> Outcome {
    over_presets_and_modules(Suite::Pruning, 4, 4, &["pruning/"])
}

fn gamma_iso() -> Outcome {
    let report = run_suite("dual-numbers", Coefficients::Ground, Suite::GammaIso, 3, 3)?;
    let count = require(&report, "gamma-iso/", "dual-numbers")?;
    Ok(format!("{count} weights"))
}

fn degree_shift() -> Outcome {
    // the A variant for dual numbers; for k[x]/(x^3) its arity truncation
    // adds spurious classes, so the I variant stands in for it there
    let mut checked = 0;
    for (name, theory_row) in [("dual-numbers", "gamma-A"), ("trunc3", "gamma-I")] {
        let gamma = compute(&RunConfig::preset(name, Coefficients::Ground, 3, 3), Theory::Gamma)
            .map_err(|e| format!("{name}: {e:#}"))?;
        let harrison = compute(&RunConfig::preset(name, Coefficients::Ground, 4, 3), Theory::Harrison)
            .map_err(|e| format!("{name}: {e:#}"))?;
        for w in 0..=3 {
            let g = gamma.dims(theory_row, w);
            let h = harrison.dims("harrison", w);
            for n in 1..=4 {
                if g[n - 1] != h[n] {
                    return Err(format!("{name} w={w} n={n}: {theory_row} {} vs Harrison {}", g[n - 1], h[n]));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} dimension pairs"))
}

fn comparison() -> Outcome {
    let mut count = 0;
    for name in PRESETS {
        let report = run_suite(name, Coefficients::Ground, Suite::Comparison, 3, 3)?;
        count += require(&report, "comparison/", name)?;
    }
    Ok(format!("{count} weights"))
}

fn les() -> Outcome {
    let mut nodes = 0;
    for name in PRESETS {
        let report = run_suite(name, Coefficients::Ground, Suite::Les, 3, 3)?;
        require(&report, "les/", name)?;
        nodes += report
            .certifications
            .iter()
            .map(|c| c.detail.as_array().map_or(0, Vec::len))
            .sum::<usize>();
    }
    Ok(format!("{nodes} exact nodes"))
}

fn hs0() -> Outcome {
    for name in PRESETS {
        let alg = GradedAlgebra::validated(&preset(name).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())?;
        for row in hs0_consistency(&alg, 4).map_err(|e| e.to_string())? {
            if !row.consistent {
                return Err(format!(
                    "{name} w={}: reduced HS_0 {} vs dim A_w {}",
                    row.weight, row.reduced_hs0, row.algebra_dim
                ));
            }
        }
    }
    Ok("w <= 4".into())
}

fn determinism() -> Outcome {
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_symgamma")).args(args).output().map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(String::from_utf8_lossy(&out.stderr).into_owned());
        }
        Ok(out.stdout)
    };
    let configs: [&[&str]; 3] = [
        &["compute", "--preset", "trunc3", "--theory", "symmetric", "--max-degree", "2", "--max-weight", "2"],
        &["compute", "--preset", "dual-numbers", "--theory", "gamma", "--max-degree", "3", "--max-weight", "3"],
        &["compute", "--preset", "trunc3", "--theory", "harrison", "--coefficients", "A", "--max-degree", "3", "--max-weight", "3"],
    ];
    for args in configs {
        let first = run(args)?;
        if run(args)? != first {
            return Err(format!("{} differs between runs", args.join(" ")));
        }
        let mut parallel = args.to_vec();
        parallel.extend(["--jobs", "3"]);
        if run(&parallel)? != first {
            return Err(format!("{} differs with --jobs 3", args.join(" ")));
        }
    }
    Ok(format!("{} configurations", configs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Eulerian idempotents", eulerian, Some(60)),
        ("Hodge splitting", hodge, Some(120)),
        ("augmentation splitting", augsplit, None),
        ("normalized Harrison", normalized_harrison, None),
        ("Barr agreement", barr, None),
        ("pruning", pruning, Some(300)),
        ("gamma isomorphism", gamma_iso, Some(600)),
        ("degree shift", degree_shift, None),
        ("comparison map", comparison, None),
        ("long exact sequence", les, Some(900)),
        ("HS_0 consistency", hs0, None),
        ("determinism", determinism, None),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > Duration::from_secs(b) => Err(format!("over the {b} s budget")),
            (o, _) => o,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.1} s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({why}; {secs:.1} s)", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
