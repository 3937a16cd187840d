use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn symgamma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symgamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn dim(report: &Value, theory: &str, n: u64, w: u64) -> u64 {
    report["dimensions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["theory"] == theory && r["n"] == n && r["w"] == w)
        .unwrap_or_else(|| panic!("no row {theory} n={n} w={w}"))["dim"]
        .as_u64()
        .unwrap()
}

const ASYMMETRIC: &str = r#"
name = "lopsided"
field = "Q"
generators = [
  { symbol = "x", weight = 1 },
  { symbol = "y", weight = 1 },
  { symbol = "z", weight = 2 },
]
products = [
  { left = "x", right = "y", result = [{ symbol = "z", coefficient = 1 }] },
]
"#;

fn write_algebra(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn presets_lists_the_built_in_algebras() {
    let out = symgamma(&["presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["dual-numbers", "trunc<m>", "xy-square-zero"] {
        assert!(text.contains(name), "{text}");
    }
}

#[test]
fn harrison_of_dual_numbers_starts_with_the_indecomposables() {
    let out = symgamma(&[
        "compute", "--preset", "dual-numbers", "--theory", "harrison", "--max-degree", "4", "--max-weight", "4",
    ]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(dim(&r, "harrison", 1, 1), 1);
    assert_eq!(r["passed"], true);
    assert_eq!(r["config"]["theory"], "harrison");
    assert!(r.get("timings").is_none());
}

#[test]
fn gamma_in_weight_zero_vanishes() {
    let out = symgamma(&["compute", "--preset", "dual-numbers", "--theory", "gamma", "--max-weight", "0"]);
    assert!(out.status.success());
    let r = json(&out);
    let rows = r["dimensions"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|row| row["dim"] == 0));
    let notes = r["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("x <= w")));
}

#[test]
fn compute_is_byte_identical_across_runs_and_job_counts() {
    let args = ["compute", "--preset", "trunc3", "--theory", "symmetric", "--max-degree", "2", "--max-weight", "2"];
    let first = symgamma(&args);
    let second = symgamma(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "4"]);
    assert_eq!(symgamma(&parallel).stdout, first.stdout);
}

#[test]
fn timings_appear_only_on_request() {
    let out = symgamma(&["compute", "--preset", "dual-numbers", "--theory", "hochschild", "--max-weight", "2", "--timings"]);
    let r = json(&out);
    assert_eq!(r["timings"].as_array().unwrap().len(), 3);
}

#[test]
fn csv_carries_the_dimension_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = symgamma(&[
        "compute", "--preset", "dual-numbers", "--theory", "hochschild", "--max-degree", "2", "--max-weight", "1",
        "--format", "csv", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theory,n,w,dim");
    assert_eq!(lines.len(), 1 + 3 * 2);
    // HH_0(A, k)_1 = 0 and HH_1(A, k)_1 = k x
    assert!(lines.contains(&"hochschild,0,1,0"));
    assert!(lines.contains(&"hochschild,1,1,1"));
}

#[test]
fn verify_exits_zero_when_every_certificate_passes() {
    let out = symgamma(&["verify", "--suite", "eulerian", "--max-n", "5"]);
    assert!(out.status.success());
    let r = json(&out);
    let names: Vec<&str> = r["certifications"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["eulerian/n=1", "eulerian/n=2", "eulerian/n=3", "eulerian/n=4", "eulerian/n=5"]);
}

#[test]
fn verify_exits_nonzero_when_a_certificate_fails() {
    // the arity-truncated A variant carries spurious classes for k[x]/(x^3)
    let out = symgamma(&["verify", "--suite", "gamma-iso", "--preset", "trunc3", "--max-degree", "2", "--max-weight", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["passed"], false);
    let failed: Vec<&Value> = r["certifications"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_string()));
}

#[test]
fn pruning_and_les_suites_pass_on_dual_numbers() {
    for suite in ["pruning", "les", "comparison"] {
        let out = symgamma(&["verify", "--suite", suite, "--preset", "dual-numbers", "--max-degree", "3", "--max-weight", "3"]);
        assert!(out.status.success(), "{suite}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["certifications"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn unknown_suites_are_rejected() {
    let out = symgamma(&["verify", "--suite", "everything", "--preset", "dual-numbers"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn comparison_needs_ground_coefficients() {
    let out = symgamma(&["compute", "--preset", "dual-numbers", "--theory", "comparison", "--coefficients", "A"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coefficients k"));
}

#[test]
fn basis_ceiling_aborts_with_a_clear_message() {
    let out = symgamma(&[
        "compute", "--preset", "trunc3", "--theory", "hochschild", "--coefficients", "A", "--max-degree", "4",
        "--basis-limit", "10",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the configured ceiling of 10"));
}

#[test]
fn validate_reports_the_violated_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_algebra(dir.path(), "lopsided.toml", ASYMMETRIC);
    let out = symgamma(&["validate", "--algebra", &path]);
    assert_eq!(out.status.code(), Some(3));
    let r = json(&out);
    assert_eq!(r["valid"], false);
    assert_eq!(r["violation"]["axiom"], "commutativity");
    assert_eq!(r["violation"]["witnesses"], serde_json::json!(["x", "y"]));

    let ok = symgamma(&["validate", "--preset", "trunc4"]);
    assert!(ok.status.success());
    assert_eq!(json(&ok)["valid"], true);
}

#[test]
fn compute_on_an_invalid_algebra_returns_its_validation_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_algebra(dir.path(), "lopsided.toml", ASYMMETRIC);
    let out = symgamma(&["compute", "--algebra", &path, "--theory", "hochschild"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["violation"]["axiom"], "commutativity");
}

#[test]
fn json_algebra_files_and_field_overrides_work() {
    let dir = tempfile::tempdir().unwrap();
    let spec = serde_json::json!({
        "name": "dual-json",
        "generators": [{ "symbol": "e", "weight": 1 }],
    });
    let path = write_algebra(dir.path(), "dual.json", &spec.to_string());
    let out = symgamma(&[
        "compute", "--algebra", &path, "--field", "Fp:5", "--theory", "hochschild", "--max-degree", "2", "--max-weight", "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["config"]["field"], "Fp:5");
    assert_eq!(r["config"]["algebra"], "dual-json");
}
