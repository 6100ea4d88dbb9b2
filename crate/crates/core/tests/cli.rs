use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn nonneg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonneg"))
        .args(args)
        .env_remove("NONNEG_SEED")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_report(dir: &Path, cmd: &str, input: &Path) -> PathBuf {
    let out = dir.join("report.json");
    let o = nonneg(&[cmd, s(input), "--report", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    out
}

fn edit_json(path: &Path, f: impl FnOnce(&mut Value)) {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    std::fs::write(path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
}

#[test]
fn analyze_identity_reports_one_cluster() {
    let o = nonneg(&["analyze", s(&fixture("identity3.mtx"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("distinct eigenvalues: 1"), "{}", stdout(&o));
}

#[test]
fn analyze_shipped_counterexample() {
    let o = nonneg(&["analyze", s(&fixture("counterexample_n3.mtx"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("no nonnegative eigenvector"), "{}", stdout(&o));
}

#[test]
fn asymmetric_input_is_a_parse_error() {
    let o = nonneg(&["analyze", s(&fixture("asymmetric.mtx"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("error[E_"), "{}", stderr(&o));
    assert!(stderr(&o).contains("symmetric"), "{}", stderr(&o));
}

#[test]
fn analyze_rejects_exact_backend() {
    let o = nonneg(&["analyze", s(&fixture("identity3.mtx")), "--backend", "exact"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("error[E_USAGE]"), "{}", stderr(&o));
}

#[test]
fn non_positive_tolerance_is_rejected() {
    let o = nonneg(&["analyze", s(&fixture("identity3.mtx")), "--feas-tol", "0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn subspace_fixtures() {
    let o = nonneg(&["subspace", s(&fixture("x_axis.json"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("BOTH_SIDES"));

    let o = nonneg(&["subspace", s(&fixture("antidiagonal.json")), "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classification"], "ONLY_COMPLEMENT");
    let cert: Vec<f64> = v["sides"][0]["vector"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(cert, vec![1.0, 1.0]);

    let o = nonneg(&["subspace", s(&fixture("empty_r3.json")), "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sides"][0]["verdict"], "NO_NONNEG");
    assert_eq!(v["sides"][1]["verdict"], "HAS_NONNEG");
}

#[test]
fn fractions_select_the_exact_backend() {
    let o = nonneg(&["subspace", s(&fixture("span_vw.json")), "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["backend"], "exact");
    assert_eq!(v["classification"], "ONLY_V");
    let o = nonneg(&["subspace", s(&fixture("span_vw.json")), "--backend", "float", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["backend"], "float");
    assert_eq!(v["classification"], "ONLY_V");
}

#[test]
fn fresh_reports_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, input) in [
        ("subspace", "span_vw.json"),
        ("subspace", "x_axis.json"),
        ("subspace", "empty_r3.json"),
        ("analyze", "identity3.mtx"),
        ("analyze", "counterexample_n3.mtx"),
    ] {
        let report = write_report(dir.path(), cmd, &fixture(input));
        let o = nonneg(&["verify", s(&report), s(&fixture(input))]);
        assert_eq!(code(&o), 0, "{input}: {}", stderr(&o));
    }
}

#[test]
fn tampered_witness_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("span_vw.json");
    let report = write_report(dir.path(), "subspace", &input);
    edit_json(&report, |v| v["sides"][0]["vector"] = serde_json::json!(["1", "0", "0"]));
    let o = nonneg(&["verify", s(&report), s(&input)]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("error[E_VERIFY]"));
}

#[test]
fn negated_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("span_vw.json");
    let report = write_report(dir.path(), "subspace", &input);
    edit_json(&report, |v| v["sides"][1]["vector"] = serde_json::json!(["-1", "-1", "-4"]));
    let o = nonneg(&["verify", s(&report), s(&input)]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn report_for_another_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let report = write_report(dir.path(), "subspace", &fixture("span_vw.json"));
    let o = nonneg(&["verify", s(&report), s(&fixture("x_axis.json"))]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
}

#[test]
fn counterexample_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.mtx");
    let o = nonneg(&["counterexample", "--dim", "4", "--eigenvalues", "1,2,3", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("no nonnegative eigenvector"));

    let sidecar = dir.path().join("m.mtx.report.json");
    let o = nonneg(&["verify", s(&sidecar), s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let o = nonneg(&["analyze", s(&out), "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["has_nonneg_eigenvector"], false);
}

#[test]
fn counterexample_needs_three_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.mtx");
    let o = nonneg(&["counterexample", "--dim", "2", "--eigenvalues", "1,2,3", "--out", s(&out)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("n ≥ 3") || stderr(&o).contains("n >= 3"), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn structured_output_is_byte_identical() {
    for args in [
        vec!["subspace", "span_vw.json"],
        vec!["analyze", "counterexample_n3.mtx"],
    ] {
        let path = fixture(args[1]);
        let run = || stdout(&nonneg(&[args[0], s(&path), "--format", "json"]));
        assert_eq!(run(), run());
    }
}

#[test]
fn generator_seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let generate = |name: &str, seed: Option<&str>| {
        let out = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_nonneg"));
        cmd.args(["two-eigenvalue", "--dim", "5", "--eigenvalues", "1,-2", "--multiplicity", "2"])
            .args(["--out", s(&out)])
            .env_remove("NONNEG_SEED");
        if let Some(seed) = seed {
            cmd.env("NONNEG_SEED", seed);
        }
        assert!(cmd.status().unwrap().success());
        std::fs::read(out).unwrap()
    };
    assert_eq!(generate("a", None), generate("b", Some("0")));
    assert_eq!(generate("c", Some("7")), generate("d", Some("7")));
    assert_ne!(generate("e", Some("7")), generate("f", None));

    let o = nonneg(&["analyze", s(&dir.path().join("c")), "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["has_nonneg_eigenvector"], true);
    assert_eq!(v["distinct_eigenvalues"], 2);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(code(&nonneg(&["frobnicate"])), 1);
    assert_eq!(code(&nonneg(&["--help"])), 0);
}
