use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const J_MINUS_I: &str = r#"{"field": {"p": 3}, "n": 4,
  "A": [[0,1,1,1],[1,0,1,1],[1,1,0,1],[1,1,1,0]], "gamma": 1}"#;
const SPLIT_JORDAN: &str = r#"{"field": {"p": 5}, "n": 4,
  "A": [[3,0,0,0],[0,3,0,0],[0,0,1,1],[0,0,0,1]], "gamma": 2}"#;

fn tcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcc")).args(args).env_remove("TCC_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn dim_j_minus_i() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "j_minus_i.json", J_MINUS_I);
    let o = tcc(&["dim", "-i", s(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("dim C(A, 1) = 10\n"), "{}", stdout(&o));
    let v = json(&tcc(&["dim", "-i", s(&f), "--format", "json"]));
    assert_eq!(v["result"]["dimension"], 10);
    assert_eq!(v["checks"]["decomposition_direct_sum"], "passed");
    assert!(v["timing_ms"].is_number());
}

#[test]
fn dim_gamma_zero_is_n_times_nullity() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "j_minus_i.json", J_MINUS_I);
    let v = json(&tcc(&["dim", "-i", s(&f), "--gamma", "0", "--format", "json"]));
    // A has nullity 1 over GF(3)
    assert_eq!(v["result"]["dimension"], 4);
    assert_eq!(v["result"]["terms"], Value::Array(vec![]));
}

#[test]
fn check_codewords() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "split_jordan.json", SPLIT_JORDAN);
    let x1 = write(&d, "X1.json", "[[0,0,0,0],[0,0,0,0],[1,0,0,0],[0,0,0,0]]");
    let o = tcc(&["check", "-i", s(&f), "--codeword", s(&x1)]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("true\n"));
    let x = write(&d, "X.json", r#"{"X": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#);
    let v = json(&tcc(&["check", "-i", s(&f), "--codeword", s(&x), "--format", "json"]));
    assert_eq!(v["result"]["codeword"], false);
    let bad = write(&d, "bad.json", "[[0,0],[0,0]]");
    let o = tcc(&["check", "-i", s(&f), "--codeword", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn basis_reports_provenance_and_checks() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "split_jordan.json", SPLIT_JORDAN);
    let v = json(&tcc(&["basis", "-i", s(&f), "--format", "json"]));
    assert_eq!(v["result"]["dimension"], 2);
    assert_eq!(v["result"]["basis"].as_array().unwrap().len(), 2);
    for p in v["result"]["provenance"].as_array().unwrap() {
        assert_eq!(p["codomain"], serde_json::json!([2, 1]));
        assert_eq!(p["power"], 0);
        assert_eq!(p["domain"][0], 1);
    }
    for c in ["membership", "count", "independent"] {
        assert_eq!(v["checks"][c], "passed");
    }
}

#[test]
fn decompose_shows_twisted_orders() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "split_jordan.json", SPLIT_JORDAN);
    let out = stdout(&tcc(&["decompose", "-i", s(&f)]));
    let twisted = out.split("under γA").nth(1).unwrap();
    assert!(twisted.contains("o(v_{1,1}) = x + 4"), "{out}");
    assert!(twisted.contains("o(v_{2,1}) = (x + 3)^2"), "{out}");
    assert!(out.contains("minimal polynomial: (x + 2)(x + 4)^2"), "{out}");
}

#[test]
fn params_with_distance() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "split_jordan.json", SPLIT_JORDAN);
    let o = tcc(&["params", "-i", s(&f), "--distance"]);
    assert!(stdout(&o).starts_with("[16, 2, 1] over GF(5)\n"), "{}", stdout(&o));
    let v = json(&tcc(&["params", "-i", s(&f), "--format", "json"]));
    assert_eq!(v["result"]["min_distance"], Value::Null);
    assert_eq!(v["checks"]["distance_enumerated"], "skipped");
    let o = tcc(&["params", "-i", s(&f), "--distance", "--max-enum", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bound 10"), "{}", stderr(&o));
}

#[test]
fn oracle_agrees_and_guards() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "j_minus_i.json", J_MINUS_I);
    let v = json(&tcc(&["oracle", "-i", s(&f), "--format", "json"]));
    assert_eq!(v["result"]["dimension"], 10);
    assert_eq!(v["checks"]["matches_twisted_dim"], "passed");

    let n = 65;
    let rows: Vec<String> = (0..n).map(|_| format!("[{}]", vec!["0"; n].join(","))).collect();
    let big = write(&d, "big.json", &format!(r#"{{"field": {{"p": 2}}, "n": {n}, "A": [{}], "gamma": 1}}"#, rows.join(",")));
    let o = tcc(&["oracle", "-i", s(&big)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("4096"), "{}", stderr(&o));
}

#[test]
fn extension_field_entries_and_gamma_override() {
    let d = TempDir::new().unwrap();
    let f = write(
        &d,
        "gf4.json",
        r#"{"field": {"p": 2, "k": 2}, "n": 2, "A": [[[0,1],0],[1,[1,1]]], "gamma": 1, "options": {"format": "json"}}"#,
    );
    let v = json(&tcc(&["basis", "-i", s(&f), "--gamma", "[0,1]"]));
    assert_eq!(v["inputs"]["gamma"], serde_json::json!([0, 1]));
    assert_eq!(v["checks"]["membership"], "passed");
    let o = tcc(&["dim", "-i", s(&f), "--gamma", "[0,1]", "--format", "text"]);
    assert!(stdout(&o).starts_with("dim C(A, a) = "), "{}", stdout(&o));
}

#[test]
fn parse_errors_name_the_location() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "bad_entry.json", r#"{"field": {"p": 3}, "n": 2, "A": [[0,1],[1,7]], "gamma": 1}"#);
    let o = tcc(&["dim", "-i", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("A[1][1]"), "{}", stderr(&o));

    let f = write(&d, "malformed.json", "{\"field\": {\"p\": 3},\n \"n\": 2,\n \"A\": [[0,1],[1,0]\n}");
    let o = tcc(&["dim", "-i", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let f = write(&d, "n.json", r#"{"field": {"p": 3}, "n": 3, "A": [[0,1],[1,0]], "gamma": 1}"#);
    assert!(stderr(&tcc(&["dim", "-i", s(&f)])).contains("n = 3"));

    let f = write(&d, "field.json", r#"{"field": {"p": 6}, "n": 1, "A": [[0]], "gamma": 1}"#);
    assert_eq!(tcc(&["dim", "-i", s(&f)]).status.code(), Some(2));
}

#[test]
fn random_verify_is_reproducible() {
    let args = ["random-verify", "--fields", "2,3,5,4", "--n-max", "4", "--trials", "15", "--seed", "7", "--format", "json"];
    let a = tcc(&args);
    let b = tcc(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["result"]["total"], 60);
    assert_eq!(v["result"]["failed"], 0);
    assert_eq!(v["checks"]["oracle_equivalence"], "passed");
    assert!(v.get("timing_ms").is_none());

    let env = Command::new(env!("CARGO_BIN_EXE_tcc"))
        .args(&args[..7])
        .args(["--format", "json"])
        .env("TCC_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn random_verify_zero_trials_is_skipped() {
    let o = tcc(&["random-verify", "--trials", "0", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["checks"]["oracle_equivalence"], "skipped");
    assert_eq!(v["result"]["skipped"], true);
}
