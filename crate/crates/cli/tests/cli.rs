use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bdtwist"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

const SL3: &str = r#"{"n": 3, "tau": {"1": 2}}"#;
const SL4: &str = r#"{"n": 4, "gamma1": [1, 2], "gamma2": [2, 3], "tau": {"1": 2, "2": 3}}"#;

#[test]
fn validate_reports_degree() {
    let dir = tempfile::tempdir().unwrap();
    for (text, degree) in [(SL3, 1), (SL4, 2)] {
        let p = write(dir.path(), "t.json", text);
        let o = run(&["validate", "--triple", p.to_str().unwrap()]);
        assert!(o.status.success());
        let v = stdout_json(&o);
        assert_eq!(v["valid"], true);
        assert_eq!(v["degree"], degree);
    }
}

#[test]
fn validate_rejects_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", r#"{"n": 2, "tau": {"1": 1}}"#);
    let o = run(&["validate", "--triple", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_rejects_mismatched_n() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", SL3);
    let o = run(&["validate", "--n", "4", "--triple", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "domain");
}

#[test]
fn enumerate_counts() {
    for (n, count) in [("2", 1), ("3", 3), ("4", 9)] {
        let o = run(&["enumerate", "--n", n]);
        assert!(o.status.success());
        assert_eq!(stdout_json(&o)["count"], count);
    }
    let o = run(&["enumerate", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate", "--n", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("triples.json")).unwrap()).unwrap();
    assert_eq!(v["triples"].as_array().unwrap().len(), 3);
}

#[test]
fn solve_writes_solution() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", SL3);
    let out = dir.path().join("out");
    let o = run(&["solve", "--triple", t.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(out.join("solution.json")).unwrap();
    let sol = bdtwist::json::parse_solution(&text).unwrap();
    assert_eq!(sol.a_skew.get(0, 1), &num_rational::BigRational::from_integer((-1).into()));
}

#[test]
fn rmatrix_empty_triple_is_standard() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", r#"{"n": 3, "tau": {}}"#);
    let out = dir.path().join("out");
    let o = run(&["rmatrix", "--triple", t.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = fs::read_to_string(out.join("R.json")).unwrap();
    let rs = fs::read_to_string(out.join("R_standard.json")).unwrap();
    assert_eq!(bdtwist::json::parse_matrix(&r).unwrap(), bdtwist::json::parse_matrix(&rs).unwrap());
}

#[test]
fn rmatrix_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", SL3);
    let out = dir.path().join("out");
    let o = run(&["rmatrix", "--triple", t.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let s = bdtwist::rep::Session::canonical(&bdtwist::json::parse_triple(SL3).unwrap()).unwrap();
    let (f, d) = bdtwist::json::parse_matrix(&fs::read_to_string(out.join("F.json")).unwrap()).unwrap();
    assert_eq!(d, s.denominator());
    assert_eq!(f, s.twist.f);
    let twist = bdtwist::json::parse_twist(&fs::read_to_string(out.join("twist.json")).unwrap()).unwrap();
    assert_eq!(twist.0.to_string(), s.twist.expr.to_string());
    assert!(out.join("F_1.json").exists());
}

#[test]
fn verify_single_check_passes() {
    let o = run(&["verify", "--check", "pentagon"]);
    assert!(o.status.success());
    let lines: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l["check"] == "pentagon" && l["status"] == "pass"));
}

#[test]
fn verify_unknown_check_is_domain_error() {
    let o = run(&["verify", "--check", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_matrix_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", SL3);
    let out = dir.path().join("out");
    assert!(run(&["rmatrix", "--triple", t.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .status
        .success());
    let r_path = out.join("R.json");
    let good = run(&["verify", "--matrix", r_path.to_str().unwrap()]);
    assert!(good.status.success(), "{}", String::from_utf8_lossy(&good.stdout));

    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&r_path).unwrap()).unwrap();
    let entries = doc["entries"].as_array_mut().unwrap();
    let off = entries
        .iter()
        .position(|e| e[0] != e[1])
        .expect("R has an off-diagonal entry");
    entries.remove(off);
    let bad = write(dir.path(), "bad.json", &doc.to_string());
    let o = run(&["verify", "--matrix", bad.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let first: Value = serde_json::from_str(String::from_utf8(o.stdout).unwrap().lines().next().unwrap()).unwrap();
    assert_eq!(first["check"], "qybe");
    assert_eq!(first["status"], "fail");
    assert!(first["witness"].is_object());
    assert!(dir.path().join("reports.jsonl").exists());
}

#[test]
fn missing_file_is_io_error() {
    let o = run(&["validate", "--triple", "/nonexistent/t.json"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "io");
}
