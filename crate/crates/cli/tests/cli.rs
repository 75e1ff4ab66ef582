//! End-to-end checks of the cvtool binary: exit codes, output stability,
//! certificate verdicts and the census cache.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvtool"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cert_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/certs")
}

#[test]
fn components_a1_exits_zero() {
    let out = run(&["components", "--type", "A1", "--no-cache"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 component(s)"), "{text}");
}

#[test]
fn unknown_type_is_input_error() {
    let out = run(&["components", "--type", "Z9", "--no-cache"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn witt_p11_is_budget_error() {
    let out = run(&["witt", "--q", "11"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn bundled_certificates_pass() {
    for name in ["a3_e2_to_e1.json", "a4_e13_to_e1.json"] {
        let path = cert_dir().join(name);
        let out = run(&["certify", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.starts_with("PASS"), "{text}");
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let text = std::fs::read_to_string(cert_dir().join("a3_e2_to_e1.json")).unwrap();
    let mut raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    raw["base"][0] = serde_json::Value::String("7".into());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, serde_json::to_string(&raw).unwrap()).unwrap();
    let out = run(&["certify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("FAIL"), "{text}");
}

#[test]
fn garbage_certificate_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["certify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn json_census_output_is_stable() {
    let args = ["census", "--algebra", "B2", "--primes", "2,3", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let value: serde_json::Value =
        serde_json::from_slice(&first.stdout).expect("valid JSON");
    assert_eq!(value["verdict"], "PASS");
}

#[test]
fn out_flag_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let stdout_run = run(&["orbits", "--type", "A1", "--q", "3", "--no-cache", "--format", "json"]);
    assert!(stdout_run.status.success());
    let file_run = run(&[
        "orbits", "--type", "A1", "--q", "3", "--no-cache", "--format", "json",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(file_run.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), stdout_run.stdout);
}

#[test]
fn cache_store_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache_str = cache.to_str().unwrap();
    let first = run(&["orbits", "--type", "A2", "--q", "2", "--cache-dir", cache_str]);
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    let second = run(&["orbits", "--type", "A2", "--q", "2", "--cache-dir", cache_str]);
    assert_eq!(first.stdout, second.stdout);
    let cleared = run(&["cache", "--clear", "--cache-dir", cache_str]);
    assert!(cleared.status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 0);
}
