//! End-to-end tests against the compiled binary: output contracts, exit
//! codes, configuration precedence, and byte-level determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ncsphere"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn normalize_examples() {
    let out = run(&["normalize", "b a"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "q' a b");

    let out = run(&["normalize", "a b - q b a"]);
    assert_eq!(stdout(&out).trim(), "0");

    let out = run(&["normalize", "a a' + b b'"]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["normalize", "a + $"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("byte 4"), "missing position: {err}");
}

#[test]
fn tiny_grid_exits_2() {
    let out = run(&["--grid", "4", "chern"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_lambda_exits_2() {
    let out = run(&["verify-galois", "--lambda", "2/1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unimodular"), "unexpected error: {err}");
}

#[test]
fn json_reports_are_valid_and_deterministic() {
    let args = &["--json", "--max-degree", "3", "verify-galois"];
    let first = run(args);
    assert!(first.status.success());
    for line in stdout(&first).lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid JSON line");
        assert_eq!(v["status"], "pass");
        assert!(v["check"].is_string());
    }
    let second = run(args);
    assert_eq!(
        first.stdout, second.stdout,
        "identical config must give identical bytes"
    );
}

#[test]
fn chern_json_carries_the_value() {
    let out = run(&["--json", "--grid", "64", "chern", "--charge", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["check"], "chern");
    let c1 = v["c1"].as_f64().unwrap();
    assert!((c1.abs() - 1.0).abs() < 1e-4, "c1 = {c1}");
    assert_eq!(v["status"], "pass");
}

#[test]
fn projector_show_prints_the_bott_matrix() {
    let out = run(&["projector", "--charge", "1", "--show"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[ z | x- ]"), "got: {text}");
    assert!(text.contains("[ x+ | 1 - z ]"), "got: {text}");
}

#[test]
fn heegaard_check_passes() {
    let out = run(&["heegaard-check", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["norm_conditions"].as_str().unwrap().contains("skipped"));
}

#[test]
fn config_file_applies_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("ncsphere-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "max_degree = 2\noutput = json\nseed = 7\n").unwrap();

    let out = run(&["--config", cfg.to_str().unwrap(), "verify-connection"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["params"]["max_len"], 2);
    assert_eq!(v["params"]["seed"], 7);

    let out = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--max-degree",
        "3",
        "verify-connection",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["params"]["max_len"], 3, "flag must override config");

    let out = bin()
        .args([
            "--config",
            dir.join("missing.conf").to_str().unwrap(),
            "heegaard-check",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    std::fs::remove_dir_all(&dir).ok();
}
