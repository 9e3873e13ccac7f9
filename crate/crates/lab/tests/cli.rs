//! Exit-code contract and machine-output checks for the `ffsi` binary.

use std::process::Command;

fn ffsi() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ffsi"))
}

#[test]
fn missing_required_flag_is_usage_error() {
    let out = ffsi().args(["sum", "--p", "2", "--fn", "dk:2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = ffsi().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_override_is_respected() {
    let out = ffsi()
        .args(["sum", "--p", "2", "--n", "8", "--m", "1", "--fn", "dk:2"])
        .env("FFSI_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("budget"), "stderr was: {err}");
}

#[test]
fn sum_writes_exact_rationals_as_num_den_json() {
    let dir = std::env::temp_dir().join(format!("ffsi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sum.json");
    let out = ffsi()
        .args([
            "sum", "--p", "3", "--n", "4", "--m", "2", "--fn", "mobius", "--mode",
            "all", "--out", "json", "--path",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let payload: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(payload["report"]["main_term"]["num"], "0");
    assert_eq!(payload["report"]["main_term"]["den"], "1");
    assert_eq!(payload["manifest"]["command"], "sum");
    assert_eq!(payload["report"]["pass"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sampled_scans_replay_identically() {
    let args = [
        "sum", "--p", "3", "--n", "5", "--m", "2", "--fn", "lambda", "--mode",
        "sample:5:42", "--out", "csv",
    ];
    let first = ffsi().args(args).output().unwrap();
    let second = ffsi().args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn quotient_counts_match_interval_size() {
    let out = ffsi()
        .args([
            "points", "--p", "3", "--n", "3", "--m", "1", "--c", "2", "--target",
            "quotient:full", "--out", "csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("r=1 count=9"), "stdout was: {stdout}");
}

#[test]
fn moments_shift_count_mismatch_is_usage_error() {
    let out = ffsi()
        .args([
            "moments", "--p", "3", "--m", "1", "--r", "2", "--alphas", "0,0",
            "--twist", "0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
