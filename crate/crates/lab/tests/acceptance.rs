//! Acceptance gate: one test and one printed PASS/FAIL line per criterion.

use std::process::Command;

use ffsi::suites::{
    interval_route_sum, run_suite, suite_bounds, suite_facfun_oracle, suite_identities,
    suite_lfunc, suite_variety, Check,
};
use ffsi_core::{ArithFnSpec, Budget};
use num_bigint::BigInt;

fn gate(criterion: usize, label: &str, checks: &[Check]) {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let status = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {criterion} {label}: {status}");
    for c in &failed {
        println!("  failed: {} — {}", c.name, c.detail);
    }
    assert!(failed.is_empty(), "criterion {criterion} ({label}) failed");
}

#[test]
fn criterion_1_exact_identities() {
    let budget = Budget::default();
    let checks = suite_identities(budget).expect("identities suite runs");
    // independent route for the quoted instance: interval enumeration of
    // the full degree-3 slice over F_2 sums Lambda to 8
    let field = ffsi_core::Field::new(2, 1).unwrap();
    let lambda_sum =
        interval_route_sum(&ArithFnSpec::VonMangoldt, &field, 3, budget).unwrap();
    assert_eq!(lambda_sum, BigInt::from(8));
    gate(1, "exact identities", &checks);
}

#[test]
fn criterion_2_factorization_function_oracle() {
    let checks = suite_facfun_oracle(Budget::default()).expect("oracle suite runs");
    gate(2, "factorization-function oracle", &checks);
}

#[test]
fn criterion_3_representation_route_identities() {
    let checks = suite_identities(Budget::default()).expect("identities suite runs");
    let reps: Vec<Check> = checks
        .into_iter()
        .filter(|c| c.name.starts_with("identities/representation-route/"))
        .collect();
    assert!(!reps.is_empty());
    gate(3, "representation-route identities", &reps);
}

#[test]
fn criterion_4_bound_satisfaction() {
    let checks = suite_bounds(Budget::default()).expect("bounds suite runs");
    gate(4, "short-interval bound satisfaction", &checks);
}

#[test]
fn criterion_5_variety_counts() {
    let checks = suite_variety(Budget::default()).expect("variety suite runs");
    gate(5, "variety point counts", &checks);
}

#[test]
fn criterion_6_l_function_suite() {
    let checks = suite_lfunc(Budget::default()).expect("lfunc suite runs");
    let lfunc: Vec<Check> = checks
        .into_iter()
        .filter(|c| !c.name.starts_with("lfunc/moments-"))
        .collect();
    gate(6, "L-function family and functional equations", &lfunc);
}

#[test]
fn criterion_7_moments() {
    let checks = suite_lfunc(Budget::default()).expect("lfunc suite runs");
    let moments: Vec<Check> = checks
        .into_iter()
        .filter(|c| c.name.starts_with("lfunc/moments-"))
        .collect();
    assert!(!moments.is_empty());
    gate(7, "moment checks", &moments);
}

#[test]
fn criterion_8_determinism() {
    let bin = env!("CARGO_BIN_EXE_ffsi");
    let run = || {
        let out = Command::new(bin)
            .args(["verify", "--suite", "all"])
            .output()
            .expect("verify runs");
        assert!(out.status.success(), "verify --suite all must pass");
        out.stdout
    };
    let first = run();
    let second = run();
    let ok = first == second;
    println!(
        "ACCEPTANCE 8 determinism: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "verify --suite all must be byte-identical across runs");
    // and the in-process suite agrees with itself as well
    let a = run_suite("all", Budget::default()).unwrap();
    let b = run_suite("all", Budget::default()).unwrap();
    let render = |checks: &[Check]| ffsi::suites::render(checks);
    assert_eq!(render(&a), render(&b));
}
