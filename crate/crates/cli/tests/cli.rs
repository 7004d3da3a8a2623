use std::process::{Command, Output};

use mzsv_core::report::Report;

fn mzsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzsv")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_exact_rationals() {
    let out = mzsv(&["eval", "--index", "2,1", "--n", "2", "--star"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "11/8");
    let out = mzsv(&["eval", "--index", "3", "--n", "2", "--mollified", "big"]);
    assert_eq!(stdout(&out).trim(), "11/16");
    let out = mzsv(&["eval", "--index", "-1", "--n", "2", "--mollified", "small"]);
    assert_eq!(stdout(&out).trim(), "-3/2");
    let out = mzsv(&["eval", "--index", "2,1", "--n", "2"]);
    assert_eq!(stdout(&out).trim(), "1/4");
}

#[test]
fn eval_rejects_bad_indices() {
    let out = mzsv(&["eval", "--index", "0,1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nonzero"), "{}", stderr(&out));
    let out = mzsv(&["eval", "--index", "1,2", "--zeta"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not admissible"));
}

#[test]
fn eval_zeta_numerically() {
    let out = mzsv(&["eval", "--index", "2", "--zeta", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("1.644934066848"), "{}", stdout(&out));
}

#[test]
fn expand_examples() {
    let out = mzsv(&["expand", "--base", "3,3", "--coeff", "2"]);
    assert_eq!(stdout(&out).trim(), "4*(3,3) + 2*(6)");
    let out = mzsv(&["expand", "--base", "-2,-2"]);
    assert_eq!(stdout(&out).trim(), "4*(-2,-2) + 2*(4)");
    let out = mzsv(&["expand", "--base", "5"]);
    assert_eq!(stdout(&out).trim(), "2*(5)");
    let out = mzsv(&["expand", "--base", "5", "--sign", "-1"]);
    assert_eq!(stdout(&out).trim(), "-2*(5)");
}

#[test]
fn verify_family_instances() {
    let out = mzsv(&["verify", "--family", "two-one", "--a", "1", "--n-max", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verify: 100/100 passed"));
    let out = mzsv(&["verify", "--family", "ones-c", "--a", "0", "--c", "1", "--t", "0", "--n-max", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("50/50"));
}

#[test]
fn verify_reports_usage_errors() {
    let out = mzsv(&["verify", "--family", "c21", "--a", "0", "--b", "0", "--c", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("c_1 = 2 violates c_j >= 3"), "{}", stderr(&out));
    let out = mzsv(&["verify", "--family", "c3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mzsv(&["sweep", "--workers", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_mzsv_two_one() {
    let out = mzsv(&["verify-mzsv", "--family", "two-one", "--a", "1,1", "--tol", "1e-6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = mzsv(&["verify-mzsv", "--family", "ones-c", "--a", "1", "--c", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suites_pass() {
    for (suite, n) in [("middlestep", "2"), ("lemma31", "6"), ("ittw", "1"), ("paper-examples", "1")] {
        let out = mzsv(&["suite", "--suite", suite, "--n", n, "--workers", "2"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stdout(&out));
    }
}

#[test]
fn json_reports_round_trip() {
    let out = mzsv(&["suite", "--suite", "middlestep", "--n", "2", "--format", "json"]);
    let text = stdout(&out);
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.to_json(), text.trim_end());
    assert_eq!(report.items.len(), 4);
    assert!(report.items.iter().all(|i| i.equal == Some(true)));
}

#[test]
fn reports_are_reproducible() {
    let args = ["suite", "--suite", "lemma31", "--n", "4", "--seed", "7", "--no-timing", "--format", "json", "--workers", "3"];
    let first = stdout(&mzsv(&args));
    let second = stdout(&mzsv(&args));
    assert_eq!(first, second);
    assert!(!first.contains("elapsed_ms"));
    let other_seed = stdout(&mzsv(&["suite", "--suite", "lemma31", "--n", "4", "--seed", "8", "--no-timing", "--format", "json", "--workers", "3"]));
    assert_ne!(first, other_seed);
}

#[test]
fn csv_output() {
    let out = mzsv(&["verify", "--family", "c21", "--a", "0", "--b", "0", "--c", "3", "--n-max", "5", "--format", "csv"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("label,params,n,lhs,rhs,equal"));
}
