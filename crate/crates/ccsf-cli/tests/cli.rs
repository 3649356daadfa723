//! Runs the built binary and checks exit codes and reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn rules(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../rules");
    root.join(name).to_string_lossy().into_owned()
}

fn ccsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccsf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn witness_instance_is_bisimilar() {
    let o = ccsf(&["bisim", "--rules", &rules("labat.json"), "f(a.0, a'.0)", "a.a'.0 + tau.0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn non_bisimilar_exits_one_with_formula() {
    let o = ccsf(&["--json", "--rules", "labat", "bisim", "a.0", "tau.0"]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["verdict"], "negative");
    assert!(r["result"]["witness"].is_string());
}

#[test]
fn enumerate_matches_golden() {
    let o = ccsf(&["enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 81);
    assert_eq!(out, include_str!("../../ccsf/tests/golden/enumerate.jsonl"));
}

#[test]
fn syntax_error_exits_two_with_position() {
    let o = ccsf(&["parse", "f(x, a'.(0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column 11"), "{err}");
}

#[test]
fn malformed_rule_file_exits_two() {
    let dir = std::env::temp_dir().join(format!("ccsf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"left": ["a"], "right": [], "sync": ["x"]}"#).unwrap();
    let o = ccsf(&["classify", "--rules", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("column"));
}

#[test]
fn missing_rules_is_usage_error() {
    assert_eq!(ccsf(&["lts", "a.0"]).status.code(), Some(2));
    assert_eq!(ccsf(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn parse_prints_canonical_form() {
    let o = ccsf(&["--json", "parse", "b.0 + a.x"]);
    // `b` is a variable name, not an action.
    assert_eq!(o.status.code(), Some(2));
    let o = ccsf(&["--json", "parse", "tau.0 + a.x"]);
    let r = json(&o);
    assert_eq!(r["result"]["size"], 4);
    assert_eq!(r["result"]["vars"][0], "x");
}

#[test]
fn soundness_without_sync_is_refuted() {
    let o = ccsf(&["--json", "--rules", &rules("no-sync.json"), "sound", "x || y = f(x, y) + f(y, x)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["verdict"], "refuted");
    let o = ccsf(&["--rules", &rules("lara.json"), "sound", "x || y = f(x, y) + f(y, x)", "--depth", "2", "--width", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sampled_soundness_is_seed_deterministic() {
    let args = ["--json", "--rules", "ltau", "sound", "f(x, 0) = x", "--sample", "200", "--seed", "9", "--depth", "3", "--width", "3"];
    let a = json(&ccsf(&args));
    let b = json(&ccsf(&[&args[..], &["--jobs", "1"]].concat()));
    assert_eq!(a["verdict"], "negative");
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn shipped_axioms_sound_for_their_rule_set() {
    assert_eq!(ccsf(&["--rules", "labat", "axioms"]).status.code(), Some(0));
    assert_eq!(ccsf(&["--rules", "lara", "axioms", "lall-rnone"]).status.code(), Some(1));
}

#[test]
fn classify_and_witness() {
    let r = json(&ccsf(&["--json", "--rules", &rules("ltau.json"), "classify"]));
    assert_eq!(r["result"]["case"], "ltau");
    let o = ccsf(&["--json", "--rules", "labat", "witness", "--n", "2", "--emit-terms"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["results"].as_array().unwrap().len(), 3);
    // n = 0 is the one index where the asymmetry fails for this family.
    assert_eq!(ccsf(&["--rules", "lara", "witness", "--n", "2"]).status.code(), Some(1));
    assert_eq!(ccsf(&["--rules", "lara", "witness", "--n", "2", "--origin", "1"]).status.code(), Some(0));
}

#[test]
fn prove_reports_derivable_and_exhausted() {
    let o = ccsf(&["--json", "prove", "--axioms", "a1-a4", "a.0 + (tau.0 + a.0) = tau.0 + a.0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["verdict"], "derivable");
    let o = ccsf(&["prove", "--axioms", "a1-a4", "a.0 = tau.0", "--max-size", "6", "--max-depth", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decompose_open_step_trt() {
    let o = ccsf(&["--json", "--rules", &rules("par.json"), "decompose", "a.0 || (a.0 + tau.a.0) || tau.0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["primes"].as_array().unwrap().len(), 3);
    let o = ccsf(&["--json", "--rules", "lara", "open-step", "f(x, a.y)"]);
    assert_eq!(json(&o)["result"]["transitions"].as_array().unwrap().len(), 3);
    assert_eq!(ccsf(&["--rules", "ltau", "trt", "x", "f(x, a.0)"]).status.code(), Some(0));
    assert_eq!(ccsf(&["--rules", "ltau", "trt", "x", "a.x"]).status.code(), Some(1));
    assert_eq!(ccsf(&["--rules", "ltau", "trt", "x", "f(x || x, 0)"]).status.code(), Some(2));
}
