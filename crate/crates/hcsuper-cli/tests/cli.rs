use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hcsuper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcsuper")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn build(dir: &Path) -> String {
    let path = dir.join("m.json").to_string_lossy().into_owned();
    let out = hcsuper(&["build", "--flavor", "zero", "--m", "1", "--q", "2", "--Q", "5", "--lambda", "[[2]]", "--out", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn poly_example() {
    let out = hcsuper(&["poly", "--variant", "nondeg", "--flavor", "zero", "--q", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["P"], "45");
}

#[test]
fn census_example() {
    let out = hcsuper(&["census", "--variant", "nondeg", "--flavor", "s", "--m", "0", "--q", "3/2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["identity_holds"], true);
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn census_parallel_matches_sequential() {
    let args = ["census", "--variant", "deg", "--flavor", "s", "--Q", "5", "--n", "3"];
    let seq = json(&hcsuper(&args));
    let par = json(&hcsuper(&[&args[..], &["--jobs", "4"]].concat()));
    assert_eq!(seq, par);
    assert_eq!(seq["pass"], true);
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path());
    let out = hcsuper(&["verify", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["relations"]["pass"], true);
    assert_eq!(v["dimension"]["built"], 4);
}

#[test]
fn verify_is_bit_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path());
    let a = json(&hcsuper(&["verify", &path]));
    let b = json(&hcsuper(&["verify", &path]));
    assert_eq!(a["relations"], b["relations"]);

    let dump: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let module = hcsuper::CycloModule::load(&dump).unwrap();
    let direct = serde_json::to_value(module.verify_relations(1e-25).residuals).unwrap();
    assert_eq!(a["relations"]["residuals"], direct);
}

#[test]
fn tampered_dump_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path());
    let mut dump: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    dump["generators"]["T"][0][0][0] = serde_json::json!(["3", "0"]);
    std::fs::write(&path, dump.to_string()).unwrap();
    let out = hcsuper(&["verify", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn oracle_agrees_with_separability() {
    let out = hcsuper(&["oracle", "--flavor", "s", "--q", "3/2", "--Q", "5", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["semisimple"], true);
    assert_eq!(v["rank"], v["dim"]);
}

#[test]
fn enumerate_lists_tableaux() {
    let out = hcsuper(&["enumerate", "--flavor", "zero", "--m", "1", "--n", "3", "--tableaux"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 3);
    let total: usize = v["shapes"].as_array().unwrap().iter().map(|s| s["tableaux"].as_array().unwrap().len()).sum();
    assert_eq!(total, 4);
}

#[test]
fn usage_and_parameter_errors_exit_2() {
    assert_eq!(hcsuper(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hcsuper(&["poly", "--q", "2"]).status.code(), Some(2));
    assert_eq!(hcsuper(&["poly", "--q", "1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hcsuper(&["poly", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hcsuper(&["poly", "--q", "2", "--m", "2", "--Q", "5", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hcsuper(&["build", "--q", "2", "--lambda", "[[2"]).status.code(), Some(2));
    assert_eq!(hcsuper(&["verify", "/nonexistent/m.json"]).status.code(), Some(2));
    assert_eq!(hcsuper(&["poly", "--q", "2", "--n", "2", "--tol", "abc"]).status.code(), Some(2));
}

#[test]
fn non_separate_parameters_are_refused() {
    let out = hcsuper(&["census", "--variant", "deg", "--flavor", "zero", "--Q", "5,7", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not separate"));
}
