use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metacyclic")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn assert_header(v: &Value, p: u64, m: u64) {
    assert_eq!(v["schema"], 1);
    assert_eq!((v["p"].as_u64(), v["m"].as_u64()), (Some(p), Some(m)));
    for key in ["a", "zeta", "xi", "primitive_root", "tool_version"] {
        assert!(!v[key].is_null(), "missing {key}");
    }
}

#[test]
fn hasse_examples() {
    let v = json(&["hasse", "--p", "7", "--m", "2", "--a", "1,1,1,1", "--lambda", "3,6"]);
    assert_header(&v, 7, 2);
    assert_eq!(v["phi"], serde_json::json!([6, 5, 5, 6]));
    assert_eq!(v["count"], 3);
    assert_eq!(v["lambdas"][0]["rank_pair"], serde_json::json!([1, 1]));
    assert_eq!(v["lambdas"][1]["supersingular"], true);
    assert_eq!(v["lambdas"][1]["rank_pair"], serde_json::json!([0, 0]));
    let v = json(&["hasse", "--p", "7", "--m", "3", "--a", "1,2,1,2"]);
    assert_eq!(v["phi"], serde_json::json!([1, 4, 1]));
    assert_eq!(v["count"], 2);
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--p", "7", "--m", "2", "--a", "1,1,1,1"]);
    assert_header(&v, 7, 2);
    assert_eq!((v["case"].as_str(), v["good"].as_bool()), (Some("Mixed"), Some(false)));
    assert_eq!(v["galois"], "PSL2");
    assert_eq!(v["signature"], serde_json::json!([7, 7, 7]));
    let v = json(&["classify", "--p", "13", "--m", "4", "--a", "1,1,1,1"]);
    assert_eq!((v["case"].as_str(), v["good"].as_bool()), (Some("Multiplicative"), Some(true)));
    assert_eq!(v["gamma"], "Dihedral");
    assert!(v["galois"].is_null());
    assert!(v["omitted"].as_array().unwrap().iter().any(|o| o["field"] == "galois"));
    let v = json(&["classify", "--p", "11", "--m", "5", "--a", "1,1,4,4"]);
    assert_eq!(v["galois"], "SL2");
    assert_eq!(v["signature"], serde_json::json!([11, 11, 5]));
}

#[test]
fn defdatum_examples() {
    let v = json(&["defdatum", "--p", "7", "--m", "2", "--a", "1,1,1,1"]);
    assert_header(&v, 7, 2);
    assert_eq!((v["case_label"].as_str(), v["n"].as_u64()), (Some("a"), Some(3)));
    assert_eq!(v["theta_rhs"], serde_json::json!([6, 5, 5, 6]));
    let v = json(&["defdatum", "--p", "7", "--m", "3", "--a", "1,1,2,2"]);
    assert_eq!(v["case_label"], "b");
    assert_eq!(v["permutation"], serde_json::json!([0, 2, 1, 3]));
    assert_eq!(v["normal_form"], serde_json::json!({"b1": 0, "b2": 4, "lambda_factor": [1, 4, 1], "c": 1}));
    assert_eq!(v["omega_unit"], 1);
    assert_eq!(v["vanishing_cycle_ok"], true);
}

#[test]
fn exit_codes() {
    for args in [
        ["hasse", "--p", "7", "--m", "5", "--a", "1,1,1,2"],
        ["defdatum", "--p", "7", "--m", "5", "--a", "1,1,1,2"],
        ["hasse", "--p", "11", "--m", "5", "--a", "1,1,1,2"],
        ["defdatum", "--p", "13", "--m", "4", "--a", "1,1,1,1"],
        ["classify", "--p", "9", "--m", "2", "--a", "1,1,1,1"],
        ["classify", "--p", "7", "--m", "3", "--a", "1,1,1,1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["defdatum", "--p", "13", "--m", "6", "--a", "1,2,4,5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let text = run(&["classify", "--p", "7", "--m", "3", "--a", "1,2,1,2", "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).lines().any(|l| l.starts_with("galois") && l.ends_with("SL2")));
}

#[test]
fn small_sweep_table() {
    let out = run(&["sweep", "m<=3", "p<=13"]);
    assert!(out.status.success());
    let table = String::from_utf8_lossy(&out.stdout);
    assert_eq!(table.lines().count(), 1 + 3 + 2);
    assert_eq!(run(&["sweep", "q<=3"]).status.code(), Some(2));
}
