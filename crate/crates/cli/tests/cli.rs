use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn holant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holant")).args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> Value {
    let out = holant(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn classify_reports_hardness() {
    let v = run_ok(&["classify", &path("hard.json")]);
    assert_eq!(v["category"], "SharpPHard");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 3);
    let v = run_ok(&["classify", &path("planar_only.json")]);
    assert_eq!(v["category"], "PlanarPTimeOnly");
    let v = run_ok(&["classify-csp", &path("planar_only.json")]);
    assert_eq!(v["category"], "SharpPHard");
}

#[test]
fn verification_uses_the_seed() {
    let args = ["classify", &path("planar_only.json"), "--verify", "10", "--seed", "9"];
    let v = run_ok(&args);
    let check = &v["verification"][0];
    assert_eq!(check["class"], "M_hat");
    assert_eq!(check["disagreements"].as_array().unwrap().len(), 0);
    assert_eq!(holant(&args).stdout, holant(&args).stdout);
}

#[test]
fn auto_eval_matches_brute_force() {
    let auto = run_ok(&["eval", &path("affine_csp.json")]);
    let brute = run_ok(&["eval", "--mode", "brute", &path("affine_csp.json")]);
    assert_eq!(auto["method"], "affine");
    assert_eq!(auto["value"], brute["value"]);
    let out = holant(&["eval", &path("affine_csp.json")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("affine"));
}

#[test]
fn grids_go_through_fkt() {
    let v = run_ok(&["eval", &path("eo_cycle.json")]);
    assert_eq!(v["method"], "fkt");
    assert_eq!(v["value"], "2");
    let err = holant(&["eval", "--mode", "affine", &path("eo_cycle.json")]);
    assert_eq!(err.status.code(), Some(1));
}

#[test]
fn fkt_and_gadget() {
    assert_eq!(run_ok(&["fkt", &path("k4.json")])["value"], "3");
    let g = run_ok(&["gadget", &path("pinned.json")]);
    assert_eq!(g["symmetric"], serde_json::json!(["0", "1", "0"]));
    assert_eq!(g["classes"]["matchgate"], true);
}

#[test]
fn transform_preserves_the_value() {
    let v = run_ok(&["check-invariance", "-t", "H2", &path("edge_h2.json")]);
    assert_eq!(v["equal"], true);
    let out = std::env::temp_dir().join(format!("holant-transform-{}.json", std::process::id()));
    let out = out.to_str().unwrap();
    let status = holant(&["transform", "-t", r#"[["1","1"],["0","i"]]"#, &path("edge_h2.json"), "-o", out]).status;
    assert!(status.success());
    let before = run_ok(&["eval", &path("edge_h2.json")]);
    let after = run_ok(&["eval", out]);
    std::fs::remove_file(out).unwrap();
    assert_eq!(before["value"], after["value"]);
}

#[test]
fn exit_codes() {
    let out = holant(&["eval", &path("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "parse");
    let out = holant(&["classify-csp2", &path("asym.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "asymmetric");
    assert_eq!(holant(&["classify", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(holant(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn output_is_identical_across_thread_counts() {
    for args in [
        vec!["classify", "--verify", "5"],
        vec!["classify-csp"],
        vec!["eval"],
    ] {
        let file = if args[0] == "eval" { path("affine_csp.json") } else { path("planar_only.json") };
        let run = |threads: &str| {
            let mut a = args.clone();
            a.push(&file);
            a.extend(["--threads", threads]);
            holant(&a).stdout
        };
        let one = run("1");
        assert!(!one.is_empty());
        assert_eq!(one, run("4"));
        assert_eq!(one, run("1"));
    }
}
