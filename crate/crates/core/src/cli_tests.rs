use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

use super::cli::run as run_cli;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

/// Runs the CLI in-process with `--out` pointing at a fresh file; returns the
/// exit code and whatever was written.
fn run(args: &[&str]) -> (i32, String) {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("betweenness-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("out{}.txt", NEXT.fetch_add(1, Ordering::Relaxed)));
    let mut argv: Vec<String> = vec!["betweenness".into()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--out".into());
    argv.push(path.to_string_lossy().into_owned());
    let code = run_cli(argv);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    std::fs::remove_file(&path).ok();
    (code, text)
}

fn json(args: &[&str]) -> Value {
    let (code, text) = run(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&text).expect("output is JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn antisym_step_on_the_worked_example() {
    let v = json(&["close", "--op", "antisym-step", "--in", &fixture("ex7.json")]);
    assert_eq!(v["glued"], serde_json::json!([["d1", "d2"]]));
    assert_eq!(strings(&v["relation"]["elements"]), ["a", "b", "c", "d1", "x", "y"]);
    assert_eq!(v["quotient"]["map"]["d2"], "d1");
}

#[test]
fn antisymmetric_closure_trace() {
    let v = json(&["close", "--op", "antisym", "--in", &fixture("ex7.json")]);
    let steps: Vec<&str> = v["trace"].as_array().unwrap().iter().map(|t| t["step"].as_str().unwrap()).collect();
    assert_eq!(steps, ["L_A", "L4", "L_A", "L4"]);
    assert_eq!(v["trace"][3]["identity"], true);
    assert_eq!(v["relation"]["elements"].as_array().unwrap().len(), 5);

    let tri = json(&["close", "--op", "antisym", "--in", &fixture("tri.json")]);
    assert_eq!(tri["glued"], serde_json::json!([["b", "c"]]));
}

#[test]
fn validate_reports_witnesses() {
    let v = json(&["validate", "--in", &fixture("ex7.json")]);
    assert_eq!(v["r_relation"], false);
    let r4 = v["reports"].as_array().unwrap().iter().find(|r| r["axiom"] == "R4").unwrap();
    assert_eq!(r4["holds"], false);

    let v = json(&["check", "--axiom", "R3", "--in", &fixture("not_r3.json")]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witnesses"], serde_json::json!([["a", "b", "a"]]));

    let roads = json(&["validate", "--in", &fixture("roads.json")]);
    assert_eq!(roads["valid"], true);
}

#[test]
fn classify_lattices() {
    let n5 = json(&["classify", "--in", &fixture("n5.json")]);
    assert_eq!(n5["report"]["modular"]["holds"], false);
    let m3 = json(&["classify", "--in", &fixture("m3.json")]);
    assert_eq!(m3["report"]["modular"]["holds"], true);
    assert_eq!(m3["report"]["distributive"]["holds"], false);
    let oracle = json(&["classify-oracle", "--in", &fixture("m3.json")]);
    assert_eq!(oracle["distributive"]["holds"], false);
    let b4 = json(&["classify", "--in", &fixture("b4.json")]);
    assert_eq!(b4["report"]["boolean"]["holds"], true);
}

#[test]
fn reflect_and_complete() {
    let r = json(&["reflect", "--in", &fixture("n5.json")]);
    assert_eq!(r["glued"], serde_json::json!([["a", "c"]]));
    assert_eq!(r["lattice"]["elements"].as_array().unwrap().len(), 4);

    let dm = json(&["dm", "--in", &fixture("bowtie.json")]);
    assert_eq!(dm["cuts"].as_object().unwrap().len(), 7);
    let report = json(&["dm-report", "--in", &fixture("bowtie.json")]);
    assert_eq!(report["holds"], true);
}

#[test]
fn amalgamate_over_an_edge() {
    let v = json(&[
        "amalgamate",
        "--over",
        &fixture("edge.json"),
        "--in",
        &fixture("path_abc.json"),
        "--in2",
        &fixture("path_azc.json"),
    ]);
    assert_eq!(v["closure_needed"], false);
    assert_eq!(strings(&v["result"]["elements"]), ["a", "b", "c", "z"]);
}

#[test]
fn pullback_and_enumerate() {
    let v = json(&["pullback", "--map", &fixture("tri_to_point.json"), "--in", &fixture("tri.json")]);
    assert_eq!(strings(&v["elements"]), ["u", "v", "w"]);
    let e = json(&["enumerate", "--size", "2"]);
    assert_eq!(e["count"], 1);
}

#[test]
fn chain_runs() {
    let v = json(&["chain", "--size-bound", "3", "--rounds", "1", "--seed", "3"]);
    assert!(v["stages"].as_array().unwrap().len() == 2);
}

#[test]
fn dot_output() {
    let (code, text) = run(&["dot", "--in", &fixture("b4.json")]);
    assert_eq!(code, 0);
    assert!(text.starts_with("digraph hasse"));
    let (_, text) = run(&["dot", "--in", &fixture("ex7.json"), "--pair", "a,c"]);
    assert!(text.contains("lightblue"));
}

#[test]
fn exit_codes() {
    let (code, text) = run(&["recover-order", "--in", &fixture("tri.json"), "--beta", "a"]);
    assert_eq!(code, 1);
    let body: Value = serde_json::from_str(&text).unwrap();
    assert!(body["error"].as_str().unwrap().contains("antisymmetric"));

    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["validate", "--in", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["enumerate", "--size", "9"]).0, 1);
}
