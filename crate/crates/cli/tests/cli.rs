use std::fs;
use std::process::{Command, Output};

use lca_orient::report::strip_timing;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lca-orient"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn orient_path_high_degree() {
    let out = run(&["orient", "--graph", "path:n=10", "--alg", "high-degree"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert!(v["version"].as_str().unwrap().starts_with("lca-orient "));
    assert_eq!(v["seeds"], serde_json::json!([0]));
    assert_eq!(v["results"]["max_out_degree"], 1);
    assert_eq!(v["results"]["runs"][0]["probes"]["total"]["max"], 2);
}

#[test]
fn orient_bounded_forest_trials() {
    let out = run(&[
        "orient", "--graph", "random_tree:n=20000", "--alg", "bounded-forest", "--delta", "16",
        "--r", "4", "--seed", "1", "--trials", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seeds"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["results"]["passed"], true);
    for run in v["results"]["runs"].as_array().unwrap() {
        assert!(run["orientation"]["max_out_degree"].as_u64().unwrap() <= 4);
    }
}

#[test]
fn orient_adversarial_explicit() {
    let out = run(&["orient", "--graph", "adv:s=4,t=3", "--alg", "color-forest", "--r", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["runs"][0]["graph"]["n"], 316);
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let args = ["orient", "--graph", "random_tree:n=2000", "--alg", "color-forest", "--r", "50", "--seed", "9"];
    let mut a = json(&run(&args));
    let mut b = json(&run(&args));
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(run(&["orient", "--graph", "path:n=10"]).status.code(), Some(2));
    assert_eq!(run(&["orient", "--graph", "path:n=10", "--alg", "x"]).status.code(), Some(2));
    assert_eq!(
        run(&["orient", "--graph", "path:n=10", "--alg", "high-degree", "--bogus", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["orient", "--graph", "nope:n=1", "--alg", "high-degree"]).status.code(),
        Some(2)
    );
    // Preconditions.
    let out = run(&["orient", "--graph", "arboricity:n=50,alpha=2", "--alg", "bounded-forest"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a forest"));
    assert_eq!(run(&["gen", "--graph", "adv:r=2,n=100000"]).status.code(), Some(3));
}

#[test]
fn violation_exit_code() {
    // K12 declared with arboricity 1: equal degrees send every edge to its
    // lower ID, so vertex 11 gets out-degree 11 against a bound of 5.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k12.el");
    let mut text = String::from("12 66\n");
    for a in 0..12 {
        for b in a + 1..12 {
            text.push_str(&format!("{a} {b}\n"));
        }
    }
    fs::write(&path, text).unwrap();
    let out = run(&["orient", "--input", path.to_str().unwrap(), "--alg", "high-degree", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["results"]["max_out_degree"], 11);
    assert_eq!(v["results"]["passed"], false);
}

#[test]
fn color_command() {
    let out = run(&["color", "--graph", "random_bounded:n=3000,delta=3", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = &v["results"]["runs"][0]["coloring"];
    assert_eq!(c["proper"], true);
    assert!(c["colors_used"].as_u64().unwrap() <= 4);
}

#[test]
fn census_command() {
    let out = run(&[
        "census", "--graph", "random_bounded:n=20000,delta=16", "--p", "0.25", "--eps", "0.1",
        "--trials", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["trials"], 3);
    assert!(v["results"]["exceedances"].as_u64().unwrap() <= 1);
}

#[test]
fn attack_command() {
    let out = run(&["attack", "--instance", "adv:s=4,t=3", "--strategy", "blind-id", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["trials"], 5);
    let out = run(&[
        "attack", "--instance", "adv:s=4,t=3", "--strategy", "color-forest", "--r", "8", "--unlimited",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["runs"][0]["colored_edge_probed"], true);
}

#[test]
fn scaling_command() {
    let out = run(&[
        "scaling", "--graph", "random_tree:n=10", "--ns", "100,1000,10000,100000", "--alg", "high-degree",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["fit"]["slope"], 0.0);
    assert_eq!(v["results"]["theoretical_slope"], 0.0);
    let out = run(&["scaling", "--graph", "random_tree:n=10", "--ns", "100,1000,10000", "--alg", "high-degree"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.el");
    let out = run(&["gen", "--graph", "adv:s=4,t=3", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "316 308");
    let out = run(&["orient", "--input", path.to_str().unwrap(), "--alg", "high-degree"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["runs"][0]["graph"]["m"], 308);
}

#[test]
fn csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = run(&[
        "orient", "--graph", "path:n=10", "--alg", "high-degree", "--trials", "2", "--format", "csv",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("orientation.max_out_degree"));
    assert!(header.contains("probes.total.max"));
    assert_eq!(lines.count(), 2);
}
