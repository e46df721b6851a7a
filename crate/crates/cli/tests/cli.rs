use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nagraph")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_finite_path() {
    let out = run(&["classify", data("path5.graph").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let vertex = |n: &str| {
        r["vertices"]
            .as_array()
            .unwrap()
            .iter()
            .find(|v| v["name"] == n)
            .unwrap()
            .clone()
    };
    assert_eq!(vertex("3")["verdict"], "Transient");
    assert_eq!(vertex("3")["justification"], "NonEssential");
    assert_eq!(vertex("1")["verdict"], "Recurrent");
    assert_eq!(vertex("1")["justification"], "FiniteEssential");
    assert_eq!(vertex("1")["class"], vertex("2")["class"]);
}

#[test]
fn g_on_both_rays() {
    let out = run(&[
        "g",
        data("ray-tau.gen").to_str().unwrap(),
        "--base",
        "a",
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["status"]["kind"], "Stabilized");
    assert_eq!(r["status"]["value"], "2");

    let out = run(&["g", data("ray-tau2.gen").to_str().unwrap(), "--base", "a"]);
    assert_eq!(json(&out)["status"]["kind"], "ExactInfinity");
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = run(&[
        "g",
        data("ray-tau.gen").to_str().unwrap(),
        "--base",
        "a",
        "--budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"]["kind"], "LowerBound");
}

#[test]
fn directed_cycle_is_rejected() {
    let out = run(&["synth", data("c4.pi").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["irrealizable"]["kind"], "OneWayEdge");
}

#[test]
fn capacity_of_the_path() {
    let f = data("path5.graph");
    let out = run(&["capacity", f.to_str().unwrap(), "--set", "1,2,3,4", "--base", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["capacity"], "1/2");
    assert_eq!(r["normalized_capacity"], "(1/2*t)/(1 + t)");
    assert_eq!(r["g"], "inf");
}

#[test]
fn pi_roundtrip_and_simulation() {
    let out = run(&["roundtrip", data("path5.pi").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["equal"], true);

    let out = run(&[
        "simulate",
        data("path5.graph").to_str().unwrap(),
        "--base",
        "3",
        "--trials",
        "5000",
    ]);
    assert_eq!(json(&out)["return_frequency"], 0.0);
}

#[test]
fn reports_are_reproducible() {
    let f = data("path5.graph");
    let args = [
        "simulate",
        f.to_str().unwrap(),
        "--base",
        "1",
        "--seed",
        "9",
        "--trials",
        "10000",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(run(&seq).stdout, a.stdout);
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("loop.graph");
    std::fs::write(&bad, "edge a a 1\n").unwrap();
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let out = run(&[
        "capacity",
        data("path5.graph").to_str().unwrap(),
        "--set",
        "1",
        "--base",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quick_selftest_passes() {
    let out = run(&["selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}
