use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn sct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sct"))
        .args(args)
        .output()
        .expect("sct runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn fixtures() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_path_buf();
    let out = sct(&["fixtures", "write", path.to_str().unwrap()]);
    assert!(out.status.success());
    (dir, path)
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn analyze_ackermann() {
    let (_tmp, dir) = fixtures();
    let out = sct(&["analyze", &p(&dir, "ackermann.sct")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sct"], true);
    assert_eq!(v["closure_size"], 2);
    assert_eq!(v["counterexample"], Value::Null);
    assert_eq!(v["description"]["graphs"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_swap_is_not_sct() {
    let (_tmp, dir) = fixtures();
    let out = sct(&["analyze", &p(&dir, "swap.sct")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["sct"], false);
    assert_eq!(
        v["counterexample"]["lasso"]["period"],
        serde_json::json!(["tau0", "tau0"])
    );
}

#[test]
fn input_errors_exit_2() {
    let (_tmp, dir) = fixtures();
    let out = sct(&["analyze", &p(&dir, "missing.sct")]);
    assert_eq!(out.status.code(), Some(2));

    let bad = dir.join("bad.sct");
    fs::write(&bad, "f(x) = g(x)\n").unwrap();
    let out = sct(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.sct:1:"), "{err}");

    let graphs = dir.join("bad.json");
    fs::write(
        &graphs,
        fs::read_to_string(dir.join("swap-graphs.json"))
            .unwrap()
            .replacen("\"from\": \"x\"", "\"from\": \"q\"", 1),
    )
    .unwrap();
    let out = sct(&["graphs", "check", graphs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/graphs/0/arcs/0/from"), "{err}");
}

#[test]
fn graphs_check_with_oracle() {
    let (_tmp, dir) = fixtures();
    let out = sct(&[
        "graphs",
        "check",
        &p(&dir, "ackermann-graphs.json"),
        "--oracle",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        (v["sct"].clone(), v["agree"].clone()),
        (Value::Bool(true), Value::Bool(true))
    );

    let out = sct(&[
        "graphs",
        "check",
        &p(&dir, "swap-graphs.json"),
        "--oracle",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["agree"], true);
    assert_eq!(v["oracle"]["lasso"]["period"], serde_json::json!(["S"]));

    let out = sct(&["graphs", "check", &p(&dir, "spp-warmup.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_compare() {
    let (_tmp, dir) = fixtures();
    let out = sct(&[
        "oracle",
        &p(&dir, "swap-graphs.json"),
        "--max-word-len",
        "2",
        "--compare",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["counterexample"], true);
    assert_eq!(v["agree"], true);
}

#[test]
fn extract_synth_round_trip() {
    let (_tmp, dir) = fixtures();
    let graphs = p(&dir, "out.json");
    let out = sct(&[
        "extract",
        &p(&dir, "ackermann.sct"),
        "--mode",
        "syntactic",
        "-o",
        &graphs,
    ]);
    assert!(out.status.success());
    let prog = p(&dir, "out.sct");
    let out = sct(&["synth", &graphs, "-o", &prog]);
    assert!(out.status.success());
    let text = fs::read_to_string(&prog).unwrap();
    assert_eq!(
        text,
        "A(x, y) = if x = 0 then A(x - 1, y + 1) else if x = 1 then A(x - 1, y + 1) else A(x, y - 1)\n"
    );
    let out = sct(&["analyze", &prog, "--mode", "syntactic"]);
    assert_eq!(out.status.code(), Some(0));

    let out = sct(&["extract", &p(&dir, "ackermann.sct"), "--mode", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_and_safety() {
    let (_tmp, dir) = fixtures();
    let out = sct(&["run", &p(&dir, "ackermann.sct"), "A", "3", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], 61);

    let out = sct(&[
        "run",
        &p(&dir, "ackermann.sct"),
        "A",
        "3",
        "3",
        "--fuel",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["out_of_fuel"], true);

    let out = sct(&["safety", &p(&dir, "ackermann.sct"), "--trials", "200"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["violation_count"], 0);
    assert_eq!(v["converged"], 200);
}

#[test]
fn principles_commands() {
    let out = sct(&["principles", "spp-family", "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["graphs"].as_array().unwrap().len(), 3);
    assert_eq!(
        sct(&["principles", "spp-family", "--k", "4"]).status.code(),
        Some(2)
    );

    let out = sct(&[
        "principles",
        "reversal",
        "--k",
        "2",
        "--period",
        "0,1",
        "--prefix",
        "1,1",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["spp_witness"], serde_json::json!([0, 1]));
    assert!(v["descent_params"]
        .as_array()
        .unwrap()
        .contains(&Value::from("z0_1")));

    let out = sct(&[
        "principles",
        "star",
        "--n",
        "20",
        "--k",
        "2",
        "--pattern",
        "parity",
    ]);
    let v = json(&out);
    assert_eq!(
        (v["t"].clone(), v["color"].clone()),
        (Value::from(0), Value::from(0))
    );
    assert_eq!(v["pairs"].as_array().unwrap().len(), 36);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    fs::write(&file, r#"{"k": 1, "rows": [[0, 0], [0]]}"#).unwrap();
    let out = sct(&[
        "principles",
        "star",
        "--pattern",
        "file",
        "--file",
        file.to_str().unwrap(),
        "--min-triangles",
        "1",
    ]);
    assert_eq!(json(&out)["pairs"], serde_json::json!([[1, 2]]));
}

#[test]
fn output_is_byte_stable() {
    let (_tmp, dir) = fixtures();
    let a = sct(&["analyze", &p(&dir, "swap.sct")]).stdout;
    let b = sct(&["analyze", &p(&dir, "swap.sct")]).stdout;
    assert_eq!(a, b);
}

#[test]
fn fixtures_listing() {
    let out = sct(&["fixtures", "list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "ackermann.sct",
        "ackermann-graphs.json",
        "swap-graphs.json",
        "spp-warmup.json",
    ] {
        assert!(text.lines().any(|l| l == name));
    }
    assert_eq!(sct(&["fixtures", "show", "nope"]).status.code(), Some(2));
}
