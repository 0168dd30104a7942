use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tope-committees")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn c3(dir: &Path) -> String {
    let path = dir.join("c3.topes");
    let out = run(&["gen", "--builtin", "c3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    path.to_str().unwrap().to_owned()
}

#[test]
fn gen_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.topes");
    let p = path.to_str().unwrap();
    assert!(run(&["gen", "--t", "5", "--dim", "3", "--seed", "4", "--out", p]).status.success());
    let out = run(&["validate", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok: t=5 topes=22"));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.topes");
    std::fs::write(&path, "+++\n---\n").unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["kappa", "/nonexistent.topes"]).status.code(), Some(2));
}

#[test]
fn kappa_brute_and_formula() {
    let dir = tempfile::tempdir().unwrap();
    let f = c3(dir.path());
    let brute = json(&run(&["kappa", &f, "--free"]));
    assert_eq!(brute["kappa"], serde_json::json!([0, 0, 1, 0, 0]));
    assert_eq!(brute["total"], 1);
    let formula = json(&run(&["kappa", &f, "--k", "3", "--method", "convex-euler"]));
    assert_eq!(formula["results"][0]["value"], "1");
}

#[test]
fn crosscheck_agrees_on_c3() {
    let dir = tempfile::tempdir().unwrap();
    let f = c3(dir.path());
    let out = run(&["crosscheck", &f, "--k", "3", "--out", "tsv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn bool_block_all_methods() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.txt");
    std::fs::write(&path, "# three pairs\n1,2\n2,3\n1,3\n").unwrap();
    let out = run(&["bool-block", "--n", "5", "--r", "1/2", "--k", "3", "--antichain", path.to_str().unwrap()]);
    let v = json(&out);
    let rows = v["results"].as_array().unwrap();
    assert!(rows.len() >= 2);
    let first = &rows[0]["value"];
    assert!(rows.iter().all(|r| &r["value"] == first));
}

#[test]
fn cross_block_all_methods() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    std::fs::write(&path, "1,-2\n3\n").unwrap();
    let out = run(&["cross-block", "--m", "3", "--r", "0", "--k", "2", "--antichain", path.to_str().unwrap(), "--out", "tsv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!(values.iter().all(|v| *v == values[0]));
}
