use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn superspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superspin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = superspin(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "superspin/1", "{args:?}");
    v
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("superspin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn spectrum_of_three_one() {
    let v = json(&["spectrum", "3,1"]);
    let expected: Value = serde_json::from_str(r#"[{"b":[0,1,2,0],"a":[0,1,3,0]},{"b":[0,1,0,2],"a":[0,1,0,3]}]"#).unwrap();
    assert_eq!(v["spectrum"], expected);
    let o = json(&["spectrum", "3,1", "--oracle"]);
    assert_eq!(o["oracle"]["agrees"], true);
}

#[test]
fn branching_graph_dot() {
    let o = superspin(&["branching-graph", "3", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(dot.lines().filter(|l| l.contains("v2_0 -> v3_")).count(), 2);
    let g = json(&["branching-graph", "4"]);
    assert_eq!(g["levels"].as_array().unwrap().len(), 5);
    let r = json(&["branching-graph", "4", "--oracle"]);
    assert_eq!(g["edges"], r["edges"]);
}

#[test]
fn listing_commands() {
    let o = superspin(&["strict-partitions", "6"]);
    assert_eq!(stdout(&o), "6\n5,1\n4,2\n3,2,1\n");
    let v = json(&["strict-partitions", "7", "--json"]);
    assert_eq!(v["count"], 5);
    let t = json(&["tableaux", "3,1", "--json"]);
    assert_eq!(t["tableaux"], serde_json::json!([[[1, 2, 3], [4]], [[1, 2, 4], [3]]]));
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(superspin(&["verify", "missing.json"]).status.code(), Some(2));
    assert_eq!(superspin(&["tableaux", "1,3"]).status.code(), Some(2));
    assert_eq!(superspin(&["spectrum", "2,2"]).status.code(), Some(2));
    assert_eq!(superspin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(superspin(&["spectrum", "3,1", "--bogus"]).status.code(), Some(2));
    assert_eq!(superspin(&["decompose-regular", "6"]).status.code(), Some(2));
    assert_eq!(superspin(&["check-all", "--max-n", "8"]).status.code(), Some(2));
    assert_eq!(superspin(&["build-rep", "4,1", "--max-n", "4"]).status.code(), Some(2));
    let junk = scratch("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(superspin(&["verify", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn build_verify_roundtrip_and_negative_control() {
    let good = scratch("rep.json");
    let o = superspin(&["build-rep", "3,1", "--tensor", "--out", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = superspin(&["verify", good.to_str().unwrap(), "--json"]);
    assert_eq!(v.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(report["all_pass"], true);

    let mut rep: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    assert_eq!(rep["build"]["selected"], "corrected");
    let row = rep["generators"][0]["matrix"].as_array_mut().unwrap();
    let entry = row.iter_mut().flat_map(|r| r.as_array_mut().unwrap()).find(|x| !x["terms"].as_array().unwrap().is_empty());
    let coeff = &mut entry.unwrap()["terms"][0]["coeff"];
    let flipped = if coeff.as_str().unwrap().starts_with('-') { coeff.as_str().unwrap()[1..].to_string() } else { format!("-{}", coeff.as_str().unwrap()) };
    *coeff = Value::String(flipped);
    let bad = scratch("bad.json");
    std::fs::write(&bad, serde_json::to_string(&rep).unwrap()).unwrap();
    let o = superspin(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn algebra_commands() {
    let s = json(&["supercenter", "5", "--json"]);
    assert_eq!(s["dim"], 3);
    assert_eq!(s["odd_partitions"], 3);
    let g = json(&["gz", "4", "--json"]);
    assert_eq!(g["maximality_flag"], true);
    let d = json(&["decompose-regular", "3", "--json"]);
    let types: Vec<&Value> = d["blocks"].as_array().unwrap().iter().map(|b| &b["type"]).collect();
    assert_eq!(types, vec![&serde_json::json!({"type": "Q", "r": 1}), &serde_json::json!({"type": "M", "r": 1, "s": 1})]);
}

#[test]
fn check_all_is_deterministic() {
    let a = superspin(&["check-all", "--max-n", "3"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 10);
    let b = superspin(&["check-all", "--max-n", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let j = json(&["check-all", "--max-n", "3", "--json"]);
    assert_eq!(j["all_pass"], true);
    assert_eq!(j["criteria"].as_array().unwrap().len(), 10);
}

#[test]
fn repeated_runs_are_identical() {
    for args in [&["build-rep", "3,2"][..], &["branching-graph", "5", "--dot", "--doubled"], &["decompose-regular", "4", "--json"]] {
        assert_eq!(superspin(args).stdout, superspin(args).stdout, "{args:?}");
    }
}
