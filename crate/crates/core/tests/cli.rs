use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use twistalg::algebra::StructureConstants;

fn twistalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistalg")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn load_tables(path: &Path) -> Vec<StructureConstants> {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn h2_closed_over_complex_units() {
    let out = twistalg(&["h2", "--group", "2,2", "--coeff", "cstar", "--method", "closed", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cyclic_orders"], serde_json::json!([2]));
}

#[test]
fn h2_all_methods_match() {
    let out = twistalg(&["h2", "--group", "2,2", "--coeff", "muN:2", "--method", "all", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "MATCH");
    for m in ["brute", "resolution", "closed"] {
        assert_eq!(v[m]["cyclic_orders"], serde_json::json!([2, 2, 2]), "{m}");
    }
    let table = stdout(&twistalg(&["h2", "--group", "2,2", "--coeff", "muN:2"]));
    assert!(table.contains("MATCH"));
}

#[test]
fn counts_in_csv() {
    let out = twistalg(&["count-assoc", "--group", "6,4", "--field", "C", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,coeff,quantity,value,ref_tag"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[3], "2");

    let out = twistalg(&["count-sym", "--group", "2,2", "--coeff", "muN:2", "--brute", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 8);
    assert_eq!(v["brute"], 8);
}

#[test]
fn exports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let assoc = dir.path().join("assoc.json");
    let out = twistalg(&["enum-assoc", "--group", "2,2", "--coeff", "muN:2", "--json", assoc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let tables = load_tables(&assoc);
    assert_eq!(tables.len(), 2);
    assert!(tables.iter().all(|c| c.is_associative() && c.is_symmetric_12()));

    let sym = dir.path().join("sym.json");
    let out = twistalg(&["enum-sym", "--group", "2,3", "--coeff", "muN:6", "--json", sym.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let tables = load_tables(&sym);
    assert_eq!(tables.len(), 1296);
    assert!(tables.iter().all(|c| c.is_symmetric_12() && c.is_standard()));
}

#[test]
fn iso_and_standardize_read_exports() {
    let dir = tempfile::tempdir().unwrap();
    let all = dir.path().join("reps.json");
    twistalg(&["enum-assoc", "--group", "2,2", "--coeff", "muN:2", "--json", all.to_str().unwrap()]);
    let tables = load_tables(&all);
    let paths: Vec<_> = (0..2)
        .map(|i| {
            let p = dir.path().join(format!("t{i}.json"));
            std::fs::write(&p, serde_json::to_string(&tables[i]).unwrap()).unwrap();
            p
        })
        .collect();
    let (a, b) = (paths[0].to_str().unwrap(), paths[1].to_str().unwrap());

    let v: Value = serde_json::from_str(&stdout(&twistalg(&["iso", "--a", a, "--b", a, "--json"]))).unwrap();
    assert_eq!(v["isomorphic"], true);
    let v: Value = serde_json::from_str(&stdout(&twistalg(&["iso", "--a", a, "--b", b, "--json"]))).unwrap();
    assert_eq!(v["isomorphic"], false);
    assert!(v["witness"].is_null());
    let v: Value = serde_json::from_str(&stdout(&twistalg(&["iso", "--a", b, "--b", b, "--symmetric", "--json"]))).unwrap();
    assert_eq!(v["isomorphic"], true);

    let out = twistalg(&["standardize", "--input", b, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let std: StructureConstants = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(std.is_standard());
}

#[test]
fn output_is_deterministic() {
    let args = ["enum-sym", "--group", "2,2", "--coeff", "muN:4", "--json"];
    let first = twistalg(&args);
    let second = twistalg(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(twistalg(&["h2", "--group", "2,x", "--coeff", "muN:2"]).status.code(), Some(2));
    assert_eq!(twistalg(&["h2", "--group", "2", "--coeff", "cstar", "--method", "brute"]).status.code(), Some(2));
    assert_eq!(twistalg(&["enum-assoc", "--group", "4,6", "--coeff", "muN:3"]).status.code(), Some(2));
    assert_eq!(twistalg(&["iso", "--a", "/nonexistent.json", "--b", "/nonexistent.json"]).status.code(), Some(2));

    let out = twistalg(&["enum-sym", "--group", "3,3", "--coeff", "muN:3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1594323"));
    assert_eq!(twistalg(&["enum-sym", "--group", "2,2", "--coeff", "muN:2", "--cap", "7"]).status.code(), Some(3));
    assert_eq!(twistalg(&["h2", "--group", "5,5", "--coeff", "muN:2", "--method", "brute"]).status.code(), Some(3));
}

#[test]
fn guard_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_twistalg"))
        .args(["h2", "--group", "5,5", "--coeff", "muN:5", "--method", "brute", "--json"])
        .env("TWISTALG_GUARD_MAX", "20000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cyclic_orders"], serde_json::json!([5, 5, 5]));
}

#[test]
fn verify_suite_passes() {
    let out = twistalg(&["verify", "--suite", "all"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
    assert!(!text.contains("FAIL"));
}
