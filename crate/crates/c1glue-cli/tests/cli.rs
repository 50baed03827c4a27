//! End-to-end command tests: output shape, determinism, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn c1glue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c1glue"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("c1glue-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn analyze_reports_the_documented_dimension() {
    let out = c1glue(&["example", "ex1-generic", "analyze", "--degree", "6"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(json["dimensions"]["total"], 61);
    assert_eq!(json["case"], "c");
    assert_eq!(json["branch"], "generic");
}

#[test]
fn interface_dofs_follow_the_documented_pattern() {
    let out = c1glue(&["example", "ex2-generic", "analyze", "--degree", "5"]);
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(json["dimensions"]["interface"], 9);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["example", "ex2-case2", "analyze", "--degree", "4"],
        vec!["example", "ex1-generic", "basis", "--degree", "3", "--float"],
    ] {
        let a = c1glue(&args);
        let b = c1glue(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn mesh_roundtrip_through_a_file() {
    let out = c1glue(&["example", "ex3", "mesh"]);
    assert!(out.status.success());
    let path = temp_path("roundtrip.json");
    std::fs::write(&path, out.stdout).unwrap();
    let direct = c1glue(&["example", "ex3", "analyze", "--degree", "4"]);
    let from_file = c1glue(&["analyze", path.to_str().unwrap(), "--degree", "4"]);
    assert!(from_file.status.success());
    assert_eq!(direct.stdout, from_file.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn basis_json_lists_every_function() {
    let out = c1glue(&["example", "ex1-generic", "basis", "--degree", "3"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let functions = json["functions"].as_array().unwrap();
    assert_eq!(functions.len(), 16);
    let tags: Vec<&str> = functions
        .iter()
        .map(|f| f["tag"].as_str().unwrap())
        .collect();
    assert!(tags.contains(&"dof-0"));
    assert!(tags.contains(&"mu-1"));
    assert!(tags.contains(&"int1-2-0"));
    assert!(json["condition_number"].as_f64().unwrap().is_finite());
    // --float was not passed, so no float nets appear
    assert!(functions[0].get("net1_float").is_none());
}

#[test]
fn verify_passes_on_bundled_meshes() {
    let out = c1glue(&[
        "example",
        "ex2-choice4",
        "verify",
        "--degree",
        "4",
        "--identity",
        "--oracle",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(json["passed"], true);
    assert!(json.get("gradient").is_none(), "unrequested check ran");
}

#[test]
fn sample_writes_csv_with_fixed_columns() {
    let path = temp_path("samples.csv");
    let out = c1glue(&[
        "example",
        "ex1-generic",
        "sample",
        "--degree",
        "3",
        "--function",
        "dof-0",
        "--grid",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "elem,u,v,x,y,value");
    // triangle grid 6 nodes + square grid 9 nodes
    assert_eq!(lines.count(), 15);
    std::fs::remove_file(&path).ok();
}

#[test]
fn unknown_example_exits_with_parse_code() {
    let out = c1glue(&["example", "ex99", "analyze", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_exits_with_parse_code() {
    let path = temp_path("broken.json");
    std::fs::write(&path, "{\"degree_geometry\": 2").unwrap();
    let out = c1glue(&["analyze", path.to_str().unwrap(), "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn mismatched_edge_exits_with_validation_code() {
    let mesh = c1glue(&["example", "ex1-generic", "mesh"]);
    let mut json: serde_json::Value = serde_json::from_str(&stdout_str(&mesh)).unwrap();
    json["elements"][0]["control_points"][1][0] = serde_json::Value::String("999".into());
    let path = temp_path("mismatch.json");
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    let out = c1glue(&["analyze", path.to_str().unwrap(), "--degree", "3"]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(&path).ok();
}

#[test]
fn csv_sample_without_function_is_rejected() {
    let out = c1glue(&[
        "example",
        "ex1-generic",
        "basis",
        "--degree",
        "3",
        "--format",
        "csv-sample",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degree_below_two_is_rejected_by_the_parser() {
    let out = c1glue(&["example", "ex1-generic", "analyze", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
