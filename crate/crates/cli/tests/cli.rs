use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delpezzo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_input(command: &str, name: &str) -> (i32, Value) {
    let path = fixture(name);
    let out = run(&[command, "--input", path.to_str().unwrap()]);
    let json = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), json)
}

#[test]
fn fermat_cone_has_six_cuspidal_lines() {
    let (code, report) = run_input("classify-cone", "fermat_cone.json");
    assert_eq!(code, 0);
    assert_eq!(report["schema"], "delpezzo-branch/1");
    assert_eq!(report["git"]["verdict"], "stable");
    let lines = report["lines"].as_array().unwrap();
    assert!(lines.iter().all(|l| l["kodaira"] == "II"));
    assert_eq!(lines.iter().map(|l| l["degree"].as_u64().unwrap()).sum::<u64>(), 6);
    assert_eq!(report["stable_pair"]["fiber_total"], 12);
}

#[test]
fn cone_point_is_rejected() {
    let (code, report) = run_input("classify-cone", "cone_point.json");
    assert_eq!(code, 2);
    assert_eq!(report["git"]["reason"]["kind"], "cone_point");
}

#[test]
fn truncated_json_is_a_parse_error() {
    let (code, report) = run_input("classify-cone", "truncated.json");
    assert_eq!(code, 4);
    assert_eq!(report["error"]["kind"], "parse");
}

#[test]
fn missing_input_file() {
    let (code, report) = run_input("glue", "no_such_file.json");
    assert_eq!(code, 4);
    assert_eq!(report["command"], "glue");
}

#[test]
fn crosscheck_agrees_and_negative_control_disagrees() {
    let (code, report) = run_input("crosscheck", "generic_cone.json");
    assert_eq!(code, 0);
    let degrees: u64 = report["factors"].as_array().unwrap().iter().map(|f| f["degree"].as_u64().unwrap()).sum();
    assert_eq!(degrees, 12);
    let (code, report) = run_input("crosscheck", "fermat_cone.json");
    assert_eq!(code, 0);
    assert!(report["factors"].as_array().unwrap().iter().all(|f| f["oracle_type"] == "II"));
    let (code, report) = run_input("crosscheck", "fermat_wrong_expected.json");
    assert_eq!(code, 1);
    assert_eq!(report["all_agree"], false);
}

#[test]
fn glue_outcomes() {
    let (code, report) = run_input("glue", "example_pair.json");
    assert_eq!(code, 0);
    assert_eq!(report["broken_type"], "B_II");
    assert_eq!(report["gluing_fibers"], serde_json::json!(["N1", "I2*"]));
    let (code, report) = run_input("glue", "identical_pair.json");
    assert_eq!(code, 0);
    assert_eq!(report["certificate"]["tau"], serde_json::json!([["1/1", "0/1"], ["0/1", "1/1"]]));
    let (code, report) = run_input("glue", "j_mismatch_pair.json");
    assert_eq!(code, 2);
    assert_eq!(report["compatible"], false);
}

#[test]
fn component_outcomes() {
    let (code, report) = run_input("classify-component", "nodal_component.json");
    assert_eq!(code, 0);
    assert_eq!(report["component"]["gluing_type"], "I2*");
    assert_eq!(report["component"]["euler_total"], 12);
    let (code, _) = run_input("classify-component", "flex_tangent_component.json");
    assert_eq!(code, 2);
    let (code, report) = run_input("classify-component", "point_off_line_component.json");
    assert_eq!(code, 3);
    assert_eq!(report["violations"], serde_json::json!(["point_off_line"]));
}

#[test]
fn corpus_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let paths = ["a.json", "b.json"].map(|n| dir.path().join(n));
    for p in &paths {
        let out = run(&["corpus", "--seed", "3", "--count", "4", "--height", "3", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let [a, b] = paths.map(|p| std::fs::read(p).unwrap());
    assert_eq!(a, b);
    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["samples"].as_array().unwrap().len(), 4);
    assert_eq!(report["invariants_hold"], true);
}

#[test]
fn empty_corpus_and_text_format() {
    let out = run(&["corpus", "--count", "0", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("invariants hold: true"), "{text}");
}

#[test]
fn bad_flags_are_parse_errors() {
    assert_eq!(run(&["corpus", "--height", "0"]).status.code(), Some(4));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
