use std::path::PathBuf;
use std::process::{Command, Output};

use tripat::io::{parse_report, parse_rules, parse_triple};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn tripat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn transform_one_class_one_attribute() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let trace = dir.path().join("trace.json");
    let o = tripat(&[
        "transform",
        &fixture("class2rel.json"),
        &fixture("class2rel/oneClassOneAttr.json"),
        "--direction",
        "forward",
        "-o",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let t = parse_triple(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let mut types: Vec<_> = t.target.nodes.values().map(String::as_str).collect();
    types.sort();
    assert_eq!(types, ["Co", "T"]);
    assert!(std::fs::read_to_string(&trace).unwrap().contains("fwd:"));
}

#[test]
fn transform_two_as_without_np_deduction_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let base = [
        "transform".to_string(),
        fixture("shared_b.json"),
        fixture("shared_b/twoAs.json"),
        "--direction".into(),
        "forward".into(),
        "-o".into(),
        out.to_string_lossy().into_owned(),
    ];
    let mut args: Vec<&str> = base.iter().map(String::as_str).collect();
    assert_eq!(tripat(&args).status.code(), Some(0));
    args.push("--no-np-deduction");
    let o = tripat(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("violated patterns: A-E"));
    args.extend(["--seed", "7"]);
    assert_eq!(tripat(&args).status.code(), Some(1));
}

#[test]
fn check_subclass_host() {
    let o = tripat(&[
        "check",
        &fixture("class2rel.json"),
        &fixture("class2rel/subclass_host.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C-T: forward [Positive, Negative] backward [Positive]"));
    let o = tripat(&[
        "check",
        &fixture("class2rel.json"),
        &fixture("class2rel/subclass_host.json"),
        "--format",
        "structured",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(parse_report(&stdout(&o)).unwrap().satisfied);
}

#[test]
fn check_violated_triple_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    std::fs::write(&t, r#"{"source": {"nodes": [{"id": "c", "type": "C"}]}}"#).unwrap();
    let o = tripat(&["check", &fixture("class2rel.json"), t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL C-T"));
}

#[test]
fn compile_and_deduce() {
    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("rules.json");
    let o = tripat(&[
        "compile",
        &fixture("class2rel.json"),
        "--direction",
        "forward",
        "-o",
        rules.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        parse_rules(&std::fs::read_to_string(&rules).unwrap()).unwrap().len(),
        10
    );
    let o = tripat(&["deduce", &fixture("class2rel.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A-Co2.notDupF"));
}

#[test]
fn analyze_always_succeeds() {
    for spec in ["class2rel.json", "shared_b.json", "chains.json"] {
        let o = tripat(&["analyze", &fixture(spec)]);
        assert_eq!(o.status.code(), Some(0), "{spec}");
        assert!(stdout(&o).contains("coverage"));
    }
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        tripat(&["analyze", &fixture("class2rel.json"), "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tripat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tripat(&["analyze", "/nonexistent.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"metamodel\": [\n").unwrap();
    let o = tripat(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert!(o.stdout.is_empty());
    let model = dir.path().join("model.json");
    std::fs::write(&model, r#"{"nodes": [{"id": "x", "type": "Z"}]}"#).unwrap();
    let o = tripat(&[
        "transform",
        &fixture("class2rel.json"),
        model.to_str().unwrap(),
        "--direction",
        "forward",
        "-o",
        dir.path().join("o.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        tripat(&["compile", &fixture("class2rel.json"), "--direction", "sideways"])
            .status
            .code(),
        Some(2)
    );
}
