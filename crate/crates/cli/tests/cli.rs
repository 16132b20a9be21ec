use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const EXAMPLE_SEVEN: &str = r#"{"n":3,"m":7,"r":1,"p":{"1,2":2,"2,3":2,"1,3":-1}}"#;
const ONE_PARAMETER: &str = r#"{"n":3,"m":4,"r":2,"p":{"1,2":1,"2,3":1,"1,3":1}}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(config: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgroup-frt"))
        .arg("check")
        .arg(config)
        .args(args)
        .output()
        .unwrap()
}

fn run_report(dir: &TempDir, config: &Path, args: &[&str]) -> (Output, Value) {
    let out = dir.path().join("report.json");
    let mut all = args.to_vec();
    let out_str = out.to_str().unwrap().to_string();
    all.extend(["--out", &out_str]);
    let output = run(config, &all);
    let report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    (output, report)
}

fn status<'a>(report: &'a Value, section: &str) -> &'a str {
    report["sections"][section]["status"].as_str().unwrap()
}

#[test]
fn example_seven_passes_everything() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", EXAMPLE_SEVEN);
    let (out, report) = run_report(&dir, &cfg, &["--checks", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["passed"], Value::Bool(true));
    for s in ["ybe", "relations", "cartan", "group", "pairing"] {
        assert_eq!(status(&report, s), "pass", "{s}");
    }
    let group = &report["sections"]["group"]["data"];
    assert_eq!(group["k_invariant_factors"], serde_json::json!([7, 7]));
    assert_eq!(group["sigma"]["exponents"], serde_json::json!([2, 2, 2]));
    assert_eq!(report["sections"]["cartan"]["data"]["type"], "A_2");
    assert!(report["sections"]["pairing"]["data"]["dcross"]["lk"].is_array());
}

#[test]
fn one_parameter_sigma_trivial() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", ONE_PARAMETER);
    let (out, report) = run_report(&dir, &cfg, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        report["sections"]["group"]["data"]["sigma_trivial"],
        Value::Bool(true)
    );
}

#[test]
fn corrupted_r_fails_ybe() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", EXAMPLE_SEVEN);
    let (out, report) = run_report(&dir, &cfg, &["--checks", "ybe", "--corrupt-r", "1,2,2,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(status(&report, "ybe"), "fail");
    let witness = &report["sections"]["ybe"]["failures"][0]["witness"];
    assert!(witness["row"].is_array() && witness["col"].is_array());
}

#[test]
fn invalid_configs_name_the_key() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"n":3,"m":7,"r":1,"p":{"1,2":2,"2,3":2}}"#, "\"1,3\""),
        (r#"{"n":2,"m":7,"r":0,"p":{"1,2":2}}"#, "\"r\""),
        (r#"{"n":2,"m":7,"r":1,"p":{"1,3":2}}"#, "\"1,3\""),
        (r#"{"n":2,"m":7,"r":1,"p":{"1,2":"s^2"}}"#, "\"1,2\""),
        (r#"{"n":2,"r":1,"p":{"1,2":2}}"#, "`m`"),
        (r#"{"n":2,"m":7,"r":1,"p":{"1,2":2},"q":1}"#, "`q`"),
    ];
    for (i, (text, key)) in cases.iter().enumerate() {
        let cfg = write(&dir, &format!("bad{i}.json"), text);
        let out = run(&cfg, &[]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(key), "{text}: {err}");
    }
}

#[test]
fn unknown_check_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", EXAMPLE_SEVEN);
    assert_eq!(run(&cfg, &["--checks", "ybe,bogus"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", EXAMPLE_SEVEN);
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    let (_, a) = run_report(&dir, &cfg, &["--seed", "42"]);
    let (_, b) = run_report(&dir, &cfg, &["--seed", "42"]);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn formal_parameters() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "c.json",
        r#"{"n":2,"m":3,"r":"t","p":{"1,2":"t^-1"}}"#,
    );
    let (out, report) = run_report(&dir, &cfg, &["--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(status(&report, "group"), "not-applicable");
    assert_eq!(report["config"]["r"], "t^1");
    assert_eq!(report["sections"]["cartan"]["data"]["q"]["mode"], "ratfunc");
}

#[test]
fn dump_r() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", EXAMPLE_SEVEN);
    let (_, report) = run_report(&dir, &cfg, &["--checks", "ybe", "--dump-r"]);
    let r = report["sections"]["ybe"]["data"]["r_matrix"]
        .as_array()
        .unwrap();
    assert_eq!(r.len(), 9);
    assert!(r.iter().all(|row| row.as_array().unwrap().len() == 9));
}

#[test]
fn non_central_determinant_reports_witness() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", r#"{"n":2,"m":5,"r":1,"p":{"1,2":2}}"#);
    let (out, report) = run_report(&dir, &cfg, &["--checks", "group"]);
    assert_eq!(out.status.code(), Some(0));
    let data = &report["sections"]["group"]["data"];
    assert_eq!(data["det_central"], Value::Bool(false));
    assert_eq!(data["sigma_central"], Value::Bool(false));
    assert!(data["sigma_witness"]["word"].is_array());
}
