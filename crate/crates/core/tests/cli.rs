use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolcube")).args(args).output().expect("binary runs")
}

fn write_spec(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

fn report(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    assert!(v["manifest"]["command"].is_string());
    v["report"].clone()
}

#[test]
fn spectrum_reports_degree_and_levels() {
    let dir = TempDir::new().unwrap();
    let or2 = write_spec(dir.path(), "or2.json", r#"{"schema_version":1,"kind":"table","n":2,"values":[0,1,1,1]}"#);
    let out = run(&["spectrum", "--spec", &or2, "--eps", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["degrees"][0]["degree"], 1);

    let c = write_spec(dir.path(), "c.json", r#"{"schema_version":1,"kind":"table","n":2,"values":[0.5,0.5,0.5,0.5]}"#);
    let r = report(&run(&["spectrum", "--spec", &c]));
    assert_eq!(r["levels"][0]["weight"], 0.25);
    assert_eq!(r["levels"][0]["tail"], 0.0);

    let hs = write_spec(dir.path(), "hs.json", r#"{"schema_version":1,"kind":"hockey_stick","n":16,"k":16}"#);
    let out = run(&["spectrum", "--spec", &hs, "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 18);
    assert!(text.starts_with("level,weight,tail\n"));
}

#[test]
fn check_reports_witnesses_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let sep = write_spec(dir.path(), "sep.json", r#"{"schema_version":1,"kind":"separation_example"}"#);
    assert_eq!(run(&["check", "--spec", &sep, "--class", "self-bounding"]).status.code(), Some(0));
    let out = run(&["check", "--spec", &sep, "--class", "subadditive"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["results"][0]["witness"]["a"], serde_json::json!([1]));
    assert_eq!(r["results"][0]["witness"]["b"], serde_json::json!([2, 3]));

    let and = write_spec(dir.path(), "and.json", r#"{"schema_version":1,"kind":"table","n":2,"values":[0,0,0,1]}"#);
    let r = report(&run(&["check", "--spec", &and, "--class", "submodular"]));
    assert_eq!(r["results"][0]["witness"]["i"], 1);
    assert_eq!(r["results"][0]["witness"]["j"], 2);

    assert_eq!(run(&["check", "--spec", &sep, "--class", "convex"]).status.code(), Some(2));
}

#[test]
fn usage_and_resource_exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = write_spec(dir.path(), "r.json", r#"{"schema_version":1,"kind":"random_xos","n":4,"clauses":2}"#);
    assert_eq!(run(&["spectrum", "--spec", &missing]).status.code(), Some(2));
    assert_eq!(run(&["experiment", "nope"]).status.code(), Some(2));
    let big = write_spec(dir.path(), "big.json", r#"{"schema_version":1,"kind":"hockey_stick","n":12,"k":3}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_boolcube"))
        .args(["spectrum", "--spec", &big])
        .env("BOOLCUBE_MAX_DIM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["check", "--spec", &big, "--class", "xos"]).status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let r = report(&run(&["verify", "--suite", "core", "--count", "20"]));
    assert_eq!(r["failure_count"], 0);
    let out = run(&["verify", "--suite", "xos", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vacuous"));
}

#[test]
fn learn_writes_model_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let lin = write_spec(
        dir.path(),
        "lin.json",
        r#"{"schema_version":1,"kind":"table","n":3,"values":[0,0.5,0,0.5,0.25,0.75,0.25,0.75]}"#,
    );
    let model = dir.path().join("model.json");
    let model_arg = model.display().to_string();
    let args = ["learn", "--spec", &lin, "--eps", "0.1", "--seed", "1", "--samples", "200", "--model-out", &model_arg];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["exact_error"].as_f64().unwrap() <= 1e-8);
    let first = std::fs::read(&model).unwrap();
    run(&args);
    assert_eq!(first, std::fs::read(&model).unwrap());
    assert_eq!(run(&["learn", "--spec", &lin, "--eps", "0.1"]).status.code(), Some(2));
}

#[test]
fn experiments_emit_csv_with_manifest() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("hockey.csv");
    let out_arg = out_path.display().to_string();
    let out = run(&["experiment", "hockey-tail", "--k", "8,12,16,20", "--out", &out_arg]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 5);
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("hockey.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "hockey-tail");

    let second = dir.path().join("again.csv");
    run(&["experiment", "hockey-tail", "--k", "8,12,16,20", "--out", &second.display().to_string()]);
    assert_eq!(text, std::fs::read_to_string(&second).unwrap());

    let hs = write_spec(dir.path(), "hs16.json", r#"{"schema_version":1,"kind":"hockey_stick","n":16,"k":16}"#);
    let out = run(&["experiment", "census", "--spec", &hs, "--eps", "0.1,0.2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);

    let out = run(&["experiment", "talagrand-ns", "--k", "9", "--seeds", "10"]);
    assert_eq!(out.status.code(), Some(0));
}
