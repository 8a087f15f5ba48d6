use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn omni2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omni2")).args(args).output().expect("binary runs")
}

fn run(command: &str, files: &[&str], extra: &[&str]) -> (i32, Value) {
    let paths: Vec<String> = files.iter().map(|f| fixture(f).display().to_string()).collect();
    let mut args = vec![command];
    args.extend(paths.iter().map(String::as_str));
    args.extend(extra);
    let out = omni2(&args);
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

#[test]
fn passing_checks_exit_zero() {
    for (cmd, files) in [
        ("check-lie2", vec!["string_so3.json"]),
        ("check-lie2", vec!["c2_solvable.json"]),
        ("check-dgla", vec!["c2.json"]),
        ("check-dirac", vec!["c2_solvable.json"]),
        ("graph-dirac", vec!["abelian_c2.json"]),
        ("from-lie2", vec!["solvable_w.json"]),
        ("string-type", vec!["so3.json"]),
        ("twist-check", vec!["string_mu.json", "string_so3.json"]),
    ] {
        let (code, v) = run(cmd, &files, &["--samples", "10"]);
        assert_eq!(code, 0, "{cmd} {files:?}: {v}");
        assert_eq!(v["verdict"], "pass", "{cmd}");
        assert_eq!(v["failures"], 0);
    }
}

#[test]
fn omni_and_anomaly_on_c2() {
    for cmd in ["check-omni", "anomaly"] {
        let (code, v) = run(cmd, &["c2.json"], &["--samples", "5", "--seed", "3"]);
        assert_eq!(code, 0, "{cmd}: {v}");
    }
}

#[test]
fn value_commands() {
    for (cmd, file) in [("char-pair", "c2_solvable.json"), ("normalizer", "c2_solvable.json"), ("derivations", "c2_solvable.json")] {
        let (code, v) = run(cmd, &[file], &[]);
        assert_eq!(code, 0, "{cmd}: {v}");
        assert_eq!(v["verdict"], "value");
        assert!(!v["details"].is_null());
    }
}

#[test]
fn failures_exit_one_with_witnesses() {
    for cmd in ["check-lie2", "check-dirac", "graph-dirac"] {
        let (code, v) = run(cmd, &["perturbed_so3.json"], &[]);
        assert_eq!(code, 1, "{cmd}");
        assert_eq!(v["verdict"], "fail");
        assert!(!v["witnesses"].as_array().unwrap().is_empty());
    }
}

#[test]
fn input_errors_exit_two() {
    let (code, v) = run("frobnicate", &[], &[]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "error");
    let (code, _) = run("check-lie2", &["so3.json"], &[]);
    assert_eq!(code, 2);
    let (code, v) = run("check-lie2", &["missing.json"], &[]);
    assert_eq!(code, 2);
    assert!(v["path"].as_str().unwrap().contains("missing.json"));
}

#[test]
fn so3_example_and_determinism() {
    let (code, v) = run("so3-example", &[], &[]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    let a = omni2(&["anomaly", fixture("c2.json").to_str().unwrap(), "--seed", "9", "--samples", "5"]);
    let b = omni2(&["anomaly", fixture("c2.json").to_str().unwrap(), "--seed", "9", "--samples", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pretty_output() {
    let out = omni2(&["check-lie2", fixture("string_so3.json").to_str().unwrap(), "--pretty"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("check-lie2: PASS"));
}
