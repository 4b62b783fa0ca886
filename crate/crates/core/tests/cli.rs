use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ipd::io::{read_mechanism, read_structure};

fn ipd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ipd")).args(args).env_remove("IPD_TOLERANCE").output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FIXTURE: &str = r#"{"secrets": [{"name": "s0", "p": 0.5, "q_y1": 0.75}, {"name": "s1", "p": 0.5, "q_y1": 0.25}]}"#;
const LN2: &str = "0.6931471805599453";

fn stderr_code(out: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).expect("error JSON on stderr");
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn solve_writes_files_that_verify() {
    let dir = tempfile::tempdir().unwrap();
    let prior = write(dir.path(), "p.json", FIXTURE);
    let (st, me) = (dir.path().join("s.json"), dir.path().join("m.json"));
    let out = ipd(&["solve", "--prior", s(&prior), "--eps", LN2, "--out-structure", s(&st), "--out-mechanism", s(&me)]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["regime"], "FourSignal");
    let structure = read_structure(&st).unwrap();
    assert!((structure.widths()[0][1] - 1.0 / 6.0).abs() < 1e-12);
    read_mechanism(&me).unwrap();

    let out = ipd(&["verify", "--structure", s(&st), "--eps", LN2]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for flag in ["cells_binary", "columns_binding", "a_upper_left", "b_upper_left", "c_lower_right"] {
        assert_eq!(report["regions"][flag], true, "{flag}");
    }
}

#[test]
fn perfect_privacy_and_full_disclosure_verification() {
    let dir = tempfile::tempdir().unwrap();
    let prior = write(dir.path(), "p.json", FIXTURE);
    let st = dir.path().join("s.json");
    assert_eq!(ipd(&["solve", "--prior", s(&prior), "--eps", "0", "--out-structure", s(&st)]).status.code(), Some(0));
    assert_eq!(read_structure(&st).unwrap().signals(), &["t1", "t2", "t3"]);
    let out = ipd(&["verify", "--structure", s(&st), "--eps", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ip"]["binding"], serde_json::json!([false, false, false]));

    let full = write(
        dir.path(),
        "full.json",
        &format!(
            r#"{{"prior": {FIXTURE}, "secrets": ["s0", "s1"], "signals": ["t1", "t2"],
                "widths": [[0.75, 0.25], [0.25, 0.75]], "cells": [[1, 0], [1, 0]]}}"#
        ),
    );
    let out = ipd(&["verify", "--structure", s(&full), "--eps", LN2]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ip"]["witness"]["signal"], 0);
}

#[test]
fn tolerance_override() {
    let dir = tempfile::tempdir().unwrap();
    let full = write(
        dir.path(),
        "full.json",
        &format!(
            r#"{{"prior": {FIXTURE}, "secrets": ["s0", "s1"], "signals": ["t1", "t2"],
                "widths": [[0.75, 0.25], [0.25, 0.75]], "cells": [[1, 0], [1, 0]]}}"#
        ),
    );
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_ipd"))
            .args(["verify", "--structure", s(&full), "--eps", "1.0986"])
            .env("IPD_TOLERANCE", tol)
            .output()
            .unwrap()
    };
    assert_eq!(run("1e-9").status.code(), Some(1));
    assert_eq!(run("1e-3").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"secrets": [{"name": "a", "p": 0.5, "q_y1": 0.7}, {"name": "b", "p": 0.4, "q_y1": 0.2}]}"#,
    );
    let out = ipd(&["solve", "--prior", s(&bad), "--eps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_code(&out), "MassNotNormalized");

    let three = write(
        dir.path(),
        "three.json",
        r#"{"secrets": [{"name": "a", "p": 0.3, "q_y1": 0.9}, {"name": "b", "p": 0.3, "q_y1": 0.5},
            {"name": "c", "p": 0.4, "q_y1": 0.1}]}"#,
    );
    let out = ipd(&["solve", "--prior", s(&three), "--eps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_code(&out), "NotBinarySecret");

    let prior = write(dir.path(), "p.json", FIXTURE);
    let out = ipd(&["sweep", "--prior", s(&prior), "--eps", "0:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_code(&out), "BadGrid");
    assert_eq!(ipd(&["solve", "--eps", "1"]).status.code(), Some(2));
}

#[test]
fn general_solver_cap_and_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let secrets: Vec<String> =
        (0..6).map(|k| format!(r#"{{"name": "s{k}", "p": 0.125, "q_y1": {}}}"#, 0.9 - 0.15 * k as f64)).collect();
    let mut six = secrets.join(",");
    six = six.replacen("0.125", "0.375", 1);
    let six = write(dir.path(), "six.json", &format!(r#"{{"secrets": [{six}]}}"#));
    let out = ipd(&["solve-general", "--prior", s(&six), "--eps", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_code(&out), "TooManySecrets");

    let prior = write(dir.path(), "p.json", FIXTURE);
    let diag = dir.path().join("diag.jsonl");
    let out = ipd(&["solve-general", "--prior", s(&prior), "--eps", LN2, "--utility", "abs", "--diagnostics", s(&diag)]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((summary["utility"].as_f64().unwrap() - 5.0 / 6.0).abs() < 1e-7);
    let lines = std::fs::read_to_string(&diag).unwrap();
    assert_eq!(lines.lines().count(), 12);
    for line in lines.lines() {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(rec.get("assignment").is_some() && rec.get("status").is_some() && rec.get("objective").is_some());
    }

    let three = write(
        dir.path(),
        "three.json",
        r#"{"secrets": [{"name": "a", "p": 0.3, "q_y1": 0.9}, {"name": "b", "p": 0.3, "q_y1": 0.5},
            {"name": "c", "p": 0.4, "q_y1": 0.1}]}"#,
    );
    let st = dir.path().join("s3.json");
    let out = ipd(&["solve-general", "--prior", s(&three), "--eps", LN2, "--utility", "quadratic", "--out-structure", s(&st)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(ipd(&["verify", "--structure", s(&st), "--eps", LN2]).status.code(), Some(0));
}

#[test]
fn sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let prior = write(dir.path(), "p.json", FIXTURE);
    let csv = dir.path().join("sweep.csv");
    let out = ipd(&["sweep", "--prior", s(&prior), "--eps", "0:2.5:0.05", "--utility", "abs,quadratic,negentropy", "--out", s(&csv)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("eps,utility_family,u_eps,u_0,gain,regime,num_signals"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 153);
    assert_eq!(rows[0][4], "1.0");
}

#[test]
fn utility_command() {
    let dir = tempfile::tempdir().unwrap();
    let prior = write(dir.path(), "p.json", FIXTURE);
    let out = ipd(&["utility", "--prior", s(&prior), "--eps", "1.0986122886681098", "--utility", "abs"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["gain"].as_f64().unwrap() - 2.0).abs() < 1e-9);

    let rewards = write(dir.path(), "r.json", "[[1, 0], [0, 1]]");
    let st = dir.path().join("s.json");
    ipd(&["solve", "--prior", s(&prior), "--eps", LN2, "--out-structure", s(&st)]);
    let spec = format!("rewards:{}", s(&rewards));
    let out = ipd(&["utility", "--structure", s(&st), "--utility", &spec]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["utility"].as_f64().unwrap() - 11.0 / 12.0).abs() < 1e-12);
    let out = ipd(&["utility", "--structure", s(&st), "--utility", "cubic"]);
    assert_eq!(stderr_code(&out), "BadUtilitySpec");
}

#[test]
fn sampling_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let prior = write(dir.path(), "p.json", FIXTURE);
    let me = dir.path().join("m.json");
    ipd(&["solve", "--prior", s(&prior), "--eps", LN2, "--out-mechanism", s(&me)]);
    let a = ipd(&["sample", "--mechanism", s(&me), "--secret", "s0", "--y", "1", "--count", "200", "--seed", "3"]);
    let b = ipd(&["sample", "--mechanism", s(&me), "--secret", "s0", "--y", "1", "--count", "200", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 200);
    let ones = ipd(&["sample", "--mechanism", s(&me), "--secret", "s1", "--y", "1", "--count", "50", "--seed", "3"]);
    assert!(String::from_utf8(ones.stdout).unwrap().lines().all(|l| l == "t1"));
    assert_eq!(ipd(&["sample", "--mechanism", s(&me), "--secret", "s0", "--y", "1"]).status.code(), Some(2));

    let edge = write(
        dir.path(),
        "edge.json",
        r#"{"secrets": [{"name": "s0", "p": 0.5, "q_y1": 1.0}, {"name": "s1", "p": 0.5, "q_y1": 0.25}]}"#,
    );
    let me2 = dir.path().join("m2.json");
    ipd(&["solve", "--prior", s(&edge), "--eps", LN2, "--out-mechanism", s(&me2)]);
    let out = ipd(&["sample", "--mechanism", s(&me2), "--secret", "s0", "--y", "0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_code(&out), "ZeroMassContext");
}

#[test]
fn oracle_command() {
    let dir = tempfile::tempdir().unwrap();
    let prior = write(dir.path(), "p.json", FIXTURE);
    let out = ipd(&["oracle", "--prior", s(&prior), "--eps", LN2, "--kind", "grid", "--grid", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["solver_dominates_all"], true);
    let out = ipd(&["oracle", "--prior", s(&prior), "--eps", LN2, "--trials", "300", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(ipd(&["oracle", "--prior", s(&prior), "--eps", LN2, "--trials", "10"]).status.code(), Some(2));
}
