use std::process::{Command, Output};

use serde_json::Value;

fn qcongruence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcongruence"))
        .args(args)
        .env_remove("QCONG_JOBS")
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("qcongruence-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn without_timing(path: &std::path::Path) -> Vec<Value> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut records: Vec<Value> = serde_json::from_str(&text).unwrap();
    for r in &mut records {
        r.as_object_mut().unwrap().remove("timing_ms");
    }
    records
}

#[test]
fn verify_theorem1_holds() {
    let out = qcongruence(&["verify", "theorem1", "--n", "3", "--m", "1", "--variant", "a"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("theorem1a [m=1 n=3] holds"));
}

#[test]
fn invalid_parameters_exit_2() {
    let out = qcongruence(&["verify", "theorem1", "--n", "4", "--m", "1", "--variant", "a"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n = 4"));
    assert_eq!(qcongruence(&["verify", "theorem1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(qcongruence(&["check", "classical", "--id", "nope", "--p", "7"]).status.code(), Some(2));
    assert_eq!(qcongruence(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn conjecture1_reports_without_failing() {
    let out_path = tmp("conj1.json");
    let out = qcongruence(&["check", "conjecture1", "--p", "7", "--r", "1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let records = without_timing(&out_path);
    assert_eq!(records[0]["status"], "report");
    assert_eq!(records[0]["actual"], "valuation 0, residue 1");
}

#[test]
fn sweep_is_deterministic_and_ordered() {
    let config = tmp("config.json");
    std::fs::write(
        &config,
        r#"{"tasks": [
            {"kind": "theorem2b", "params": {"n": 7}},
            {"kind": "classical", "id": "h2", "params": {"p": 23}},
            {"kind": "guozu3", "params": {"n": 15}},
            {"kind": "watson", "params": {"seed": 5, "count": 4}},
            {"kind": "proofchecks", "params": {"n": 11, "m": 3}},
            {"kind": "conjecture3a", "params": {"n": 3}},
            {"kind": "theorem1a", "params": {"n": 3, "m": 1}}
        ], "jobs": 1}"#,
    )
    .unwrap();
    let mut runs = Vec::new();
    let mut first_text = String::new();
    for (i, jobs) in ["1", "4", "1"].iter().enumerate() {
        let out_path = tmp(&format!("sweep{i}.json"));
        let out = qcongruence(&[
            "sweep",
            "--config",
            config.to_str().unwrap(),
            "--jobs",
            jobs,
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        if i == 0 {
            first_text = std::fs::read_to_string(&out_path).unwrap();
        }
        runs.push(without_timing(&out_path));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
    let tasks: Vec<&str> = runs[0].iter().map(|r| r["task"].as_str().unwrap()).collect();
    assert_eq!(
        tasks,
        [
            "theorem2b", "h2", "guozu3a", "guozu3b", "watson", "watson", "watson", "watson", "proofchecks",
            "conjecture3a", "theorem1a"
        ]
    );
    let fields = ["\"task\"", "\"params\"", "\"status\"", "\"residue\"", "\"expected\"", "\"actual\"", "\"notes\"", "\"timing_ms\""];
    let positions: Vec<usize> = fields.iter().map(|f| first_text.find(f).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
}

#[test]
fn bad_config_exits_2() {
    let config = tmp("bad.json");
    std::fs::write(&config, r#"{"tasks": [{"kind": "theorem1a", "params": {"n": 3, "m": 1}}, {"kind": "guozu3", "params": {"n": 4}}]}"#).unwrap();
    let out = qcongruence(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // validation happens before anything runs
    assert!(out.stdout.is_empty());
    assert_eq!(qcongruence(&["sweep", "--config", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn jobs_default_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcongruence"))
        .args(["verify", "guozu3", "--n", "5"])
        .env("QCONG_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("jobs"));
}

#[test]
fn paper_preset_passes() {
    let out_path = tmp("paper.json");
    let out = qcongruence(&["sweep", "--preset", "paper", "--jobs", "4", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let records = without_timing(&out_path);
    assert!(records.iter().all(|r| r["status"] == "holds" || r["status"] == "report"));
}
