use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bvcf::config::{load_config, ScenarioConfig};
use bvcf::output::CSV_HEADER;

fn bvcf(args: &[&str]) -> Output {
    bvcf_with_env(args, None)
}

fn bvcf_with_env(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bvcf"));
    cmd.args(args).env_remove("BVCF_SEED");
    if let Some(s) = seed {
        cmd.env("BVCF_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn shipped_scenario() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/default.json")
}

fn seed_of(json: &str) -> u64 {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    v["rng_seed"].as_u64().unwrap()
}

#[test]
fn run_defaults_to_json_on_stdout() {
    let out = bvcf(&["run"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "completed");
    assert_eq!(v["cloudlets"].as_array().unwrap().len(), 10);
}

#[test]
fn shipped_scenario_matches_builtin_default() {
    assert_eq!(load_config(shipped_scenario()).unwrap(), ScenarioConfig::default_scenario());
    let file = bvcf(&["run", "--config", shipped_scenario().to_str().unwrap()]);
    let builtin = bvcf(&["run"]);
    assert_eq!(stdout(&file), stdout(&builtin));
}

#[test]
fn csv_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = bvcf(&["run", "--policy", "2", "--tq", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER.join(","));
    assert_eq!(lines.len(), 12);
    assert!(lines[11].starts_with("total,"));
}

#[test]
fn compare_emits_both_policies() {
    let out = bvcf(&["compare", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("fcfs,")).count(), 11);
    assert_eq!(text.lines().filter(|l| l.starts_with("round_robin,")).count(), 11);
}

#[test]
fn seed_precedence_flag_env_config() {
    assert_eq!(seed_of(&stdout(&bvcf(&["run"]))), 42);
    assert_eq!(seed_of(&stdout(&bvcf_with_env(&["run"], Some("7")))), 7);
    assert_eq!(seed_of(&stdout(&bvcf_with_env(&["run", "--seed", "9"], Some("7")))), 9);
    assert_eq!(code(&bvcf_with_env(&["run"], Some("seven"))), 2);
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["run", "--loss", "1.5"][..],
        &["run", "--tq", "0"],
        &["run", "--policy", "3"],
        &["frobnicate"],
    ] {
        let out = bvcf(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"task": {"total_length": 0}, "vm_pool": []}"#).unwrap();
    let out = bvcf(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("task.total_length"));
}

#[test]
fn simulation_failure_exits_3_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tight.json");
    let mut cfg = ScenarioConfig::default_scenario();
    cfg.resource_pool = Some([(bvcf::provisioning::ResourceKind::CpuRate, 1.0)].into_iter().collect());
    fs::write(&path, cfg.to_json()).unwrap();
    let out = bvcf(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "failed");
}

#[test]
fn io_errors_exit_4() {
    assert_eq!(code(&bvcf(&["run", "--config", "/nonexistent/s.json"])), 4);
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("missing/dir/out.json");
    assert_eq!(code(&bvcf(&["run", "--out", out_path.to_str().unwrap()])), 4);
}
