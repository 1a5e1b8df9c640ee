//! CLI behavior: exit codes, determinism, JSON report shape.

use std::path::Path;
use std::process::{Command, Output};

fn hd121(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hd121"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const LINE_NET: &str = r#"{"n_relays":1,"links":[
    {"from":0,"to":1,"capacity":1.0},
    {"from":1,"to":2,"capacity":1.0}]}"#;

const SINGLE_LINK: &str = r#"{"n_relays":0,"links":[{"from":0,"to":1,"capacity":7.0}]}"#;

#[test]
fn capacity_single_link() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    write(&path, SINGLE_LINK);
    let out = hd121(&["capacity", path.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("capacity: 7.000000000"), "{stdout}");
}

#[test]
fn capacity_line_network_is_half() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    write(&path, LINE_NET);
    let out = hd121(&["capacity", path.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("capacity: 0.500000000"), "{stdout}");
}

#[test]
fn capacity_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    write(&path, SINGLE_LINK);
    let out = hd121(&["capacity", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["command"], "capacity");
    assert!((v["report"]["capacity"].as_f64().unwrap() - 7.0).abs() < 1e-9);
    assert_eq!(v["report"]["tolerance"].as_f64().unwrap(), 1e-9);
    assert!(v["report"]["input_digest"].as_str().unwrap().len() == 64);
    assert_eq!(v["solution"]["links"][0]["from"], 0);
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    write(&path, "{not json");
    let out = hd121(&["capacity", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
}

#[test]
fn invalid_network_exits_2_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    write(&path, r#"{"n_relays":1,"links":[{"from":1,"to":0,"capacity":1.0}]}"#);
    let out = hd121(&["capacity", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("source"), "{stderr}");
}

#[test]
fn missing_file_exits_2() {
    let out = hd121(&["capacity", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn iteration_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    write(&path, LINE_NET);
    let out = hd121(&["capacity", path.to_str().unwrap(), "--max-iterations", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn schedule_line_network() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    write(&path, LINE_NET);
    let out = hd121(&["schedule", path.to_str().unwrap(), "--verify", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let states = v["schedule"]["states"].as_array().unwrap();
    assert_eq!(states.len(), 2);
    for s in states {
        assert!((s["fraction"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    }
    assert!((v["verified_rate"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn schedule_single_link_single_state() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    write(&path, SINGLE_LINK);
    let out = hd121(&["schedule", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let states = v["schedule"]["states"].as_array().unwrap();
    assert_eq!(states.len(), 1);
    assert!((states[0]["fraction"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(states[0]["links"][0], serde_json::json!([0, 1]));
}

#[test]
fn schedule_random_file_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    let gen = hd121(&[
        "gen", "--n", "4", "--density", "0.7", "--seed", "11",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let out = hd121(&["schedule", path.to_str().unwrap(), "--verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn gen_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = hd121(&[
            "gen", "--n", "3", "--density", "0.5", "--seed", "99",
            "--out", p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn gen_full_density_one_relay_has_three_links() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    let out = hd121(&[
        "gen", "--n", "1", "--density", "1.0", "--seed", "1",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let net = hd121::netmodel::Network::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(net.links().len(), 3);
}

#[test]
fn selftest_passes_and_is_deterministic() {
    let a = hd121(&["selftest", "--n", "3", "--trials", "12", "--seed", "7"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = hd121(&["selftest", "--n", "3", "--trials", "12", "--seed", "7"]);
    assert_eq!(a.stdout_without_timing(), b.stdout_without_timing());
}

trait StdoutNoTiming {
    fn stdout_without_timing(&self) -> String;
}

impl StdoutNoTiming for Output {
    fn stdout_without_timing(&self) -> String {
        String::from_utf8_lossy(&self.stdout)
            .lines()
            .filter(|l| !l.contains("ms"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[test]
fn selftest_injected_fault_exits_5_with_reproducer() {
    let out = hd121(&["selftest", "--trials", "10", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(5));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("mismatch"), "{stderr}");
    assert!(stderr.contains("reproducer"), "{stderr}");
    assert!(stderr.contains("n_relays"), "reproducer must contain the network: {stderr}");
}
