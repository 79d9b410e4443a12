use std::process::{Command, Output};

use cirsa::{parse_csv, parse_json, PolicyKind};

fn cirsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cirsa"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn error_json(out: &Output) -> serde_json::Value {
    assert!(!out.status.success());
    let line = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(line.lines().last().unwrap()).unwrap()
}

#[test]
fn help_exits_cleanly() {
    let out = cirsa(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("sweep"));
}

#[test]
fn simulate_writes_one_csv_row() {
    let text = stdout(&cirsa(&[
        "simulate", "--runs", "20", "--slots", "50", "--load", "1.2",
    ]));
    let records = parse_csv(text.as_bytes()).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].slots, 50);
    assert_eq!(records[0].runs, 20);
    assert_eq!(records[0].nu, 1.0);
}

#[test]
fn config_file_values_yield_to_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    std::fs::write(
        &config,
        r#"{"slots": 40, "runs": 5, "load": 2.0, "dist": {"2": 1.0}, "format": "json"}"#,
    )
    .unwrap();
    let out = cirsa(&[
        "--config",
        config.to_str().unwrap(),
        "simulate",
        "--load",
        "0.5",
    ]);
    let records = parse_json(stdout(&out).as_bytes()).unwrap();
    assert_eq!(records[0].slots, 40);
    assert_eq!(records[0].runs, 5);
    assert_eq!(records[0].load, 0.5);
}

#[test]
fn sweep_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let out = cirsa(&[
        "sweep",
        "--axis",
        "L",
        "--from",
        "0.5",
        "--to",
        "2",
        "--step",
        "0.5",
        "--mode",
        "de",
        "--policy",
        "g",
        "--l-tgt",
        "1.8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Above the knee the policy threshold leaves the closed form's range.
    assert!(String::from_utf8_lossy(&out.stderr).contains("ThresholdOutOfRange"));
    let records = cirsa::read_records(&path, cirsa::Format::Csv).unwrap();
    assert_eq!(records.len(), 3);
    assert!(records
        .iter()
        .all(|r| r.policy == PolicyKind::GPolicy && r.target_load == Some(1.8)));
}

#[test]
fn flagged_points_are_reported_and_skipped() {
    let out = cirsa(&[
        "sweep", "--axis", "nu", "--from", "0.5", "--to", "1.5", "--step", "0.5", "--mode", "de",
    ]);
    let text = stdout(&out);
    assert_eq!(parse_csv(text.as_bytes()).unwrap().len(), 2);
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "ThresholdOutOfRange");
}

#[test]
fn threshold_and_de_subcommands() {
    let text = stdout(&cirsa(&["threshold", "--load", "1", "--target-load", "2"]));
    assert!(text.contains("nu=1\n"), "{text}");
    let text = stdout(&cirsa(&["de", "--active-load", "0.4", "--nu", "1"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["throughput"], 0.4);
}

#[test]
fn errors_are_single_json_lines() {
    let e = error_json(&cirsa(&["simulate", "--dist", "2:0.5,3:0.4"]));
    assert_eq!(e["error"], "InvalidDistribution");
    let e = error_json(&cirsa(&[
        "sweep", "--axis", "L", "--from", "2", "--to", "1", "--step", "0.5",
    ]));
    assert_eq!(e["error"], "Usage");
    let e = error_json(&cirsa(&["simulate", "--slots", "3"]));
    assert_eq!(e["error"], "DegreeExceedsSlots");
    let e = error_json(&cirsa(&["frobnicate"]));
    assert_eq!(e["error"], "Usage");
    let e = error_json(&cirsa(&[
        "simulate",
        "--out",
        "/no/such/dir/x.csv",
        "--runs",
        "1",
    ]));
    assert_eq!(e["error"], "Io");
    assert!(e["message"]
        .as_str()
        .unwrap()
        .contains("/no/such/dir/x.csv"));
}
