//! End-to-end checks of the command-line surface.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn value_of(record: &serde_json::Value, label: &str) -> Option<f64> {
    record["values"]
        .as_array()?
        .iter()
        .find(|v| v["label"] == label)?["value"]
        .as_f64()
}

#[test]
fn count_example_point() {
    let out = run(&[
        "count", "--s", "2", "--T", "10", "--a", "1", "--kind", "corner",
    ]);
    assert!(out.status.success());
    let recs = stdout_lines(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(value_of(&recs[0], "exact"), Some(27.0));
    let vol = value_of(&recs[0], "volume").unwrap();
    assert!((vol - 14.02585).abs() < 1e-4);
}

#[test]
fn tract_table_over_shift_grid() {
    let out = run(&["tract", "--a", "0.5,1,1.2", "--r", "1", "--smax", "3"]);
    assert!(out.status.success());
    let recs = stdout_lines(&out);
    assert_eq!(recs.len(), 3);
    let classes: Vec<String> = recs
        .iter()
        .map(|r| {
            r["values"][0]["text"]
                .as_str()
                .expect("class text")
                .to_string()
        })
        .collect();
    assert!(classes[0].contains("intractable") && !classes[0].contains("weakly"));
    assert!(classes[1].contains("weakly tractable"));
    assert!(classes[2].contains("exponentially tractable"));
}

#[test]
fn widths_report_carries_bounds() {
    let out = run(&[
        "widths", "--s", "2", "--a", "1.5", "--r", "1", "--N", "20", "--eps", "0.1", "--q", "2",
    ]);
    assert!(out.status.success());
    let recs = stdout_lines(&out);
    assert_eq!(recs.len(), 2);
    for rec in &recs {
        assert!(value_of(rec, "exact").is_some());
        let labels: Vec<String> = rec["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v["label"].as_str().unwrap().to_string())
            .collect();
        assert!(labels.iter().any(|l| l.starts_with("bound:")));
    }
}

#[test]
fn csv_header_is_fixed() {
    let out = run(&[
        "count",
        "--format",
        "csv",
        "--s",
        "1",
        "--T",
        "3.5",
        "--a",
        "1",
        "--kind",
        "symmetric",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,T,a,kind,r,N,eps,delta,q,label,value,text,valid"
    );
    assert!(lines.next().unwrap().starts_with("1,3.5,1,symmetric"));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir();
    let path = dir.join("hypercross_cli_test_cfg.json");
    std::fs::write(
        &path,
        r#"{"s": "2", "T": "10", "a": "1", "kind": "corner"}"#,
    )
    .unwrap();
    let out = run(&["count", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    let recs = stdout_lines(&out);
    assert_eq!(value_of(&recs[0], "exact"), Some(27.0));
}

#[test]
fn usage_errors_exit_two() {
    let bad_flag = run(&["count", "--bogus", "1"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let missing = run(&["count", "--s", "2"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_suite = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(bad_suite.status.code(), Some(2));
}

#[test]
fn verify_subsuites_green() {
    for suite in ["counting", "remainder", "volume", "tract", "spectral"] {
        let out = run(&["verify", "--suite", suite]);
        assert!(
            out.status.success(),
            "suite {suite}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn deterministic_output_for_fixed_seed() {
    let args = [
        "approx", "--s", "2", "--r", "1", "--a", "1", "--T", "5", "--trials", "20", "--seed", "9",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
