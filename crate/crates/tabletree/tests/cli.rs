//! End-to-end checks of the command-line interface: flags, formats, the
//! stdout/stderr split, and exit codes per subcommand.

use std::path::PathBuf;
use std::process::{Command, Output};

use tabletree::synth;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tabletree"))
}

fn write_orders(dir: &tempfile::TempDir) -> PathBuf {
    let path = dir.path().join("orders.csv");
    std::fs::write(&path, synth::order_table_csv(400, 9)).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn profile_reports_a_key_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_orders(&dir);
    let out = bin()
        .args(["profile", input.to_str().unwrap(), "--seed", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["command"], "profile");
    assert_eq!(report["rows"], 400);
    let solution = &report["solution"];
    assert_eq!(solution["size"], 2);
    assert_eq!(solution["error"], 0.0);
    let columns: Vec<String> = solution["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let mut sorted = columns.clone();
    sorted.sort();
    assert_eq!(sorted, vec!["orderID", "productID"]);
}

#[test]
fn fd_finds_the_order_determinants() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_orders(&dir);
    let out = bin()
        .args([
            "fd",
            input.to_str().unwrap(),
            "--target",
            "orderID",
            "--seed",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mut columns: Vec<String> = report["solution"]["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    columns.sort();
    assert_eq!(columns, vec!["customerID", "time"]);

    // the minimal-error flavor agrees here (an exact dependency exists)
    let out = bin()
        .args([
            "fd",
            input.to_str().unwrap(),
            "--target",
            "orderID",
            "--optimize",
            "error-then-size",
            "--seed",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["solution"]["error"], 0.0);
    assert_eq!(report["solution"]["size"], 2);

    // unknown target column is a usage error
    let out = bin()
        .args(["fd", input.to_str().unwrap(), "--target", "nosuch"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // restricting candidates can make the search unsatisfiable
    let out = bin()
        .args([
            "fd",
            input.to_str().unwrap(),
            "--target",
            "orderID",
            "--candidates",
            "ordertype",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fd_text_format_is_line_oriented() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_orders(&dir);
    let out = bin()
        .args([
            "fd",
            input.to_str().unwrap(),
            "--target",
            "phoneno",
            "--format",
            "text",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("target: phoneno"));
    assert!(text.contains("size: 1"));
}

#[test]
fn schema_dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_orders(&dir);
    let out = bin()
        .args(["schema", input.to_str().unwrap(), "--format", "dot"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph schema_tree {"));
    assert!(dot.contains("rowid"));
    // an unsupported format is rejected before any table work
    let out = bin()
        .args(["schema", input.to_str().unwrap(), "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schema_json_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_orders(&dir);
    let out = bin()
        .args(["schema", input.to_str().unwrap(), "--seed", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let tree = tabletree::SchemaTree::from_json(&stdout(&out)).unwrap();
    assert_eq!(tree.config.seed, 4);
    assert_eq!(tree.nodes.len(), 13);
}

#[test]
fn features_emit_csv_rows_per_anchor_value() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_orders(&dir);
    let out = bin()
        .args([
            "features",
            input.to_str().unwrap(),
            "--anchor",
            "customerID",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("customerID,fullname,phoneno,age,"));
    assert!(header.contains("price__mean_by_orderID__max"));
    // missing anchor is a usage error
    let out = bin()
        .args(["features", input.to_str().unwrap(), "--anchor", "nosuch"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn features_report_violations_on_stderr() {
    // `a` determines `v` only approximately; the key column keeps rows
    // distinct and, being decimal, stays out of the skeleton
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("noisy.csv");
    std::fs::write(
        &input,
        "a,v,k\nx,1,0.5\nx,1,1.5\nx,2,2.5\ny,5,3.5\ny,5,4.5\n",
    )
    .unwrap();
    let out = bin()
        .args([
            "features",
            input.to_str().unwrap(),
            "--anchor",
            "a",
            "--epsilon",
            "0.25",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("warning: feature `v`"), "stderr: {err}");
    // data still lands on stdout only
    assert!(stdout(&out).starts_with("a,v,"));
}

#[test]
fn bench_counters_and_preference() {
    let out = bin()
        .args([
            "bench", "--n", "60", "--plant", "3", "--trials", "40", "--seed", "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["fa_evals"]["median"].as_u64().unwrap() <= 24);
    assert_eq!(report["be_evals"]["median"].as_u64().unwrap(), 60);
    assert!(report["preference"].is_null());

    let out = bin()
        .args([
            "bench", "--n", "40", "--plant", "2,3", "--trials", "300", "--seed", "6",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let freq = report["preference"]["frequency"].as_f64().unwrap();
    assert!((freq - 0.6).abs() < 0.1, "frequency {freq}");

    // zero trials: empty report, success
    let out = bin().args(["bench", "--trials", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["fa_evals"].is_null());

    // infeasible plant
    let out = bin()
        .args(["bench", "--n", "4", "--plant", "3,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seed_comes_from_the_environment_when_unset() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_orders(&dir);
    let via_env = bin()
        .args(["schema", input.to_str().unwrap()])
        .env("TABLETREE_SEED", "11")
        .output()
        .unwrap();
    let via_flag = bin()
        .args(["schema", input.to_str().unwrap(), "--seed", "11"])
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, via_flag.stdout);
}

#[test]
fn custom_delimiter_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("semi.csv");
    std::fs::write(&input, "g;v\na;1\nb;2\nb;3\n").unwrap();
    let out = bin()
        .args([
            "features",
            input.to_str().unwrap(),
            "--anchor",
            "g",
            "--delimiter",
            ";",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().next().unwrap().contains(';'));
}

#[test]
fn help_and_bad_flags() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("profile"));

    let out = bin().args(["profile"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1)); // missing input path

    let out = bin().args(["nosuchcommand"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
