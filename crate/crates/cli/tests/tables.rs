//! End-to-end checks of the compiled binary: table contents, output
//! determinism and exit codes.

use std::process::{Command, Output};
use std::str::FromStr;

use num_traits::{One, Zero};
use tickwalk::ExactNum;

fn tickwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tickwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("utf-8 output")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn dist_table_ten_steps() {
    let out = tickwalk(&["dist", "--n", "10", "--k", "1"]);
    assert!(out.status.success());
    let rows = csv_rows(stdout(&out));
    assert_eq!(rows.len(), 7, "six clean-up rows plus the passive atom");
    let atom = rows.last().unwrap();
    assert_eq!(atom[0], "passive");
    assert_eq!(atom[1], "-1");
    assert_eq!(
        ExactNum::from_str(&atom[2]).unwrap(),
        ExactNum::new(772.into(), 1024.into())
    );
    // exec_mass column sums to one exactly
    let total = rows
        .iter()
        .map(|r| ExactNum::from_str(&r[2]).unwrap())
        .fold(ExactNum::zero(), |a, b| a + b);
    assert!(total.is_one());
}

#[test]
fn dist_table_single_step() {
    let out = tickwalk(&["dist", "--n", "1", "--k", "1"]);
    let rows = csv_rows(stdout(&out));
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][1].as_str(), rows[0][2].as_str()), ("1", "1/2"));
    assert_eq!((rows[1][1].as_str(), rows[1][2].as_str()), ("-1", "1/2"));
}

#[test]
fn dist_json_masses_sum_to_one() {
    let out = tickwalk(&["dist", "--n", "10", "--k", "3", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(doc["meta"]["n"], 10);
    assert_eq!(doc["meta"]["k"], 3);
    assert_eq!(doc["meta"]["engine"], "exact");
    let total = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| ExactNum::from_str(row["exec_mass"].as_str().unwrap()).unwrap())
        .fold(ExactNum::zero(), |a, b| a + b);
    assert!(total.is_one());
}

#[test]
fn cost_table_net_gain_is_all_zero() {
    let out = tickwalk(&["cost", "--n", "10"]);
    let rows = csv_rows(stdout(&out));
    assert_eq!(rows.len(), 11);
    for row in rows {
        assert_eq!(row[5], "0", "net_gain at k={}", row[0]);
    }
}

#[test]
fn variance_table_fig7_rows() {
    let out = tickwalk(&["variance", "--n", "23", "--k-max", "23"]);
    let rows = csv_rows(stdout(&out));
    assert_eq!(rows.len(), 24);
    let last = rows.last().unwrap();
    assert_eq!(last[1], "23");
    assert_eq!(last[3].parse::<f64>().unwrap(), 23.0);

    let single = tickwalk(&["variance", "--n", "23", "--k-max", "0"]);
    let rows = csv_rows(stdout(&single));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1], "0");
    assert_eq!(rows[0][3].parse::<f64>().unwrap(), 0.0);

    let small = tickwalk(&["variance", "--n", "4", "--k-max", "4"]);
    let rows = csv_rows(stdout(&small));
    assert_eq!(rows[1][1], "19/8");
    assert_eq!(rows[1][2].parse::<f64>().unwrap(), 2.375);
}

#[test]
fn fillprob_lattice_and_time_modes() {
    let out = tickwalk(&["fillprob", "--n", "10", "--k", "1"]);
    let rows = csv_rows(stdout(&out));
    assert_eq!(rows[0][1], "193/256");

    let timed = tickwalk(&["fillprob", "--k-abs", "1", "--sigma", "1", "--tau", "2"]);
    let rows = csv_rows(stdout(&timed));
    let p: f64 = rows[0][3].parse().unwrap();
    assert!((p - 0.4795001221869535).abs() < 1e-12);
}

#[test]
fn dist_parity_bump_changes_n() {
    let out = tickwalk(&[
        "dist",
        "--n",
        "10",
        "--k",
        "2",
        "--parity-bump",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(doc["meta"]["n"], 11);
}

#[test]
fn fillprob_parity_bump_changes_n() {
    let out = tickwalk(&[
        "fillprob",
        "--n",
        "10",
        "--k",
        "2",
        "--parity-bump",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(doc["meta"]["n"], 11);

    // different parity already: no bump
    let kept = tickwalk(&[
        "fillprob",
        "--n",
        "10",
        "--k",
        "1",
        "--parity-bump",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&kept)).unwrap();
    assert_eq!(doc["meta"]["n"], 10);
}

#[test]
fn simulate_output_is_byte_identical_across_runs() {
    let args = [
        "simulate", "--n", "20", "--k", "2", "--paths", "50000", "--seed", "7",
    ];
    let a = tickwalk(&args);
    let b = tickwalk(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let c = tickwalk(&[
        "simulate", "--n", "20", "--k", "2", "--paths", "50000", "--seed", "8",
    ]);
    assert_ne!(a.stdout, c.stdout, "different seed, different report");
}

#[test]
fn out_file_matches_stdout_bytes() {
    let dir = std::env::temp_dir().join(format!("tickwalk-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dist.csv");
    let piped = tickwalk(&["dist", "--n", "6", "--k", "2"]);
    let written = tickwalk(&[
        "dist",
        "--n",
        "6",
        "--k",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(written.status.success());
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_subcommand_passes() {
    let out = tickwalk(&["verify", "--n-max", "16"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verified n <= 16"));
}

#[test]
fn validation_failures_exit_one_with_single_line_diagnostics() {
    let cases: &[&[&str]] = &[
        &["dist", "--n", "4", "--k", "9"],
        &["dist", "--n", "0", "--k", "0"],
        &["dist", "--n", "4"],
        &["cost", "--n", "10", "--k-max", "11"],
        &["fillprob", "--n", "10"],
        &["fillprob", "--n", "10", "--k", "1", "--tau", "2"],
        &["simulate", "--n", "10", "--k", "0"],
        &["simulate", "--n", "10", "--k", "1", "--paths", "0"],
        &["verify", "--n-max", "99"],
        &["nonsense"],
    ];
    for args in cases {
        let out = tickwalk(args);
        assert_eq!(out.status.code(), Some(1), "args: {args:?}");
        assert!(out.stdout.is_empty(), "no partial output for {args:?}");
        let err = std::str::from_utf8(&out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "stderr: {err}");
    }
}

#[test]
fn help_exits_zero() {
    let out = tickwalk(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Usage"));
}
