use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-dirac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn passing_checks_exit_zero() {
    assert_eq!(code(&["algebra", "--model", "ks", "--dim", "4"]), 0);
    assert_eq!(code(&["verify-ks", "--dim", "1", "--n", "8"]), 0);
    assert_eq!(code(&["diag", "--dim", "2", "--samples", "10"]), 0);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn numerical_failure_exits_one() {
    assert_eq!(code(&["algebra", "--model", "ks", "--dim", "3", "--tol", "1e-30"]), 1);
}

#[test]
fn invalid_arguments_exit_two() {
    assert_eq!(code(&["converge", "--model", "ks", "--z", "1,0"]), 2);
    assert_eq!(code(&["converge", "--model", "ks", "--h-list", "0.1,0.2,0.05"]), 2);
    assert_eq!(code(&["converge", "--model", "ks", "--h-list", "0.1,0.05"]), 2);
    assert_eq!(code(&["diag", "--dim", "4"]), 2);
    assert_eq!(code(&["verify-ks", "--dim", "1", "--n", "3"]), 2);
    assert_eq!(code(&["algebra", "--model", "standard", "--dim", "5"]), 2);
    assert_eq!(code(&["doubling", "--model", "continuum"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("report.json");
    assert_eq!(code(&["algebra", "--out", out.to_str().unwrap()]), 3);
}

#[test]
fn rejected_arguments_leave_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let path = out.to_str().unwrap();
    assert_eq!(code(&["converge", "--model", "wilson", "--z", "2,0", "--out", path]), 2);
    assert!(!Path::new(path).exists());
}

#[test]
fn report_goes_to_file_and_summary_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dispersion.csv");
    let output = run(&[
        "dispersion", "--model", "naive", "--dim", "1", "--grid", "8", "--format", "csv", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let body = std::fs::read_to_string(&out).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("xi_1,E"));
    assert_eq!(lines.count(), 8);
    assert!(String::from_utf8_lossy(&output.stdout).contains("dispersion"));
}

#[test]
fn json_report_without_out_goes_to_stdout() {
    let output = run(&["diag", "--dim", "3", "--samples", "5", "--seed", "3"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["seed"], 3);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["converge", "--model", "wilson", "--dim", "1", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
