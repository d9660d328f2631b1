//! End-to-end checks of the binary: exit-code contract, deterministic
//! output, and spec-file round-trips.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathgrad"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn figure_emits_table_and_exact_split() {
    let out = run(&["figure", "--arc-exponent", "2", "--nodes", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let attrs = json["report"]["attributions"].as_array().unwrap();
    assert!((attrs[0].as_f64().unwrap() - 1.0 / 3.0).abs() <= 1e-9);
    assert!((attrs[1].as_f64().unwrap() - 2.0 / 3.0).abs() <= 1e-9);
    assert_eq!(json["table"].as_array().unwrap().len(), 65);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "attribute",
        "--field",
        "random-relu",
        "--layers",
        "2,8,1",
        "--seed",
        "7",
        "--path",
        "arc",
        "--rule",
        "gauss",
        "--nodes",
        "64",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn check_symmetry_passes_on_diagonal_product() {
    let out = run(&[
        "check-symmetry",
        "--field",
        "product",
        "--path",
        "straight",
        "--p",
        "0,0",
        "--q",
        "2,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_symmetry_flags_the_arc() {
    // off the diagonal the product field splits unevenly: exit 2
    let out = run(&["check-symmetry", "--field", "product", "--path", "arc"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_completeness_rejects_staircase() {
    let out = run(&[
        "check-completeness",
        "--field",
        "cantor",
        "--path",
        "straight",
        "--p",
        "0",
        "--q",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["refined"]["converged"], serde_json::Value::Bool(false));
}

#[test]
fn check_completeness_accepts_product_on_arc() {
    let out = run(&[
        "check-completeness",
        "--field",
        "product",
        "--path",
        "arc",
        "--tolerance",
        "1e-6",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn witness_finds_gap_on_arc_but_not_diagonal() {
    let out = run(&["witness", "--path", "arc", "--nodes", "2048"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(json["gap"].as_f64().unwrap() > 1e-6);

    let out = run(&["witness", "--path", "straight", "--p", "0,0", "--q", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counterexample_reports_monotonicity_verdict() {
    let out = run(&["counterexample", "--p", "0,0.5", "--q", "1,1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["predicted_monotonic"], serde_json::Value::Bool(true));
    assert!(json["deviation_from_straight"].as_f64().unwrap() > 0.1);

    let out = run(&["counterexample", "--p", "0,1", "--q", "1,3"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["predicted_monotonic"], serde_json::Value::Bool(false));
}

#[test]
fn usage_errors_exit_1() {
    // linear field without coefficients
    let out = run(&["attribute", "--field", "linear", "--path", "straight"]);
    assert_eq!(out.status.code(), Some(1));
    // nonexistent spec file
    let out = run(&["attribute", "--field", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(1));
    // bad tolerance
    let out = run(&[
        "check-symmetry",
        "--field",
        "product",
        "--tolerance",
        "-1",
        "--p",
        "0,0",
        "--q",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_output_lists_coordinates() {
    let out = run(&[
        "attribute",
        "--field",
        "product",
        "--path",
        "arc",
        "--rule",
        "gauss",
        "--nodes",
        "32",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("coordinate,attribution"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn spec_files_round_trip_through_the_binary() {
    let dir = std::env::temp_dir().join(format!("pathgrad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let field_spec = dir.join("field.json");
    let path_spec = dir.join("path.json");
    std::fs::write(
        &field_spec,
        serde_json::json!({
            "kind": "linear",
            "dim": 2,
            "domain": [-10.0, 10.0],
            "params": {"coeffs": [2.0, -3.0]}
        })
        .to_string(),
    )
    .unwrap();
    std::fs::write(
        &path_spec,
        serde_json::json!({
            "kind": "piecewise_linear",
            "p": [0.0, 0.0],
            "q": [1.0, 1.0],
            "params": {"knots": [{"t": 0.5, "x": [0.9, 0.1]}]}
        })
        .to_string(),
    )
    .unwrap();

    let report_file = dir.join("report.json");
    let out = run(&[
        "attribute",
        "--field",
        field_spec.to_str().unwrap(),
        "--path",
        path_spec.to_str().unwrap(),
        "--out",
        report_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_file).unwrap()).unwrap();
    // linear field: attributions are exactly c_i * (q_i - p_i) on any path
    let attrs = json["attributions"].as_array().unwrap();
    assert!((attrs[0].as_f64().unwrap() - 2.0).abs() <= 1e-9);
    assert!((attrs[1].as_f64().unwrap() + 3.0).abs() <= 1e-9);

    // invalid spec file: exit 1 with the collected errors on stderr
    let bad_spec = dir.join("bad.json");
    std::fs::write(&bad_spec, r#"{"dim": 2, "domain": [5.0, -5.0]}"#).unwrap();
    let out = run(&["attribute", "--field", bad_spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    std::fs::remove_dir_all(&dir).ok();
}
