//! End-to-end checks of the binary: exit codes, document schema,
//! determinism, and the inputs → outputs round trip.

use std::process::{Command, Output};

use serde_json::Value;

fn spinstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinstat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON document")
}

#[test]
fn canonical_bell_violation_exits_with_code_two() {
    let out = spinstat(&[
        "bell",
        "--ti",
        "0",
        "--tj",
        "1.0471975512",
        "--tk",
        "2.0943951024",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_stdout(&out);
    assert_eq!(doc["subcommand"], "bell");
    assert_eq!(doc["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["mode"], "float");
    assert!((doc["outputs"]["lhs"].as_f64().unwrap() - 0.375).abs() < 1e-9);
    assert!((doc["outputs"]["rhs"].as_f64().unwrap() - 0.25).abs() < 1e-9);
    assert_eq!(doc["outputs"]["violated"], true);
}

#[test]
fn exact_bell_uses_rational_arithmetic() {
    let out = spinstat(&["bell", "--probs", "1/4,1/4,3/4"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_stdout(&out);
    assert_eq!(doc["outputs"]["lhs"], "3/8");
    assert_eq!(doc["outputs"]["rhs"], "1/4");
    assert_eq!(doc["mode"], "exact");
}

#[test]
fn deuteron_exact_distribution() {
    let out = spinstat(&["deuteron", "--model", "paper", "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_stdout(&out);
    assert_eq!(doc["outputs"]["+1"], 0.25);
    assert_eq!(doc["outputs"]["0"], 0.5);
    assert_eq!(doc["outputs"]["-1"], 0.25);

    let out = spinstat(&["deuteron", "--model", "conventional", "--exact"]);
    let doc = json_stdout(&out);
    assert!((doc["outputs"]["+1"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);

    // the user-suppliable third distribution
    let out = spinstat(&[
        "deuteron",
        "--model",
        "custom",
        "--dist",
        "3/10,2/5,3/10",
        "--exact",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_stdout(&out);
    assert_eq!(doc["outputs"]["0"], 0.4);

    let out = spinstat(&[
        "deuteron",
        "--model",
        "custom",
        "--dist",
        "1/2,1/2,1/2",
        "--exact",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn antisym_exclusion_is_a_negative_result() {
    let out = spinstat(&["antisym", "--parts", "+,+"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_stdout(&out);
    assert_eq!(doc["outputs"]["zero"], true);
    assert_eq!(doc["outputs"]["norm"], 0.0);

    let out = spinstat(&["antisym", "--parts", "+,-"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_stdout(&out);
    assert_eq!(doc["outputs"]["zero"], false);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "sample",
        "--state",
        "singlet",
        "--axes",
        "0,2.0943951023931953",
        "--samples",
        "5000",
        "--seed",
        "42",
    ];
    let a = spinstat(&args);
    let b = spinstat(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn bell_report_inputs_reproduce_outputs() {
    let first = json_stdout(&spinstat(&[
        "bell", "--ti", "0.31", "--tj", "1.9", "--tk", "4.2", "--c", "0.5",
    ]));
    let inputs = &first["inputs"];
    let rerun = json_stdout(&spinstat(&[
        "bell",
        "--ti",
        &inputs["ti"].to_string(),
        "--tj",
        &inputs["tj"].to_string(),
        "--tk",
        &inputs["tk"].to_string(),
        "--c",
        &inputs["c"].to_string(),
    ]));
    assert_eq!(first["outputs"], rerun["outputs"]);
}

#[test]
fn deuteron_report_inputs_reproduce_outputs() {
    let first = json_stdout(&spinstat(&[
        "deuteron",
        "--model",
        "paper",
        "--samples",
        "4000",
        "--seed",
        "7",
    ]));
    let inputs = &first["inputs"];
    let rerun = json_stdout(&spinstat(&[
        "deuteron",
        "--model",
        inputs["model"].as_str().unwrap(),
        "--samples",
        &inputs["samples"].to_string(),
        "--seed",
        &inputs["seed"].to_string(),
    ]));
    assert_eq!(first["outputs"], rerun["outputs"]);
}

#[test]
fn usage_errors_exit_with_code_one() {
    let out = spinstat(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = spinstat(&["bell", "--ti", "not-a-number", "--tj", "0", "--tk", "0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = spinstat(&["deuteron", "--model", "unknown", "--exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown model"));

    let out = spinstat(&["lhv", "--probs", "1/4,1/4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bell_scan_emits_the_fixed_csv_column_order() {
    let out = spinstat(&["bell-scan", "--points", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta_i,theta_j,theta_k,c,lhs,rhs,margin,violated"
    );
    assert_eq!(lines.count(), 64);

    // a grid containing the canonical triple reports its violations
    let out = spinstat(&[
        "bell-scan",
        "--axes",
        "0,1.0471975511965976,2.0943951023931953",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lhv_exact_canonical_problem_reports_a_verified_certificate() {
    let out = spinstat(&["lhv", "--probs", "1/4,3/4,1/4"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_stdout(&out);
    assert_eq!(doc["outputs"]["feasible"], false);
    assert_eq!(doc["outputs"]["certificate_verified"], true);
    assert_eq!(doc["outputs"]["certificate"]["type"], "bell-inequality");

    let out = spinstat(&["lhv", "--probs", "0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_stdout(&out);
    assert_eq!(doc["outputs"]["masses"]["+++"], "1/2");
    assert_eq!(doc["outputs"]["masses"]["---"], "1/2");
}

#[test]
fn degrees_flag_matches_radians() {
    let radians = json_stdout(&spinstat(&[
        "bell",
        "--ti",
        "0",
        "--tj",
        "1.0471975511965976",
        "--tk",
        "2.0943951023931953",
    ]));
    let degrees = json_stdout(&spinstat(&[
        "bell",
        "--degrees",
        "--ti",
        "0",
        "--tj",
        "60",
        "--tk",
        "120",
    ]));
    let lhs_r = radians["outputs"]["lhs"].as_f64().unwrap();
    let lhs_d = degrees["outputs"]["lhs"].as_f64().unwrap();
    assert!((lhs_r - lhs_d).abs() < 1e-12);
}

#[test]
fn output_flag_writes_the_document_to_a_file() {
    let dir = std::env::temp_dir().join(format!("spinstat-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = spinstat(&[
        "deuteron",
        "--model",
        "paper",
        "--exact",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["outputs"]["0"], 0.5);

    // relative paths resolve against SPINSTAT_OUTPUT_DIR
    let out = Command::new(env!("CARGO_BIN_EXE_spinstat"))
        .args(["mgf", "--t", "1.0", "--output", "mgf.json"])
        .env("SPINSTAT_OUTPUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.join("mgf.json").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn state_checks_match_the_canonical_classification() {
    let singlet = json_stdout(&spinstat(&["state", "--which", "singlet"]));
    assert_eq!(singlet["outputs"]["rotationally_invariant"], true);
    assert_eq!(singlet["outputs"]["isc_form"], true);

    let out = spinstat(&["state", "--which", "state2"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_stdout(&out);
    assert_eq!(doc["outputs"]["rotationally_invariant"], true);
    assert_eq!(doc["outputs"]["isc_form"], false);

    let out = spinstat(&["state", "--which", "plus-plus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compose_reports_the_canonical_group_orders() {
    let doc = json_stdout(&spinstat(&["compose", "--tree", "a2xa3"]));
    assert_eq!(doc["outputs"]["order"], 12);
    assert_eq!(doc["outputs"]["table_verified"], true);

    let doc = json_stdout(&spinstat(&["compose", "--tree", "s3o(a2xa2xa2)"]));
    assert_eq!(doc["outputs"]["order"], 48);
    assert_eq!(doc["outputs"]["table_verified"], true);
}

#[test]
fn energy_subcommand_is_exact_when_asked() {
    let doc = json_stdout(&spinstat(&[
        "energy",
        "--levels",
        "1,2,3",
        "--particles",
        "4",
    ]));
    assert_eq!(doc["outputs"]["energy"], 6.0);

    let doc = json_stdout(&spinstat(&[
        "energy",
        "--levels",
        "1/3,1/2,5",
        "--particles",
        "4",
        "--exact",
    ]));
    assert_eq!(doc["outputs"]["energy"], "5/3");

    let out = spinstat(&["energy", "--levels", "1,2,3", "--particles", "3"]);
    assert_eq!(out.status.code(), Some(1));
}
