use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn hh1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hh1"))
        .args(args)
        .env_remove("HH1_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn payload(args: &[&str]) -> Value {
    let out = hh1(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    report["payload"].clone()
}

fn exit_code(args: &[&str]) -> i32 {
    hh1(args).status.code().expect("exit code")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn counterexample_matches_golden_file() {
    let out = hh1(&["counterexample"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden("counterexample.json")
    );
}

#[test]
fn morita_check_matches_golden_file() {
    let out = hh1(&["morita-check", "--input", "builtin:c3", "--m", "2"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden("morita_check_c3_m2.json")
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["counterexample"],
        vec!["hh1", "--input", "builtin:s3"],
        vec![
            "integrate",
            "--input",
            "builtin:c3",
            "--derivation",
            "f0",
            "--order",
            "2",
        ],
    ] {
        assert_eq!(hh1(&args).stdout, hh1(&args).stdout, "{args:?}");
    }
}

#[test]
fn counterexample_values() {
    let p = payload(&["counterexample"]);
    assert_eq!(p["transfer"]["values"]["(123)"]["text"], "1 - (132)");
    assert_eq!(
        p["transfer"]["values"]["(123)"]["coefficients"],
        serde_json::json!([1, 0, 2, 0, 0, 0])
    );
    assert_eq!(p["transfer"]["values"]["(132)"]["text"], "1 - (123)");
    assert_eq!(
        p["cube_of_transfer"]["values"]["(132)"]["text"],
        "1 - (123)"
    );
    assert_eq!(p["f0"]["cube_is_zero"], true);
    assert_eq!(p["transfer_of_cube"]["is_zero"], true);
    assert_eq!(p["commutator_equation"]["outcome"]["solvable"], false);
    assert_eq!(p["verdict"], "does_not_commute");
}

#[test]
fn hh1_dimensions() {
    assert_eq!(
        payload(&["hh1", "--input", "builtin:c3"])["hh1_dimension"],
        3
    );
    assert_eq!(
        payload(&["hh1", "--input", &data("m2_f3.json")])["hh1_dimension"],
        0
    );
    assert_eq!(
        payload(&["center", "--input", &data("m2_f3.json")])["dimension"],
        1
    );
    assert_eq!(
        payload(&["hh1", "--input", &data("dual_numbers_f2.json")])["hh1_dimension"],
        2
    );
}

#[test]
fn validate_reports_violations_without_failing() {
    let p = payload(&["validate", "--input", &data("nonassociative.json")]);
    assert_eq!(p["valid"], false);
    assert!(!p["violations"].as_array().unwrap().is_empty());
    assert_eq!(
        payload(&["validate", "--input", "builtin:s3"])["valid"],
        true
    );
}

#[test]
fn ppower_examples() {
    let f0 = payload(&["ppower", "--input", "builtin:c3", "--derivation", "f0"]);
    assert_eq!(f0["p_power_is_zero"], true);
    assert_eq!(f0["p_power_class"]["zero"], true);
    let f1 = payload(&["ppower", "--input", "builtin:c3", "--derivation", "f1"]);
    assert_eq!(f1["p_power_class"], f1["class"]);
    let from_file = payload(&[
        "ppower",
        "--input",
        "builtin:c3",
        "--derivation",
        &data("f0.json"),
    ]);
    assert_eq!(from_file["p_power"], f0["p_power"]);
}

#[test]
fn bracket_of_f1_and_f0_is_minus_f0() {
    let p = payload(&[
        "bracket",
        "--input",
        "builtin:c3",
        "--derivation",
        "f1",
        "--derivation",
        "f0",
    ]);
    // -f0 over F_3
    assert_eq!(
        p["bracket"],
        serde_json::json!([[0, 2, 0], [0, 0, 1], [0, 0, 0]])
    );
}

#[test]
fn integrate_reports() {
    let ok = payload(&[
        "integrate",
        "--input",
        "builtin:c3",
        "--derivation",
        "f0",
        "--order",
        "2",
    ]);
    assert_eq!(ok["outcome"], "integrated");
    assert_eq!(ok["audit_passed"], true);
    assert_eq!(ok["terms"].as_array().unwrap().len(), 3);
    let zero = payload(&[
        "integrate",
        "--input",
        &data("truncated_3_3.json"),
        "--derivation",
        &data("zero_3x3.json"),
    ]);
    assert_eq!(zero["outcome"], "integrated");
    assert_eq!(zero["power_shift"]["lower_terms_vanish"], true);
    let blocked = payload(&[
        "integrate",
        "--input",
        "builtin:c3",
        "--derivation",
        "f0",
        "--order",
        "3",
    ]);
    assert_eq!(blocked["outcome"], "obstructed");
    assert_eq!(blocked["exhausted"], true);
}

#[test]
fn hh1r_counts() {
    let p = payload(&["hh1r", "--input", "builtin:c3", "--r", "1", "--order", "2"]);
    assert_eq!(
        (p["dimension"].as_u64(), p["exact"].as_bool()),
        (Some(3), Some(true))
    );
    let p = payload(&["hh1r", "--input", "builtin:c3", "--r", "1", "--order", "9"]);
    assert_eq!(
        (p["dimension"].as_u64(), p["exact"].as_bool()),
        (Some(2), Some(true))
    );
}

#[test]
fn morita_check_on_a_field_and_a_truncated_polynomial_ring() {
    let p = payload(&[
        "morita-check",
        "--input",
        &data("field_f3.json"),
        "--m",
        "2",
    ]);
    assert_eq!(
        (
            p["source_hh1_dimension"].as_u64(),
            p["target_hh1_dimension"].as_u64()
        ),
        (Some(0), Some(0))
    );
    let p = payload(&[
        "morita-check",
        "--input",
        &data("truncated_3_3.json"),
        "--m",
        "2",
    ]);
    assert_eq!(p["source_hh1_dimension"], p["target_hh1_dimension"]);
    assert_eq!(p["all_commute"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["hh1", "--input", &data("malformed.json")]), 2);
    assert_eq!(exit_code(&["hh1", "--input", &data("missing.json")]), 2);
    assert_eq!(exit_code(&["hh1", "--input", "builtin:c13"]), 2);
    assert_eq!(exit_code(&["hh1", "--input", "builtin:c3", "--p", "4"]), 2);
    assert_eq!(
        exit_code(&[
            "integrate",
            "--input",
            "builtin:c3",
            "--derivation",
            "f0",
            "--r",
            "4",
            "--order",
            "3"
        ]),
        2
    );
    assert_eq!(
        exit_code(&["morita-check", "--input", "builtin:c3", "--m", "9"]),
        2
    );
    assert_eq!(
        exit_code(&["ppower", "--input", "builtin:s3", "--derivation", "f0"]),
        2
    );
    assert_eq!(
        exit_code(&[
            "ppower",
            "--input",
            "builtin:c3",
            "--derivation",
            &data("identity_3x3.json")
        ]),
        3
    );
    assert_eq!(
        exit_code(&["hh1", "--input", &data("nonassociative.json")]),
        3
    );
    assert_eq!(exit_code(&["frobnicate"]), 2);
}

#[test]
fn non_derivation_error_names_the_failing_pair() {
    let out = hh1(&[
        "ppower",
        "--input",
        "builtin:c3",
        "--derivation",
        &data("identity_3x3.json"),
    ]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("Leibniz rule fails on (1, 1)"), "{err}");
}

#[test]
fn dimension_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_hh1"))
            .args(["hh1", "--input", "builtin:c3"])
            .env("HH1_MAX_DIM", cap)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("2"), Some(2));
    assert_eq!(run("3"), Some(0));
    assert_eq!(run("1000"), Some(0));
    assert_eq!(run("lots"), Some(2));
}

#[test]
fn text_output_is_plain() {
    let out = hh1(&["hh1", "--input", "builtin:c3", "--text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: hh1\n"));
    assert!(text.contains("hh1_dimension: 3"));
}
