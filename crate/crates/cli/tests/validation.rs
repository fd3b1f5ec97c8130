//! Exit codes and validation diagnostics.

use assert_cmd::Command;
use predicates::prelude::*;

fn dlhom() -> Command {
    Command::cargo_bin("dlhom").unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn bad_field_flag_is_a_validation_error() {
    dlhom()
        .args(["indecomposables", "--p", "4", "--max-index", "10"])
        .assert()
        .code(2);
    dlhom()
        .args(["indecomposables", "--p", "11", "--max-index", "10"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("outside the supported set"));
}

#[test]
fn schema_violations_report_json_pointers() {
    let dir = tempdir();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"field": "F2", "classes": [{"name": "s1"}]}"#).unwrap();
    dlhom()
        .args([
            "basis",
            "--p",
            "2",
            "--input",
            bad.to_str().unwrap(),
            "--max-degree",
            "4",
        ])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("/classes/0/degree"));

    let no_field = dir.join("no_field.json");
    std::fs::write(&no_field, r#"{"classes": [{"name": "s1", "degree": 1}]}"#).unwrap();
    dlhom()
        .args([
            "basis",
            "--p",
            "2",
            "--input",
            no_field.to_str().unwrap(),
            "--max-degree",
            "4",
        ])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("/field"));
}

#[test]
fn degree_cap_is_enforced_before_computation() {
    dlhom()
        .args(["kriz-dims", "--max-degree", "100000"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("truncation"));
    // env override loosens / tightens the cap
    dlhom()
        .env("DLHOM_DEGREE_CAP", "8")
        .args(["kriz-dims", "--max-degree", "9"])
        .assert()
        .code(2);
    dlhom()
        .args([
            "sym-homology",
            "--p",
            "2",
            "--degrees",
            "0",
            "--r-max",
            "600",
        ])
        .assert()
        .code(2);
    dlhom()
        .env("DLHOM_DEGREE_CAP", "1000")
        .args([
            "sym-homology",
            "--p",
            "2",
            "--degrees",
            "0",
            "--r-max",
            "600",
        ])
        .assert()
        .success();
}

#[test]
fn field_mismatch_between_flag_and_input() {
    let s1 = fixture("S1.json");
    dlhom()
        .args(["basis", "--p", "3", "--input", &s1, "--max-degree", "4"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("disagrees"));
}

#[test]
fn non_admissible_application_is_rejected() {
    let x = fixture("pointed-S1.json");
    dlhom()
        .args([
            "apply-q",
            "--p",
            "2",
            "--input",
            &x,
            "--max-degree",
            "20",
            "--r",
            "7",
            "--target",
            "Q[0,3].s1",
        ])
        .assert()
        .code(2);
}

#[test]
fn unicode_flag_changes_rendering_only() {
    let ascii = dlhom()
        .args(["theta-prime", "--spectrum", "MO", "--n", "2"])
        .output()
        .unwrap();
    let pretty = dlhom()
        .args(["theta-prime", "--spectrum", "MO", "--n", "2", "--unicode"])
        .output()
        .unwrap();
    let a: serde_json::Value = serde_json::from_slice(&ascii.stdout).unwrap();
    let u: serde_json::Value = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(a["image"], "S^-1 z2");
    assert_eq!(u["image"], "Σ^-1 ζ2");
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dlhom-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
