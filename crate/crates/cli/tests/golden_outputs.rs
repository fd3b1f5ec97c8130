//! Byte-for-byte determinism of every subcommand against checked-in
//! golden files.

use assert_cmd::Command;

fn dlhom() -> Command {
    Command::cargo_bin("dlhom").unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> Vec<u8> {
    std::fs::read(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

fn assert_golden(args: &[&str], golden_name: &str) {
    let out = dlhom().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "dlhom {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        out.stdout,
        golden(golden_name),
        "dlhom {args:?} diverged from {golden_name}"
    );
    // and a second run is byte-identical
    let again = dlhom().args(args).output().unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn basis_golden() {
    let s1 = fixture("S1.json");
    assert_golden(
        &["basis", "--p", "2", "--input", &s1, "--max-degree", "8"],
        "basis.json",
    );
}

#[test]
fn apply_q_golden() {
    let x = fixture("pointed-S1.json");
    assert_golden(
        &[
            "apply-q",
            "--p",
            "2",
            "--input",
            &x,
            "--max-degree",
            "12",
            "--r",
            "2",
            "--target",
            "s1",
        ],
        "apply-q.json",
    );
}

#[test]
fn delta_golden() {
    let x = fixture("pointed-S1.json");
    assert_golden(
        &[
            "delta",
            "--p",
            "2",
            "--input",
            &x,
            "--max-degree",
            "8",
            "--target",
            "s1",
        ],
        "delta.json",
    );
}

#[test]
fn theta_prime_golden() {
    assert_golden(
        &["theta-prime", "--spectrum", "MO", "--n", "8"],
        "theta-prime.json",
    );
}

#[test]
fn sym_homology_golden() {
    assert_golden(
        &[
            "sym-homology",
            "--p",
            "3",
            "--degrees",
            "2",
            "--r-max",
            "11",
            "--format",
            "csv",
        ],
        "sym-homology.csv",
    );
}

#[test]
fn double_cosets_golden() {
    assert_golden(
        &["double-cosets", "--m", "2", "--n", "3"],
        "double-cosets.json",
    );
}

#[test]
fn indecomposables_golden() {
    assert_golden(
        &["indecomposables", "--p", "3", "--max-index", "30"],
        "indecomposables.json",
    );
}

#[test]
fn kriz_dims_golden() {
    assert_golden(
        &["kriz-dims", "--max-degree", "16", "--format", "csv"],
        "kriz-dims.csv",
    );
}

#[test]
fn obstruction_golden() {
    assert_golden(
        &[
            "obstruction",
            "--which",
            "cp-ku",
            "--p",
            "3",
            "--max-degree",
            "24",
        ],
        "obstruction.json",
    );
}
