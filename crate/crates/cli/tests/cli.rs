//! End-to-end checks of the command-line surface.

use assert_cmd::Command;
use predicates::prelude::*;

fn cmd() -> Command {
    Command::cargo_bin("moduli-betti").unwrap()
}

#[test]
fn betti_moduli_matches_golden_row() {
    cmd()
        .args([
            "betti", "--rank", "2", "--genus", "3", "--circles", "4", "--odd", "1", "--char",
            "2", "--target", "moduli",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains(
            "1 + (4)t + (11)t^2 + (16)t^3 + (11)t^4 + (4)t^5 + t^6",
        ));
}

#[test]
fn betti_rank3_odd_characteristic() {
    cmd()
        .args([
            "betti", "--rank", "3", "--genus", "2", "--circles", "1", "--odd", "1", "--char",
            "odd", "--trunc", "8", "--target", "bcg",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("odd rank"))
        .stdout(predicate::str::contains("(2)t^3 + (2)t^4 + (2)t^5"));
}

#[test]
fn betti_invalid_parameters_exit_2() {
    cmd()
        .args([
            "betti", "--rank", "2", "--genus", "2", "--circles", "5", "--odd", "1", "--char",
            "2",
        ])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("circle count out of range"));
}

#[test]
fn classify_lists_five_types_at_genus_two() {
    let out = cmd()
        .args(["classify", "--genus", "2", "--format", "csv"])
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let rows: Vec<&str> = stdout.trim().lines().collect();
    assert_eq!(rows.len(), 6); // header + 5 types
    assert_eq!(rows[1], "2,0,1");
    assert_eq!(rows[5], "2,3,0");
}

#[test]
fn pi1_prints_group_and_homology() {
    cmd()
        .args(["pi1", "--rank", "2", "--genus", "3", "--circles", "2", "--odd", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("Z/2 ⋉ (Z x Z/2); H1 = (Z/2)^2"));
}

#[test]
fn pi1_rank2_genus2_unsupported() {
    cmd()
        .args(["pi1", "--rank", "2", "--genus", "2", "--circles", "1", "--odd", "1"])
        .assert()
        .code(2);
}

#[test]
fn distinguish_reports_stage_and_witness() {
    cmd()
        .args([
            "distinguish", "--a", "6,3,1,2", "--b", "6,3,1,0", "--rank", "2",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("distinguished at stage 2"));
}

#[test]
fn verify_golden_suite_exits_zero() {
    cmd()
        .args(["verify", "--suite", "golden"])
        .assert()
        .success()
        .stdout(predicate::str::contains("0 unexpected problems"));
}

#[test]
fn json_output_round_trips() {
    let out = cmd()
        .args([
            "betti", "--rank", "2", "--genus", "4", "--circles", "2", "--odd", "1", "--char",
            "2", "--target", "bcg", "--format", "json", "--trunc", "16",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    let series =
        moduli_betti::series::TruncatedSeries::from_json(&parsed["series"]).unwrap();
    assert_eq!(serde_json::to_string(&series.to_json()).unwrap(),
               serde_json::to_string(&parsed["series"]).unwrap());
    // Deterministic byte-for-byte output on identical invocations.
    let again = cmd()
        .args([
            "betti", "--rank", "2", "--genus", "4", "--circles", "2", "--odd", "1", "--char",
            "2", "--target", "bcg", "--format", "json", "--trunc", "16",
        ])
        .assert()
        .success();
    assert_eq!(
        out.get_output().stdout,
        again.get_output().stdout
    );
}

#[test]
fn csv_output_has_degree_rows() {
    let out = cmd()
        .args([
            "betti", "--rank", "2", "--genus", "2", "--circles", "1", "--odd", "1", "--char",
            "2", "--target", "moduli", "--format", "csv",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let rows: Vec<&str> = stdout.trim().lines().collect();
    assert_eq!(rows[0], "target,case,degree,coefficient");
    // Golden row 1 + t + t² + t³.
    assert_eq!(rows.len(), 5);
    assert!(rows[1].ends_with(",0,1"));
    assert!(rows[4].ends_with(",3,1"));
}

#[test]
fn trunc_env_variable_is_honored() {
    let out = cmd()
        .env("MODULI_BETTI_TRUNC", "6")
        .args([
            "betti", "--rank", "2", "--genus", "2", "--circles", "1", "--odd", "1", "--char",
            "2", "--target", "bcg", "--format", "json",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(parsed["series"]["trunc"], serde_json::json!(6));
}
