//! End-to-end tests of the `fuzzy-cpa` binary: output contents, exit code
//! classes, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fuzzy-cpa"))
}

fn figure1() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../networks/figure1.json")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn validate_figure1_succeeds() {
    let out = bin().arg("validate").arg(figure1()).output().unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("valid"));
    assert!(text.contains("activities: 4"));
    assert!(text.contains("configurations: 18"));
}

#[test]
fn validate_non_normal_fails_with_validation_code() {
    let out = bin().arg("validate").arg(fixture("nonnormal.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not normal"));
}

#[test]
fn validate_cycle_fails_with_validation_code() {
    let out = bin().arg("validate").arg(fixture("cycle.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));
}

#[test]
fn missing_file_is_an_io_error() {
    let out = bin().arg("validate").arg("no-such-file.json").output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn analyze_figure1_prints_both_sets() {
    let out = bin().arg("analyze").arg(figure1()).output().unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("oracle:    6/0.1, 7/0.2, 8/0.5, 9/0.2, 10/0.5, 11/0.1, 12/1"));
    assert!(text.contains("recursion: 6/0.1, 7/0.2, 8/0.5, 9/0.5, 10/0.5, 11/0.1, 12/1"));
    assert!(text.contains("extreme lengths: 6 .. 12"));
    assert!(text.contains("oracle 25.9"));
    assert!(text.contains("conflict on a1: 3 vs 5"));
}

#[test]
fn analyze_table_has_one_row_per_configuration() {
    let out = bin().arg("analyze").arg(figure1()).arg("--table").output().unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    let rows = text
        .lines()
        .filter(|l| l.starts_with("3/") || l.starts_with("5/"))
        .count();
    assert_eq!(rows, 18);
}

#[test]
fn analyze_json_carries_the_same_numbers() {
    let out = bin()
        .arg("analyze")
        .arg(figure1())
        .arg("--format")
        .arg("json")
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["oracle"], "6/0.1, 7/0.2, 8/0.5, 9/0.2, 10/0.5, 11/0.1, 12/1");
    assert_eq!(doc["recursion"], "6/0.1, 7/0.2, 8/0.5, 9/0.5, 10/0.5, 11/0.1, 12/1");
    assert_eq!(doc["area"]["oracle"], "25.9");
    assert_eq!(doc["extreme_lengths"][0], "6");
    assert_eq!(doc["extreme_lengths"][1], "12");
    assert_eq!(doc["report"]["mismatches"], 1);
    assert_eq!(doc["config"]["command"], "analyze");
}

#[test]
fn analyze_singleton_reports_no_discrepancy() {
    let out = bin().arg("analyze").arg(fixture("singleton.json")).output().unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("no discrepancy"));
    assert!(text.contains("recursion: 6/1"));
    assert!(text.contains("oracle:    6/1"));
}

#[test]
fn config_cap_exceeded_is_a_cap_error() {
    let out = bin()
        .arg("analyze")
        .arg(figure1())
        .arg("--config-cap")
        .arg("1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sample_is_byte_identical_for_a_fixed_seed() {
    let run = || {
        bin()
            .arg("sample")
            .arg(figure1())
            .arg("--seed")
            .arg("7")
            .arg("--batch")
            .arg("16")
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sample_with_full_tolerance_stops_after_two_batches() {
    let out = bin()
        .arg("sample")
        .arg(figure1())
        .arg("--tolerance")
        .arg("1")
        .arg("--batch")
        .arg("4")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    let trace_rows = text.lines().filter(|l| l.trim_start().chars().next().is_some_and(|c| c.is_ascii_digit())).count();
    assert_eq!(trace_rows, 2);
}

#[test]
fn sample_generous_budget_matches_oracle() {
    let out = bin()
        .arg("sample")
        .arg(figure1())
        .arg("--seed")
        .arg("11")
        .arg("--batch")
        .arg("64")
        .arg("--tolerance")
        .arg("0.000000001")
        .arg("--max-batches")
        .arg("40")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("estimate: 6/0.1, 7/0.2, 8/0.5, 9/0.2, 10/0.5, 11/0.1, 12/1"));
    assert!(text.contains("oracle check: exact match"));
}

#[test]
fn survey_of_chains_finds_no_discrepancies() {
    let out = bin()
        .arg("survey")
        .arg("--count")
        .arg("25")
        .arg("--shape")
        .arg("chain")
        .arg("--seed")
        .arg("5")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("discrepant: 0 of 25 (0)"));
}

#[test]
fn survey_of_dags_is_deterministic_per_seed() {
    let run = || {
        bin()
            .arg("survey")
            .arg("--count")
            .arg("20")
            .arg("--seed")
            .arg("3")
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn empty_survey_exits_cleanly() {
    let out = bin().arg("survey").arg("--count").arg("0").output().unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("survey: 0 instances"));
}
