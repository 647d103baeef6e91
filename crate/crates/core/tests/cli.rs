//! The installed binary: exit codes and output as seen from a shell.

use std::process::{Command, Output};

fn wernick(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wernick")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    wernick(args).status.code().expect("exit code")
}

#[test]
fn exit_code_contract() {
    assert_eq!(code(&["solve", "7", "--instances", "20"]), 0);
    assert_eq!(code(&["solve", "138"]), 2);
    assert_eq!(code(&["solve", "A,B,Zz"]), 64);
    assert_eq!(code(&["solve", "7", "--format", "pdf"]), 64);
    assert_eq!(code(&["no-such-command"]), 64);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn solve_7_prints_plan_and_verification() {
    let out = wernick(&["solve", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("clean plan: 5 steps"), "{text}");
    assert!(text.contains("verification: 100/100"));
    assert!(text.contains("5. Using the line AC and the line BC, construct the point C."));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("solved in"));
}

#[test]
fn a_broken_kb_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.kb");
    std::fs::write(&path, "point A\nrule r: needs nonsense\n").unwrap();
    let out = wernick(&["solve", "7", "--kb", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8(out.stderr).unwrap().contains("bad.kb"));
}

#[test]
fn a_kb_without_rules_leaves_problems_unsolved() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.kb");
    let points: String = ["A", "B", "C", "H"].iter().map(|p| format!("point {p}\n")).collect();
    std::fs::write(&path, points).unwrap();
    assert_eq!(code(&["solve", "7", "--kb", path.to_str().unwrap()]), 2);
}

#[test]
fn verification_failure_exits_3() {
    // at a tolerance far below rounding error nothing verifies
    assert_eq!(code(&["solve", "53", "--tol", "1e-30", "--instances", "5"]), 3);
}
