mod common;

use std::process::{Command, Output};

use common::{class, data_path};
use scasc::io::{verify_verdict_report, VerdictReport};
use scasc::Limits;

fn scasc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scasc")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    data_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_lists_members() {
    let o = scasc(&["validate", &data("idempotent_example")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("A_d: size 2"));
    assert!(out.contains("B_d: size 4"));
}

#[test]
fn free_semilattice_of_rank_two() {
    let o = scasc(&["free", &data("semilattice"), "-k", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("size 3"));
}

#[test]
fn verdict_json_round_trips_and_verifies() {
    let o = scasc(&["verdict", &data("three_elem_disc"), "--json"]);
    assert!(o.status.success());
    let report: VerdictReport = serde_json::from_str(&stdout(&o)).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["asc"], "yes");
    assert_eq!(v["sc"], "no");
    verify_verdict_report(&report, &class("three_elem_disc"), &Limits::default()).unwrap();
}

#[test]
fn classify_passive_example() {
    let o = scasc(&[
        "classify",
        &data("three_elem_disc"),
        "-q",
        "d(x0,c0,c1)=x0 & d(x0,c1,c0)=x0 => c0=c1",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("passive-admissible, not valid"));
}

#[test]
fn disc_prints_term_or_none() {
    let o = scasc(&["disc", &data("three_elem_pure_disc")]);
    assert_eq!(stdout(&o).trim(), "d(x0,x1,x2)");
    let o = scasc(&["disc", &data("semilattice")]);
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn refute_sc_finds_the_passive_rule() {
    let o = scasc(&[
        "refute-sc",
        &data("three_elem_disc"),
        "--max-vars",
        "1",
        "--max-premises",
        "2",
        "--max-depth",
        "2",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "found");
}

#[test]
fn bad_input_exits_with_one() {
    assert_eq!(scasc(&["bogus"]).status.code(), Some(1));
    assert_eq!(scasc(&["validate", "/nonexistent/file.ua"]).status.code(), Some(1));
    let o = scasc(&["classify", &data("semilattice"), "-q", "meet(x0) = x0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn capacity_exits_with_two() {
    let o = scasc(&["free", &data("boolean"), "-k", "3", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
}

#[test]
fn survey_is_deterministic() {
    let args = ["survey", "--size", "2", "--arity", "2,1", "--samples", "20", "--seed", "7"];
    let a = scasc(&args);
    let b = scasc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["samples"], 20);
}
