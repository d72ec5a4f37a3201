//! End-to-end runs of the `hermod` binary against the bundled data.

use std::process::{Command, Output};

use serde_json::Value;

fn hermod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermod")).args(args).output().expect("spawn hermod")
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = hermod(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad json ({e}): {text}"));
    (out.status.code().unwrap(), value, text)
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hermod(&["hjf", "bogus"]).status.code(), Some(2));
    assert_eq!(hermod(&["hjf", "up", "--form", "phi10"]).status.code(), Some(2));
}

#[test]
fn unknown_form_is_an_error() {
    let out = hermod(&["hjf", "up", "--form", "nosuch", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nosuch"));
}

#[test]
fn missing_data_dir_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().to_str().unwrap();
    let out = hermod(&["--data", data, "hjf", "up", "--form", "phi10", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("phi10.hjf"));
}

#[test]
fn phi8_scan_mod_13() {
    let (code, v, _) = json(&["hjf", "ramanujan", "--form", "phi8", "--p", "13", "--scan"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let got: Vec<i64> = v["report"]["congruent"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(got, [1, 3, 4, 9, 10, 12]);
    assert_eq!(v["sturm_depth"], 105);
}

#[test]
fn phi10_has_up_at_five() {
    let (code, v, _) = json(&["hjf", "up", "--form", "phi10", "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "hjf up");
    assert_eq!(v["truncation_kind"], "n");
}

#[test]
fn chi8_has_up_at_five() {
    let (code, v, _) = json(&["hmf", "up", "--form", "chi8", "--p", "5", "--t0", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["truncation"], 8);
}

#[test]
fn json_output_is_canonical() {
    let (_, v, text) = json(&["hjf", "ramanujan", "--form", "phi4", "--p", "7", "--b", "2"]);
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(text.trim_end(), again);
}

#[test]
fn text_output_ends_with_verdict() {
    let out = hermod(&["hjf", "up", "--form", "phi10", "--p", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().starts_with("result: "));
}
