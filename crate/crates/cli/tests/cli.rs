//! End-to-end tests of the `greencm` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn greencm(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greencm")).env("GREENCM_CACHE", cache).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn first_example_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = greencm(dir.path(), &["example", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let value: f64 = v["numeric"]["value[1]"]["value"].as_str().unwrap().parse().unwrap();
    assert!((value + 1.000394556341).abs() < 1e-9);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn survey_counts() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&greencm(dir.path(), &["survey-classgroups", "--bound", "1000"]));
    assert_eq!(v["exact"]["fundamental_discriminants"], 305);
    assert_eq!(v["exact"]["exponent_dividing_two"], 52);
}

#[test]
fn diagonal_is_a_structured_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = greencm(dir.path(), &["green-eval", "--s", "2", "--z1", "i", "--z2", "i"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Singular");
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in
        [&["example", "4"][..], &["green-eval", "--s", "x", "--z1", "i", "--z2", "rho"], &["cm-formula", "--d2", "-23"], &["frobnicate"]]
    {
        assert_eq!(greencm(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
    let out = greencm(dir.path(), &["green-eval", "--s", "2", "--z1", "i", "--z2", "rho", "--tol", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--deterministic", "cm-formula", "--d2", "-23", "--d1", "-4", "--j", "4"];
    let cold = greencm(dir.path(), &args);
    let warm = greencm(dir.path(), &args);
    let uncached = greencm(dir.path(), &["--no-cache", args[0], args[1], args[2], args[3], args[4], args[5], args[6], args[7]]);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
    assert!(json(&cold).get("seconds").is_none());
}

#[test]
fn corrupted_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--deterministic", "cm-formula", "--d2", "-23", "--d1", "-4", "--j", "2"];
    let clean = greencm(dir.path(), &args);
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    // Flip one coefficient in the stored payload without touching its checksum.
    let text = fs::read_to_string(&files[0]).unwrap();
    let tampered = text.replacen("378/23", "379/23", 1);
    assert_ne!(text, tampered);
    fs::write(&files[0], tampered).unwrap();
    let again = greencm(dir.path(), &args);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(clean.stdout, again.stdout);
    assert!(String::from_utf8_lossy(&again.stderr).contains("checksum"));
    // The entry has been rewritten with the correct payload.
    assert!(fs::read_to_string(&files[0]).unwrap().contains("378/23"));
}

#[test]
fn bundled_tables_validate() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&greencm(dir.path(), &["table-validate", "table-23", "--digits", "12"]));
    let c = v["exact"]["coefficients"].as_array().unwrap();
    let at = |m: &str| c.iter().find(|e| e["m"] == m).unwrap()["c"].as_str().unwrap().to_string();
    assert_eq!(at("7/23"), "-0.153173096659");
    assert_eq!(at("-1/23"), "0.562399148646");
}
