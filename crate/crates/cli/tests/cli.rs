use std::process::{Command, Output};

use stateint::report::from_json;

fn stateint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stateint")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(json: &str, key: &str) -> f64 {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    let mut cur = &v;
    for k in key.split('.') {
        cur = &cur[k];
    }
    cur.as_f64().unwrap_or_else(|| panic!("{} missing in {}", key, json))
}

#[test]
fn eval_all_methods_agree() {
    let o = stateint(&["eval", "--A", "1", "--B", "2", "--M", "1", "--N", "1", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    let closed = from_json(lines[0]).unwrap();
    assert!((closed.value.re - 0.3287).abs() < 1e-4 && (closed.value.im - 0.1898).abs() < 1e-4);
    for l in &lines[1..3] {
        assert!((from_json(l).unwrap().value - closed.value).norm() < 1e-10);
    }
    assert!(lines[3].starts_with("{\"differences\""));
}

#[test]
fn eval_rejects_non_coprime_pair() {
    let o = stateint(&["eval", "--A", "1", "--B", "2", "--M", "2", "--N", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotCoprime"));
}

#[test]
fn eval_requires_b_greater_than_a() {
    let o = stateint(&["eval", "--A", "2", "--B", "1", "--M", "1", "--N", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(stateint(&["eval", "--A", "1"]).status.code(), Some(2));
    assert_eq!(stateint(&["phi", "--M", "1", "--N", "1", "--x", "1 + 2i"]).status.code(), Some(2));
    assert_eq!(stateint(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(stateint(&["roots", "--M", "1", "--N", "1"]).status.code(), Some(2));
    let out_of_range = stateint(&["eval", "--A", "1", "--B", "2", "--M", "1", "--N", "1", "--lambda", "-1.5"]);
    assert_eq!(out_of_range.status.code(), Some(2));
    let bad_height = stateint(&["eval", "--A", "1", "--B", "2", "--M", "1", "--N", "1", "--method", "quadrature", "--height", "1.5"]);
    assert_eq!(bad_height.status.code(), Some(2));
}

#[test]
fn phi_at_zero() {
    let o = stateint(&["phi", "--M", "1", "--N", "1", "--x", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let t = std::f64::consts::PI / 12.0;
    assert!((field(&out, "integral.re") - t.cos()).abs() < 1e-12);
    assert!((field(&out, "integral.im") - t.sin()).abs() < 1e-12);
}

#[test]
fn phi_both_methods() {
    let o = stateint(&["phi", "--M", "2", "--N", "3", "--x", "0.1+0.05i", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(field(&stdout(&o), "abs_diff") < 1e-8);
}

#[test]
fn phi_at_pole_is_a_computation_error() {
    let o = stateint(&["phi", "--M", "1", "--N", "1", "--x", "0+1i"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"], "PoleProximity");
}

fn strip_count(args: &[&str]) -> usize {
    let o = stateint(args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    v["strip_points"].as_array().unwrap().len()
}

#[test]
fn roots_counts() {
    assert_eq!(strip_count(&["roots", "--A", "1", "--B", "2", "--M", "1", "--N", "1"]), 2);
    assert_eq!(strip_count(&["roots", "--pretzel", "--M", "1", "--N", "1"]), 6);
    assert_eq!(strip_count(&["roots", "--A", "1", "--B", "3", "--M", "1", "--N", "1"]), 3);
}

#[test]
fn roots_figure_eight_strip() {
    let o = stateint(&["roots", "--A", "1", "--B", "2", "--M", "1", "--N", "1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let ws: Vec<f64> = v["strip_points"].as_array().unwrap().iter().map(|p| p["w"]["im"].as_f64().unwrap()).collect();
    assert!((ws[0] - 1.0 / 6.0).abs() < 1e-12 && (ws[1] - 5.0 / 6.0).abs() < 1e-12);
}

#[test]
fn json_round_trip_is_exact() {
    for args in [
        &["eval", "--A", "2", "--B", "3", "--M", "2", "--N", "3"][..],
        &["pretzel", "--M", "1", "--N", "2"][..],
    ] {
        let o = stateint(args);
        assert_eq!(o.status.code(), Some(0));
        let line = stdout(&o);
        let parsed = from_json(line.trim()).unwrap();
        assert_eq!(stateint::report::to_json(&parsed), line.trim());
    }
}

#[test]
fn text_output() {
    let o = stateint(&["eval", "--A", "1", "--B", "3", "--M", "1", "--N", "2", "--output", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("closed_form"));
}

#[test]
fn identical_invocations_are_identical() {
    let args = ["eval", "--A", "1", "--B", "3", "--M", "2", "--N", "3", "--method", "quadrature"];
    assert_eq!(stateint(&args).stdout, stateint(&args).stdout);
}

#[test]
fn verify_suite_exit_code() {
    let o = stateint(&["verify", "--suite", "sums", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("checks passed"));
}
