use std::path::PathBuf;
use std::process::{Command, Output};

use fuzzyrel_cli::canonical_json;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str], file: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzyrel"))
        .args(args)
        .arg(fixture(file))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str], file: &str) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all, file);
    let v = serde_json::from_str(&stdout(&o)).expect("valid JSON on stdout");
    (v, o.status.code().unwrap())
}

fn nums(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap_or_else(|| panic!("expected an array, got {v}"))
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn assert_close(actual: &[f64], expected: &[f64]) {
    assert_eq!(actual.len(), expected.len(), "{actual:?} vs {expected:?}");
    for (a, e) in actual.iter().zip(expected) {
        assert!((a - e).abs() <= 1e-9, "{actual:?} vs {expected:?}");
    }
}

#[test]
fn solve_consistent() {
    let o = run(&["solve"], "consistent.json");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: consistent"), "{out}");
    assert!(out.contains("greatest solution: [0.7, 0.4, 0.4]"), "{out}");

    let (v, code) = json(&["solve"], "consistent.json");
    assert_eq!(code, 0);
    assert_eq!(v["consistent"], Value::Bool(true));
    assert_close(&nums(&v["extremal"]), &[0.7, 0.4, 0.4]);
}

#[test]
fn solve_inconsistent_exits_one() {
    let o = run(&["solve"], "inconsistent.json");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: inconsistent"));
}

#[test]
fn malformed_input_exits_two_and_names_the_field() {
    let o = run(&["solve"], "bad_rhs.json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rhs"), "{}", stderr(&o));
    let o = run(&["solve"], "does_not_exist.json");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chebyshev_max_min() {
    let (v, code) = json(&["chebyshev"], "inconsistent.json");
    assert_eq!(code, 0);
    assert!((v["delta"].as_f64().unwrap() - 0.16).abs() <= 1e-9);
    assert_close(&nums(&v["per_row"]), &[0.16, 0.0, 0.02]);
    assert_close(&nums(&v["greatest_cheb"]), &[0.38, 0.29, 0.85]);
    let chebs = v["minimal"]["chebs"].as_array().unwrap();
    assert_eq!(chebs.len(), 1);
    assert_close(&nums(&chebs[0]), &[0.38, 0.10, 0.71]);
}

#[test]
fn chebyshev_min_max() {
    let (v, code) = json(&["chebyshev"], "minmax_inconsistent.json");
    assert_eq!(code, 0);
    assert!((v["nabla"].as_f64().unwrap() - 0.2).abs() <= 1e-9);
    assert_close(
        &nums(&v["lowest_cheb"]),
        &[0.5, 1.0, 0.5, 0.8, 0.5, 0.5, 0.5, 0.5],
    );
    let chebs = v["maximal"]["chebs"].as_array().unwrap();
    assert_eq!(chebs.len(), 1);
    assert_close(&nums(&chebs[0]), &[0.5, 1.0, 0.5, 1.0, 0.5, 0.9, 0.5, 0.9]);
}

#[test]
fn chebyshev_consistent_notes_it() {
    let o = run(&["chebyshev"], "consistent.json");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Chebyshev distance: 0\n"), "{out}");
    assert!(out.contains("system is consistent"), "{out}");
}

#[test]
fn chebyshev_budget_exit_code() {
    let o = run(
        &["--max-enumeration", "0", "chebyshev"],
        "inconsistent.json",
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = run(
        &["--max-enumeration", "0", "--skip-minimal", "chebyshev"],
        "inconsistent.json",
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!stdout(&o).contains("minimal Chebyshev approximations"));
}

#[test]
fn learn_two_pairs() {
    let (v, code) = json(&["learn"], "learn_two_pairs.json");
    assert_eq!(code, 0);
    assert!((v["mu"].as_f64().unwrap() - 0.3).abs() <= 1e-9);
    assert!((v["achieved_error"].as_f64().unwrap() - 0.3).abs() <= 1e-9);
    assert_close(&nums(&v["per_output_delta"]), &[0.0, 0.3, 0.15]);
    let text = stdout(&run(&["learn"], "learn_two_pairs.json"));
    assert!(text.contains("per-pair residuals:"), "{text}");
    assert!(text.contains("pair 1: "), "{text}");
}

#[test]
fn learn_exact_cases() {
    let (v, _) = json(&["learn"], "learn_four_pairs.json");
    assert_eq!(v["mu"].as_f64(), Some(0.0));
    assert_eq!(v["achieved_error"].as_f64(), Some(0.0));
    let (v, _) = json(&["learn"], "learn_single.json");
    assert_eq!(v["mu"].as_f64(), Some(0.0));
}

#[test]
fn rules_two_blocks() {
    let (v, code) = json(&["rules"], "rules_two_blocks.json");
    assert_eq!(code, 0);
    assert!((v["nabla"].as_f64().unwrap() - 0.1).abs() <= 1e-9);
    let intervals = v["intervals"].as_array().unwrap();
    assert_eq!(intervals.len(), 2);
    assert_close(&nums(&intervals[0]["upper"]), &[0.4, 0.7, 1.0, 0.2]);
    assert_close(&nums(&intervals[1]["lower"]), &[0.0, 0.9, 0.0, 0.4]);
    assert_close(&nums(&intervals[1]["upper"]), &[0.4, 0.9, 1.0, 0.4]);
}

#[test]
fn rules_single_block_is_exact() {
    let (v, code) = json(&["rules"], "rules_single.json");
    assert_eq!(code, 0);
    assert_eq!(v["consistent"], Value::Bool(true));
    let intervals = v["intervals"].as_array().unwrap();
    assert_eq!(intervals.len(), 1);
    assert_close(
        &nums(&intervals[0]["lower"]),
        &[0.3, 0.0, 0.0, 0.0, 0.0, 0.7],
    );
    assert_close(
        &nums(&intervals[0]["upper"]),
        &[0.3, 1.0, 1.0, 0.8, 1.0, 0.7],
    );
}

#[test]
fn rules_bad_input_exits_two() {
    let o = run(&["rules"], "rules_empty.json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("instances"));
    let o = run(&["rules"], "rules_ragged.json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("instances[1].gamma"));
}

#[test]
fn oracle_check_agrees() {
    for file in [
        "inconsistent.json",
        "consistent.json",
        "minmax_inconsistent.json",
    ] {
        let o = run(&["oracle-check"], file);
        assert_eq!(o.status.code(), Some(0), "{file}: {}", stdout(&o));
        assert!(stdout(&o).contains("verdict: agree"));
    }
}

#[test]
fn json_output_round_trips() {
    let cases = [
        ("solve", "consistent.json"),
        ("solve", "inconsistent.json"),
        ("chebyshev", "inconsistent.json"),
        ("chebyshev", "minmax_inconsistent.json"),
        ("learn", "learn_two_pairs.json"),
        ("rules", "rules_two_blocks.json"),
        ("oracle-check", "inconsistent.json"),
    ];
    for (verb, file) in cases {
        let out = stdout(&run(&["--format", "json", verb], file));
        let reparsed: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(canonical_json(&reparsed), out, "{verb} {file}");
    }
}

#[test]
fn tolerance_flag_is_validated() {
    let o = run(&["--tolerance=-1", "solve"], "consistent.json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("tolerance"));
}
