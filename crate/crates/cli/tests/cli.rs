//! End-to-end tests that drive the compiled binary: envelope schema,
//! exit codes, output formats, seed handling, and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smoothsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8(out.stdout.clone()).expect("stdout is utf-8");
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stdout not JSON ({e}): {text}"))
}

#[test]
fn envelope_carries_command_version_seed_and_payload() {
    let out = run(&["partition", "count", "--n", "100"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["command"], "partition count");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["seed"], 0);
    assert_eq!(v["n"], 100);
    assert_eq!(v["p"], "402");
    // Envelope fields come first, in a fixed order.
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with(r#"{"command":"partition count","version":"#));
}

#[test]
fn big_integers_cross_the_wire_as_decimal_strings() {
    let out = run(&["partition", "count", "--n", "40000"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["p"], "2611771518060603");
    assert!(v["p"].is_string());
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(&["nosuchcmd"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_integer_argument_is_a_usage_error() {
    let out = run(&["owf", "verify", "--n", "abc", "--a", "1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_1_with_a_structured_kind() {
    let out = run(&["prime", "fib", "--n", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["command"], "prime fib");
    assert_eq!(v["error"]["kind"], "excluded-input");
    assert!(v["error"]["message"].as_str().unwrap().contains("5"));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("error:"));
}

#[test]
fn resource_limits_are_reported_not_panicked() {
    let out = run(&["partition", "count", "--n", "99999999999"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["error"]["kind"], "resource-limit");
}

#[test]
fn csv_is_rejected_where_no_table_is_defined() {
    let out = run(&["partition", "count", "--n", "100", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_renders_tables_with_a_header_row() {
    let out = run(&["smooth", "gaps", "--s", "2", "--limit", "100", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lower,upper,gap,relative_gap"));
    let first = lines.next().unwrap();
    assert!(first.starts_with("1,2,1,"));
}

#[test]
fn text_format_renders_key_value_lines() {
    let out = run(&["partition", "count", "--n", "100", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: partition count\n"));
    assert!(text.contains("\np: 402\n"));
}

#[test]
fn seed_is_echoed_on_stderr_never_stdout() {
    let out = run(&["keygen", "pair", "--s", "10", "--seed", "42"]);
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.trim(), "seed: 42");

    let out = run(&["keygen", "pair", "--s", "10"]);
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(stderr.contains("seed: 0 (default"));
    let v = stdout_json(&out);
    assert_eq!(v["seed"], 0);
}

#[test]
fn same_seed_means_byte_identical_stdout() {
    for args in [
        vec!["keygen", "stats", "--s", "20", "--trials", "150", "--seed", "9"],
        vec!["owf", "forward", "--bits", "24", "--bound", "13", "--seed", "9"],
        vec!["keygen", "shares", "--s", "16", "--k", "4", "--seed", "9"],
        vec!["repr", "sparsity", "--s", "2", "--bits", "48", "--samples", "25", "--seed", "9"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert!(first.status.success(), "failed: {args:?}");
        assert_eq!(first.stdout, second.stdout, "nondeterministic: {args:?}");
    }
}

#[test]
fn different_seeds_change_stochastic_output() {
    let a = run(&["owf", "forward", "--bits", "32", "--seed", "1"]);
    let b = run(&["owf", "forward", "--bits", "32", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn forward_output_verifies_through_the_binary() {
    let out = run(&["owf", "forward", "--bits", "20", "--bound", "7", "--seed", "11"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let n = v["challenge"]["n"].as_str().unwrap();
    let a = v["witness"]["a"].as_str().unwrap();
    let b = v["witness"]["b"].as_str().unwrap();
    let check = run(&["owf", "verify", "--n", n, "--a", a, "--b", b, "--bound", "7"]);
    assert!(check.status.success());
    assert_eq!(stdout_json(&check)["verified"], true);
}

#[test]
fn verify_and_solve_agree_on_small_anchors() {
    let ok = run(&["owf", "verify", "--n", "100", "--a", "96", "--b", "4", "--bound", "3"]);
    assert_eq!(stdout_json(&ok)["verified"], true);

    let bad = run(&["owf", "verify", "--n", "101", "--a", "96", "--b", "4", "--bound", "3"]);
    assert_eq!(stdout_json(&bad)["verified"], false);

    let hit = run(&["owf", "solve", "--n", "100", "--bound", "3", "--budget", "100"]);
    let v = stdout_json(&hit);
    assert_eq!(v["found"], true);
    assert_eq!(v["a"], "4");
    assert_eq!(v["b"], "96");

    let miss = run(&["owf", "solve", "--n", "23", "--bound", "3", "--budget", "100"]);
    let v = stdout_json(&miss);
    assert_eq!(v["found"], false);
    assert!(v["a"].is_null());
}

#[test]
fn reference_table_reproduction_is_exact() {
    let out = run(&["keygen", "table2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let columns = v["columns"].as_array().unwrap();
    assert_eq!(columns.len(), 4);
    for (col, (expected, improvement)) in columns
        .iter()
        .zip([(34.5_f64, 4.53_f64), (47.6, 5.13), (58.8, 5.86), (69.0, 6.90)])
    {
        let got_expected = col["expected_exponentiations"].as_f64().unwrap();
        let got_improvement = col["improvement"].as_f64().unwrap();
        assert!((got_expected - expected).abs() <= 0.1, "{got_expected} vs {expected}");
        assert!(
            (got_improvement - improvement).abs() / improvement <= 0.02,
            "{got_improvement} vs {improvement}"
        );
    }
}

#[test]
fn pseudoprime_scan_reports_both_screens() {
    let out = run(&["prime", "pseudoprime-scan", "--n", "1000"]);
    let v = stdout_json(&out);
    assert_eq!(v["smallest_fermat"], 341);
    assert_eq!(v["smallest_fibonacci"], 21);
    assert_eq!(v["fermat"].as_array().unwrap().len(), 3);
}

#[test]
fn enumeration_through_the_binary_matches_the_library() {
    let out = run(&["smooth", "enum", "--s", "2", "--limit", "32"]);
    let v = stdout_json(&out);
    let values: Vec<&str> = v["values"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(
        values,
        ["1", "2", "3", "4", "6", "8", "9", "12", "16", "18", "24", "27", "32"]
    );
    assert_eq!(v["count"], 13);
}
