use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pkernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn classify_trivial_z2_kernel_lists_two_classes() {
    let out = run(&["classify", "--input", &format!("kernel={}", data("kernel_z2_on_z2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["classes"], 2);
    assert_eq!(r["result"]["H2"]["H"], 2);
    let orders: Vec<u64> = r["result"]["extensions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![4, 4]);
}

#[test]
fn validate_rejects_non_associative_table() {
    let out = run(&["validate", "--input", &data("not_associative.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["error"]["error"], "NonAssociative");
    assert_eq!(r["error"]["detail"]["triple"], serde_json::json!([0, 0, 1]));
}

#[test]
fn obstruction_of_an_action_is_trivial() {
    for file in ["tpa_s3_zero_twisted.json", "tpa_z4_inverting_twisted.json"] {
        let out = run(&["obstruction", "--input", &format!("tpa={}", data(file))]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_eq!(report(&out)["result"]["class"], "trivial", "{file}");
    }
}

#[test]
fn reports_are_deterministic_and_echo_caps() {
    let args = [
        "obstruction",
        "--seed",
        "7",
        "--cap-cochains",
        "500000",
        "--input",
        &data("kernel_k3_partial.json"),
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["caps"]["cochain_nodes"], 500000);
    assert_eq!(r["seed"], 7);
    assert!(r["approached_cap"].is_boolean());
    assert!(r["usage"]["cochain_nodes"].as_u64().unwrap() > 0);
}

#[test]
fn cap_overflow_is_an_error_with_diagnostic() {
    let out = run(&[
        "cohomology",
        "--cap-cochains",
        "2",
        "--input",
        &format!("kernel={}", data("kernel_z2_on_z2.json")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["error"], "CapExceeded");
}

#[test]
fn invalid_action_reports_the_failing_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let z2 = data("z2.json");
    // a non-trivial twist at (0,1) breaks normalization
    let doc = serde_json::json!({
        "group": z2,
        "algebra": z2,
        "theta": {"0": {"0": 0, "1": 1}, "1": {"0": 0, "1": 1}},
        "twist": {"0,1": {"inner": 1}},
    });
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = run(&["validate", "--input", &format!("tpa={}", bad.display())]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["error"]["error"], "TpaViolation");
    assert_eq!(r["error"]["detail"]["axiom"], "TPA5");
}

#[test]
fn missing_input_and_unknown_role_exit_one() {
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    let out = run(&["analyze", "--input", &format!("bogus={}", data("z2.json"))]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn extend_and_text_format() {
    let out = run(&["extend", "--format", "text", "--input", &data("kernel_z2_inverting_z3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "result.extension.order = 6"));
}

#[test]
fn survey_tabulates_every_assignment() {
    let out = run(&[
        "survey",
        "--input",
        &format!("algebra={}", data("k3.json")),
        "--input",
        &format!("group={}", data("z2.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let kernels = r["result"]["kernels"].as_array().unwrap();
    assert_eq!(kernels.len(), 2);
    let tally = &r["result"]["tally"];
    let total: u64 = ["rejected", "extendable", "obstructed"]
        .iter()
        .map(|k| tally[*k].as_u64().unwrap())
        .sum();
    assert_eq!(total, 2);
}
