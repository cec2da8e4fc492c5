use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchfoam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn mv_full_suite_passes() {
    let o = run(&["laws", "--algebra", "mv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("algebra mv, theta mv\n"));
    assert!(out.ends_with("all laws hold\n"));
}

#[test]
fn lie_jacobi_on_a9() {
    let o = run(&[
        "laws",
        "--algebra",
        "aN:9",
        "--suite",
        "jacobi,antisym",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["theta"], "lie");
    let results = v["results"].as_array().unwrap();
    let jacobi = results.iter().find(|r| r["law"] == "jacobi").unwrap();
    assert_eq!(jacobi["passed"], true);
    assert_eq!(jacobi["cases"], 729);
    assert!(jacobi["counterexample"].is_null());
}

#[test]
fn group_bialgebra_report() {
    // the group theta is symmetric, so antisymmetry and jacobi fail
    let o = run(&["report", "--algebra", "group:2,2"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["algebra"], "group:2,2");
    assert_eq!(v["theta"], "group");
    let results = v["results"].as_array().unwrap();
    assert!(results
        .iter()
        .any(|r| r["law"] == "bialgebra" && r["passed"] == true));
}

#[test]
fn group_of_order_three_has_no_theta() {
    let o = run(&["laws", "--algebra", "group:3", "--theta", "group"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("order > 2"));
}

#[test]
fn bad_inputs_exit_two() {
    for args in [
        &["laws", "--algebra", "nope"][..],
        &["laws", "--algebra", "mv", "--suite", "frobnicate"],
        &["laws", "--algebra", "mv", "--suite", "bialgebra"],
        &["laws", "--algebra", "aN:5", "--theta", "mv"],
        &["eval", "--algebra", "mv", "--expr", "comul ; comul"],
        &["eval", "--algebra", "mv", "--expr", "unit ; ; comul"],
        &["eval", "--algebra", "mv", "--expr", "@/nonexistent/file"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
        assert!(stderr(&o).starts_with("error: "), "{:?}", args);
    }
}

#[test]
fn arity_error_reports_position() {
    let o = run(&["eval", "--algebra", "mv", "--expr", "comul ; comul"]);
    assert_eq!(
        stderr(&o).trim(),
        "error: arity error at 1:9: takes 1 input(s) but 2 are produced below (2 ≠ 1)"
    );
}

#[test]
fn eval_handle_and_closed_diagrams() {
    let o = run(&["eval", "--algebra", "mv", "--expr", "comul ; mul ; counit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k: [3, a, a^2 + 2*b]"));

    let o = run(&["eval", "--algebra", "mv", "--expr", "unit ; counit"]);
    assert_eq!(stdout(&o).trim(), "0");

    let theta =
        "((unit;label(1)) * (unit;label(X)) * (unit;label(X^2))) ; (id * bmul) ; mul ; counit";
    let o = run(&[
        "eval",
        "--algebra",
        "mv",
        "--expr",
        theta,
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["inputs"], 0);
    assert_eq!(v["outputs"], 0);
    assert_eq!(v["scalar"], "1");
    assert!(v.get("matrix").is_none());
}

#[test]
fn eval_reads_expression_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("handle.foam");
    fs::write(&path, "comul ;\n  mul ;\n  counit\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = run(&[
        "eval",
        "--algebra",
        "mv",
        "--expr",
        &arg,
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["expr"], "comul ; mul ; counit");
    assert_eq!(v["matrix"], serde_json::json!([["3", "a", "a^2 + 2*b"]]));
}

#[test]
fn config_file_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mv.json");
    fs::write(
        &path,
        r#"{"generators": ["a", "b", "c"], "modulus": ["-c", "-b", "-a", 1], "counit": [0, 0, -1],
            "theta": [{"indices": [0, 1, 2], "value": 1}, {"indices": [0, 2, 1], "value": -1}]}"#,
    )
    .unwrap();
    let o = run(&["laws", "--algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("theta custom"));
}

#[test]
fn non_antisymmetric_theta_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sym.json");
    fs::write(
        &path,
        r#"{"modulus": [0, 0, 1], "counit": [0, 1], "theta": [{"indices": [0, 0, 1], "value": 1}]}"#,
    )
    .unwrap();
    let o = run(&[
        "laws",
        "--algebra",
        path.to_str().unwrap(),
        "--suite",
        "antisym",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
    let v = json(&o);
    let r = &v["results"][0];
    assert_eq!(r["passed"], false);
    let c = &r["counterexample"];
    assert_ne!(c["lhs"], c["rhs"]);
}
