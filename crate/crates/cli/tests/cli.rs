use std::process::{Command, Output};

use serde_json::Value;

fn tabinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tabinv"))
        .args(args)
        .env_remove("TABINV_FORMAT")
        .env_remove("TABINV_OUT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_code(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn phi1_rectangle_example() {
    let out = tabinv(&["map", "phi1", "1 2 6 / 4 5 7 / 3 8 9", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["output"], serde_json::json!([[1, 2, 5, 6], [3, 4, 7], [8, 9]]));
    assert_eq!(v["shape"], serde_json::json!([4, 3, 2]));
    assert_eq!(v["trace"]["distinguished"], serde_json::json!([4, 5, 6]));
    assert_eq!(v["move"]["source_row"], 3);
}

#[test]
fn phi2_rectangle_example() {
    let out = tabinv(&["map", "phi2", "1 2 4 6 / 3 7 9 / 5 8", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["output"], serde_json::json!([[3, 4, 6], [1, 2, 7], [5, 8, 9]]));
    assert_eq!(v["inversions"][0]["small"], 2);
    assert_eq!(v["inversions"][0]["large"], 4);
}

#[test]
fn phi2_with_explicit_shape() {
    let out = tabinv(&["map", "phi2", "1 2 3", "--shape", "2,1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("-> 2 3 / 1"));
    let bad = tabinv(&["map", "phi2", "1 2 3", "--shape", "2,2"]);
    assert_eq!(error_code(&bad), "shape-mismatch");
}

#[test]
fn phi1_rejects_standard_input() {
    let out = tabinv(&["map", "phi1", "1 2 / 3 4"]);
    assert!(!out.status.success());
    assert_eq!(error_code(&out), "wrong-inversion-count");
}

#[test]
fn distribution_text_and_json() {
    let out = tabinv(&["distribution", "2,2,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in ["m=0             5", "m=3            24", "TOTAL          90"] {
        assert!(text.contains(line), "{text}");
    }
    let v = json(&tabinv(&["distribution", "5", "--format", "json"]));
    assert_eq!(v["counts"], serde_json::json!([1]));
    assert_eq!(v["max_inversions"], 0);
}

#[test]
fn distribution_csv_and_workers_agree() {
    let one = stdout(&tabinv(&["distribution", "3,3", "--format", "csv"]));
    let many = stdout(&tabinv(&["distribution", "3,3", "--format", "csv", "--workers", "4"]));
    assert_eq!(one, "i,count\n0,5\n1,9\n2,5\n3,1\n");
    assert_eq!(one, many);
}

#[test]
fn budget_is_enforced() {
    let out = tabinv(&["appendix", "--budget", "10"]);
    assert!(!out.status.success());
    assert_eq!(error_code(&out), "budget-exceeded");
}

#[test]
fn appendix_small_table_matches() {
    let out = tabinv(&["appendix", "--table", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("        (2,2,2)  (3,2,1)\n"));
}

#[test]
fn verify_exit_codes() {
    let pass = tabinv(&["verify", "rect-i1", "--shape", "3,3,3"]);
    assert_eq!(pass.status.code(), Some(0), "{}", stdout(&pass));
    assert_eq!(tabinv(&["verify", "m2", "--m", "3", "--n", "5"]).status.code(), Some(0));
    assert_eq!(tabinv(&["verify", "tail", "--m", "3", "--n", "1"]).status.code(), Some(0));
    let outside = tabinv(&["verify", "lemma", "--m", "4", "--i", "1"]);
    assert_eq!(outside.status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let v = json(&tabinv(&["verify", "hook", "--shape", "4,3,2", "--format", "json"]));
    assert_eq!(v["claim"], "hook");
    assert_eq!(v["status"], "pass");
}

#[test]
fn errors_are_json_on_stderr() {
    let out = tabinv(&["count", "3,5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert_eq!(error_code(&out), "invalid-partition");
    assert_eq!(error_code(&tabinv(&["inversions", "1 x / 2"])), "invalid-tableau");
    assert_eq!(error_code(&tabinv(&["fiber", "2 1 / 3 4"])), "input-not-standard");
    assert_eq!(error_code(&tabinv(&["maxtab", "3,2", "--format", "csv"])), "unsupported-format");
    assert_eq!(error_code(&tabinv(&["verify", "rect-i1", "--shape", "3,2"])), "unsupported-shape");
    assert_eq!(error_code(&tabinv(&["formula", "m1", "1", "3"])), "domain-error");
}

#[test]
fn counting_commands() {
    assert_eq!(stdout(&tabinv(&["count", "4,3,2"])), "168\n");
    assert_eq!(stdout(&tabinv(&["total", "3,3,3"])), "1680\n");
    assert_eq!(stdout(&tabinv(&["max", "3,3,2,2"])), "13\n");
    let maxtab = stdout(&tabinv(&["maxtab", "3,3,2,2"]));
    assert!(maxtab.starts_with("2 7 10\n1 8 9\n3 6\n4 5\n"), "{maxtab}");
    assert_eq!(stdout(&tabinv(&["formula", "catalan", "5"])), "42\n");
    assert_eq!(stdout(&tabinv(&["formula", "m2", "3", "5"])), "104\n");
}

#[test]
fn fiber_and_standardize() {
    let out = stdout(&tabinv(&["fiber", "1 2 / 3 4"]));
    assert!(out.starts_with("2 tableaux\n"));
    assert!(out.contains("3 4 / 1 2  [1 inversions]"));
    assert_eq!(stdout(&tabinv(&["standardize", "3 4 / 1 2"])), "1 2\n3 4\n");
}

#[test]
fn betti_reverses_the_distribution() {
    let v = json(&tabinv(&["betti", "2,2", "--format", "json"]));
    assert_eq!(v["betti"], serde_json::json!([1, 3, 2]));
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli_out.txt");
    let out = tabinv(&["count", "3,3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "5\n");
}
