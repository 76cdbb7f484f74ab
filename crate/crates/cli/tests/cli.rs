//! End-to-end tests against the built binary: subcommand behavior, exit
//! codes, and the losslessness of structured output.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::TempDir;

const FIG1: &str = r#"{"n": 4, "edges": [
    {"from": 1, "to": 2, "w": "1"},
    {"from": 2, "to": 3, "w": "1"},
    {"from": 3, "to": 4, "w": "1"},
    {"from": 4, "to": 3, "w": "-2"},
    {"from": 4, "to": 1, "w": "-1"}
]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isored"))
}

fn write_file(dir: &TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn spectrum_table_reports_multiplicities() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let out = run(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "all-exact spectrum exits 0");
    let text = stdout(&out);
    assert!(text.contains("1i x2 (exact)"));
    assert!(text.contains("-1i x2 (exact)"));
}

#[test]
fn spectrum_with_numeric_roots_signals_exit_one() {
    // spectrum of M(i) for the size-3 reduction has two irrational roots
    let dir = TempDir::new().unwrap();
    let reduced = r#"{"n": 3, "edges": [
        {"from": 1, "to": 2, "w": "1"},
        {"from": 2, "to": 3, "w": "1/l"},
        {"from": 3, "to": 1, "w": "-1"},
        {"from": 3, "to": 3, "w": "-2/l"}
    ]}"#;
    let input = write_file(&dir, "r124.json", reduced);
    let out = run(&["spectrum", "--input", &input, "--at", "i"]);
    assert_eq!(out.status.code(), Some(1), "numeric results exit 1");
    assert!(stdout(&out).contains("numeric"));
}

#[test]
fn reduce_emits_reduced_document_and_cross_validates() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let out = run(&[
        "reduce", "--input", &input, "--keep", "1,4", "--method", "both", "--output", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cross_validated"], serde_json::json!(true));
    assert_eq!(v["matrix"][0][1], serde_json::json!("1/l^2"));
    assert_eq!(v["matrix"][1][1], serde_json::json!("-2/l"));
    assert_eq!(v["reduced"]["labels"], serde_json::json!([1, 4]));
}

#[test]
fn reduce_via_intermediate_set_matches_direct() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let direct = run(&["reduce", "--input", &input, "--keep", "1,4", "--output", "json"]);
    let via = run(&[
        "reduce", "--input", &input, "--keep", "1,4", "--via", "1,2,4", "--output", "json",
    ]);
    assert_eq!(stdout(&direct), stdout(&via));
}

#[test]
fn reduce_rejects_out_of_range_vertex() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let out = run(&["reduce", "--input", &input, "--keep", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex index 9"));
}

#[test]
fn structured_output_round_trips_through_the_parser() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let out = run(&["reduce", "--input", &input, "--keep", "2,4", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let doc = serde_json::to_string(&v["reduced"]).unwrap();
    let reparsed = write_file(&dir, "again.json", &doc);
    // feeding the emitted document back reproduces identical output
    let out2 = run(&["reduce", "--input", &reparsed, "--keep", "1,2", "--output", "json"]);
    assert_eq!(out2.status.code(), Some(0));
}

#[test]
fn check_preserve_all_sets_reproduces_the_sweep() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let out = run(&[
        "check-preserve", "--input", &input, "--all-sets", "--size", "2", "--at", "i",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("[1, 4]: preserved, c = 2"));
    assert!(text.contains("[2, 4]: preserved, c = 1"));
    assert!(text.contains("[1, 3]: preserved, c = 1"));
    assert!(text.contains("[2, 3]: preserved, c = 0"));
    assert!(text.contains("[3, 4]: not preserved"));
}

#[test]
fn check_preserve_single_set_exit_codes() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let ok = run(&["check-preserve", "--input", &input, "--keep", "1,4", "--at", "i"]);
    assert_eq!(ok.status.code(), Some(0));
    let not = run(&["check-preserve", "--input", &input, "--keep", "3,4", "--at", "i"]);
    assert_eq!(not.status.code(), Some(3), "not preserved is a finding");
}

#[test]
fn reconstruct_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let out = run(&["reduce", "--input", &input, "--keep", "1,4", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reduced = write_file(&dir, "r14.json", &serde_json::to_string(&v["reduced"]).unwrap());

    let rec = run(&[
        "reconstruct",
        "--input", &reduced,
        "--original-topology", &input,
        "--at", "i",
        "--vector", "i,1",
    ]);
    assert_eq!(rec.status.code(), Some(0));
    assert_eq!(stdout(&rec).trim(), "(1i, -1, -1i, 1)");

    let rec2 = run(&[
        "reconstruct",
        "--input", &reduced,
        "--original-topology", &input,
        "--at", "i",
        "--vector", "-3,0",
        "--prev", "i,-1,-i,1",
    ]);
    assert_eq!(rec2.status.code(), Some(0));
    assert_eq!(stdout(&rec2).trim(), "(-3, -2i, 1, 0)");
}

#[test]
fn validate_set_reports_both_tiers() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    let good = run(&["validate-set", "--input", &input, "--keep", "1,4", "--at", "i"]);
    assert_eq!(good.status.code(), Some(0));
    assert!(stdout(&good).contains("structural"));

    let bad = run(&["validate-set", "--input", &input, "--keep", "1,2"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stdout(&bad).contains("not structural"));
}

#[test]
fn equiv_finds_definitional_witness() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "fig1.json", FIG1);
    // reduce to {1,4} and compare against the original under keep:1,4
    let out = run(&["reduce", "--input", &input, "--keep", "1,4", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mut doc = v["reduced"].clone();
    doc.as_object_mut().unwrap().remove("labels");
    let reduced = write_file(&dir, "r14.json", &serde_json::to_string(&doc).unwrap());

    let eq = run(&[
        "equiv", "--a", &input, "--b", &reduced, "--rule", "keep:1,4", "--max-steps", "2",
        "--output", "json",
    ]);
    assert_eq!(eq.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&eq)).unwrap();
    assert_eq!(v["witness"]["m"], serde_json::json!(1));
    assert_eq!(v["witness"]["k"], serde_json::json!(0));
}

#[test]
fn equiv_matrix_on_similar_but_inequivalent_pair() {
    let dir = TempDir::new().unwrap();
    let a = write_file(
        &dir,
        "a.json",
        r#"{"rows": [
            ["148/17", "206/17", "256/17"],
            ["-13/17", "-5/17", "-28/17"],
            ["-33/17", "-48/17", "-41/17"]
        ]}"#,
    );
    let b = write_file(
        &dir,
        "b.json",
        r#"{"rows": [
            ["1/27", "-39/27", "-10/27"],
            ["52/27", "105/27", "20/27"],
            ["43/27", "24/27", "56/27"]
        ]}"#,
    );
    let out = run(&["equiv-matrix", "--a", &a, "--b", &b, "--dim", "2", "--output", "json"]);
    assert_eq!(out.status.code(), Some(3), "inequivalence is a finding");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["equivalent"], serde_json::json!(false));
    assert_eq!(v["reductions_a"].as_array().unwrap().len(), 3);
    assert_eq!(v["reductions_b"].as_array().unwrap().len(), 3);

    // a matrix is equivalent to itself
    let same = run(&["equiv-matrix", "--a", &a, "--b", &a, "--dim", "2"]);
    assert_eq!(same.status.code(), Some(0));
}

#[test]
fn reads_from_stdin() {
    let mut child = bin()
        .args(["spectrum", "--input", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(FIG1.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("1i x2"));
}

#[test]
fn malformed_document_exits_two() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "bad.json", r#"{"n": 2, "edges": [{"from": 1}]}"#);
    let out = run(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));
}
