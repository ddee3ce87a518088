//! End-to-end tests of the binary: exit codes, output stability and the
//! polytope file round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jetspan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("jetspan-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_file(name: &str) -> String {
    corpus_dir().join(name).to_string_lossy().into_owned()
}

#[test]
fn gen_analyze_round_trip() {
    let out = run(&["gen", "simplex", "-n", "2", "-k", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "dim 2\nvertices 3\n0 0\n0 3\n3 0\n");

    let path = write_temp("simplex.poly", &stdout(&out));
    let analysis = run(&["analyze", path.to_str().unwrap()]);
    assert!(analysis.status.success());
    let text = stdout(&analysis);
    assert!(text.contains("lattice points  10"), "{text}");
    assert!(text.contains("jet constant    3"), "{text}");
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", &corpus_file("simplex_d3_k3.poly"), "-k", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains("all conditions decided"), "{text}");
    assert!(!text.contains("false"), "all five conditions hold: {text}");

    let hexagon = run(&["verify", &corpus_file("delpezzo6.poly"), "-k", "2"]);
    assert_eq!(hexagon.status.code(), Some(0), "all-false but consistent");

    let missing = run(&["verify", "/nonexistent.poly", "-k", "1"]);
    assert_eq!(missing.status.code(), Some(1));

    let usage = run(&["verify"]);
    assert_eq!(usage.status.code(), Some(1), "usage errors exit 1");
}

#[test]
fn parse_errors_exit_one_with_line_numbers() {
    let path = write_temp("broken.poly", "dim 2\nvertices 2\n0 zero\n1 1\n");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    let path = write_temp("nonextreme.poly", "dim 2\nvertices 4\n0 0\n2 0\n0 2\n1 1\n");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not an extreme point"), "{err}");
}

#[test]
fn records_are_byte_identical_across_runs() {
    for args in [
        vec!["analyze", &corpus_file("delpezzo6.poly"), "--format", "records"],
        vec!["seshadri", &corpus_file("box_2x3.poly"), "--format", "records"],
        vec![
            "verify",
            &corpus_file("cube_d3.poly"),
            "-k",
            "1",
            "--format",
            "records",
        ],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
        let line = stdout(&a);
        assert!(line.starts_with("{\"") && line.trim_end().ends_with('}'));
        assert!(line.contains("\"format_version\":1"));
        let parsed: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        assert!(parsed.is_object());
    }
}

#[test]
fn analyze_reports_hexagon_values() {
    let out = run(&[
        "analyze",
        &corpus_file("delpezzo6.poly"),
        "--max-k",
        "4",
        "--format",
        "records",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["jet"]["per_fixpoint"], serde_json::json!([1, 1, 1, 1, 1, 1]));
    assert_eq!(v["jet"]["generic"]["exact"], serde_json::json!(2));
    assert_eq!(v["epsilon"]["exact"], serde_json::json!("2"));
    assert_eq!(v["epsilon"]["width_direction"], serde_json::json!("(0, 1)"));
}

#[test]
fn cayley_subcommand_reports_decompositions() {
    let found = run(&["cayley", &corpus_file("cube_d3.poly"), "-k", "1"]);
    assert!(found.status.success());
    assert!(stdout(&found).contains("length 2"), "{}", stdout(&found));

    let three = run(&["cayley", &corpus_file("prism.poly"), "-k", "1", "-r", "2"]);
    assert!(three.status.success());
    assert!(stdout(&three).contains("length 3"), "{}", stdout(&three));

    let none = run(&["cayley", &corpus_file("delpezzo6.poly"), "-k", "2"]);
    assert!(none.status.success());
    assert!(stdout(&none).contains("no Cayley structure"), "{}", stdout(&none));
}

#[test]
fn batch_runs_the_corpus_without_violations() {
    let dir = corpus_dir();
    assert!(Path::new(&dir).is_dir());
    let out = run(&["batch", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("0 violations"), "{text}");
    assert!(text.contains("0 errors"), "{text}");
    // Non-smooth members are reported as skipped rather than failing.
    assert!(text.contains("cross_d2: skipped"), "{text}");
}

#[test]
fn gen_cayley_from_slice_files() {
    let square = write_temp("square.poly", "dim 2\nvertices 4\n0 0\n0 2\n2 0\n2 2\n");
    let out = run(&[
        "gen",
        "cayley",
        "-s",
        "2",
        "--slice",
        square.to_str().unwrap(),
        "--slice",
        square.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("dim 3\nvertices 8\n"), "{text}");

    let path = write_temp("cay.poly", &text);
    let verify = run(&["verify", path.to_str().unwrap(), "-k", "2"]);
    assert_eq!(verify.status.code(), Some(0));
    assert!(stdout(&verify).contains("all conditions decided"));
}
