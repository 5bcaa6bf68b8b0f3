use std::io::Write;
use std::process::{Command, Output, Stdio};

use llab_core::limitseries::{generate_exact, non_exact_fixture};
use serde_json::{json, Value};

fn llab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_llab")).args(args).output().expect("binary runs")
}

fn llab_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_llab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn hilbert_union_of_two_points_on_the_line() {
    let out = llab(&["hilbert-union", "--r", "1", "--mults", "0,0"]);
    assert_eq!(status(&out), 0);
    let rep = report(&out);
    assert_eq!(rep["terms"], json!([[0, 0, "1"], [0, 1, "1"], [1, 0, "1"]]));
    assert_eq!(rep["format"], "llab/1");
    assert_eq!(rep["command"], "hilbert-union");
    assert_eq!(rep["input"], json!({"r": 1, "mults": [0, 0]}));
    assert_eq!(rep["full"], true);
}

#[test]
fn fiber_with_two_components() {
    let out = llab(&["fiber", "--d", "3", "--aY", "0,1,3", "--aZ", "0,1,2"]);
    assert_eq!(status(&out), 0);
    let rep = report(&out);
    let mut dims: Vec<u64> = rep["components"].as_array().unwrap().iter().map(|c| c["dim"].as_u64().unwrap()).collect();
    dims.sort_unstable();
    assert_eq!(dims, [1, 2]);
}

#[test]
fn eh_on_the_elliptic_specimen() {
    let out = llab(&["eh", "--d", "2", "--aY", "0,2", "--aZ", "0,1", "--r", "1"]);
    assert_eq!(status(&out), 0);
    assert_eq!(report(&out)["exists"], false);
}

#[test]
fn document_and_flags_combine() {
    let out = llab(&["eh", "--input", r#"{"d": 2, "aY": [0, 2], "aZ": [0, 1], "r": 3}"#, "--r", "1"]);
    assert_eq!(status(&out), 0);
    assert_eq!(report(&out)["input"]["r"], 1);

    let out = llab_stdin(&["hilbert-minor", "--input", "-"], r#"{"format": "llab/1", "p": 1, "q": 1, "m": 0}"#);
    assert_eq!(status(&out), 0);
    assert_eq!(report(&out)["degree"], 2);
}

#[test]
fn full_product_uses_the_product_formula() {
    let out = llab(&["hilbert-minor", "--p", "2", "--q", "2", "--m", "-1"]);
    assert_eq!(status(&out), 0);
    let rep = report(&out);
    assert_eq!(rep["ambientDims"], json!([1, 1]));
    assert_eq!(rep["terms"], json!([[0, 0, "1"], [0, 1, "1"], [1, 0, "1"], [1, 1, "1"]]));
}

#[test]
fn schema_errors_name_the_field() {
    let out = llab(&["eh", "--input", r#"{"d": 2, "aY": [0, "x"], "aZ": [0, 1], "r": 1}"#]);
    assert_eq!(status(&out), 2);
    assert!(stderr(&out).contains("aY[1]"), "{}", stderr(&out));

    let out = llab(&["fiber", "--input", r#"{"d": 2, "aY": [0, 2], "aZ": [0, 1], "extra": 0}"#]);
    assert_eq!(status(&out), 2);
    assert!(stderr(&out).contains("extra"));

    let out = llab(&["fiber", "--d", "2", "--aY", "2,0", "--aZ", "0,1"]);
    assert_eq!(status(&out), 2);
    assert!(stderr(&out).contains("aY"));

    let out = llab(&["hilbert-union", "--input", r#"{"format": "llab/0", "r": 1, "mults": [0]}"#]);
    assert_eq!(status(&out), 2);

    let out = llab(&["hilbert-union", "--input", "{not json"]);
    assert_eq!(status(&out), 2);
    assert!(stderr(&out).contains("line 1"));

    let out = llab(&["hilbert-union", "--r", "1", "--mults", "1,0"]);
    assert_eq!(status(&out), 2);
}

#[test]
fn certify_passes_and_reports() {
    let out = llab(&["certify", "--p", "1", "--q", "2", "--m", "1", "--grid", "5", "--oracle", "linear-algebra"]);
    assert_eq!(status(&out), 0);
    let rep = report(&out);
    assert_eq!(rep["verdict"], "PASS");
    assert_eq!(rep["mismatches"], json!([]));

    let out = llab(&["certify", "--r", "3", "--mults", "1,0", "--grid", "4"]);
    assert_eq!(status(&out), 0);
    assert_eq!(report(&out)["input"]["oracle"], "union");
}

#[test]
fn certify_below_the_degree_is_rejected() {
    let out = llab(&["certify", "--p", "3", "--q", "3", "--m", "3", "--grid", "5"]);
    assert_eq!(status(&out), 2);
}

#[test]
fn size_guard_gives_status_three() {
    let out = llab(&["certify", "--p", "3", "--q", "3", "--m", "3", "--grid", "14", "--oracle", "linear-algebra"]);
    assert_eq!(status(&out), 3, "{}", stderr(&out));
    let out = llab(&["certify", "--r", "5", "--mults", "0,0,0,0,0,0", "--grid", "20"]);
    assert_eq!(status(&out), 3, "{}", stderr(&out));
}

#[test]
fn scan_is_seeded_and_deterministic() {
    let args = ["no-grds-scan", "--seed", "7", "--trials", "50", "--d-max", "6", "--r-max", "3"];
    let (a, b) = (llab(&args), llab(&args));
    assert_eq!(status(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let rep = report(&a);
    assert_eq!(rep["verdict"], "PASS");
    assert_eq!(rep["seed"], 7);
    assert_eq!(rep["referenceIsConverseFailure"], true);

    let out = llab(&["no-grds-scan", "--seed", "1", "--trials", "1", "--d-max", "0", "--r-max", "0"]);
    assert_eq!(status(&out), 0);
    assert_eq!(report(&out)["violations"], json!([]));
}

#[test]
fn output_file_matches_standard_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["degenerate", "--r", "2", "--mults", "1,0", "--z", "1/3"];
    let to_file = llab(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert_eq!(status(&to_file), 0);
    assert!(to_file.stdout.is_empty());
    let to_stdout = llab(&args);
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
    let rep = report(&to_stdout);
    assert_eq!(rep["epsilons"], json!([1, 1, 0]));
    assert_eq!(rep["specialFiberContainsUnion"], true);
    assert_eq!(rep["specialized"].as_array().unwrap().len(), 3);
}

#[test]
fn degenerate_requires_a_full_union() {
    let out = llab(&["degenerate", "--r", "2", "--mults", "0"]);
    assert_eq!(status(&out), 2);
}

#[test]
fn sample_checks_random_and_given_points() {
    let out = llab(&["sample", "--r", "2", "--mults", "0,1", "--seed", "3", "--count", "25"]);
    assert_eq!(status(&out), 0);
    let rep = report(&out);
    assert_eq!((rep["checked"].clone(), rep["verdict"].clone()), (json!(25), json!("PASS")));

    // x_0 y_1 does not vanish here, so the point is not on the union.
    let doc = r#"{"r": 1, "mults": [0, 0], "points": [{"a": ["1", "0"], "b": ["0", "1"], "component": 0}]}"#;
    let out = llab(&["sample", "--input", doc]);
    assert_eq!(status(&out), 1);
    assert_eq!(report(&out)["verdict"], "FAIL");
}

fn series_file(dir: &tempfile::TempDir, name: &str, json: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn series_verbs_on_a_generated_series() {
    let dir = tempfile::tempdir().unwrap();
    let series = generate_exact(11, 2, 4, &[0, 2, 2]).unwrap();
    let path = series_file(&dir, "series.json", &series.to_json());

    let out = llab(&["series-validate", "--input", &path]);
    assert_eq!(status(&out), 0);
    let rep = report(&out);
    assert_eq!((rep["verdict"].clone(), rep["exact"].clone()), (json!("PASS"), json!(true)));
    assert_eq!(rep["input"]["format"], "llab/1");

    let out = llab(&["series-diagonalize", "--input", &path]);
    assert_eq!(status(&out), 0);
    let rep = report(&out);
    assert_eq!(rep["jump_indices"], json!([0, 2, 2]));
    assert_eq!(rep["mults"], json!([0, 1]));

    let out = llab(&["series-pg", "--input", &path]);
    assert_eq!(status(&out), 0);
    let rep = report(&out);
    assert_eq!(rep["spec"], json!({"r": 2, "mults": [0, 1]}));
    assert_eq!(rep["full"], true);
    // binom(s + t + 2, 2)
    assert_eq!(
        rep["terms"],
        json!([[0, 0, "1"], [0, 1, "3/2"], [0, 2, "1/2"], [1, 0, "3/2"], [1, 1, "1"], [2, 0, "1/2"]])
    );
}

#[test]
fn series_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = series_file(&dir, "loose.json", &non_exact_fixture().to_json());
    let out = llab(&["series-validate", "--input", &path]);
    assert_eq!(status(&out), 0);
    assert_eq!(report(&out)["exact"], false);
    let out = llab(&["series-diagonalize", "--input", &path]);
    assert_eq!(status(&out), 2);

    let mut doc: Value = serde_json::from_str(&generate_exact(5, 1, 2, &[0, 2]).unwrap().to_json()).unwrap();
    doc["up"][0][0][0] = json!("1/0");
    let path = series_file(&dir, "broken.json", &doc.to_string());
    let out = llab(&["series-validate", "--input", &path]);
    assert_eq!(status(&out), 2);
    assert!(stderr(&out).contains("up[0]"), "{}", stderr(&out));

    let out = llab(&["series-pg", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(status(&out), 2);
}
