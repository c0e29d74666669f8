use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn write_form(name: &str, json: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("{name}.json"));
    std::fs::write(&path, json).unwrap();
    path
}

fn qbic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbic")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn fermat(n: usize) -> String {
    let p = write_form(&format!("fermat{n}"), &format!(r#"{{"q": {{"p": 2, "nu": 1}}, "preset": {{"fermat": {{"n": {n}}}}}}}"#));
    p.display().to_string()
}

#[test]
fn lines_on_the_fermat_cubic() {
    let f = fermat(3);
    let out = qbic(&["count", "fano", &f, "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["count"], "27");
    assert_eq!(v["enumerated"], "27");
    assert_eq!(v["match"], true);
}

#[test]
fn hermitian_and_filtration_counts() {
    let f4 = fermat(4);
    let v = json_of(&qbic(&["count", "hermitian", &f4, "--k", "0"]));
    assert_eq!(v["count"], "165");
    assert_eq!(v["match"], true);

    let f3 = fermat(3);
    let v = json_of(&qbic(&["count", "filtration", &f3, "--k", "1"]));
    assert_eq!(v["count"], "45");
    assert_eq!(v["match"], true);
}

#[test]
fn form_info_and_classification() {
    let f = fermat(3);
    let v = json_of(&qbic(&["form", "info", &f]));
    assert_eq!(v["corank"], 0);
    assert_eq!(v["smooth"], true);
    assert_eq!(v["hermitian_matrix"], true);

    let cone = write_form("cone", r#"{"q": {"p": 2, "nu": 1}, "preset": {"type": {"a": 1, "b": {"1": 1}}}}"#);
    let v = json_of(&qbic(&["form", "classify", cone.to_str().unwrap()]));
    assert_eq!(v["cone"], true);
    assert_eq!(v["type"], "(1; b_1=1)");
}

#[test]
fn malformed_files_exit_2() {
    let ragged = write_form("ragged", r#"{"q": {"p": 2, "nu": 1}, "gram": [[1, 0], [1]]}"#);
    let out = qbic(&["form", "info", ragged.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gram[1]"));

    let broken = write_form("broken", "{\"q\": ");
    assert_eq!(qbic(&["form", "info", broken.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qbic(&["form", "info", "/nonexistent/form.json"]).status.code(), Some(2));
    assert_eq!(qbic(&["count", "fano", "--r"]).status.code(), Some(2));
}

#[test]
fn formula_only_without_a_formula_exits_2() {
    let g = write_form("general", r#"{"q": {"p": 2, "nu": 1}, "gram": [[0, 1, 0], [0, 0, 1], [1, 0, 0]]}"#);
    let out = qbic(&["count", "fano", g.to_str().unwrap(), "--r", "0", "--formula-only"]);
    assert_eq!(out.status.code(), Some(2));
    // without the flag, the scan still answers
    let v = json_of(&qbic(&["count", "fano", g.to_str().unwrap(), "--r", "0"]));
    assert_eq!(v["formula"], Value::Null);
    assert!(v["enumerated"].is_string());
}

#[test]
fn budget_exhaustion_exits_3() {
    let g = write_form("general4", r#"{"q": {"p": 2, "nu": 1}, "gram": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]}"#);
    let out = qbic(&["--budget", "5", "count", "fano", g.to_str().unwrap(), "--r", "1"]);
    assert_eq!(out.status.code(), Some(3));

    // with a formula available the report is still printed
    let f = fermat(3);
    let out = qbic(&["--budget", "5", "count", "fano", &f, "--r", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["count"], "27");
}

#[test]
fn worker_count_does_not_change_output() {
    let f = fermat(4);
    let runs: Vec<Vec<u8>> = ["1", "2", "5"]
        .iter()
        .map(|w| qbic(&["--workers", w, "count", "fano", &f, "--r", "1"]).stdout)
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn betti_degree_and_zeta() {
    let v = json_of(&qbic(&["betti", "--q", "2", "--m", "1"]));
    assert_eq!(v["betti"], serde_json::json!(["1", "10", "45", "10", "1"]));
    assert_eq!(v["match"], true);

    let v = json_of(&qbic(&["degree", "--n", "4", "--r", "1", "--q", "2"]));
    assert_eq!(v["coefficient"], "45");
    assert_eq!(v["match"], true);

    let v = json_of(&qbic(&["zeta", "--q", "2", "--k", "1"]));
    assert_eq!(v["point_counts"], serde_json::json!(["0", "0", "72", "216"]));

    let out = qbic(&["--output", "table", "betti", "--q", "2", "--m", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("betti"));
}

#[test]
fn verify_grids() {
    let out = qbic(&["verify", "--grid", "empty"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out), serde_json::json!([]));

    let out = qbic(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
