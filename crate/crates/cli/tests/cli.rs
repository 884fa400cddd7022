use std::path::Path;

use serde_json::{json, Value};
use trider_cli::run;
use trider_core::{fixtures, format};

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["trider"];
    argv.extend_from_slice(args);
    argv.extend(["--format", "json"]);
    let out = run(argv);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn missing_file_names_the_path() {
    let (code, doc) = json_run(&["validate", "--algebra", "/nonexistent/alg.json"]);
    assert_eq!(code, 3);
    assert_eq!(doc["status"], "error");
    assert!(doc["diagnostics"].to_string().contains("/nonexistent/alg.json"));
}

#[test]
fn malformed_documents_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("garbage.json", "{not json"),
        ("noformat.json", r#"{"dim": 2, "brackets": []}"#),
        ("badscalar.json", r#"{"format": 1, "dim": 3, "brackets": [{"triple": [1, 2, 3], "value": {"1": "1/0"}}]}"#),
        ("range.json", r#"{"format": 1, "dim": 3, "brackets": [{"triple": [1, 2, 4], "value": {"1": "1"}}]}"#),
    ];
    for (name, body) in cases {
        let path = write(dir.path(), name, body);
        let (code, doc) = json_run(&["validate", "--algebra", &path]);
        assert_eq!(code, 3, "{name}: {doc}");
        assert!(doc["diagnostics"].to_string().contains(name), "{name}: {doc}");
    }
}

#[test]
fn usage_errors_exit_with_three() {
    assert_eq!(run(["trider", "frobnicate"]).code, 3);
    let out = run(["trider", "cohomology"]);
    assert_eq!(out.code, 3);
    assert!(out.stdout.contains("status"));
    assert_eq!(run(["trider", "--help"]).code, 0);
}

#[test]
fn violated_algebra_reports_first_tuple() {
    let dir = tempfile::tempdir().unwrap();
    let bad = json!({"format": 1, "dim": 4, "brackets": [
        {"triple": [1, 2, 3], "value": {"1": "1"}},
        {"triple": [1, 2, 4], "value": {"2": "1"}}
    ]});
    let path = write(dir.path(), "bad.json", &bad.to_string());
    let (code, doc) = json_run(&["validate", "--algebra", &path]);
    assert_eq!(code, 1);
    assert_eq!(doc["status"], "violated");
    assert!(doc["payload"].to_string().contains("[1,2,1,3,4]"), "{doc}");
}

#[test]
fn text_output_is_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let body = format::to_string(&format::document(format::pair_to_json(&fixtures::nilpotent4_pair())));
    let pair = write(dir.path(), "pair.json", &body);
    let out = run(["trider", "cohomology", "--pair", &pair, "--dermod", "/dev/null", "--degree", "2"]);
    assert_eq!(out.code, 3);
    let adj = write(dir.path(), "adj.json", r#"{"format": 1, "adjoint": true}"#);
    let out = run(["trider", "cohomology", "--pair", &pair, "--dermod", &adj, "--degree", "2"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines[0].starts_with("command") && lines[0].ends_with("cohomology"));
    assert!(lines.iter().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["betti", "17"]), "{}", out.stdout);
}

#[test]
fn der_space_of_the_abelian_plane_is_everything() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "a.json", r#"{"format": 1, "dim": 2, "brackets": []}"#);
    let (code, doc) = json_run(&["der-space", "--algebra", &alg]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["dim"], 4);
}
