use std::path::Path;
use std::process::{Command, Output};

fn gpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpl")).args(args).output().expect("gpl runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn list_shows_all_builtins() {
    let out = gpl(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["rational-z4z4", "rational-klein", "rational-mixed", "rational-z5z5", "elliptic-fermat"] {
        assert!(text.contains(name), "{name} missing from list");
    }
}

#[test]
fn text_report_has_degree_line() {
    let out = gpl(&["scenario", "rational-z4z4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "deg D = 5"), "{text}");
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = gpl(&["scenario", "elliptic-fermat", "--format", "json", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["degree"], 4);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = gpl(&["scenario", "rational-z4z4", "--out", "/nonexistent/dir/report.txt"]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let out = gpl(&["scenario", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn forbidden_characteristic_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "p3.json",
        r#"{"name": "z4-over-f3", "field": {"kind": "prime", "p": 3}, "curve": "rational",
            "generators_g1": [["1","-1","1","1"]], "generators_g2": [["0","1","-1/2","1"]],
            "p1": ["2","1"], "p2": ["-1","1"], "forbidden_characteristics": [2, 3]}"#,
    );
    assert_eq!(gpl(&["scenario", "--config", &cfg]).status.code(), Some(5));
}

#[test]
fn unknown_scenario_is_a_config_error() {
    assert_eq!(gpl(&["scenario", "no-such-scenario"]).status.code(), Some(5));
}

#[test]
fn failing_criterion_and_wrong_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let base = r#""field": {"kind": "rationals"}, "curve": "rational",
        "generators_g1": [["1","-1","1","1"]], "generators_g2": [["0","1","-1/2","1"]], "p1": ["2","1"]"#;
    let bad = write(dir.path(), "bad.json", &format!(r#"{{"name": "bad", {base}, "p2": ["0","1"]}}"#));
    assert_eq!(gpl(&["scenario", "--config", &bad]).status.code(), Some(2));
    let wrong = write(
        dir.path(),
        "wrong.json",
        &format!(r#"{{"name": "wrong", {base}, "p2": ["-1","1"], "expect": {{"degree": 7}}}}"#),
    );
    assert_eq!(gpl(&["scenario", "--config", &wrong]).status.code(), Some(4));
}

#[test]
fn search_exits_zero_with_and_without_hits() {
    let dir = tempfile::tempdir().unwrap();
    let hits = write(
        dir.path(),
        "f7.json",
        r#"{"name": "f7", "field": {"kind": "prime", "p": 7}, "curve": "rational",
            "generators_g1": [["1","-1","1","1"]], "generators_g2": [["0","1","-1/2","1"]]}"#,
    );
    let out = gpl(&["search", "--config", &hits, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hit_count"], 2);

    // Both groups equal: condition (b) fails, so nothing is found.
    let none = write(
        dir.path(),
        "same.json",
        r#"{"name": "same", "field": {"kind": "prime", "p": 7}, "curve": "rational",
            "generators_g1": [["1","-1","1","1"]], "generators_g2": [["1","-1","1","1"]]}"#,
    );
    let out = gpl(&["search", "--config", &none, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hit_count"], 0);
}

#[test]
fn search_over_q_needs_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "q.json",
        r#"{"name": "q", "field": {"kind": "rationals"}, "curve": "rational",
            "generators_g1": [["1","-1","1","1"]], "generators_g2": [["0","1","-1/2","1"]]}"#,
    );
    assert_eq!(gpl(&["search", "--config", &cfg]).status.code(), Some(5));
    let with = write(
        dir.path(),
        "q2.json",
        r#"{"name": "q2", "field": {"kind": "rationals"}, "curve": "rational",
            "generators_g1": [["1","-1","1","1"]], "generators_g2": [["0","1","-1/2","1"]],
            "candidates": [["2","1"], ["-1","1"], ["0","1"]]}"#,
    );
    let out = gpl(&["search", "--config", &with]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("hits: 1"));
}
