use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(format!("{name}.json"))
}

fn capinf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capinf")).args(args).output().expect("binary runs")
}

fn subcommand(name: &str) -> &'static str {
    match name.split('-').next().unwrap() {
        "classify" => "classify",
        "ainf" => "ainf",
        "select" => "select",
        _ => "oracle-check",
    }
}

fn run_json(name: &str, extra: &[&str]) -> (i32, Value) {
    let path = corpus(name);
    let mut args = vec![subcommand(name), "--scenario", path.to_str().unwrap(), "--format", "json"];
    args.extend_from_slice(extra);
    let out = capinf(&args);
    let code = out.status.code().unwrap();
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, value)
}

const EXPECTED: [(&str, i32); 18] = [
    ("classify-gamma", 0),
    ("classify-explicit", 3),
    ("ainf-cover", 0),
    ("ainf-finite-index", 2),
    ("select-tails", 0),
    ("select-from-witness", 0),
    ("select-capinf-gg", 0),
    ("select-sakai", 0),
    ("select-smz", 0),
    ("select-marczewski", 0),
    ("select-marczewski-repeats", 1),
    ("select-omochar-fwd", 0),
    ("select-omochar-bwd", 0),
    ("select-borel-gamma", 0),
    ("select-borel-omega", 0),
    ("select-hurewicz", 0),
    ("select-powers", 0),
    ("oracle-check", 0),
];

#[test]
fn corpus_exit_codes() {
    for (name, code) in EXPECTED {
        let (got, report) = run_json(name, &[]);
        assert_eq!(got, code, "{name}: {report}");
        if code != 2 {
            let outcome = report["outcome"].as_str().unwrap();
            let want = match code {
                0 => "pass",
                1 => "violation",
                _ => "unknown",
            };
            assert_eq!(outcome, want, "{name}");
        }
    }
}

#[test]
fn corpus_is_complete() {
    let dir = corpus("x").parent().unwrap().to_path_buf();
    let mut files: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    files.sort();
    let mut listed: Vec<String> = EXPECTED.iter().map(|(n, _)| n.to_string()).collect();
    listed.sort();
    assert_eq!(files, listed);
}

#[test]
fn reports_are_deterministic() {
    for name in ["classify-gamma", "select-capinf-gg", "oracle-check"] {
        let (_, a) = run_json(name, &["--seed", "3"]);
        let (_, b) = run_json(name, &["--seed", "3"]);
        assert_eq!(a["digest"], b["digest"], "{name}");
        assert_eq!(a["result"], b["result"], "{name}");
    }
}

#[test]
fn horizon_flag_overrides_the_scenario() {
    let (_, a) = run_json("classify-explicit", &["--horizon", "17"]);
    assert_eq!(a["horizon"], 17);
    let (_, b) = run_json("classify-explicit", &[]);
    assert_eq!(b["horizon"], 64);
    assert_ne!(a["digest"], b["digest"]);
}

#[test]
fn report_round_trip_and_tamper_detection() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("r.json");
    let scenario = corpus("select-tails");
    let out = capinf(&[
        "select",
        "--scenario",
        scenario.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        saved.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let shown = capinf(&["report", "--input", saved.to_str().unwrap()]);
    assert_eq!(shown.status.code(), Some(0));
    let text = String::from_utf8(shown.stdout).unwrap();
    assert!(text.contains("derived_gamma") && text.contains("outcome      pass"));

    let mut report: Value = serde_json::from_str(&std::fs::read_to_string(&saved).unwrap()).unwrap();
    report["verdicts"][0]["value"] = Value::from("false");
    let forged = dir.path().join("forged.json");
    std::fs::write(&forged, report.to_string()).unwrap();
    let out = capinf(&["report", "--input", forged.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("digest mismatch"));
}

#[test]
fn input_errors_exit_2() {
    let path = corpus("select-tails");
    let p = path.to_str().unwrap();
    assert_eq!(capinf(&["classify", "--scenario", p, "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(capinf(&["select", "--scenario", p, "--combinator", "nope"]).status.code(), Some(2));
    assert_eq!(capinf(&["classify", "--scenario", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(capinf(&["ainf", "--scenario", p]).status.code(), Some(2), "missing witness key");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"universe": ["(0)"], "colour": 1}"#).unwrap();
    let out = capinf(&["classify", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema"));
}

#[test]
fn text_format_lists_verdicts() {
    let path = corpus("classify-explicit");
    let out = capinf(&["classify", "--scenario", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("is_gamma") && text.contains("unknown"));
    assert!(text.contains("relative to  2 point(s)"));
}
