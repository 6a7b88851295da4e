use std::process::Command;

use qreflect::{emit_report, parse_config, run_suite, Format};
use serde_json::Value;

fn qreflect(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qreflect")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_of(args: &str) -> Value {
    let cfg = parse_config(args.split_whitespace()).unwrap();
    let reports: Vec<_> = run_suite(&cfg).reports().cloned().collect();
    let bytes = emit_report(&cfg, &reports, Format::Json, None).unwrap();
    serde_json::from_slice(&bytes).unwrap()
}

#[test]
fn json_report_has_fixed_top_level_layout() {
    let doc = json_of("--suite reflection-matrix --N 2 --a 1 --repetitions 1 --seed 3");
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, vec!["version", "config", "summary", "checks"]);
    let entry = &doc["checks"][0];
    let fields: Vec<&str> = entry.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        fields,
        vec!["check", "tag", "params", "status", "residual", "elapsed_ms", "witness", "note"]
    );
    assert_eq!(entry["status"], "pass");
    assert_eq!(entry["residual"], "0");
    assert!(entry["elapsed_ms"].is_number());
    assert_eq!(doc["config"]["seed"], "3");
    assert_eq!(doc["summary"]["fail"], 0);
}

#[test]
fn empty_selection_gives_an_empty_report() {
    let doc = json_of("--suite reflection-matrix --N 2 --a 7");
    assert_eq!(doc["checks"].as_array().unwrap().len(), 0);
    assert_eq!(doc["summary"]["pass"], 0);
    assert_eq!(doc["summary"]["fail"], 0);
}

#[test]
fn failures_carry_a_witness() {
    let doc = json_of("--suite reflection-L --N 2 --m 1 --a 1 --repetitions 1 --negative-control");
    let failed: Vec<&Value> = doc["checks"].as_array().unwrap().iter().filter(|e| e["status"] == "fail").collect();
    assert!(!failed.is_empty());
    for e in failed {
        assert!(e["witness"].as_str().is_some_and(|w| !w.is_empty()), "{e}");
        assert_ne!(e["residual"], "0");
    }
}

#[test]
fn verify_exit_codes() {
    let (ok, stdout, _) = qreflect(&["verify", "--suite", "gl-relations", "--N", "2", "--m", "1"]);
    assert_eq!(ok, 0);
    assert!(stdout.lines().last().unwrap().starts_with("summary: pass="));
    assert!(stdout.contains("PASS"));
    let (fail, _, _) = qreflect(&["verify", "--suite", "reflection-L", "--N", "2", "--m", "1", "--negative-control"]);
    assert_eq!(fail, 1);
    let (bad, _, stderr) = qreflect(&["verify", "--q", "1.5", "--mode", "exact"]);
    assert_eq!(bad, 2);
    assert!(stderr.contains("q"), "{stderr}");
}

#[test]
fn output_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let path_text = path.display().to_string();
    let (code, stdout, stderr) = qreflect(&[
        "verify", "--suite", "constraints", "--N", "2", "--m", "1", "--format", "json", "--output", &path_text,
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(stderr.contains("fail=0"), "{stderr}");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc["summary"]["pass"].as_u64().unwrap() > 0);
}

#[test]
fn list_suites_names_every_check() {
    let (code, stdout, _) = qreflect(&["list-suites"]);
    assert_eq!(code, 0);
    for check in qreflect::catalog::CATALOG {
        assert!(stdout.contains(check.name), "{} missing", check.name);
    }
    assert!(stdout.contains("[float only]"));
}

#[test]
fn dump_prints_exact_matrices() {
    let (code, stdout, _) = qreflect(&["dump", "gen", "--N", "2", "--fundamental", "--i", "1", "--j", "2"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows, vec!["0 1", "0 0"]);

    let (code, stdout, _) = qreflect(&["dump", "k", "--N", "2", "--a", "1", "--x", "1/2", "--eps-plus", "0"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("# K N=2"), "{stdout}");
    assert_eq!(stdout.lines().count(), 3);

    let (code, stdout, _) = qreflect(&["dump", "l", "--N", "2", "--m", "1", "--q", "-2/3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches("## block").count(), 4);
}

#[test]
fn dump_rejects_decimal_input_in_exact_mode() {
    let (code, _, stderr) = qreflect(&["dump", "r", "--q", "0.5"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"), "{stderr}");
}
