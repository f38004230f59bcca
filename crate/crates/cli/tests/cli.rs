//! End-to-end checks of the command surface: exit codes, report content,
//! file round-trips and DOT output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn latmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latmon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

#[test]
fn tower_on_three_chain_passes_with_two_chain_core() {
    let out = latmon(&["tower", "--monad", "downset", &fixture("chain3.lat")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: pass"));
    assert!(text.contains("{m, 1}"));
}

#[test]
fn tower_on_m3_is_a_correct_negative() {
    let out = latmon(&["tower", "--monad", "downset", &fixture("m3.lat")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("tower stops"));
    assert!(text.contains("not a frame"));
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = latmon(&["laws", "--monad", "downset", "missing.lat"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_and_kind_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lat");
    std::fs::write(&bad, "object x\nkind: poset\nelements: a\ncovers: a<a\n").unwrap();
    let out = latmon(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let mismatch = dir.path().join("m3dlat.lat");
    std::fs::write(
        &mismatch,
        "object m3\nkind: dlat\nelements: 0 a b c 1\ncovers: 0<a 0<b 0<c a<1 b<1 c<1\n",
    )
    .unwrap();
    let out = latmon(&["validate", mismatch.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_reports_structure() {
    let out = latmon(&["validate", "--json", &fixture("diamond.lat")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["size"], 4);
    assert_eq!(v["distributive"], true);
    assert_eq!(v["frame"], true);
}

#[test]
fn laws_pass_on_fixtures() {
    for monad in ["downset", "ideal"] {
        let out = latmon(&["laws", "--monad", monad, &fixture("diamond.lat")]);
        assert_eq!(out.status.code(), Some(0), "{monad}");
    }
}

#[test]
fn dot_chain_has_expected_edges() {
    let out = latmon(&["dot", &fixture("chain3.lat")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("->").count(), 2);
    let out = latmon(&["dot", "--relation", "totally-below", &fixture("chain3.lat")]);
    assert_eq!(stdout(&out).matches("->").count(), 5);
}

#[test]
fn corpus_emit_round_trips_label_preserving() {
    let dir = tempfile::tempdir().unwrap();
    let out = latmon(&["corpus", "--max-size", "4", "--emit", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut count = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("lat") {
            continue;
        }
        count += 1;
        // Every emitted file validates under its declared kind.
        let out = latmon(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
    }
    assert!(count >= 10);
}

#[test]
fn tower_json_has_stage_breakdown() {
    let out = latmon(&["tower", "--json", "--monad", "downset", &fixture("diamond.lat")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["stages"]["algebra"]["built"], true);
    assert_eq!(v["stages"]["coalgebra"]["built"], false);
    assert!(v["verdict"].as_str().unwrap().starts_with("negative"));
}

#[test]
fn projective_exit_zero_on_negative_and_positive() {
    let out = latmon(&[
        "projective",
        "--monad",
        "downset",
        "--family-max",
        "4",
        &fixture("db2.lat"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("projective (relative to family)"));
    let out = latmon(&[
        "projective",
        "--monad",
        "downset",
        "--family-max",
        "4",
        &fixture("singleton.lat"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("not projective"));
}

#[test]
fn budget_flag_reaches_the_enumeration() {
    let out = latmon(&["apply", "--monad", "downset", "--budget", "4", &fixture("m3.lat")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("budget"));
}
