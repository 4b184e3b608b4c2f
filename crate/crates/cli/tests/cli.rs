use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinor-torsion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = bin(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn table1_matches_golden() {
    let o = bin(&["table1"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/table1.txt"),
    )
    .unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn table1_rows() {
    let rows = json(&["table1"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let pts: Vec<&str> = row["fixed_points"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap())
            .collect();
        assert_eq!(pts.len(), 16);
        assert!(pts.contains(&"v0000") && pts.contains(&"v3333"));
    }
    let e3 = rows.iter().find(|r| r["class"] == "e3").unwrap();
    let pts = e3["fixed_points"].as_array().unwrap();
    assert!(pts.contains(&Value::from("v0011")) && pts.contains(&Value::from("v2233")));
}

#[test]
fn classify_canonical_labels() {
    let v = json(&["classify", "--k", "2"]);
    let labels: Vec<&str> = v["registry"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["canonical"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["e0", "e1", "e2", "e3", "e4", "e14", "e24", "e34"]);
    assert_eq!(
        json(&["classify", "--k", "1"])["registry"]["classes"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
    assert_eq!(
        json(&["classify", "--k", "3"])["registry"]["classes"]
            .as_array()
            .unwrap()
            .len(),
        16
    );
}

#[test]
fn gens_listing() {
    let v = json(&["gens", "--k", "1"]);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    assert!(gens.iter().all(|g| g["type"] == "imaginary"));
    assert_eq!(
        json(&["gens", "--k", "2"])["generators"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
}

#[test]
fn level_zero_is_a_usage_error() {
    assert_eq!(bin(&["gens", "--k", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["classify", "--k", "7"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn dynamics_report_fields() {
    let v = json(&["dynamics", "--k", "2", "--sigma", "(17)(28)", "--n", "2"]);
    let r = &v[0];
    for key in [
        "sigma_cycles",
        "n",
        "k",
        "p",
        "q",
        "fp_count",
        "tc_count",
        "product",
        "partition_ok",
        "fp_equals_tc",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(
        (
            r["fp_count"].as_u64(),
            r["tc_count"].as_u64(),
            r["product"].as_u64()
        ),
        (Some(64), Some(4), Some(256))
    );
    let all = json(&["dynamics", "--k", "2"]);
    assert_eq!(all.as_array().unwrap().len(), 7);
    assert!(all
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["fp_equals_tc"] == true));
}

#[test]
fn bad_sigma_is_a_usage_error() {
    assert_eq!(
        bin(&["dynamics", "--k", "1", "--sigma", "(19)"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn diagram_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.svg");
    let o = bin(&[
        "diagram",
        "--k",
        "3",
        "--class",
        "A4∘(1)∘A1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for arrow in ["1 ──> 6", "2 ──> 5", "3 ──> 8", "4 ──> 7"] {
        assert!(text.contains(arrow), "{text}");
    }
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<line").count(), 8);
}

#[test]
fn diagram_by_member_label() {
    let v = json(&["diagram", "--k", "3", "--class", "e1"]);
    assert_eq!(v["type"], "imaginary");
    assert_eq!(v["arrows"].as_array().unwrap().len(), 16);
    let id = json(&["diagram", "--k", "2", "--class", "e0"]);
    assert!(id["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a[0] == a[1]));
    assert_eq!(
        bin(&["diagram", "--k", "2", "--class", "A8"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_all_defaults_pass() {
    let start = Instant::now();
    let o = bin(&["verify-all"]);
    assert!(start.elapsed() < Duration::from_secs(120));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS:"));
}

#[test]
fn corrupted_generator_fails_with_manifest() {
    let o = bin(&[
        "verify-all",
        "--k-max",
        "2",
        "--fuzz-count",
        "3",
        "--corrupt-generator",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let manifest: Value = serde_json::from_slice(&o.stderr).expect("manifest");
    assert_eq!(manifest["passed"], false);
    let failures = manifest["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f["check"] == "squares equal -I"));
}

#[test]
fn json_outputs_round_trip() {
    for args in [
        &["perms", "--k", "3"][..],
        &["classify", "--k", "2"],
        &["verify-all", "--k-max", "1", "--fuzz-count", "2"],
    ] {
        let v = json(args);
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = bin(&[
        "table1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}
