use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use spin7::polytope::dump::read_points;

fn spin7(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spin7"));
    cmd.env_remove("SPIN7_CACHE").args(args);
    if let Some(dir) = cache {
        cmd.env("SPIN7_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = spin7(args, None);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn contains_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => !(n.is_i64() || n.is_u64()),
        Value::Array(a) => a.iter().any(contains_float),
        Value::Object(o) => o.values().any(contains_float),
        _ => false,
    }
}

#[test]
fn analyze_report_fields() {
    let v: Value = serde_json::from_str(&ok(&["analyze", "--weights", "4,4,1,1,9,9"])).unwrap();
    for key in [
        "weights",
        "degree",
        "filters",
        "polytope",
        "hodge",
        "involution",
        "betti_rows",
        "assumptions",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["weights"], serde_json::json!([1, 1, 9, 9, 4, 4]));
    assert_eq!(v["degree"], 28);
    let rows = v["betti_rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3]["b4_minus"], 692);
    assert!(!contains_float(&v));
}

#[test]
fn analyze_single_member_and_convention() {
    let member = |convention: &str| -> Value {
        let args = [
            "analyze",
            "--weights",
            "1,1,9,9,4,4",
            "--swapped-pairs",
            "2",
            "--convention",
            convention,
        ];
        serde_json::from_str(&ok(&args)).unwrap()
    };
    let v = member("standard");
    let rows = v["betti_rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(
        (
            rows[0]["swapped_pairs"].as_u64(),
            rows[0]["b4_plus"].as_u64()
        ),
        (Some(2), Some(1413))
    );
    let v = member("uncorrected");
    assert!(v["betti_rows"].as_array().unwrap().is_empty());
    let why = v["assumptions"].as_array().unwrap();
    assert!(why.iter().any(|a| a.as_str().unwrap().contains("is odd")));
}

#[test]
fn dump_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "analyze",
        "--weights",
        "1,1,9,9,4,4",
        "--dump",
        dir.path().to_str().unwrap(),
    ]);
    let got = std::fs::read_to_string(dir.path().join("dual.txt")).unwrap();
    assert_eq!(got, include_str!("golden/dual_1_1_9_9_4_4.txt"));
    let delta = std::fs::read_to_string(dir.path().join("delta.txt")).unwrap();
    assert_eq!(read_points("delta", &delta).unwrap().len(), 762);
}

#[test]
fn crepant_command() {
    let v: Value = serde_json::from_str(&ok(&["crepant", "--type", "2:1,1,1,1"])).unwrap();
    assert_eq!(v["verdict"], "no");
    assert_eq!(v["kind"], "1/2(1,1,1,1)");
    let v: Value = serde_json::from_str(&ok(&["crepant", "--type", "21:1,1,7,12"])).unwrap();
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["age_one"].as_array().unwrap().len(), 11);
}

#[test]
fn filter_input_file_and_strict_mode() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("weights.txt");
    std::fs::write(&input, "1 1 9 9 4 4\n# comment\n1,1,5,5,4,4\n1 2 3\n").unwrap();
    let output = dir.path().join("out.json");
    let (i, o) = (input.to_str().unwrap(), output.to_str().unwrap());

    let out = spin7(&["filter", "--input", i, "--output", o], None);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains(":4:"));
    let v: Value = serde_json::from_slice(&std::fs::read(&output).unwrap()).unwrap();
    assert_eq!(v["examined"], 2);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 1);
    assert_eq!(v["failures_by_stage"]["iv"], 1);

    let out = spin7(&["filter", "--input", i, "--strict", "--output", o], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_formats() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("weights.txt");
    std::fs::write(&input, "1 1 9 9 4 4\n1 1 13 13 4 8\n").unwrap();
    let i = input.to_str().unwrap();
    let csv = ok(&["table", "--format", "csv", "--input", i]);
    assert_eq!(
        csv,
        "a0,a1,a2,a3,a4,a5,k,b2,b3,b4+,b4-\n1,1,9,9,4,4,0..3,k,0,1415-k,695-k\n1,1,13,13,4,8,0..2,k,0,1991-k,983-k\n"
    );
    let md = ok(&["table", "--format", "md", "--input", i]);
    assert!(md.starts_with("| a0 |"));
    assert_eq!(md.lines().count(), 4);
    let json: Value =
        serde_json::from_str(&ok(&["table", "--format", "json", "--input", i])).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 2);
    assert!(!contains_float(&json));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["analyze", "--weights", "1,1,1,1,4,4"];
    let first = spin7(&args, Some(dir.path()));
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = spin7(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn usage_errors() {
    let bad_weights = spin7(&["analyze", "--weights", "1,2,3"], None);
    assert_eq!(bad_weights.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_weights.stderr).starts_with("spin7: "));
    assert_eq!(
        spin7(
            &["analyze", "--weights", "1,1,9,9,4,4", "--convention", "x"],
            None
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        spin7(&["--jobs", "0", "table", "--enumerate", "5"], None)
            .status
            .code(),
        Some(2)
    );
    let out = spin7(&["filter", "--output", "/dev/null"], None);
    assert_eq!(out.status.code(), Some(2));
}
