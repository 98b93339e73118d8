use std::process::{Command, Output};

use serde_json::Value;

fn hermicode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermicode"))
        .args(args)
        .env_remove("HERMICODE_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn weights_json_shape() {
    let out = hermicode(&["weights", "--q", "4", "--m", "2", "--jobs", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["counts"], serde_json::json!({ "0": 1, "12": 75, "15": 180 }));
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(15), Some(2)));
    assert_eq!(v["method"], "exhaustive");
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn weights_methods_agree_and_csv() {
    let exh = hermicode(&["weights", "--q", "5", "--m", "3", "--method", "exhaustive", "--format", "csv"]);
    let red = hermicode(&["weights", "--q", "5", "--m", "3", "--method", "reduced", "--format", "csv"]);
    assert_eq!(exh.stdout, red.stdout);
    let text = String::from_utf8(exh.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("weight,count"));
    assert!(text.contains("\n18,672\n"));
}

#[test]
fn jobs_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hermicode"))
        .args(["weights", "--q", "3", "--m", "2"])
        .env("HERMICODE_JOBS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn build_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.json");
    let out = hermicode(&["build", "--q", "3", "--m", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["irreducible"].as_array().unwrap().len(), 3);
    assert!(v["tau"].as_u64().unwrap() > 0);
}

#[test]
fn build_with_other_base_point() {
    let pts = json(&hermicode(&["points", "--q", "4"]));
    let reps = pts["orbit_representatives"].as_array().unwrap();
    assert_eq!(reps.len(), 4);
    let base = format!("{},{}", reps[2][0], reps[2][1]);
    let out = hermicode(&["weights", "--q", "4", "--m", "3", "--base", &base]);
    assert!(out.status.success());
    assert_eq!(json(&out)["counts"]["10"], 45);

    let bad = hermicode(&["build", "--q", "4", "--m", "3", "--base", "1,1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn points_counts() {
    let v = json(&hermicode(&["points", "--q", "3"]));
    assert_eq!(v["points"].as_array().unwrap().len(), 28);
    assert_eq!(v["chord"].as_array().unwrap().len(), 4);
    assert_eq!(v["orbit"]["points"].as_array().unwrap().len(), 8);
    let csv = hermicode(&["points", "--q", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 29);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["weights", "--q", "6", "--m", "2"][..],
        &["weights", "--q", "5", "--m", "5"],
        &["weights", "--q", "512", "--m", "2"],
        &["weights", "--q", "5", "--m", "2", "--method", "fast"],
        &["frobnicate"],
        &["verify"],
    ] {
        let out = hermicode(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn size_guard_exits_3() {
    let out = hermicode(&["weights", "--q", "5", "--m", "4", "--method", "exhaustive"]);
    assert_eq!(out.status.code(), Some(3));
    let out = hermicode(&["weights", "--q", "7", "--m", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_single_q() {
    let out = hermicode(&["verify", "--q", "4", "--m", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let claims = v["claims"].as_array().unwrap();
    let status = |id: &str| {
        claims
            .iter()
            .find(|c| c["claim_id"] == id)
            .map(|c| c["status"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(status("thm3.i.count"), "pass");
    assert_eq!(status("thm3.iii"), "skipped(hypothesis)");
    assert!(claims.iter().all(|c| c["status"] != "fail"));
    let keys: Vec<_> = claims[0].as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
