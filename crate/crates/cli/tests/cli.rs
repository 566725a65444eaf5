use std::process::{Command, Output};

use serde_json::Value;

fn divlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divlab"))
        .args(args)
        .env_remove("DIVLAB_CAP")
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = divlab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    divlab(args).status.code().expect("exit code")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn divpoly_psi3() {
    let v = json_of(&["divpoly", "-b", "1", "-c", "1", "-m", "3"]);
    assert_eq!(strings(&v["coefficients"]), ["-1", "12", "6", "0", "3"]);
    assert_eq!(v["degree"], 4);
}

#[test]
fn divpoly_preimage_m1() {
    let v = json_of(&["divpoly", "--curve", "paper-sec6", "-m", "1", "--preimage-x", "0"]);
    assert_eq!(strings(&v["coefficients"]), ["0", "1"]);
}

#[test]
fn divpoly_csv() {
    let out = divlab(&["divpoly", "-b", "1", "-c", "1", "-m", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "power,coefficient\n0,-1\n1,12\n2,6\n3,0\n4,3\n");
}

#[test]
fn bound_requires_m3() {
    let out = divlab(&["bound", "--curve", "paper-sec6", "-m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m ≥ 3 required"));
}

#[test]
fn bound_threshold_and_budget_note() {
    let v = json_of(&["bound", "--curve", "paper-sec6", "-m", "4", "--group-order", "16"]);
    assert_eq!(v["density_threshold"].as_f64(), Some(0.0625));
    assert_eq!(v["chain_holds"], true);
    assert!(v["budget_note"].as_str().unwrap().contains("exceeds"));
}

#[test]
fn schmidt_odd_m_agrees() {
    let v = json_of(&["schmidt", "--curve", "paper-sec6", "-m", "5"]);
    assert_eq!(v["equal"], true);
}

#[test]
fn height_of_tower_element() {
    let v = json_of(&["height", "--value", "27 + 6*sqrt(7)"]);
    assert_eq!(strings(&v["min_poly"]), ["477", "-54", "1"]);
    assert_eq!(v["min_poly_bound_holds"], true);
}

#[test]
fn sweep_limit_20() {
    let dir = std::env::temp_dir().join(format!("divlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.json");
    let out = divlab(&[
        "sweep", "--curve", "paper-sec6", "--point", "10,10", "-m", "4", "--limit", "20", "--group-order", "16",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("unsolvable=3"), "{summary}");
    assert!(summary.contains("threshold=0.0625"), "{summary}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let unsolvable: Vec<u64> = v["unsolvable"].as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).collect();
    assert_eq!(unsolvable, [2, 5, 11]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_rejects_limit_over_cap() {
    let args = ["sweep", "--curve", "paper-sec6", "--point", "10,10", "-m", "4", "--limit", "500", "--cap", "100"];
    assert_eq!(code(&args), 3);
}

#[test]
fn point_off_curve_is_precondition() {
    assert_eq!(code(&["local-test", "--curve", "paper-sec6", "--point", "2,4", "-m", "4", "-p", "5"]), 4);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["divpoly", "--curve", "no-such-curve", "-m", "3"]), 2);
    assert_eq!(code(&["divpoly", "-b", "1/0", "-c", "1", "-m", "3"]), 2);
    assert_eq!(code(&["divpoly", "-b", "0", "-c", "0", "-m", "3"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn config_file() {
    let dir = std::env::temp_dir().join(format!("divlab-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"alpha": "9", "beta": "6", "gamma": "-15"}"#).unwrap();
    let v = json_of(&["divpoly", "--config", good.to_str().unwrap(), "-m", "3"]);
    assert_eq!(strings(&v["coefficients"]), ["-29241", "9720", "-1026", "0", "3"]);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"b": "1", "c": "1", "extra": 3}"#).unwrap();
    assert_eq!(code(&["divpoly", "--config", bad.to_str().unwrap(), "-m", "3"]), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cocycle_failing_set() {
    let v = json_of(&["cocycle", "--group", "paper-sec6", "--cocycle", "2w,0"]);
    assert_eq!(v["failing_count"], 4);
    let zero = json_of(&["cocycle", "--group", "paper-sec6", "--cocycle", "zero"]);
    assert_eq!(zero["failing_count"], 0);
}

#[test]
fn h1loc_examples() {
    let v = json_of(&["h1loc", "--group", "cyclic:eta:25"]);
    assert_eq!(v["h1loc_trivial"], true);
    assert_eq!(v["group_order"], 50);
    let v = json_of(&["h1loc", "--group", "paper-sec6"]);
    assert_eq!(v["h1_order"], 64);
    assert_eq!(v["h1loc_order"], 1);
    assert_eq!(code(&["h1loc", "--group", "cyclic:eta:25", "--max-modulus", "8"]), 3);
}

#[test]
fn galois_verify() {
    let v = json_of(&["galois-verify", "-p", "5", "-r", "2"]);
    assert_eq!(v["thm22_core"], true);
    assert_eq!(code(&["galois-verify", "-p", "5", "-r", "9", "--cap", "1000"]), 3);
}

#[test]
fn descent_chain() {
    let v = json_of(&["descent", "--curve", "paper-sec6"]);
    assert_eq!(strings(&v["multiple_point"]), ["10", "10"]);
    assert_eq!(strings(&v["conjugate_difference"]), ["9", "0"]);
    assert_eq!(code(&["descent", "-s", "5", "-t", "1"]), 4);
    assert_eq!(code(&["descent", "--curve", "torsion7-a"]), 2);
}

#[test]
fn paper_example_passes() {
    let out = divlab(&["paper-example"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert!(lines.iter().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn paper_example_partial_limit() {
    let out = divlab(&["paper-example", "--limit", "100"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PARTIAL [10]")), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn paper_example_negative_control() {
    let out = divlab(&["paper-example", "-b", "-170"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("FAIL [ 8] phi4")), "{text}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("phi4 coefficients"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["bound", "--curve", "paper-sec6", "-m", "4"][..],
        &["sweep", "--curve", "paper-sec6", "--point", "10,10", "-m", "4", "--limit", "200", "--format", "csv"],
        &["h1loc", "--group", "paper-sec6"],
    ] {
        assert_eq!(divlab(args).stdout, divlab(args).stdout, "{args:?}");
    }
}
