use std::fs;
use std::process::Command;

use serde_json::Value;

fn unicoh(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_unicoh"))
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn instance(name: &str) -> String {
    format!("{}/../../instances/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn analyze_text_report() {
    let (out, err, code) = unicoh(&["analyze", &instance("pc7.json")]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("III"));
    assert!(out.contains("consistent: true"));
    assert!(err.contains("analyzed in"));
}

#[test]
fn analyze_selected_properties_as_json() {
    let (out, _, code) = unicoh(&[
        "analyze",
        "catalog:PC7",
        "--properties",
        "III,x,i+",
        "--json",
        "--no-lemmas",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&String> = v["properties"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["I+", "III", "X"]);
    assert_eq!(v["properties"]["III"]["witness"]["kind"], "continuum_pair");
    assert!(v["properties"]["III"]["explanation"]
        .as_str()
        .unwrap()
        .contains("{a}"));
    assert!(v.get("lemmas").is_none());
}

#[test]
fn subset_mode() {
    let (out, _, code) = unicoh(&[
        "analyze",
        &instance("sie.json"),
        "--subsets",
        "--properties",
        "I,N",
        "--json",
        "--no-lemmas",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["properties"]["I"]["holds"], true);
}

#[test]
fn enumeration_cap_gives_incomplete_exit() {
    let (out, _, code) = unicoh(&[
        "analyze",
        "catalog:PC7",
        "--max-enum",
        "3",
        "--no-lemmas",
        "--json",
    ]);
    assert_eq!(code, 3);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(!v["undecided"].as_object().unwrap().is_empty());
}

#[test]
fn input_errors_exit_two() {
    let (_, err, code) = unicoh(&["analyze", &instance("m3.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("not distributive"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"kind\": \"frame\",\n  \"n\": }").unwrap();
    let (_, err, code) = unicoh(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.json:3:"), "{err}");

    let (_, _, code) = unicoh(&["analyze", "catalog:NOPE"]);
    assert_eq!(code, 2);
    let (_, _, code) = unicoh(&["analyze", "catalog:PC7", "--properties", "XI"]);
    assert_eq!(code, 2);
    let (_, _, code) = unicoh(&["theorems", "--generate-points", "5"]);
    assert_eq!(code, 2);
    let (_, _, code) = unicoh(&["theorems"]);
    assert_eq!(code, 2);
}

#[test]
fn theorems_over_instance_directory() {
    let (out, _, code) = unicoh(&["theorems", "--dir", &instance(""), "--json", "--no-lemmas"]);
    // m3.json is rejected, which is an input error
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["instances"], 5);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["rejected"].as_array().unwrap().len(), 1);
}

#[test]
fn theorems_generated_text() {
    let (out, _, code) = unicoh(&["theorems", "--generate-points", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("29 instances"));
    assert!(out.contains("result: consistent"));
}

#[test]
fn compare_space() {
    let (out, _, code) = unicoh(&["compare", &instance("pc7.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("classical unicoherent: false"));
    assert!(out.contains("agree"));
    let (out, _, code) = unicoh(&["compare", "catalog:SIE", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["localic_unicoherent"], true);
    let (_, _, code) = unicoh(&["compare", &instance("chain4.json")]);
    assert_eq!(code, 2);
}

#[test]
fn components_by_label_and_index() {
    let (out, _, code) = unicoh(&["components", &instance("b4_frame.json"), "--element", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("o(1) has 2 component(s)"), "{out}");
    let (out, _, code) = unicoh(&["components", "catalog:PC7", "--element", "{a,b}", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    let (_, _, code) = unicoh(&["components", "catalog:PC7", "--element", "zz"]);
    assert_eq!(code, 2);
}
