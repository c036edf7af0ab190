use std::path::Path;
use std::process::{Command, Output};

use qchar_core::format::polynomial_from_json;
use serde_json::Value;

fn qchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchar"))
        .args(args)
        .env_remove("QCHAR_MAX_ITER")
        .output()
        .expect("run qchar")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fm_sl2_fundamental() {
    let out = qchar(&["fm", "--type", "A", "--rank", "1", "--node", "1", "--base", "a"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "qchar/1");
    assert_eq!(v["status"], "certified");
    assert_eq!(v["text"], "Y[1,a,0] + Y[1,a,2]^-1");
    assert_eq!(v["character"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn lattice_and_cartan() {
    let v = json(&qchar(&["lattice", "--s", "6", "--type", "A", "--rank", "2"]));
    assert_eq!(v["l"], 3);
    assert_eq!(v["eps_star"], -1);
    let v = json(&qchar(&["cartan", "--type", "B", "--rank", "2"]));
    assert_eq!(v["r"], serde_json::json!([2, 1]));
    assert_eq!(v["theta"], serde_json::json!([0, 1]));
}

#[test]
fn twisted_target_is_an_input_error() {
    let out = qchar(&["frob", "--type", "B", "--rank", "2", "--s", "8", "--lambda", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("l divisible by r^∨: twisted target out of scope"), "{err}");
}

#[test]
fn malformed_input_exits_one() {
    let out = qchar(&["irr", "--type", "A", "--rank", "1", "--s", "3", "--drinfeld", "1:(a@"]);
    assert_eq!(out.status.code(), Some(1));
    let out = qchar(&["fm", "--type", "A", "--rank", "1", "--node", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhausted_budget_exits_two() {
    let out = qchar(&["fm", "--type", "G", "--rank", "2", "--node", "2", "--max-iter", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "inconclusive");
    let out = Command::new(env!("CARGO_BIN_EXE_qchar"))
        .args(["fm", "--type", "G", "--rank", "2", "--node", "2"])
        .env("QCHAR_MAX_ITER", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let runs: &[&[&str]] = &[
        &["fm", "--type", "B", "--rank", "2", "--node", "1"],
        &["irr", "--type", "A", "--rank", "1", "--s", "3", "--drinfeld", "1:(a@0),(a@1),(a@2),(c@0)"],
        &["frob", "--type", "A", "--rank", "2", "--s", "5", "--lambda", "1,0", "--base", "b"],
        &["verify", "--cases", "4"],
    ];
    for args in runs {
        let a = qchar(args);
        let b = qchar(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn emitted_characters_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let fm = dir.path().join("fm.json");
    let sp = dir.path().join("sp.json");
    let out = qchar(&["fm", "--type", "A", "--rank", "2", "--node", "1", "--out", path(&fm)]);
    assert_eq!(out.status.code(), Some(0));
    let out = qchar(&["specialize", "--s", "3", "--in", path(&fm), "--out", path(&sp)]);
    assert_eq!(out.status.code(), Some(0));
    for file in [&fm, &sp] {
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
        let p = polynomial_from_json(&doc).unwrap();
        let again = qchar_core::format::polynomial_to_json(&p);
        assert_eq!(polynomial_from_json(&again).unwrap(), p);
        if let Some(text) = doc.get("text") {
            assert_eq!(text.as_str().unwrap(), p.to_string());
        }
    }
    let dec = qchar(&["decompose", "--s", "3", "--in", path(&sp)]);
    assert_eq!(dec.status.code(), Some(0));
    let v = json(&dec);
    assert_eq!(v["constituents"].as_array().unwrap().len(), 1);
    assert_eq!(v["constituents"][0]["drinfeld"]["text"], "1:(a@0); 2:");
}

#[test]
fn sl2_string_decomposes_at_three() {
    let dir = tempfile::tempdir().unwrap();
    let fm = dir.path().join("fm.json");
    let out = qchar(&[
        "fm", "--type", "A", "--rank", "1", "--monomial", "Y[1,a,0]*Y[1,a,2]*Y[1,a,4]", "--out", path(&fm),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&qchar(&["decompose", "--s", "3", "--in", path(&fm)]));
    let texts: Vec<&str> = v["constituents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["drinfeld"]["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, ["1:(a@0),(a@1),(a@2)", "1:(a@2)"]);
}
