use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn stringy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stringy")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json output");
    assert_eq!(v["schema"], 1);
    v["result"].clone()
}

fn catalog(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog").join(name).display().to_string()
}

#[test]
fn verify_sym2_passes() {
    let out = stringy(&["verify", "--model", "examples/sym2_p1.toml"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["cch_report"]["homomorphism"], true);
    assert_eq!(r["cch_report"]["strictly_allometric"], true);
    assert_eq!(r["passed"], true);
}

#[test]
fn eichler_on_z3() {
    let out = stringy(&["eichler", "--group", "z3", "--monodromy", "w,w,w"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["equal"], true);
    assert_eq!(r["cover"]["genus"], 1);
    assert_eq!(r["eichler"]["e"], "1");
}

#[test]
fn eichler_with_handles_and_cycle_labels() {
    let out = stringy(&["eichler", "--group", "s3", "--genus", "1", "--handles", "(0 1):(0 1 2)", "--monodromy", "(0 1 2)"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["equal"], true);
}

#[test]
fn klein_table_shows_products() {
    let out = stringy(&["ring", "--model", "examples/klein4.toml", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1[a] * 1[b] = (1)[ab]"), "{text}");
    assert!(!text.contains("1[a] * 1[a]"), "{text}");
}

#[test]
fn ring_json_descriptor() {
    let r = json(&stringy(&["ring", "--model", "sym2_p1", "--kind", "k"]));
    for key in ["sectors", "structure_constants", "pairing", "trace", "axiom_report", "cch_report"] {
        assert!(!r[key].is_null(), "missing {key}");
    }
    assert_eq!(r["sectors"][1]["element"], "(0 1)");
}

#[test]
fn euler_both_forms() {
    let r = json(&stringy(&["euler", "--chi", "24", "--n", "2"]));
    assert_eq!(r["stringy"], "324");
    assert_eq!(r["dhvw"], "324");
    assert_eq!(r["equal"], true);
    let r = json(&stringy(&["euler", "--chi", "-2", "--n", "3"]));
    assert_eq!(r["equal"], true);
    let r = json(&stringy(&["euler", "--model", "sym2_p1"]));
    assert_eq!(r["total"], "5");
}

#[test]
fn obstruction_report() {
    let out = stringy(&["obstruction", "--model", "klein4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["obstructions"].as_array().unwrap().len(), 16);
    assert!(r["obstructions"].as_array().unwrap().iter().all(|o| o["honest"] == true));
    let out = stringy(&["obstruction", "--model", "s3_standard"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn twist_by_sign_and_coboundary() {
    let out = stringy(&["twist", "--model", "sym2_p1", "--cocycle", "sign_s2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["passed"], true);
    assert!(r["coboundary"].is_null());
    let out = stringy(&["twist", "--model", "sym2_p1", "--cocycle", &catalog("cocycles/coboundary_s2.toml")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!json(&out)["coboundary"].is_null());
}

#[test]
fn suites_run_separately() {
    for suite in ["axioms", "cch", "obstruction"] {
        let out = stringy(&["verify", "--model", "p1_z2", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
    let out = stringy(&["verify", "--model", "z3_sl2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(stringy(&["ring", "--model", "no_such_model"]).status.code(), Some(2));
    assert_eq!(stringy(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(stringy(&["eichler", "--group", "z3", "--monodromy", "w,w"]).status.code(), Some(2));
    let bad = std::env::temp_dir().join("stringy_cli_bad_model.toml");
    std::fs::write(&bad, "name = \"x\"\ngroup = \"z2\"\nbackend = \"table\"\n[[locus]]\ngenerators = 3\n").unwrap();
    let out = stringy(&["ring", "--model", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stringy_cli_bad_model.toml"));
}

#[test]
fn table_cocycles() {
    let good = std::env::temp_dir().join("stringy_cli_alpha.toml");
    std::fs::write(&good, "table = [[1, 1], [1, 3]]\n").unwrap();
    let out = stringy(&["twist", "--model", "sym2_p1", "--cocycle", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["coboundary"].is_null());
    let bad = std::env::temp_dir().join("stringy_cli_not_a_cocycle.toml");
    std::fs::write(&bad, "table = [[2, 1], [1, 1]]\n").unwrap();
    let out = stringy(&["twist", "--model", "sym2_p1", "--cocycle", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_directory_override() {
    let dir = std::env::temp_dir().join("stringy_cli_catalog");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(catalog("p1_z2.toml"), dir.join("renamed.toml")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_stringy"))
        .args(["euler", "--model", "renamed"])
        .env("STRINGY_CATALOG_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["total"], "4");
}

#[test]
fn output_is_deterministic() {
    let a = stringy(&["ring", "--model", "sym2_p1"]).stdout;
    let b = stringy(&["ring", "--model", "sym2_p1"]).stdout;
    assert_eq!(a, b);
}
