//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string, so the same functions are tested natively.

use serde_json::{json, Value};
use stringy::catalog;
use stringy::classes::{cover_genus, eichler_h1, rep_magic_rhs, MonodromyDatum};
use stringy::character::ClassFunction;
use stringy::euler::{dhvw_coefficient, stringy_euler, sym_orbifold_euler};
use stringy::frobenius::check_axioms;
use stringy::geometry::{parse_model, GeometricModel};
use stringy::report::q_json;
use stringy::ring::{build_stringy_chow, build_stringy_k, ring_json, ring_table, stringy_chern};
use wasm_bindgen::prelude::*;

const MODELS: [(&str, &str); 6] = [
    ("sym2_p1", include_str!("../../../catalog/sym2_p1.toml")),
    ("p1_z2", include_str!("../../../catalog/p1_z2.toml")),
    ("klein4", include_str!("../../../catalog/klein4.toml")),
    ("z3_sl2", include_str!("../../../catalog/z3_sl2.toml")),
    ("z2_two_points", include_str!("../../../catalog/z2_two_points.toml")),
    ("s3_three_points", include_str!("../../../catalog/s3_three_points.toml")),
];

fn model(name: &str) -> Result<GeometricModel, String> {
    let (_, text) = MODELS.iter().find(|(n, _)| *n == name).ok_or_else(|| format!("no bundled model `{name}`"))?;
    parse_model(text).map_err(|e| e.to_string())
}

/// Names of the bundled models.
pub fn model_names() -> Vec<&'static str> {
    MODELS.iter().map(|(n, _)| *n).collect()
}

/// The multiplication table of the Chow or K ring of a bundled model, its
/// axiom report and the Chern character check.
pub fn ring_report(name: &str, kind: &str) -> Result<Value, String> {
    let m = model(name)?;
    let ring = match kind {
        "chow" => build_stringy_chow(&m),
        "k" => build_stringy_k(&m),
        other => return Err(format!("unknown ring kind `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    let axioms = check_axioms(&ring.algebra).map_err(|e| e.to_string())?;
    let cch = stringy_chern(&m).map_err(|e| e.to_string())?;
    let euler = if m.proper { stringy_euler(&m).ok().map(|r| q_json(&r.total)) } else { None };
    Ok(json!({
        "table": ring_table(&ring.algebra),
        "ring": ring_json(&ring.algebra),
        "axioms": axioms.to_json(),
        "axioms_pass": axioms.passed(),
        "cch_allometric": cch.allometric(),
        "cch_strictly_allometric": cch.strictly_allometric(),
        "euler": euler,
    }))
}

fn class_values(f: &ClassFunction) -> Value {
    let g = f.group();
    Value::Array(
        g.conjugacy_classes()
            .iter()
            .map(|c| json!([g.label(c.representative), f.value(c.representative).to_string()]))
            .collect(),
    )
}

/// Both sides of the Eichler comparison for a genus-0 monodromy datum.
pub fn eichler_report(group: &str, monodromy: &str) -> Result<Value, String> {
    let g = catalog::group_by_name(group).map_err(|e| e.to_string())?;
    let branch = g.parse_elements(monodromy).map_err(|e| e.to_string())?;
    let datum = MonodromyDatum::new(0, branch);
    let cover = cover_genus(&datum, &g).map_err(|e| e.to_string())?;
    let lhs = eichler_h1(&datum, &g).map_err(|e| e.to_string())?;
    let rhs = rep_magic_rhs(&datum, &g).map_err(|e| e.to_string())?;
    Ok(json!({
        "group": g.name(),
        "elements": g.labels(),
        "cover": cover,
        "eichler": class_values(&lhs),
        "representation_side": class_values(&rhs),
        "equal": lhs == rhs,
    }))
}

/// Stringy Euler characteristics of `Sym^k` for `k ≤ n` with the product
/// formula alongside.
pub fn euler_report(chi: i64, n: usize) -> Result<Value, String> {
    let rows = (0..=n)
        .map(|k| {
            let s = sym_orbifold_euler(chi, k).map_err(|e| e.to_string())?;
            let d = dhvw_coefficient(chi, k).map_err(|e| e.to_string())?;
            Ok(json!({ "n": k, "chi": chi, "stringy": q_json(&s), "dhvw": q_json(&d), "equal": s == d }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(Value::Array(rows))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn models() -> String {
    json!(model_names()).to_string()
}

#[wasm_bindgen]
pub fn ring(name: &str, kind: &str) -> Result<String, JsValue> {
    to_js(ring_report(name, kind))
}

#[wasm_bindgen]
pub fn eichler(group: &str, monodromy: &str) -> Result<String, JsValue> {
    to_js(eichler_report(group, monodromy))
}

#[wasm_bindgen]
pub fn euler(chi: i32, n: u32) -> Result<String, JsValue> {
    if n > 8 {
        return Err(JsValue::from_str("n is limited to 8"));
    }
    to_js(euler_report(chi.into(), n as usize))
}
