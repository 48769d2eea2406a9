//! JSON helpers shared by the CLI and the web demo. Rationals are written
//! as `"p/q"` strings so no precision is lost.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::Q;

/// Version of every JSON document this crate emits.
pub const SCHEMA: u32 = 1;

pub fn q_json(x: &Q) -> Value {
    Value::String(x.to_string())
}

/// `serialize_with` helper writing a rational as a string.
pub fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn vec_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_json).collect())
}

pub fn matrix_json(m: &[Vec<Q>]) -> Value {
    Value::Array(m.iter().map(|r| vec_json(r)).collect())
}

/// Wraps a document with the schema version.
pub fn document(kind: &str, body: Value) -> Value {
    json!({ "schema": SCHEMA, "kind": kind, "result": body })
}

/// `2*h1 - 1/2*h2`, or `0`.
pub fn format_combination(labels: &[String], x: &[Q]) -> String {
    let mut out = String::new();
    for (l, c) in labels.iter().zip(x) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(l);
        } else {
            out.push_str(&format!("{mag}*{l}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qf};

    #[test]
    fn formatting() {
        let l = vec!["1".to_string(), "h".to_string()];
        assert_eq!(format_combination(&l, &[q(1), qf(-1, 2)]), "1 - 1/2*h");
        assert_eq!(format_combination(&l, &[q(0), q(0)]), "0");
        assert_eq!(format_combination(&l, &[q(0), q(-1)]), "-h");
        assert_eq!(q_json(&qf(3, 6)), Value::String("1/2".into()));
        assert_eq!(document("x", json!(1))["schema"], json!(1));
    }
}
