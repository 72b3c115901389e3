//! JSON encoding: rationals as `"n/d"` strings (plain integers and numbers
//! are accepted on input), matrices as arrays of rows.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lie_algebra::{AlgElement, GroupElement, Subalgebra};
use crate::linalg::QMatrix;
use crate::quadratic_forms::{Signature, Vector};
use crate::rational::{self, Rational};

fn parse_err(what: &str, detail: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{what}: {detail}"))
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational::to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vector> {
    v.as_array()
        .ok_or_else(|| parse_err("vector", "expected an array"))?
        .iter()
        .map(rational::from_json)
        .collect()
}

/// Accepts `"[1, -2, 3/4]"` as well as bare `"1,-2,3/4"`.
pub fn parse_vector(s: &str) -> Result<Vector> {
    let t = s.trim();
    let t = t.strip_prefix('[').and_then(|u| u.strip_suffix(']')).unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|x| rational::parse(x.trim().trim_matches('"'))).collect()
}

pub fn matrix_to_json(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_to_json(r)).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<QMatrix> {
    let rows = v.as_array().ok_or_else(|| parse_err("matrix", "expected an array of rows"))?;
    let rows: Vec<Vector> = rows.iter().map(vector_from_json).collect::<Result<_>>()?;
    QMatrix::from_rows(rows).map_err(|e| parse_err("matrix", e))
}

pub fn signature_from_json(v: &Value) -> Result<Signature> {
    let get = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| parse_err("signature", format!("missing integer field {k:?}")))
    };
    Signature::new(get("p")?, get("q")?).map_err(|e| parse_err("signature", e))
}

pub fn element_to_json(x: &AlgElement) -> Value {
    let s = x.signature();
    json!({ "p": s.p(), "q": s.q(), "matrix": matrix_to_json(x.matrix()) })
}

pub fn element_from_json(v: &Value) -> Result<AlgElement> {
    let sig = signature_from_json(v)?;
    let m = matrix_from_json(v.get("matrix").ok_or_else(|| parse_err("element", "missing \"matrix\""))?)?;
    AlgElement::new(sig, m).map_err(|e| parse_err("element", e))
}

pub fn group_to_json(g: &GroupElement) -> Value {
    let s = g.signature();
    json!({ "p": s.p(), "q": s.q(), "matrix": matrix_to_json(g.matrix()) })
}

pub fn group_from_json(v: &Value) -> Result<GroupElement> {
    let sig = signature_from_json(v)?;
    let m = matrix_from_json(v.get("matrix").ok_or_else(|| parse_err("group element", "missing \"matrix\""))?)?;
    GroupElement::new(sig, m).map_err(|e| parse_err("group element", e))
}

/// `{"p", "q", "basis": [matrix, …]}`; the basis is reduced to an echelon one.
pub fn subalgebra_from_json(v: &Value) -> Result<Subalgebra> {
    let sig = signature_from_json(v)?;
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("subalgebra", "missing \"basis\" array"))?;
    let elems: Vec<AlgElement> = basis
        .iter()
        .map(|m| AlgElement::new(sig, matrix_from_json(m)?).map_err(|e| parse_err("basis element", e)))
        .collect::<Result<_>>()?;
    Subalgebra::new(sig, &elems).map_err(|e| parse_err("subalgebra", e))
}

pub fn subalgebra_to_json(h: &Subalgebra) -> Value {
    let s = h.signature();
    json!({
        "p": s.p(),
        "q": s.q(),
        "dim": h.dim(),
        "basis": h.basis().iter().map(|b| matrix_to_json(b.matrix())).collect::<Vec<_>>(),
    })
}

/// Reads a file and parses it as JSON; every failure is an input error.
pub fn read_file(path: &std::path::Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(&path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| parse_err(&path.display().to_string(), e))
}
