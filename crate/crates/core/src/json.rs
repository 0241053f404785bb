//! JSON encodings used by the command-line tool.
//!
//! Integers are written as plain JSON numbers of any size. Extension data
//! is `{"p": 2, "lambda": [2, 1], "mu": [1], "A": [[a_11, a_12]]}` with one
//! row of `A` per part of `mu`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::abelian::PGroupType;
use crate::equivalence::{OrbitClassification, Witness};
use crate::error::{Error, Result};
use crate::exactmat::{IntMatrix, SnfResult};
use crate::extension::ExtensionData;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_value(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
}

pub fn value_to_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| parse_err(format!("expected an integer, found {n}"))),
        other => Err(parse_err(format!("expected an integer, found {other}"))),
    }
}

fn value_to_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer, found {v}")))
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(int_to_value).collect()))
            .collect(),
    )
}

/// Parses `[[...], ...]`. `cols` fixes the width when there are no rows.
pub fn value_to_matrix(v: &Value, cols: Option<usize>) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("matrix must be an array of rows"))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("matrix row must be an array"))?
                .iter()
                .map(value_to_int)
                .collect::<Result<Vec<BigInt>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let width = cols.or_else(|| parsed.first().map(Vec::len)).unwrap_or(0);
    IntMatrix::from_rows(width, &parsed)
}

pub fn type_to_value(t: &PGroupType) -> Value {
    json!(t.parts())
}

/// Parses a list of parts; validity of the partition is checked here.
pub fn value_to_type(v: &Value) -> Result<PGroupType> {
    let parts = v
        .as_array()
        .ok_or_else(|| parse_err("type must be an array of positive integers"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| parse_err(format!("partition part must be a small integer, found {x}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    PGroupType::new(parts)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

/// Reads `(p, lambda, mu)` from an object; any `A` field is ignored.
pub fn value_to_parameters(v: &Value) -> Result<(u64, PGroupType, PGroupType)> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("expected an object with p, lambda, mu"))?;
    Ok((
        value_to_u64(field(obj, "p")?, "p")?,
        value_to_type(field(obj, "lambda")?)?,
        value_to_type(field(obj, "mu")?)?,
    ))
}

pub fn extension_to_value(e: &ExtensionData) -> Value {
    json!({
        "p": e.p,
        "lambda": type_to_value(&e.lambda),
        "mu": type_to_value(&e.mu),
        "A": matrix_to_value(&e.a),
    })
}

pub fn value_to_extension(v: &Value) -> Result<ExtensionData> {
    let (p, lambda, mu) = value_to_parameters(v)?;
    let a = value_to_matrix(field(v.as_object().expect("checked"), "A")?, Some(lambda.len()))?;
    let ext = ExtensionData { p, lambda, mu, a };
    ext.validate()?;
    Ok(ext)
}

/// Two extensions given as `[e1, e2]`.
pub fn value_to_extension_pair(v: &Value) -> Result<(ExtensionData, ExtensionData)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((value_to_extension(a)?, value_to_extension(b)?)),
        _ => Err(parse_err("expected an array of two extension objects")),
    }
}

pub fn witness_to_value(w: &Witness) -> Value {
    json!({
        "F": matrix_to_value(w.f.matrix()),
        "G": matrix_to_value(w.g.matrix()),
    })
}

pub fn classification_to_value(c: &OrbitClassification) -> Value {
    let classes: Vec<Value> = c
        .representatives
        .iter()
        .zip(&c.orbit_sizes)
        .zip(&c.middle_types)
        .map(|((rep, size), ty)| {
            json!({
                "A": matrix_to_value(&rep.a),
                "orbit_size": size,
                "middle_type": type_to_value(ty),
            })
        })
        .collect();
    json!({ "total": c.total, "classes": classes })
}

pub fn snf_to_value(r: &SnfResult) -> Value {
    json!({
        "D": matrix_to_value(&r.d),
        "U": matrix_to_value(&r.u),
        "V": matrix_to_value(&r.v),
    })
}

pub fn decomposition_to_value(d: &BTreeMap<u64, PGroupType>) -> Value {
    let comps: Vec<Value> = d
        .iter()
        .map(|(p, t)| json!({ "p": p, "type": type_to_value(t) }))
        .collect();
    json!({ "components": comps })
}
