//! JSON encoding of rational geometry.
//!
//! Rationals are JSON integers when they are integral and small enough to be
//! float-safe (|value| < 2^53), and strings "p/q" otherwise, so round-trips
//! are always exact.  Halfspaces are {"normal": [...], "offset": r} meaning
//! normal . y >= offset; polytopes are {"dim": p, "hrep": [...], "vrep":
//! [[...]]} with at least one representation present.

use crate::error::{Error, Result};
use crate::linalg::Point;
use crate::polytope::{Halfspace, Polytope};
use crate::scalar::{format_rat, parse_rat, Rat};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};

const FLOAT_SAFE: i64 = 1 << 53;

pub fn rat_to_json(x: &Rat) -> Value {
    if x.denom().is_one() {
        if let Ok(n) = i64::try_from(x.numer().clone()) {
            if n.abs() < FLOAT_SAFE {
                return json!(n);
            }
        }
    }
    json!(format_rat(x))
}

pub fn json_to_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                return Ok(Rat::from_integer(BigInt::from(i)));
            }
            Err(Error::DegenerateInput(format!("non-integer JSON number {n}")))
        }
        Value::String(s) => parse_rat(s)
            .ok_or_else(|| Error::DegenerateInput(format!("bad rational literal {s:?}"))),
        other => Err(Error::DegenerateInput(format!("expected rational, got {other}"))),
    }
}

pub fn point_to_json(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(rat_to_json).collect())
}

pub fn json_to_point(v: &Value) -> Result<Point> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::DegenerateInput(format!("expected coordinate array, got {v}")))?;
    arr.iter().map(json_to_rat).collect()
}

pub fn halfspace_to_json(h: &Halfspace) -> Value {
    json!({ "normal": point_to_json(&h.normal), "offset": rat_to_json(&h.offset) })
}

pub fn json_to_halfspace(v: &Value) -> Result<Halfspace> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::DegenerateInput(format!("expected halfspace object, got {v}")))?;
    let normal = json_to_point(
        obj.get("normal")
            .ok_or_else(|| Error::DegenerateInput("halfspace missing normal".into()))?,
    )?;
    let offset = json_to_rat(
        obj.get("offset")
            .ok_or_else(|| Error::DegenerateInput("halfspace missing offset".into()))?,
    )?;
    Halfspace::new(normal, offset)
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(p.ambient_dim()));
    if let Some(hs) = p.hrep() {
        obj.insert(
            "hrep".into(),
            Value::Array(hs.iter().map(halfspace_to_json).collect()),
        );
    }
    if let Some(vs) = p.vrep() {
        obj.insert(
            "vrep".into(),
            Value::Array(vs.iter().map(|v| point_to_json(v)).collect()),
        );
    }
    Value::Object(obj)
}

pub fn json_to_polytope(v: &Value) -> Result<Polytope> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::DegenerateInput(format!("expected polytope object, got {v}")))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::DegenerateInput("polytope missing dim".into()))?
        as usize;
    let hrep = match obj.get("hrep") {
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(json_to_halfspace)
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(Value::Null) | None => None,
        Some(other) => {
            return Err(Error::DegenerateInput(format!("bad hrep {other}")));
        }
    };
    let vrep = match obj.get("vrep") {
        Some(Value::Array(a)) => Some(a.iter().map(json_to_point).collect::<Result<Vec<_>>>()?),
        Some(Value::Null) | None => None,
        Some(other) => {
            return Err(Error::DegenerateInput(format!("bad vrep {other}")));
        }
    };
    match (hrep, vrep) {
        (Some(h), Some(v)) => Polytope::from_both(dim, h, v),
        (Some(h), None) => Polytope::from_hrep(dim, h),
        (None, Some(v)) => Polytope::from_vrep(dim, v),
        (None, None) => Err(Error::DegenerateInput(
            "polytope needs hrep or vrep".into(),
        )),
    }
}

pub fn read_polytope(path: &std::path::Path) -> Result<Polytope> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    json_to_polytope(&value)
}

pub fn write_json(path: &std::path::Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
