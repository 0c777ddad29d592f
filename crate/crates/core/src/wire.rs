//! JSON encodings. Unbounded integers and rationals are decimal strings;
//! `N` and `M` are JSON numbers of arbitrary size.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::classify::{profile, AlgebraProfile, AlphaFlag, ClassifyError, Verdict, VerdictSet};
use crate::construct::{AmpleSeqItem, RmPair};
use crate::lattice::{KVector, SL2Matrix};
use crate::quadfield::QuadNum;
use crate::twist::{TrajectoryStep, TwistOrbit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("missing or malformed field `{0}`")]
    Field(&'static str),
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

pub fn big_number(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

pub fn int_str(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn rational_str(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn matrix_json(g: &SL2Matrix) -> Value {
    json!([[int_str(g.a()), int_str(g.b())], [int_str(g.c()), int_str(g.d())]])
}

pub fn vector_json(v: &KVector) -> Value {
    json!([int_str(&v.deg), int_str(&v.rk)])
}

pub fn quad_json(q: &QuadNum) -> Value {
    json!({"D": big_number(q.radicand()), "x": rational_str(q.x()), "y": rational_str(q.y())})
}

fn opt_quad(q: Option<&QuadNum>) -> Value {
    q.map_or(Value::Null, quad_json)
}

/// `{"0": "1", "1": "14", ...}`.
pub fn coefficients_json<T: ToString>(coeffs: &[T]) -> Value {
    Value::Object(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k.to_string(), Value::String(c.to_string())))
            .collect(),
    )
}

/// `{"i,j": "c", ...}`.
pub fn bivariate_json(coeffs: &[Vec<BigRational>]) -> Value {
    let mut map = Map::new();
    for (i, row) in coeffs.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            map.insert(format!("{i},{j}"), rational_str(c));
        }
    }
    Value::Object(map)
}

pub fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::String(s) => BigInt::from_str(s).ok(),
        Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
        _ => None,
    }
}

pub fn parse_rational(v: &Value) -> Option<BigRational> {
    match v {
        Value::String(s) => BigRational::from_str(s).ok(),
        Value::Number(_) => parse_int(v).map(BigRational::from_integer),
        _ => None,
    }
}

pub fn parse_matrix(v: &Value) -> Result<SL2Matrix, WireError> {
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or(WireError::Field("g"))?;
    let mut e = Vec::with_capacity(4);
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or(WireError::Field("g"))?;
        for x in row {
            e.push(parse_int(x).ok_or(WireError::Field("g"))?);
        }
    }
    let [a, b, c, d]: [BigInt; 4] = e.try_into().map_err(|_| WireError::Field("g"))?;
    SL2Matrix::new(a, b, c, d).map_err(|err| WireError::Invalid(err.to_string()))
}

pub fn parse_vector(v: &Value) -> Result<KVector, WireError> {
    let xs = v.as_array().filter(|r| r.len() == 2).ok_or(WireError::Field("v0"))?;
    let deg = parse_int(&xs[0]).ok_or(WireError::Field("v0"))?;
    let rk = parse_int(&xs[1]).ok_or(WireError::Field("v0"))?;
    Ok(KVector::new(deg, rk))
}

pub fn parse_quad(v: &Value) -> Result<QuadNum, WireError> {
    let d = v.get("D").and_then(parse_int).ok_or(WireError::Field("D"))?;
    let x = v.get("x").and_then(parse_rational).ok_or(WireError::Field("x"))?;
    let y = v.get("y").and_then(parse_rational).ok_or(WireError::Field("y"))?;
    if d == BigInt::from(1) {
        if y != BigRational::from_integer(0.into()) {
            return Err(WireError::Invalid("a rational value must have y = 0".into()));
        }
        return Ok(QuadNum::rational(x));
    }
    QuadNum::new(d, x, y).map_err(|e| WireError::Invalid(e.to_string()))
}

pub fn verdict_json(v: &Verdict) -> Value {
    Value::String(v.label().to_string())
}

pub fn verdict_set_json(v: &VerdictSet) -> Value {
    let mut notes = Map::new();
    for (name, verdict) in [
        ("degree_one", &v.degree_one),
        ("quadratic", &v.quadratic),
        ("ample", &v.ample),
    ] {
        if let Some(n) = &verdict.note {
            notes.insert(name.to_string(), Value::String(n.clone()));
        }
    }
    json!({
        "degree_one": verdict_json(&v.degree_one),
        "quadratic": verdict_json(&v.quadratic),
        "koszul": verdict_json(&v.koszul),
        "finitely_generated": verdict_json(&v.finitely_generated),
        "ample": verdict_json(&v.ample),
        "notes": Value::Object(notes),
    })
}

/// The reconstructible part of a profile plus its derived data.
pub fn profile_json(p: &AlgebraProfile) -> Value {
    let frame = p.frame.as_ref();
    json!({
        "g": matrix_json(&p.g),
        "v0": vector_json(&p.v0),
        "alpha": p.alpha.as_str(),
        "N": big_number(&p.n),
        "M": big_number(&p.m),
        "class": p.class.as_str(),
        "admissible": p.is_admissible(),
        "theta_attract": opt_quad(p.theta_attract.as_ref()),
        "theta_repel": opt_quad(p.theta_repel.as_ref()),
        "r": opt_quad(frame.map(|f| &f.r)),
        "delta": opt_quad(frame.map(|f| &f.delta)),
        "in_heart": p.in_heart(),
    })
}

/// Rebuilds a profile from `g`, `v0` and `alpha`, and checks every derived
/// field present in the input against the recomputed one.
pub fn parse_profile(v: &Value) -> Result<AlgebraProfile, WireError> {
    let g = parse_matrix(v.get("g").ok_or(WireError::Field("g"))?)?;
    let v0 = parse_vector(v.get("v0").ok_or(WireError::Field("v0"))?)?;
    let alpha = match v.get("alpha") {
        None => AlphaFlag::default(),
        Some(a) => a.as_str().and_then(AlphaFlag::parse).ok_or(WireError::Field("alpha"))?,
    };
    let p = profile(&g, &v0, alpha)?;
    let rebuilt = profile_json(&p);
    for (key, val) in v.as_object().ok_or(WireError::Field("profile"))? {
        if let Some(expected) = rebuilt.get(key) {
            if !same_value(key, val, expected) {
                return Err(WireError::Invalid(format!("field `{key}` does not match the recomputed profile")));
            }
        }
    }
    Ok(p)
}

fn same_value(key: &str, a: &Value, b: &Value) -> bool {
    match key {
        "N" | "M" => parse_int(a).is_some() && parse_int(a) == parse_int(b),
        "g" | "v0" => true,
        _ => a == b,
    }
}

/// Full classification report.
pub fn classification_json(p: &AlgebraProfile, horizon: usize) -> Value {
    let mut out = match p.verdicts() {
        Ok(v) => verdict_set_json(&v),
        Err(_) => json!({"admissible": false}),
    };
    let obj = out.as_object_mut().expect("object");
    obj.insert("N".into(), big_number(&p.n));
    obj.insert("M".into(), big_number(&p.m));
    obj.insert("class".into(), Value::String(p.class.as_str().into()));
    obj.insert("hilbert".into(), coefficients_json(&p.hilbert_coefficients(horizon)));
    obj.insert("profile".into(), profile_json(p));
    if let Ok(d) = p.koszul_dual() {
        obj.insert("dual".into(), profile_json(&d));
    }
    out
}

pub fn orbit_json(o: &TwistOrbit) -> Value {
    let chi: Map<String, Value> = o
        .chi
        .iter()
        .map(|((n, m), c)| (format!("{n},{m}"), int_str(c)))
        .collect();
    json!({"chi": chi, "rk": o.rk.iter().map(quad_json).collect::<Vec<_>>()})
}

pub fn parse_orbit_chi(v: &Value) -> Result<BTreeMap<(usize, usize), BigInt>, WireError> {
    let obj = v.get("chi").and_then(Value::as_object).ok_or(WireError::Field("chi"))?;
    obj.iter()
        .map(|(k, c)| {
            let (n, m) = k.split_once(',').ok_or(WireError::Field("chi"))?;
            let n = n.parse().map_err(|_| WireError::Field("chi"))?;
            let m = m.parse().map_err(|_| WireError::Field("chi"))?;
            Ok(((n, m), parse_int(c).ok_or(WireError::Field("chi"))?))
        })
        .collect()
}

pub fn trajectory_json(steps: &[TrajectoryStep]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| json!({"coords": [quad_json(&s.coords[0]), quad_json(&s.coords[1])], "in_halfplane": s.in_halfplane}))
            .collect(),
    )
}

pub fn rm_pair_json(rm: &RmPair) -> Value {
    json!({
        "theta": quad_json(&rm.theta),
        "r": quad_json(&rm.r),
        "g": matrix_json(&rm.g),
        "v0": vector_json(&rm.v0),
        "koszul_grade": rm.koszul_grade,
        "profile": profile_json(&rm.profile),
    })
}

pub fn ample_items_json(items: &[AmpleSeqItem]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|it| {
                json!({
                    "index": it.index,
                    "d": int_str(&it.d),
                    "r": int_str(&it.r),
                    "mu": rational_str(&it.mu),
                    "theta_gap_ok": it.theta_gap_ok,
                })
            })
            .collect(),
    )
}

pub fn vectors_json(vs: &[KVector]) -> Value {
    Value::Array(vs.iter().map(vector_json).collect())
}
