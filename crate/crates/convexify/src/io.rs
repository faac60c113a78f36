//! File formats: the JSON set format {"dim", "kind", "data"} with rationals
//! as "p/q" strings (or JSON numbers converted exactly), CSV point lists,
//! and serde helpers for rational fields.

use crate::hull::Polytope;
use crate::point::Point;
use crate::scalar::{format_scalar, from_f64_exact, parse_scalar, Scalar};
use crate::sets::{BoxUnion, PointSet};
use crate::Error;
use serde_json::{json, Value};

/// Serde adapter: Scalar as a "p/q" string.
pub mod rat_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let raw = String::deserialize(d)?;
        parse_scalar(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: Option<Scalar> as an optional "p/q" string.
pub mod rat_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&format_scalar(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Scalar>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|r| parse_scalar(&r).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Serde adapter: Vec<Scalar> as "p/q" strings.
pub mod rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(format_scalar))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|r| parse_scalar(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Any of the three set carriers, as read from a file.
#[derive(Clone, Debug)]
pub enum SetKind {
    Points(PointSet),
    Boxes(BoxUnion),
    Body(Polytope),
}

impl SetKind {
    pub fn dim(&self) -> usize {
        match self {
            SetKind::Points(a) => a.dim,
            SetKind::Boxes(u) => u.dim,
            SetKind::Body(p) => p.dim,
        }
    }
}

fn scalar_from_value(v: &Value, ctx: &str) -> Result<Scalar, Error> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| Error::Input(format!("{ctx}: {e}"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::scalar::rat(i))
            } else if let Some(f) = n.as_f64() {
                from_f64_exact(f).ok_or_else(|| Error::Input(format!("{ctx}: non-finite number")))
            } else {
                Err(Error::Input(format!("{ctx}: unrepresentable number")))
            }
        }
        other => Err(Error::Input(format!("{ctx}: expected rational, got {other}"))),
    }
}

fn point_from_value(v: &Value, dim: usize, ctx: &str) -> Result<Point, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Input(format!("{ctx}: expected coordinate array")))?;
    if arr.len() != dim {
        return Err(Error::Input(format!(
            "{ctx}: expected {dim} coordinates, got {}",
            arr.len()
        )));
    }
    let coords = arr
        .iter()
        .enumerate()
        .map(|(i, c)| scalar_from_value(c, &format!("{ctx}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Point::new(coords))
}

pub fn set_from_json(v: &Value) -> Result<SetKind, Error> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Input("missing or invalid \"dim\"".into()))? as usize;
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Input("missing \"kind\"".into()))?;
    let data = v
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("missing \"data\" array".into()))?;
    match kind {
        "points" | "polytope" => {
            let pts = data
                .iter()
                .enumerate()
                .map(|(i, p)| point_from_value(p, dim, &format!("data[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let set = PointSet::new(dim, pts)?;
            if kind == "points" {
                Ok(SetKind::Points(set))
            } else {
                Ok(SetKind::Body(set.hull()))
            }
        }
        "boxes" => {
            let boxes = data
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let lo = b
                        .get("lo")
                        .ok_or_else(|| Error::Input(format!("data[{i}]: missing \"lo\"")))?;
                    let hi = b
                        .get("hi")
                        .ok_or_else(|| Error::Input(format!("data[{i}]: missing \"hi\"")))?;
                    Ok((
                        point_from_value(lo, dim, &format!("data[{i}].lo"))?,
                        point_from_value(hi, dim, &format!("data[{i}].hi"))?,
                    ))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(SetKind::Boxes(BoxUnion::new(dim, boxes)?))
        }
        other => Err(Error::Input(format!("unknown kind {other:?}"))),
    }
}

fn point_to_value(p: &Point) -> Value {
    Value::Array(p.0.iter().map(|c| Value::String(format_scalar(c))).collect())
}

pub fn set_to_json(set: &SetKind) -> Value {
    match set {
        SetKind::Points(a) => json!({
            "dim": a.dim,
            "kind": "points",
            "data": a.points.iter().map(point_to_value).collect::<Vec<_>>(),
        }),
        SetKind::Boxes(u) => json!({
            "dim": u.dim,
            "kind": "boxes",
            "data": u
                .boxes
                .iter()
                .map(|(lo, hi)| json!({"lo": point_to_value(lo), "hi": point_to_value(hi)}))
                .collect::<Vec<_>>(),
        }),
        SetKind::Body(p) => json!({
            "dim": p.dim,
            "kind": "polytope",
            "data": p.vertices.iter().map(point_to_value).collect::<Vec<_>>(),
        }),
    }
}

pub fn load_set(path: &str) -> Result<SetKind, Error> {
    let text = std::fs::read_to_string(path)?;
    if path.ends_with(".csv") {
        return points_from_csv(&text);
    }
    let v: Value = serde_json::from_str(&text)?;
    set_from_json(&v)
}

pub fn save_set(set: &SetKind, path: &str) -> Result<(), Error> {
    let v = set_to_json(set);
    std::fs::write(path, serde_json::to_string_pretty(&v)? + "\n")?;
    Ok(())
}

/// CSV: one point per row, rational or decimal entries.
pub fn points_from_csv(text: &str) -> Result<SetKind, Error> {
    let mut pts: Vec<Point> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split(',')
            .map(|c| {
                parse_scalar(c).map_err(|e| Error::Input(format!("line {}: {e}", lineno + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        pts.push(Point::new(coords));
    }
    if pts.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = pts[0].dim();
    Ok(SetKind::Points(PointSet::new(dim, pts)?))
}

pub fn points_to_csv(a: &PointSet) -> String {
    let mut out = String::new();
    for p in &a.points {
        let row: Vec<String> = p.0.iter().map(format_scalar).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
