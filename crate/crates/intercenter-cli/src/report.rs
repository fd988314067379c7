//! Report document and its two serializations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::CliError;
use crate::input::InputDocument;

pub const CLOSED_FORM: &str = "closed-form";

/// A float written with 17 significant digits, so it reads back bit-exact.
/// Non-finite values are written as the strings `inf`, `-inf`, `nan`.
#[derive(Debug, Clone, Copy)]
pub struct Real(pub f64);

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0 || (self.0.is_nan() && other.0.is_nan())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.0;
        if x.is_nan() {
            f.write_str("nan")
        } else if x.is_infinite() {
            f.write_str(if x > 0.0 { "inf" } else { "-inf" })
        } else {
            write!(f, "{x:.16e}")
        }
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let n = serde_json::Number::from_str(&self.to_string()).map_err(serde::ser::Error::custom)?;
            n.serialize(s)
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    // Through `Value`, which understands arbitrary-precision numbers.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match Value::deserialize(d)? {
            Value::Number(n) => n.as_f64().map(Real).ok_or_else(|| D::Error::custom(format!("{n} is not an f64"))),
            Value::String(t) => match t.as_str() {
                "inf" => Ok(Real(f64::INFINITY)),
                "-inf" => Ok(Real(f64::NEG_INFINITY)),
                "nan" => Ok(Real(f64::NAN)),
                _ => Err(D::Error::custom(format!("expected a number, got '{t}'"))),
            },
            other => Err(D::Error::custom(format!("expected a number, got {other}"))),
        }
    }
}

pub fn reals<const N: usize>(xs: [f64; N]) -> Vec<Real> {
    xs.into_iter().map(Real).collect()
}

/// A computed value, tagged with how it was obtained and checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: Real,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Real>,
    /// Largest scaled disagreement among the independent paths.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Real>,
}

impl Quantity {
    pub fn closed(value: f64) -> Self {
        Self {
            value: Real(value),
            provenance: CLOSED_FORM.to_string(),
            closed_form: None,
            oracle: None,
            residual: None,
        }
    }

    /// Closed-form value cross-checked against an oracle value, residual relative to `scale`.
    pub fn checked(value: f64, oracle: f64, scale: f64) -> Self {
        Self {
            oracle: Some(Real(oracle)),
            residual: Some(Real((value - oracle).abs() / scale)),
            ..Self::closed(value)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentsEntry {
    pub weights: Vec<Real>,
    pub provenance: String,
    /// Gap between the realized point and the oracle point, over the length scale.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_residual: Option<Real>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityEntry {
    pub slack: Real,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointProjection {
    pub squared_distances: Vec<Real>,
    pub components: ComponentsEntry,
    /// `|PA^2 - d_A^2|` after locating the point from the other three distances.
    pub consistency_residual: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionSection {
    pub face: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub centers: BTreeMap<String, ComponentsEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub distance_to_face: BTreeMap<String, Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointProjection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceDoc {
    pub rtol: Real,
    pub atol: Real,
}

type Section<T> = Option<BTreeMap<String, T>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub input: InputDocument,
    pub tolerance: ToleranceDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Section<ComponentsEntry>,
    /// Side ratios: keyed `AB`, `BC`, `CA` for triangles, `face:edge` for tetrahedra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ir: Section<BTreeMap<String, Real>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distances: Section<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Section<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inequalities: Section<InequalityEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub areas: Section<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionSection>,
    /// Requested items that are undefined for this input, with the reason.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub unavailable: BTreeMap<String, String>,
}

/// Pretty JSON with sorted keys; object keys sort because `Value` maps are ordered.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(doc)?;
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

/// Flat `key,value` rows; nested keys joined with `.`, array items by index.
pub fn to_csv<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(doc)?;
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"])?;
    for (k, v) in rows {
        w.write_record([k, v])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip_bit_exact() {
        for x in [1.0 / 3.0, 0.1, 1e-300, -2.5e17, f64::MAX, f64::MIN_POSITIVE, 0.0] {
            let s = serde_json::to_string(&Real(x)).unwrap();
            let back: Real = serde_json::from_str(&s).unwrap();
            assert_eq!(back.0.to_bits(), x.to_bits(), "{s}");
        }
        let s = serde_json::to_string(&Real(f64::INFINITY)).unwrap();
        assert_eq!(s, "\"inf\"");
        assert_eq!(serde_json::from_str::<Real>(&s).unwrap(), Real(f64::INFINITY));
    }

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(Real(0.25).to_string(), "2.5000000000000000e-1");
    }

    #[test]
    fn csv_flattens_nested_keys() {
        let v = serde_json::json!({"b": {"x": [1, 2]}, "a": "s"});
        let text = to_csv(&v).unwrap();
        assert_eq!(text, "key,value\na,s\nb.x.0,1\nb.x.1,2\n");
    }
}
