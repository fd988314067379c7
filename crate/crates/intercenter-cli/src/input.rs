//! Input documents: lengths directly, or coordinates measured into lengths.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{input, CliError};
use crate::report::Real;

pub const TRIANGLE_KEYS: [&str; 3] = ["a", "b", "c"];
pub const TETRA_KEYS: [&str; 6] = ["ab", "ac", "ad", "bc", "cd", "db"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Triangle,
    Tetrahedron,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rtol: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atol: Option<Real>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lengths: Option<BTreeMap<String, Real>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Vec<Real>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub options: Option<Options>,
}

impl InputDocument {
    pub fn from_lengths(kind: Kind, values: &[f64]) -> Self {
        let keys: &[&str] = match kind {
            Kind::Triangle => &TRIANGLE_KEYS,
            Kind::Tetrahedron => &TETRA_KEYS,
        };
        let lengths = keys.iter().zip(values).map(|(k, &v)| (k.to_string(), Real(v))).collect();
        Self {
            kind,
            lengths: Some(lengths),
            coordinates: None,
            options: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let doc: Self = serde_json::from_str(&text)?;
        match (&doc.lengths, &doc.coordinates) {
            (Some(_), Some(_)) => Err(input("input document has both lengths and coordinates")),
            (None, None) => Err(input("input document needs lengths or coordinates")),
            _ => Ok(doc),
        }
    }

    /// Lengths in canonical order, measured from coordinates if those were given.
    /// The echoed document gains the measured lengths.
    pub fn resolve(&mut self, expected: Kind) -> Result<Vec<f64>, CliError> {
        if self.kind != expected {
            return Err(input(format!("input document is a {:?}, expected a {:?}", self.kind, expected)));
        }
        let keys: &[&str] = match expected {
            Kind::Triangle => &TRIANGLE_KEYS,
            Kind::Tetrahedron => &TETRA_KEYS,
        };
        if let Some(map) = &self.lengths {
            if let Some(extra) = map.keys().find(|k| !keys.contains(&k.as_str())) {
                return Err(input(format!("unknown length '{extra}' (expected {})", keys.join(", "))));
            }
            return keys
                .iter()
                .map(|k| map.get(*k).map(|r| r.0).ok_or_else(|| input(format!("missing length '{k}'"))))
                .collect();
        }
        let points = self.coordinates.as_ref().expect("checked on load");
        let lengths = measure(points, expected)?;
        self.lengths = Some(keys.iter().zip(&lengths).map(|(k, &v)| (k.to_string(), Real(v))).collect());
        Ok(lengths)
    }
}

fn measure(points: &[Vec<Real>], kind: Kind) -> Result<Vec<f64>, CliError> {
    let (count, dims): (usize, &[usize]) = match kind {
        Kind::Triangle => (3, &[2, 3]),
        Kind::Tetrahedron => (4, &[3]),
    };
    if points.len() != count {
        return Err(input(format!("expected {count} points, got {}", points.len())));
    }
    let dim = points[0].len();
    if !dims.contains(&dim) || points.iter().any(|p| p.len() != dim) {
        return Err(input(format!("points must all have dimension {dims:?}")));
    }
    if points.iter().flatten().any(|x| !x.0.is_finite()) {
        return Err(input("coordinates must be finite"));
    }
    let dist = |i: usize, j: usize| {
        points[i].iter().zip(&points[j]).map(|(x, y)| (x.0 - y.0).powi(2)).sum::<f64>().sqrt()
    };
    Ok(match kind {
        // a = BC, b = CA, c = AB
        Kind::Triangle => vec![dist(1, 2), dist(2, 0), dist(0, 1)],
        Kind::Tetrahedron => intercenter::model::EDGES.iter().map(|&(i, j)| dist(i, j)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_coordinates() {
        let mut doc: InputDocument =
            serde_json::from_str(r#"{"kind":"triangle","coordinates":[[0,0],[4,0],[0,3]]}"#).unwrap();
        assert_eq!(doc.resolve(Kind::Triangle).unwrap(), vec![5.0, 3.0, 4.0]);
        assert!(doc.lengths.is_some());
    }

    #[test]
    fn rejects_kind_mismatch_and_missing_keys() {
        let mut doc = InputDocument::from_lengths(Kind::Triangle, &[3.0, 4.0, 5.0]);
        assert!(doc.resolve(Kind::Tetrahedron).is_err());
        doc.lengths.as_mut().unwrap().remove("b");
        assert!(doc.resolve(Kind::Triangle).is_err());
    }
}
