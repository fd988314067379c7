//! Intersecting ratios and frame components of the seven triangle centers.
//!
//! Orthocenter and circumcenter weights use polynomial forms in the squared
//! sides. With `T_X = (sum of the other two squares) - (square opposite X)`
//! the orthocenter is proportional to `(T_B T_C, T_C T_A, T_A T_B)` and the
//! circumcenter to `(a^2 T_A, b^2 T_B, c^2 T_C)`. Both normalizers equal the
//! invariant `K = 16 S^2 > 0`, so the forms are total, including right angles.

use std::fmt;
use std::str::FromStr;

use crate::error::{GeometryError, Result};
use crate::model::{
    component_difference, Components, Components3, IrVector3, TriangleSides, VERTEX_NAMES,
};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriCenterKind {
    G,
    I,
    H,
    Q,
    Ea,
    Eb,
    Ec,
}

impl TriCenterKind {
    pub const ALL: [TriCenterKind; 7] = [
        TriCenterKind::G,
        TriCenterKind::I,
        TriCenterKind::H,
        TriCenterKind::Q,
        TriCenterKind::Ea,
        TriCenterKind::Eb,
        TriCenterKind::Ec,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::G => "G",
            Self::I => "I",
            Self::H => "H",
            Self::Q => "Q",
            Self::Ea => "E_A",
            Self::Eb => "E_B",
            Self::Ec => "E_C",
        }
    }

    /// Vertex whose excircle this is, for excenters.
    pub fn excenter_vertex(self) -> Option<usize> {
        match self {
            Self::Ea => Some(0),
            Self::Eb => Some(1),
            Self::Ec => Some(2),
            _ => None,
        }
    }

    pub fn excenter(vertex: usize) -> Self {
        [Self::Ea, Self::Eb, Self::Ec][vertex]
    }
}

impl fmt::Display for TriCenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TriCenterKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('_', "");
        Self::ALL
            .into_iter()
            .find(|k| k.name().replace('_', "") == key)
            .ok_or_else(|| format!("unknown triangle center '{s}' (expected G, I, H, Q, E_A, E_B, E_C)"))
    }
}

/// `T_X` for each vertex: twice the product of the adjacent sides times `cos X`.
pub fn cosine_terms(sides: &TriangleSides) -> [f64; 3] {
    let [a2, b2, c2] = sides.squares();
    [b2 + c2 - a2, c2 + a2 - b2, a2 + b2 - c2]
}

pub fn center_ir(kind: TriCenterKind, sides: &TriangleSides) -> Result<IrVector3> {
    let (a, b, c) = (sides.a(), sides.b(), sides.c());
    match kind {
        TriCenterKind::G => IrVector3::new(1.0, 1.0, 1.0),
        TriCenterKind::I => IrVector3::new(b / a, c / b, a / c),
        TriCenterKind::Ea => IrVector3::new(-b / a, c / b, -a / c),
        TriCenterKind::Eb => IrVector3::new(-b / a, -c / b, a / c),
        TriCenterKind::Ec => IrVector3::new(b / a, -c / b, -a / c),
        TriCenterKind::H => {
            // tan X is proportional to 1 / T_X.
            let t = cosine_terms(sides);
            let scale = sides.perimeter().powi(2);
            let tol = Tolerance::default();
            for (x, tx) in t.iter().enumerate() {
                if tol.is_zero(*tx, scale) {
                    return Err(GeometryError::RightAngleOrthocenter { vertex: VERTEX_NAMES[x] });
                }
            }
            IrVector3::new(t[0] / t[1], t[1] / t[2], t[2] / t[0])
        }
        TriCenterKind::Q => {
            // sin 2X is proportional to x^2 T_X.
            let t = cosine_terms(sides);
            let [a2, b2, c2] = sides.squares();
            let w = [a2 * t[0], b2 * t[1], c2 * t[2]];
            IrVector3::new(w[1] / w[0], w[2] / w[1], w[0] / w[2])
        }
    }
}

pub fn center_components(kind: TriCenterKind, sides: &TriangleSides) -> Components3 {
    let [a, b, c] = sides.lengths();
    let p = sides.semi_perimeter();
    let weights = match kind {
        TriCenterKind::G => return Components3::uniform(),
        TriCenterKind::I => [a, b, c],
        TriCenterKind::Ea => [-a, b, c],
        TriCenterKind::Eb => [a, -b, c],
        TriCenterKind::Ec => [a, b, -c],
        TriCenterKind::H => {
            let t = cosine_terms(sides);
            [t[1] * t[2], t[2] * t[0], t[0] * t[1]]
        }
        TriCenterKind::Q => {
            let t = cosine_terms(sides);
            let [a2, b2, c2] = sides.squares();
            [a2 * t[0], b2 * t[1], c2 * t[2]]
        }
    };
    let denom = match kind {
        TriCenterKind::I => 2.0 * p,
        TriCenterKind::Ea => 2.0 * (p - a),
        TriCenterKind::Eb => 2.0 * (p - b),
        TriCenterKind::Ec => 2.0 * (p - c),
        _ => weights.iter().sum(),
    };
    Components::new(weights.map(|w| w / denom)).expect("center weights of a valid triangle are normalizable")
}

/// `AI : AE_A`, the ratio `(b + c - a) / (a + b + c)`.
pub fn excenter_segment_ratio(sides: &TriangleSides) -> f64 {
    (sides.b() + sides.c() - sides.a()) / sides.perimeter()
}

/// Symmetric bilinear form whose quadratic form is the squared length of a
/// displacement given by zero-sum component differences.
pub(crate) fn displacement_dot(u: &[f64; 3], v: &[f64; 3], sides: &TriangleSides) -> f64 {
    let [a2, b2, c2] = sides.squares();
    -0.5 * ((u[1] * v[2] + u[2] * v[1]) * a2 + (u[2] * v[0] + u[0] * v[2]) * b2 + (u[0] * v[1] + u[1] * v[0]) * c2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerRelation {
    /// Signed ratio of the displacements `GH` and `GQ`.
    pub gh_over_gq: f64,
    /// Distance from H to the line through G and Q.
    pub collinearity_residual: f64,
}

pub fn euler_relation(sides: &TriangleSides) -> EulerRelation {
    let g = center_components(TriCenterKind::G, sides);
    let gh = component_difference(&g, &center_components(TriCenterKind::H, sides)).entries;
    let gq = component_difference(&g, &center_components(TriCenterKind::Q, sides)).entries;
    let gq_sq = displacement_dot(&gq, &gq, sides);
    let scale = sides.squares().iter().sum::<f64>();
    if gq_sq <= 1e-24 * scale {
        let gh_sq = displacement_dot(&gh, &gh, sides).max(0.0);
        return EulerRelation {
            gh_over_gq: -2.0,
            collinearity_residual: gh_sq.sqrt(),
        };
    }
    let k = displacement_dot(&gh, &gq, sides) / gq_sq;
    let off = [gh[0] - k * gq[0], gh[1] - k * gq[1], gh[2] - k * gq[2]];
    EulerRelation {
        gh_over_gq: k,
        collinearity_residual: displacement_dot(&off, &off, sides).max(0.0).sqrt(),
    }
}
