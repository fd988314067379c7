//! Frame components, ratio tensors and projection components of
//! tetrahedron centers.

use std::fmt;
use std::str::FromStr;

use crate::error::{GeometryError, Result};
use crate::model::{
    face_components_from_tetra, ir_from_components3, tetra_components_from_face_pair, Components,
    Components3, Components4, Face, IrTensor4, IrVector3, TetraEdges, EDGES, VERTEX_NAMES,
};
use crate::tolerance::Tolerance;
use crate::tri_metrics::area_determinant;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TetCenterKind {
    G,
    I,
    Q,
    Ea,
    Eb,
    Ec,
    Ed,
    /// Components proportional to the `n`-th powers of the face areas.
    PowerIncenter(f64),
}

impl TetCenterKind {
    /// The seven named centers.
    pub const NAMED: [TetCenterKind; 7] = [
        TetCenterKind::G,
        TetCenterKind::I,
        TetCenterKind::Q,
        TetCenterKind::Ea,
        TetCenterKind::Eb,
        TetCenterKind::Ec,
        TetCenterKind::Ed,
    ];

    pub fn name(self) -> String {
        match self {
            Self::G => "G".into(),
            Self::I => "I".into(),
            Self::Q => "Q".into(),
            Self::Ea => "E_A".into(),
            Self::Eb => "E_B".into(),
            Self::Ec => "E_C".into(),
            Self::Ed => "E_D".into(),
            Self::PowerIncenter(n) => format!("P{n}"),
        }
    }

    pub fn excenter_vertex(self) -> Option<usize> {
        match self {
            Self::Ea => Some(0),
            Self::Eb => Some(1),
            Self::Ec => Some(2),
            Self::Ed => Some(3),
            _ => None,
        }
    }

    pub fn excenter(vertex: usize) -> Self {
        [Self::Ea, Self::Eb, Self::Ec, Self::Ed][vertex]
    }
}

impl fmt::Display for TetCenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for TetCenterKind {
    type Err = String;

    /// Named centers as `G, I, Q, E_A..E_D`; power incenters as `P2` or `P(0.5)`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('_', "");
        if let Some(k) = Self::NAMED.into_iter().find(|k| k.name().replace('_', "") == key) {
            return Ok(k);
        }
        if let Some(rest) = key.strip_prefix('P') {
            let rest = rest.trim_start_matches('(').trim_end_matches(')');
            if let Ok(n) = rest.parse::<f64>() {
                if n.is_finite() {
                    return Ok(Self::PowerIncenter(n));
                }
            }
        }
        Err(format!("unknown tetrahedron center '{s}' (expected G, I, Q, E_A..E_D or P<n>)"))
    }
}

/// Areas of the faces opposite each vertex, and their total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceAreas {
    pub s_a: f64,
    pub s_b: f64,
    pub s_c: f64,
    pub s_d: f64,
    pub s: f64,
}

impl FaceAreas {
    pub fn by_vertex(&self) -> [f64; 4] {
        [self.s_a, self.s_b, self.s_c, self.s_d]
    }

    /// `S - 2 S^X`, the normalizer of the excenter opposite... at vertex `x`.
    pub fn excess(&self, x: usize) -> f64 {
        self.s - 2.0 * self.by_vertex()[x]
    }

    /// Checks `S - 2 S^X > atol * S` for every vertex.
    pub fn check_excesses(&self, tol: &Tolerance) -> Result<()> {
        for x in 0..4 {
            self.checked_excess(x, tol)?;
        }
        Ok(())
    }

    pub(crate) fn checked_excess(&self, x: usize, tol: &Tolerance) -> Result<f64> {
        let excess = self.excess(x);
        if excess <= tol.atol * self.s {
            return Err(GeometryError::ExcenterDenominatorZero { vertex: VERTEX_NAMES[x], excess });
        }
        Ok(excess)
    }
}

pub fn face_areas(edges: &TetraEdges) -> FaceAreas {
    let [s_a, s_b, s_c, s_d] = Face::ALL.map(|f| area_determinant(&edges.face_sides(f)));
    FaceAreas {
        s_a,
        s_b,
        s_c,
        s_d,
        s: s_a + s_b + s_c + s_d,
    }
}

/// Circumcenter weights `U_A..U_D` and their sum `U = 144 V^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircumAux {
    pub weights: [f64; 4],
    pub total: f64,
}

impl CircumAux {
    pub fn components(&self) -> Components4 {
        Components::new(self.weights.map(|w| w / self.total)).expect("circumcenter weights of a valid tetrahedron")
    }
}

pub fn circum_aux(edges: &TetraEdges) -> CircumAux {
    let mut weights = [0.0; 4];
    for (x, w) in weights.iter_mut().enumerate() {
        let [y, z, v] = Face::from_opposite(x).vertices();
        let (yz, zv, vy) = (edges.sq(y, z), edges.sq(z, v), edges.sq(v, y));
        let half = 0.5 * (yz + zv + vy);
        *w = (half - yz) * yz * edges.sq(x, v) + (half - zv) * zv * edges.sq(x, y) + (half - vy) * vy * edges.sq(x, z)
            - yz * zv * vy;
    }
    CircumAux {
        weights,
        total: weights.iter().sum(),
    }
}

/// Alternative circumcenter weight forms, used as cross-checks of [`circum_aux`].
/// Each is proportional to the primary weights; only ratios are compared.
pub mod cross_check {
    use super::*;
    use nalgebra::Matrix3;

    /// Weights as 3x3 determinants from Cramer's rule on the equidistance system.
    pub fn circum_weights_determinant(edges: &TetraEdges) -> [f64; 4] {
        let s = |i, j| edges.sq(i, j);
        let (ab, ac, ad, bc, bd, cd) = (s(0, 1), s(0, 2), s(0, 3), s(1, 2), s(1, 3), s(2, 3));
        let det = |m: [[f64; 3]; 3]| {
            Matrix3::new(m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]).determinant()
        };
        [
            det([[-ab, bc - ac, bd - ad], [bc, -bc, cd - bd], [bd - bc, cd, -cd]]),
            det([[-ab, ac - bc, ad - bd], [ac - ab, -bc, cd - bd], [ad - ac, cd, -cd]]),
            det([[-ab, ab, ad - bd], [ab - ac, -bc, bd - cd], [ad - ac, bd - bc, -cd]]),
            det([[-ab, ab, ac - bc], [ab - ac, -bc, bc], [ac - ad, bc - bd, -cd]]),
        ]
    }

    /// Weights in the form symmetric over the face opposite each vertex.
    pub fn circum_weights_symmetric(edges: &TetraEdges) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (x, w) in out.iter_mut().enumerate() {
            let [y, z, v] = Face::from_opposite(x).vertices();
            let s = |i, j| edges.sq(i, j);
            let face_sum = s(y, z) + s(z, v) + s(v, y);
            let apex_sum = s(x, y) + s(x, z) + s(x, v);
            let d = face_sum;
            let rest = d - apex_sum;
            *w = (s(x, y) * (d - 2.0 * s(y, z)) * (d - 2.0 * s(y, v))
                + s(x, z) * (d - 2.0 * s(z, v)) * (d - 2.0 * s(z, y))
                + s(x, v) * (d - 2.0 * s(v, y)) * (d - 2.0 * s(v, z))
                + s(y, z) * (d - 2.0 * s(y, z)) * (rest - (s(y, z) + s(x, v)))
                + s(z, v) * (d - 2.0 * s(z, v)) * (rest - (s(z, v) + s(x, y)))
                + s(v, y) * (d - 2.0 * s(v, y)) * (rest - (s(v, y) + s(x, z))))
                / 3.0;
        }
        out
    }
}

pub fn tet_center_components(kind: TetCenterKind, edges: &TetraEdges) -> Result<Components4> {
    tet_center_components_with(kind, edges, &Tolerance::default())
}

pub fn tet_center_components_with(kind: TetCenterKind, edges: &TetraEdges, tol: &Tolerance) -> Result<Components4> {
    match kind {
        TetCenterKind::G => Ok(Components4::uniform()),
        TetCenterKind::Q => Ok(circum_aux(edges).components()),
        TetCenterKind::I => {
            let areas = face_areas(edges);
            Components::new(areas.by_vertex().map(|s| s / areas.s))
        }
        TetCenterKind::Ea | TetCenterKind::Eb | TetCenterKind::Ec | TetCenterKind::Ed => {
            let x = kind.excenter_vertex().expect("excenter");
            let areas = face_areas(edges);
            let excess = areas.checked_excess(x, tol)?;
            let mut w = areas.by_vertex();
            w[x] = -w[x];
            Components::new(w.map(|s| s / excess))
        }
        TetCenterKind::PowerIncenter(n) => Components::from_weights(face_areas(edges).by_vertex().map(|s| s.powf(n))),
    }
}

fn ir_tensor_from_weights(w: [f64; 4]) -> Result<IrTensor4> {
    let mut faces = [IrVector3 { ab: 1.0, bc: 1.0, ca: 1.0 }; 4];
    for face in Face::ALL {
        let [y, z, v] = face.vertices();
        for u in [y, z, v] {
            if w[u] == 0.0 {
                return Err(GeometryError::ZeroComponent { vertex: VERTEX_NAMES[u] });
            }
        }
        faces[face as usize] = IrVector3::new(w[z] / w[y], w[v] / w[z], w[y] / w[v])?;
    }
    Ok(IrTensor4 { faces })
}

/// Ratios of the four face points. Named area-based centers use signed area
/// ratios; other centers use ratios of their components.
pub fn tet_center_ir_tensor(kind: TetCenterKind, edges: &TetraEdges) -> Result<IrTensor4> {
    match kind {
        TetCenterKind::G => ir_tensor_from_weights([1.0; 4]),
        TetCenterKind::I => ir_tensor_from_weights(face_areas(edges).by_vertex()),
        TetCenterKind::Ea | TetCenterKind::Eb | TetCenterKind::Ec | TetCenterKind::Ed => {
            let x = kind.excenter_vertex().expect("excenter");
            let mut w = face_areas(edges).by_vertex();
            w[x] = -w[x];
            ir_tensor_from_weights(w)
        }
        TetCenterKind::Q | TetCenterKind::PowerIncenter(_) => {
            ir_tensor_from_weights(tet_center_components(kind, edges)?.weights())
        }
    }
}

/// Ratios of the four face points computed from Components4.
pub fn ir_tensor_from_components(beta: &Components4) -> Result<IrTensor4> {
    let mut faces = [IrVector3 { ab: 1.0, bc: 1.0, ca: 1.0 }; 4];
    for face in Face::ALL {
        faces[face as usize] = ir_from_components3(&face_components_from_tetra(beta, face)?)?;
    }
    Ok(IrTensor4 { faces })
}

struct FaceFrame {
    verts: [usize; 3],
    /// Squared side opposite each face vertex.
    opposite_sq: [f64; 3],
    half_sum: f64,
    eight_area_sq: f64,
}

impl FaceFrame {
    fn new(edges: &TetraEdges, face: Face) -> Self {
        let verts = face.vertices();
        let [y, z, v] = verts;
        let opposite_sq = [edges.sq(z, v), edges.sq(v, y), edges.sq(y, z)];
        let half_sum = 0.5 * opposite_sq.iter().sum::<f64>();
        let sides = edges.face_sides(face);
        let k = crate::tri_metrics::k_invariant(sides.a(), sides.b(), sides.c());
        Self {
            verts,
            opposite_sq,
            half_sum,
            eight_area_sq: 0.5 * k,
        }
    }

    /// Numerators of the projection components, before division by `8 S^2`.
    fn numerators(&self, sq_dists: &[f64; 4]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, o) in out.iter_mut().enumerate() {
            let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
            let p = |i: usize| sq_dists[self.verts[i]];
            // Side k2 joins k and k1; side k1 joins k2 and k.
            *o = (self.half_sum - self.opposite_sq[k]) * self.opposite_sq[k]
                + (self.half_sum - self.opposite_sq[k1]) * (p(k2) - p(k))
                + (self.half_sum - self.opposite_sq[k2]) * (p(k1) - p(k));
        }
        out
    }
}

/// Components of the orthogonal projection onto `face` of a point with
/// squared distances `sq_dists` to `A, B, C, D`, in the face's cyclic order.
pub fn projection_components(edges: &TetraEdges, sq_dists: &[f64; 4], face: Face) -> Result<Components3> {
    let frame = FaceFrame::new(edges, face);
    let num = frame.numerators(sq_dists);
    Components::from_weights(num.map(|n| n / frame.eight_area_sq))
}

/// Components of the projection of a center onto `face`, in the face's cyclic order.
pub fn projection_of_center(kind: TetCenterKind, edges: &TetraEdges, face: Face) -> Result<Components3> {
    let frame = FaceFrame::new(edges, face);
    let x = face.opposite();
    let apex_dists = [0, 1, 2, 3].map(|v| if v == x { 0.0 } else { edges.sq(x, v) });
    let apex = frame.numerators(&apex_dists);
    let split = |f: &dyn Fn(usize) -> f64| Components::from_weights([0, 1, 2].map(f));
    match kind {
        TetCenterKind::Q => split(&|k| (frame.half_sum - frame.opposite_sq[k]) * frame.opposite_sq[k] / frame.eight_area_sq),
        TetCenterKind::G => split(&|k| (apex[k] + frame.eight_area_sq) / (4.0 * frame.eight_area_sq)),
        TetCenterKind::I => {
            let areas = face_areas(edges).by_vertex();
            let total: f64 = areas.iter().sum();
            let sx = areas[x];
            split(&|k| (apex[k] + 8.0 * areas[frame.verts[k]] * sx) / (8.0 * total * sx))
        }
        other => {
            let beta = tet_center_components(other, edges)?;
            split(&|k| beta[frame.verts[k]] + beta[x] * apex[k] / frame.eight_area_sq)
        }
    }
}

/// Per-condition residuals of the four-face concurrency test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrencyReport {
    /// `|lambda_1 lambda_2 lambda_3 - 1|` for each face, in face order.
    pub ceva: [f64; 4],
    /// Cross-face ratio mismatch on each shared edge, in edge order.
    pub cross_face: [f64; 6],
    pub concurrent: bool,
    /// Common center, rebuilt from the faces `BCD` and `CDA`, when concurrent.
    pub components: Option<Components4>,
    /// Largest deviation of the input faces from the faces of the rebuilt center.
    pub reconstruction: Option<f64>,
}

pub fn concurrency_conditions(faces: &[Components3; 4], tol: &Tolerance) -> Result<ConcurrencyReport> {
    let mut ceva = [0.0; 4];
    for face in Face::ALL {
        let c = &faces[face as usize];
        for k in 0..3 {
            if c[k] == 0.0 {
                return Err(GeometryError::DegenerateDenominator);
            }
        }
        ceva[face as usize] = ((c[1] / c[0]) * (c[2] / c[1]) * (c[0] / c[2]) - 1.0).abs();
    }
    let mut cross_face = [0.0; 6];
    let mut concurrent = ceva.iter().all(|&r| r <= tol.rtol);
    for (k, &(i, j)) in EDGES.iter().enumerate() {
        let others: Vec<usize> = (0..4).filter(|&v| v != i && v != j).collect();
        let lhs = crate::model::face_ratio(faces, Face::from_opposite(others[0]), i, j)?;
        let rhs = crate::model::face_ratio(faces, Face::from_opposite(others[1]), i, j)?;
        cross_face[k] = (lhs - rhs).abs();
        concurrent &= tol.close(lhs, rhs);
    }
    let (components, reconstruction) = if concurrent {
        let beta = tetra_components_from_face_pair(&faces[0], &faces[1])?;
        let mut worst: f64 = 0.0;
        for face in Face::ALL {
            let rebuilt = face_components_from_tetra(&beta, face)?;
            for k in 0..3 {
                worst = worst.max((rebuilt[k] - faces[face as usize][k]).abs());
            }
        }
        (Some(beta), Some(worst))
    } else {
        (None, None)
    };
    Ok(ConcurrencyReport {
        ceva,
        cross_face,
        concurrent,
        components,
        reconstruction,
    })
}
