//! Shared data types and the frame-component algebra common to triangles
//! and tetrahedra.
//!
//! Vertices are indexed `A = 0, B = 1, C = 2, D = 3`. A triangle side is
//! indexed by its opposite vertex (`a = BC`, `b = CA`, `c = AB`). The faces
//! of a tetrahedron are indexed by their opposite vertex and list their own
//! vertices in cyclic order: `BCD`, `CDA`, `DAB`, `ABC`.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use crate::error::{GeometryError, Result};
use crate::tolerance::Tolerance;

pub const VERTEX_NAMES: [&str; 4] = ["A", "B", "C", "D"];

/// Vertex pairs of the six tetrahedron edges, in storage order.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)];
pub const EDGE_NAMES: [&str; 6] = ["AB", "AC", "AD", "BC", "CD", "DB"];

/// Index into [`EDGES`] of the edge joining `i` and `j`.
pub fn edge_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (2, 3) => 4,
        (1, 3) => 5,
        _ => panic!("no edge between vertices {i} and {j}"),
    }
}

/// Face of a tetrahedron, named by its vertices in cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    Bcd,
    Cda,
    Dab,
    Abc,
}

impl Face {
    pub const ALL: [Face; 4] = [Face::Bcd, Face::Cda, Face::Dab, Face::Abc];

    pub fn opposite(self) -> usize {
        self as usize
    }

    pub fn from_opposite(vertex: usize) -> Face {
        Face::ALL[vertex]
    }

    /// The face's vertices in cyclic order.
    pub fn vertices(self) -> [usize; 3] {
        let x = self.opposite();
        [(x + 1) % 4, (x + 2) % 4, (x + 3) % 4]
    }

    pub fn name(self) -> &'static str {
        ["BCD", "CDA", "DAB", "ABC"][self as usize]
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Face {
    type Err = String;

    /// Accepts a face name in any vertex order, or the single opposite vertex.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        if upper.len() == 1 {
            if let Some(i) = VERTEX_NAMES.iter().position(|v| *v == upper) {
                return Ok(Face::from_opposite(i));
            }
        }
        let mut letters: Vec<char> = upper.chars().collect();
        letters.sort_unstable();
        letters.dedup();
        if letters.len() == 3 && upper.len() == 3 {
            for face in Face::ALL {
                let mut own: Vec<char> = face.name().chars().collect();
                own.sort_unstable();
                if own == letters {
                    return Ok(face);
                }
            }
        }
        Err(format!("unknown face '{s}' (expected BCD, CDA, DAB, ABC or A..D)"))
    }
}

/// Validated side lengths of triangle ABC.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleSides {
    a: f64,
    b: f64,
    c: f64,
}

impl TriangleSides {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        validate_triangle(a, b, c)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Sides indexed by opposite vertex.
    pub fn lengths(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn squares(&self) -> [f64; 3] {
        [self.a * self.a, self.b * self.b, self.c * self.c]
    }

    pub fn perimeter(&self) -> f64 {
        self.a + self.b + self.c
    }

    pub fn semi_perimeter(&self) -> f64 {
        0.5 * self.perimeter()
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(s * self.a, s * self.b, s * self.c)
    }
}

pub fn validate_triangle(a: f64, b: f64, c: f64) -> Result<TriangleSides> {
    for (name, value) in [("a", a), ("b", b), ("c", c)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(GeometryError::NonPositiveLength { name, value });
        }
    }
    let checks = [(("b", "c"), b + c, "a", a), (("c", "a"), c + a, "b", b), (("a", "b"), a + b, "c", c)];
    for (pair, sum, opposite, value) in checks {
        if sum <= value {
            return Err(GeometryError::TriangleInequalityViolated { pair, sum, opposite, value });
        }
    }
    Ok(TriangleSides { a, b, c })
}

/// The edge-length polynomials of a tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgePolynomials {
    /// Half the sum of the six squared edges.
    pub delta2: f64,
    /// Half the sum of products of squared opposite edges.
    pub q2: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl EdgePolynomials {
    pub fn from_lengths(lengths: &[f64; 6]) -> Self {
        let [ab, ac, ad, bc, cd, db] = lengths.map(|x| x * x);
        let delta2 = 0.5 * (ab + ac + ad + bc + cd + db);
        let q2 = 0.5 * (ab * cd + bc * ad + ac * db);
        let t1 = q2 * delta2;
        let t2 = 0.5 * (ab * cd * (ab + cd) + bc * ad * (bc + ad) + ac * db * (ac + db));
        let t3 = 0.25 * (ab * bc * ac + bc * cd * db + cd * ad * ac + ad * ab * db);
        Self { delta2, q2, t1, t2, t3 }
    }

    /// `t1 - t2 - t3`, equal to `36 V^2`.
    pub fn gram(&self) -> f64 {
        self.t1 - self.t2 - self.t3
    }
}

/// `t1 - t2 - t3` for raw edge lengths `(AB, AC, AD, BC, CD, DB)`; may be `<= 0`.
pub fn gram_volume_term(lengths: &[f64; 6]) -> f64 {
    EdgePolynomials::from_lengths(lengths).gram()
}

/// Validated edge lengths of tetrahedron ABCD in the order `AB, AC, AD, BC, CD, DB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetraEdges {
    lengths: [f64; 6],
}

impl TetraEdges {
    pub fn new(lengths: [f64; 6]) -> Result<Self> {
        validate_tetrahedron(lengths, &Tolerance::default())
    }

    pub fn lengths(&self) -> [f64; 6] {
        self.lengths
    }

    pub fn squares(&self) -> [f64; 6] {
        self.lengths.map(|x| x * x)
    }

    pub fn len(&self, i: usize, j: usize) -> f64 {
        self.lengths[edge_index(i, j)]
    }

    pub fn sq(&self, i: usize, j: usize) -> f64 {
        let l = self.len(i, j);
        l * l
    }

    pub fn max_edge(&self) -> f64 {
        self.lengths.iter().copied().fold(0.0, f64::max)
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.squares().iter().sum()
    }

    pub fn polynomials(&self) -> EdgePolynomials {
        EdgePolynomials::from_lengths(&self.lengths)
    }

    pub fn gram(&self) -> f64 {
        self.polynomials().gram()
    }

    /// The face as a triangle whose vertices are the face's cyclic vertices.
    pub fn face_sides(&self, face: Face) -> TriangleSides {
        let [y, z, w] = face.vertices();
        TriangleSides {
            a: self.len(z, w),
            b: self.len(w, y),
            c: self.len(y, z),
        }
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.lengths.map(|x| s * x))
    }

    /// Edges after relabeling vertex `i` as `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Result<Self> {
        let mut out = [0.0; 6];
        for (k, &(i, j)) in EDGES.iter().enumerate() {
            out[edge_index(perm[i], perm[j])] = self.lengths[k];
        }
        Self::new(out)
    }
}

pub fn validate_tetrahedron(lengths: [f64; 6], tol: &Tolerance) -> Result<TetraEdges> {
    for (name, value) in EDGE_NAMES.iter().zip(lengths) {
        if !(value > 0.0 && value.is_finite()) {
            return Err(GeometryError::NonPositiveLength { name, value });
        }
    }
    let edges = TetraEdges { lengths };
    for face in Face::ALL {
        let s = edges.face_sides(face);
        if validate_triangle(s.a, s.b, s.c).is_err() {
            return Err(GeometryError::FaceTriangleInequalityViolated { face });
        }
    }
    let poly = edges.polynomials();
    let threshold = tol.atol * poly.delta2.powi(3);
    let gram = poly.gram();
    if gram <= threshold {
        return Err(GeometryError::NotRealizable { gram, threshold });
    }
    Ok(edges)
}

/// Weights summing to one, one per vertex of an `N`-vertex simplex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Components<const N: usize> {
    weights: [f64; N],
}

pub type Components3 = Components<3>;
pub type Components4 = Components<4>;

impl<const N: usize> Components<N> {
    /// Accepts weights already summing to one and renormalizes them.
    pub fn new(weights: [f64; N]) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        let scale: f64 = weights.iter().map(|w| w.abs()).sum::<f64>().max(1.0);
        let tol = Tolerance::default();
        if !sum.is_finite() || !tol.close_scaled(sum, 1.0, scale) {
            return Err(GeometryError::ComponentSum { sum });
        }
        Ok(Self { weights: weights.map(|w| w / sum) })
    }

    /// Normalizes arbitrary homogeneous weights.
    pub fn from_weights(weights: [f64; N]) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        let scale: f64 = weights.iter().map(|w| w.abs()).sum();
        if !(sum.is_finite() && scale > 0.0) || sum.abs() <= 16.0 * f64::EPSILON * scale {
            return Err(GeometryError::DegenerateDenominator);
        }
        Ok(Self { weights: weights.map(|w| w / sum) })
    }

    pub fn indicator(vertex: usize) -> Self {
        let mut weights = [0.0; N];
        weights[vertex] = 1.0;
        Self { weights }
    }

    pub fn uniform() -> Self {
        Self { weights: [1.0 / N as f64; N] }
    }

    pub fn weights(&self) -> [f64; N] {
        self.weights
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

impl<const N: usize> Index<usize> for Components<N> {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.weights[i]
    }
}

/// Difference of two component vectors; entries sum to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaComponents<const N: usize> {
    pub entries: [f64; N],
}

impl<const N: usize> DeltaComponents<N> {
    pub fn sum(&self) -> f64 {
        self.entries.iter().sum()
    }
}

/// Entrywise `c2 - c1`.
pub fn component_difference<const N: usize>(c1: &Components<N>, c2: &Components<N>) -> DeltaComponents<N> {
    let mut entries = [0.0; N];
    for (i, e) in entries.iter_mut().enumerate() {
        *e = c2[i] - c1[i];
    }
    DeltaComponents { entries }
}

/// Intersecting ratios `(lambda_AB, lambda_BC, lambda_CA)` of a triangle center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrVector3 {
    pub ab: f64,
    pub bc: f64,
    pub ca: f64,
}

impl IrVector3 {
    pub fn new(ab: f64, bc: f64, ca: f64) -> Result<Self> {
        for value in [ab, bc, ca] {
            if value == 0.0 || !value.is_finite() {
                return Err(GeometryError::InvalidRatio { value });
            }
        }
        let ir = Self { ab, bc, ca };
        let product = ir.ceva_product();
        if !Tolerance::default().close(product, 1.0) {
            return Err(GeometryError::CevaViolated { product });
        }
        Ok(ir)
    }

    pub fn ceva_product(&self) -> f64 {
        self.ab * self.bc * self.ca
    }

    pub fn ba(&self) -> f64 {
        1.0 / self.ab
    }
    pub fn cb(&self) -> f64 {
        1.0 / self.bc
    }
    pub fn ac(&self) -> f64 {
        1.0 / self.ca
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.ab, self.bc, self.ca]
    }
}

/// Ratios of the four face points of a tetrahedron center, one triple per
/// face in face order, each in the face's cyclic vertex order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrTensor4 {
    pub faces: [IrVector3; 4],
}

impl IrTensor4 {
    pub fn face(&self, face: Face) -> &IrVector3 {
        &self.faces[face as usize]
    }
}

/// `alpha_A = 1 / (1 + lambda_AB + lambda_AC)`, and `alpha_B`, `alpha_C` by ratio.
pub fn components_from_ir3(ir: &IrVector3) -> Result<Components3> {
    let denom = 1.0 + ir.ab + ir.ac();
    let scale = 1.0 + ir.ab.abs() + ir.ac().abs();
    if denom.abs() <= 16.0 * f64::EPSILON * scale {
        return Err(GeometryError::DegenerateDenominator);
    }
    let alpha_a = 1.0 / denom;
    Components::new([alpha_a, ir.ab * alpha_a, ir.ac() * alpha_a])
        .or_else(|_| Components::from_weights([1.0, ir.ab, ir.ac()]))
}

/// `lambda_AB = alpha_B / alpha_A` and cyclically.
pub fn ir_from_components3(c: &Components3) -> Result<IrVector3> {
    for i in 0..3 {
        if c[i] == 0.0 {
            return Err(GeometryError::ZeroComponent { vertex: VERTEX_NAMES[i] });
        }
    }
    Ok(IrVector3 {
        ab: c[1] / c[0],
        bc: c[2] / c[1],
        ca: c[0] / c[2],
    })
}

/// `l1 l2 l3 - (l1 + l2 + l3) - 2`; zero when the three cevian ratios meet in a point.
pub fn fractional_ratio_determinant(lam_al: f64, lam_bm: f64, lam_cn: f64) -> f64 {
    lam_al * lam_bm * lam_cn - (lam_al + lam_bm + lam_cn) - 2.0
}

/// Vertex-to-foot ratios of a triangle center: `kappa = AP / AL`, `lambda = AP / PL`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FootRatios3 {
    pub fractional: [f64; 3],
    pub integral: [f64; 3],
}

pub fn vertex_foot_ratios3(c: &Components3) -> Result<FootRatios3> {
    let mut fractional = [0.0; 3];
    let mut integral = [0.0; 3];
    for i in 0..3 {
        if c[i] == 0.0 {
            return Err(GeometryError::ZeroComponent { vertex: VERTEX_NAMES[i] });
        }
        if c[i] == 1.0 {
            return Err(GeometryError::UnitComponent { vertex: VERTEX_NAMES[i] });
        }
        integral[i] = 1.0 - c[i];
        fractional[i] = integral[i] / c[i];
    }
    Ok(FootRatios3 { fractional, integral })
}

/// Vertex-to-face-point ratios of a tetrahedron center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FootRatios4 {
    pub fractional: [f64; 4],
    pub integral: [f64; 4],
}

/// `kappa_X = 1 - beta_X`; `lambda_X` is infinite where `beta_X = 0`.
pub fn vertex_foot_ratios4(c: &Components4) -> Result<FootRatios4> {
    let mut fractional = [0.0; 4];
    let mut integral = [0.0; 4];
    for i in 0..4 {
        if c[i] == 1.0 {
            return Err(GeometryError::UnitComponent { vertex: VERTEX_NAMES[i] });
        }
        integral[i] = 1.0 - c[i];
        fractional[i] = integral[i] / c[i];
    }
    Ok(FootRatios4 { fractional, integral })
}

/// Components of the point where the line from the opposite vertex through
/// the center meets `face`, listed in the face's cyclic vertex order.
pub fn face_components_from_tetra(beta: &Components4, face: Face) -> Result<Components3> {
    let x = face.opposite();
    let rest = 1.0 - beta[x];
    if rest.abs() <= 16.0 * f64::EPSILON {
        return Err(GeometryError::UnitComponent { vertex: VERTEX_NAMES[x] });
    }
    let [y, z, w] = face.vertices();
    Components::new([beta[y] / rest, beta[z] / rest, beta[w] / rest])
        .or_else(|_| Components::from_weights([beta[y], beta[z], beta[w]]))
}

/// Rebuilds the tetrahedron components from the face points on `BCD`
/// (ordered B, C, D) and `CDA` (ordered C, D, A).
pub fn tetra_components_from_face_pair(on_bcd: &Components3, on_cda: &Components3) -> Result<Components4> {
    let alpha_b_of_pa = on_bcd[0];
    let alpha_a_of_pb = on_cda[2];
    let denom = 1.0 - alpha_a_of_pb * alpha_b_of_pa;
    if denom.abs() <= 16.0 * f64::EPSILON * (1.0 + (alpha_a_of_pb * alpha_b_of_pa).abs()) {
        return Err(GeometryError::DegenerateDenominator);
    }
    let beta_a = alpha_a_of_pb * (1.0 - alpha_b_of_pa) / denom;
    let beta_b = alpha_b_of_pa * (1.0 - alpha_a_of_pb) / denom;
    let beta_c = on_bcd[1] * (1.0 - beta_a);
    let beta_d = on_bcd[2] * (1.0 - beta_a);

    let tol = Tolerance::default();
    let check_c = on_cda[0] * (1.0 - beta_b);
    let check_d = on_cda[1] * (1.0 - beta_b);
    let defect = (check_c - beta_c).abs().max((check_d - beta_d).abs());
    let scale = beta_c.abs().max(beta_d.abs()).max(1.0);
    if !tol.is_zero(defect, scale) {
        return Err(GeometryError::InconsistentFaces { defect });
    }
    Components::new([beta_a, beta_b, beta_c, beta_d])
}

/// For the shared edge `(i, j)`, the two faces containing it are the faces
/// opposite the remaining vertices. Returns the ratio `alpha_j / alpha_i` on `face`.
pub(crate) fn face_ratio(faces: &[Components3; 4], face: Face, i: usize, j: usize) -> Result<f64> {
    let verts = face.vertices();
    let pos = |v: usize| verts.iter().position(|&u| u == v).expect("vertex on face");
    let (ai, aj) = (faces[face as usize][pos(i)], faces[face as usize][pos(j)]);
    if ai == 0.0 {
        return Err(GeometryError::DegenerateDenominator);
    }
    Ok(aj / ai)
}

/// Residuals of the six cross-face ratio equalities, in [`EDGES`] order.
pub fn cross_face_residuals(faces: &[Components3; 4]) -> Result<[f64; 6]> {
    let mut out = [0.0; 6];
    for (k, &(i, j)) in EDGES.iter().enumerate() {
        let others: Vec<usize> = (0..4).filter(|&v| v != i && v != j).collect();
        let lhs = face_ratio(faces, Face::from_opposite(others[0]), i, j)?;
        let rhs = face_ratio(faces, Face::from_opposite(others[1]), i, j)?;
        out[k] = (lhs - rhs).abs();
    }
    Ok(out)
}

/// Largest violation of the cross-face ratio equalities; zero iff the four
/// vertex-to-face-point lines share a point.
pub fn concurrency_defect(faces: &[Components3; 4]) -> Result<f64> {
    Ok(cross_face_residuals(faces)?.into_iter().fold(0.0, f64::max))
}
