//! Coordinate ground truth.
//!
//! Lengths are embedded in a fixed gauge (A at the origin, B on the first
//! axis, positive orientation) and every center is computed from its
//! classical definition with small linear solves. Nothing here uses the
//! closed forms of the other modules.

use nalgebra::{Matrix2, Matrix3, Matrix4, SMatrix, SVector, Vector4};
/// Point types of the oracle API.
pub use nalgebra::{Vector2, Vector3};

use crate::error::{GeometryError, Result};
use crate::model::{Components3, Components4, Face, TetraEdges, TriangleSides, VERTEX_NAMES};
use crate::tet_centers::TetCenterKind;
use crate::tolerance::Tolerance;
use crate::tri_centers::TriCenterKind;

/// Condition number above which a solve is flagged.
pub const CONDITION_WARNING: f64 = 1e12;

/// Solution of a square system plus its 2-norm condition number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solved<const N: usize> {
    pub x: SVector<f64, N>,
    pub condition: f64,
}

impl<const N: usize> Solved<N> {
    pub fn ill_conditioned(&self) -> bool {
        self.condition.is_nan() || self.condition > CONDITION_WARNING
    }
}

fn solve<const N: usize>(m: SMatrix<f64, N, N>, rhs: SVector<f64, N>) -> Solved<N>
where
    nalgebra::Const<N>: nalgebra::DimMin<nalgebra::Const<N>, Output = nalgebra::Const<N>>,
{
    let x = m.lu().solve(&rhs).unwrap_or_else(|| SVector::repeat(f64::NAN));
    let sv = nalgebra::DMatrix::from_column_slice(N, N, m.as_slice()).singular_values();
    let condition = sv.max() / sv.min();
    Solved { x, condition }
}

/// Triangle embedded in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedTriangle {
    pub pa: Vector2<f64>,
    pub pb: Vector2<f64>,
    pub pc: Vector2<f64>,
}

pub fn embed_triangle(sides: &TriangleSides) -> EmbeddedTriangle {
    let (a, b, c) = (sides.a(), sides.b(), sides.c());
    let x = (b * b + c * c - a * a) / (2.0 * c);
    let y = (b * b - x * x).max(0.0).sqrt();
    EmbeddedTriangle {
        pa: Vector2::zeros(),
        pb: Vector2::new(c, 0.0),
        pc: Vector2::new(x, y),
    }
}

impl EmbeddedTriangle {
    pub fn vertices(&self) -> [Vector2<f64>; 3] {
        [self.pa, self.pb, self.pc]
    }

    /// Side lengths measured from the coordinates, indexed by opposite vertex.
    pub fn measured_sides(&self) -> [f64; 3] {
        let v = self.vertices();
        [(v[1] - v[2]).norm(), (v[2] - v[0]).norm(), (v[0] - v[1]).norm()]
    }

    pub fn area(&self) -> f64 {
        let e1 = self.pb - self.pa;
        let e2 = self.pc - self.pa;
        0.5 * (e1.x * e2.y - e1.y * e2.x).abs()
    }

    pub fn point_from_components(&self, c: &Components3) -> Vector2<f64> {
        self.pa * c[0] + self.pb * c[1] + self.pc * c[2]
    }

    /// Norm of `sum_v c_v (V - P)`.
    pub fn frame_equation_residual(&self, c: &Components3, p: &Vector2<f64>) -> f64 {
        self.vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (v - p) * c[i])
            .sum::<Vector2<f64>>()
            .norm()
    }

    /// Inward unit normal of the side opposite `x` and a point on that side.
    fn side_line(&self, x: usize) -> (Vector2<f64>, Vector2<f64>) {
        let v = self.vertices();
        let (y, z) = (v[(x + 1) % 3], v[(x + 2) % 3]);
        let dir = (z - y).normalize();
        let mut n = Vector2::new(-dir.y, dir.x);
        if n.dot(&(v[x] - y)) < 0.0 {
            n = -n;
        }
        (n, y)
    }

    /// Signed distance from `p` to the side line opposite `x`, positive toward `x`.
    pub fn signed_side_distance(&self, x: usize, p: &Vector2<f64>) -> f64 {
        let (n, y) = self.side_line(x);
        n.dot(&(p - y))
    }

    /// Point with signed side distances `sign_x * r` for a common unknown `r`.
    fn tangent_center(&self, signs: [f64; 3]) -> Solved<3> {
        let mut m = Matrix3::zeros();
        let mut rhs = Vector3::zeros();
        for x in 0..3 {
            let (n, y) = self.side_line(x);
            m[(x, 0)] = n.x;
            m[(x, 1)] = n.y;
            m[(x, 2)] = -signs[x];
            rhs[x] = n.dot(&y);
        }
        solve(m, rhs)
    }
}

/// Center computed from its definition, with the conditioning of the solve.
pub fn definitional_center_solved(tri: &EmbeddedTriangle, kind: TriCenterKind) -> (Vector2<f64>, f64) {
    let [a, b, c] = tri.vertices();
    match kind {
        TriCenterKind::G => ((a + b + c) / 3.0, 1.0),
        TriCenterKind::I | TriCenterKind::Ea | TriCenterKind::Eb | TriCenterKind::Ec => {
            let mut signs = [1.0; 3];
            if let Some(x) = kind.excenter_vertex() {
                signs[x] = -1.0;
            }
            let s = tri.tangent_center(signs);
            (Vector2::new(s.x[0], s.x[1]), s.condition)
        }
        TriCenterKind::Q => {
            let m = Matrix2::new(2.0 * (b - a).x, 2.0 * (b - a).y, 2.0 * (c - a).x, 2.0 * (c - a).y);
            let rhs = Vector2::new(b.norm_squared() - a.norm_squared(), c.norm_squared() - a.norm_squared());
            let s = solve(m, rhs);
            (s.x, s.condition)
        }
        TriCenterKind::H => {
            let bc = c - b;
            let ca = c - a;
            let m = Matrix2::new(bc.x, bc.y, ca.x, ca.y);
            let rhs = Vector2::new(bc.dot(&a), ca.dot(&b));
            let s = solve(m, rhs);
            (s.x, s.condition)
        }
    }
}

pub fn definitional_center(tri: &EmbeddedTriangle, kind: TriCenterKind) -> Vector2<f64> {
    definitional_center_solved(tri, kind).0
}

/// Product of the signed section ratios cut by the line `point + t * direction`
/// on the side lines AB, BC, CA.
pub fn menelaus_product(tri: &EmbeddedTriangle, point: &Vector2<f64>, direction: &Vector2<f64>) -> Result<f64> {
    const SIDES: [(usize, usize, &str); 3] = [(0, 1, "AB"), (1, 2, "BC"), (2, 0, "CA")];
    let v = tri.vertices();
    let cross = |u: Vector2<f64>, w: Vector2<f64>| u.x * w.y - u.y * w.x;
    let mut product = 1.0;
    for (i, j, side) in SIDES {
        let edge = v[j] - v[i];
        let denom = cross(edge, *direction);
        if denom.abs() <= 1e-12 * edge.norm() * direction.norm() {
            return Err(GeometryError::ParallelSide { side });
        }
        let t = cross(point - v[i], *direction) / denom;
        if t.abs() <= 1e-12 {
            return Err(GeometryError::ThroughVertex { vertex: VERTEX_NAMES[i] });
        }
        if (1.0 - t).abs() <= 1e-12 {
            return Err(GeometryError::ThroughVertex { vertex: VERTEX_NAMES[j] });
        }
        product *= t / (1.0 - t);
    }
    Ok(product)
}

/// Tetrahedron embedded in space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedTetra {
    pub pa: Vector3<f64>,
    pub pb: Vector3<f64>,
    pub pc: Vector3<f64>,
    pub pd: Vector3<f64>,
}

pub fn embed_tetra(edges: &TetraEdges) -> Result<EmbeddedTetra> {
    let [ab, ac, ad, bc, cd, db] = edges.lengths();
    let cx = (ac * ac + ab * ab - bc * bc) / (2.0 * ab);
    let cy_sq = ac * ac - cx * cx;
    if cy_sq <= 0.0 {
        return Err(GeometryError::NumericalCollapse { height_sq: cy_sq });
    }
    let cy = cy_sq.sqrt();
    let dx = (ad * ad + ab * ab - db * db) / (2.0 * ab);
    let dy = (ad * ad - cd * cd + cx * cx + cy * cy - 2.0 * dx * cx) / (2.0 * cy);
    let dz_sq = ad * ad - dx * dx - dy * dy;
    if dz_sq <= 0.0 {
        return Err(GeometryError::NumericalCollapse { height_sq: dz_sq });
    }
    Ok(EmbeddedTetra {
        pa: Vector3::zeros(),
        pb: Vector3::new(ab, 0.0, 0.0),
        pc: Vector3::new(cx, cy, 0.0),
        pd: Vector3::new(dx, dy, dz_sq.sqrt()),
    })
}

impl EmbeddedTetra {
    pub fn from_points(points: [Vector3<f64>; 4]) -> Self {
        Self {
            pa: points[0],
            pb: points[1],
            pc: points[2],
            pd: points[3],
        }
    }

    pub fn vertices(&self) -> [Vector3<f64>; 4] {
        [self.pa, self.pb, self.pc, self.pd]
    }

    /// Edge lengths measured from the coordinates, in `AB, AC, AD, BC, CD, DB` order.
    pub fn measured_edges(&self) -> [f64; 6] {
        let v = self.vertices();
        crate::model::EDGES.map(|(i, j)| (v[i] - v[j]).norm())
    }

    pub fn signed_volume(&self) -> f64 {
        (self.pb - self.pa).dot(&(self.pc - self.pa).cross(&(self.pd - self.pa))) / 6.0
    }

    pub fn volume(&self) -> f64 {
        self.signed_volume().abs()
    }

    pub fn face_area(&self, face: Face) -> f64 {
        let v = self.vertices();
        let [y, z, w] = face.vertices();
        0.5 * (v[z] - v[y]).cross(&(v[w] - v[y])).norm()
    }

    pub fn face_areas(&self) -> [f64; 4] {
        Face::ALL.map(|f| self.face_area(f))
    }

    /// Inward unit normal of `face` and a point on it.
    fn face_plane(&self, face: Face) -> (Vector3<f64>, Vector3<f64>) {
        let v = self.vertices();
        let [y, z, w] = face.vertices();
        let mut n = (v[z] - v[y]).cross(&(v[w] - v[y])).normalize();
        if n.dot(&(v[face.opposite()] - v[y])) < 0.0 {
            n = -n;
        }
        (n, v[y])
    }

    /// Signed distance to the plane of `face`, positive toward the opposite vertex.
    pub fn signed_plane_distance(&self, face: Face, p: &Vector3<f64>) -> f64 {
        let (n, y) = self.face_plane(face);
        n.dot(&(p - y))
    }

    pub fn point_from_components(&self, c: &Components4) -> Vector3<f64> {
        self.pa * c[0] + self.pb * c[1] + self.pc * c[2] + self.pd * c[3]
    }

    /// Point on `face` from components listed in the face's cyclic order.
    pub fn face_point(&self, face: Face, c: &Components3) -> Vector3<f64> {
        let v = self.vertices();
        let [y, z, w] = face.vertices();
        v[y] * c[0] + v[z] * c[1] + v[w] * c[2]
    }

    pub fn frame_equation_residual(&self, c: &Components4, p: &Vector3<f64>) -> f64 {
        self.vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (v - p) * c[i])
            .sum::<Vector3<f64>>()
            .norm()
    }

    fn tangent_center(&self, signs: [f64; 4]) -> Solved<4> {
        let mut m = Matrix4::zeros();
        let mut rhs = Vector4::zeros();
        for face in Face::ALL {
            let x = face.opposite();
            let (n, y) = self.face_plane(face);
            m[(x, 0)] = n.x;
            m[(x, 1)] = n.y;
            m[(x, 2)] = n.z;
            m[(x, 3)] = -signs[x];
            rhs[x] = n.dot(&y);
        }
        solve(m, rhs)
    }

    /// Point equidistant from the four vertices.
    pub fn circumcenter_solved(&self) -> Solved<3> {
        let [a, b, c, d] = self.vertices();
        let rows = [b - a, c - a, d - a];
        let m = Matrix3::from_fn(|r, k| 2.0 * rows[r][k]);
        let rhs = Vector3::new(
            b.norm_squared() - a.norm_squared(),
            c.norm_squared() - a.norm_squared(),
            d.norm_squared() - a.norm_squared(),
        );
        solve(m, rhs)
    }
}

/// Center computed from its definition, with the conditioning of the solve.
pub fn definitional_center4_solved(
    tet: &EmbeddedTetra,
    kind: TetCenterKind,
    tol: &Tolerance,
) -> Result<(Vector3<f64>, f64)> {
    let v = tet.vertices();
    match kind {
        TetCenterKind::G => Ok(((v[0] + v[1] + v[2] + v[3]) / 4.0, 1.0)),
        TetCenterKind::Q => {
            let s = tet.circumcenter_solved();
            Ok((s.x, s.condition))
        }
        TetCenterKind::I | TetCenterKind::Ea | TetCenterKind::Eb | TetCenterKind::Ec | TetCenterKind::Ed => {
            let mut signs = [1.0; 4];
            if let Some(x) = kind.excenter_vertex() {
                let areas = tet.face_areas();
                let total: f64 = areas.iter().sum();
                let excess = total - 2.0 * areas[x];
                if excess <= tol.atol * total {
                    return Err(GeometryError::ExcenterDenominatorZero { vertex: VERTEX_NAMES[x], excess });
                }
                signs[x] = -1.0;
            }
            let s = tet.tangent_center(signs);
            Ok((Vector3::new(s.x[0], s.x[1], s.x[2]), s.condition))
        }
        TetCenterKind::PowerIncenter(n) => {
            let weights = tet.face_areas().map(|s| s.powf(n));
            let total: f64 = weights.iter().sum();
            let p = v.iter().zip(weights).map(|(p, w)| p * w).sum::<Vector3<f64>>() / total;
            Ok((p, 1.0))
        }
    }
}

pub fn definitional_center4(tet: &EmbeddedTetra, kind: TetCenterKind) -> Result<Vector3<f64>> {
    Ok(definitional_center4_solved(tet, kind, &Tolerance::default())?.0)
}

/// Orthogonal projection of `point` onto the plane of `face`.
pub fn projection_foot_oracle(tet: &EmbeddedTetra, point: &Vector3<f64>, face: Face) -> Vector3<f64> {
    let (n, y) = tet.face_plane(face);
    point - n * n.dot(&(point - y))
}

/// Point with the given squared distances to the vertices, by trilateration
/// against `A`. The distance to `A` is not re-checked; see [`trilateration_residual`].
pub fn locate_point(tet: &EmbeddedTetra, sq_dists: &[f64; 4]) -> Solved<3> {
    let v = tet.vertices();
    let m = Matrix3::from_fn(|r, k| 2.0 * (v[r + 1][k] - v[0][k]));
    let rhs = Vector3::from_fn(|r, _| {
        v[r + 1].norm_squared() - v[0].norm_squared() - sq_dists[r + 1] + sq_dists[0]
    });
    solve(m, rhs)
}

/// `|PA^2 - d_A^2|` for a located point: zero iff the four distances are realizable.
pub fn trilateration_residual(tet: &EmbeddedTetra, point: &Vector3<f64>, sq_dists: &[f64; 4]) -> f64 {
    ((point - tet.pa).norm_squared() - sq_dists[0]).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs()))
    }

    fn tri(a: f64, b: f64, c: f64) -> EmbeddedTriangle {
        embed_triangle(&TriangleSides::new(a, b, c).unwrap())
    }

    #[test]
    fn embeds_classic_triangles() {
        let t = tri(3.0, 4.0, 5.0);
        assert!(close(t.pc.x, 3.2, 1e-15) && close(t.pc.y, 2.4, 1e-15));
        assert_eq!(t.pb, Vector2::new(5.0, 0.0));
        let e = tri(1.0, 1.0, 1.0);
        assert!(close(e.pc.x, 0.5, 1e-15) && close(e.pc.y, 3f64.sqrt() / 2.0, 1e-15));
        let h = tri(13.0, 14.0, 15.0);
        assert!(close(h.pc.y, 168.0 / 15.0, 1e-14));
        let m = h.measured_sides();
        assert!(close(m[0], 13.0, 1e-14) && close(m[1], 14.0, 1e-14) && close(m[2], 15.0, 1e-14));
    }

    #[test]
    fn right_triangle_centers() {
        let t = tri(3.0, 4.0, 5.0);
        let i = definitional_center(&t, TriCenterKind::I);
        for x in 0..3 {
            assert!(close(t.signed_side_distance(x, &i), 1.0, 1e-14));
        }
        let q = definitional_center(&t, TriCenterKind::Q);
        assert!((q - (t.pa + t.pb) / 2.0).norm() < 1e-14);
        let h = definitional_center(&t, TriCenterKind::H);
        assert!((h - t.pc).norm() < 1e-14);
    }

    #[test]
    fn equilateral_centers_coincide() {
        let t = tri(2.0, 2.0, 2.0);
        let g = definitional_center(&t, TriCenterKind::G);
        for kind in [TriCenterKind::I, TriCenterKind::H, TriCenterKind::Q] {
            assert!((definitional_center(&t, kind) - g).norm() < 1e-14);
        }
    }

    #[test]
    fn excenters_are_tangent_outside() {
        let t = tri(4.0, 5.0, 6.0);
        for (x, kind) in [(0, TriCenterKind::Ea), (1, TriCenterKind::Eb), (2, TriCenterKind::Ec)] {
            let e = definitional_center(&t, kind);
            let d: Vec<f64> = (0..3).map(|k| t.signed_side_distance(k, &e)).collect();
            assert!(d[x] < 0.0);
            for k in 0..3 {
                assert!(close(d[k].abs(), d[x].abs(), 1e-13));
            }
        }
    }

    #[test]
    fn menelaus_examples() {
        let t = tri(3.0, 4.0, 5.0);
        let p = menelaus_product(&t, &Vector2::new(-1.0, 0.3), &Vector2::new(1.0, 0.37)).unwrap();
        assert!(close(p, -1.0, 1e-12));
        let q = menelaus_product(&t, &Vector2::new(-3.0, 0.3), &Vector2::new(2.0, 0.74)).unwrap();
        assert!(close(p, q, 1e-12));
        let parallel = menelaus_product(&t, &Vector2::new(0.0, 1.0), &Vector2::new(1.0, 0.0));
        assert_eq!(parallel.unwrap_err().kind(), "ParallelSide");
        let through = menelaus_product(&t, &Vector2::new(0.0, 0.0), &Vector2::new(1.0, 2.0));
        assert_eq!(through.unwrap_err().kind(), "ThroughVertex");
    }

    #[test]
    fn embeds_regular_tetra() {
        let t = embed_tetra(&TetraEdges::new([1.0; 6]).unwrap()).unwrap();
        let expect = Vector3::new(0.5, 3f64.sqrt() / 6.0, 6f64.sqrt() / 3.0);
        assert!((t.pd - expect).norm() < 1e-15);
        assert!(close(t.volume(), 2f64.sqrt() / 12.0, 1e-15));
        let g = definitional_center4(&t, TetCenterKind::G).unwrap();
        for kind in [TetCenterKind::I, TetCenterKind::Q] {
            assert!((definitional_center4(&t, kind).unwrap() - g).norm() < 1e-14);
        }
        let apex_foot = projection_foot_oracle(&t, &t.pd, Face::Abc);
        assert!((apex_foot - (t.pa + t.pb + t.pc) / 3.0).norm() < 1e-15);
    }

    #[test]
    fn embeds_pyramid() {
        let (a, l) = (2.0, 3.0);
        let t = embed_tetra(&TetraEdges::new([l, l, l, a, a, a]).unwrap()).unwrap();
        // Apex A over the centroid of the base BCD.
        let base = (t.pb + t.pc + t.pd) / 3.0;
        let height = (t.pa - base).norm();
        assert!(close(height, (l * l - a * a / 3.0).sqrt(), 1e-14));
        assert!(close((23.0f64 / 3.0).sqrt(), height, 1e-14));
        let g = definitional_center4(&t, TetCenterKind::G).unwrap();
        let i = definitional_center4(&t, TetCenterKind::I).unwrap();
        let ratio = (i - g).norm() / (t.pa - g).norm();
        let s3 = 3f64.sqrt();
        let s2 = 2f64.sqrt();
        assert!(close(ratio, (s3 - 2.0 * s2).abs() / (s3 + 6.0 * s2), 1e-13));
    }

    #[test]
    fn power_incenter_endpoints() {
        let t = embed_tetra(&TetraEdges::new([1.0, 1.2, 0.9, 1.1, 1.3, 1.0]).unwrap()).unwrap();
        let g = definitional_center4(&t, TetCenterKind::G).unwrap();
        let i = definitional_center4(&t, TetCenterKind::I).unwrap();
        assert!((definitional_center4(&t, TetCenterKind::PowerIncenter(0.0)).unwrap() - g).norm() < 1e-14);
        assert!((definitional_center4(&t, TetCenterKind::PowerIncenter(1.0)).unwrap() - i).norm() < 1e-13);
    }

    #[test]
    fn projection_is_orthogonal() {
        let t = embed_tetra(&TetraEdges::new([1.0, 1.2, 0.9, 1.1, 1.3, 1.0]).unwrap()).unwrap();
        let p = Vector3::new(0.3, -0.2, 0.7);
        for face in Face::ALL {
            let foot = projection_foot_oracle(&t, &p, face);
            let v = t.vertices();
            let [y, z, w] = face.vertices();
            assert!((p - foot).dot(&(v[z] - v[y])).abs() < 1e-14);
            assert!((p - foot).dot(&(v[w] - v[y])).abs() < 1e-14);
            let on_plane = projection_foot_oracle(&t, &foot, face);
            assert!((on_plane - foot).norm() < 1e-14);
        }
    }

    #[test]
    fn frame_residual_detects_wrong_point() {
        let t = tri(3.0, 4.0, 5.0);
        let g = Components3::uniform();
        assert!(t.frame_equation_residual(&g, &definitional_center(&t, TriCenterKind::G)) < 1e-14);
        assert!(t.frame_equation_residual(&g, &t.pa) > 1.0);
    }

    #[test]
    fn locates_point_from_distances() {
        let tet = embed_tetra(&TetraEdges::new([1.0, 1.2, 0.9, 1.1, 1.3, 1.0]).unwrap()).unwrap();
        let p = Vector3::new(0.3, -0.2, 0.7);
        let sq = tet.vertices().map(|v| (v - p).norm_squared());
        let found = locate_point(&tet, &sq).x;
        assert!((found - p).norm() < 1e-12);
        assert!(trilateration_residual(&tet, &found, &sq) < 1e-12);
    }
}
