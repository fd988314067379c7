//! Tetrahedron metrics from the six edge lengths.
//!
//! All center distances route through the pair engine
//! `|P1 P2|^2 = -sum over edges of d_i d_j |ij|^2`, with `d` the zero-sum
//! component difference. The `closed_form` module keeps independent
//! transcriptions used as test oracles and for report cross-checks.

use std::collections::BTreeMap;

use crate::error::{GeometryError, Result};
use crate::model::{component_difference, Components, Components3, Components4, Face, TetraEdges, EDGES, VERTEX_NAMES};
use crate::tet_centers::{circum_aux, face_areas, tet_center_components, TetCenterKind};
use crate::tolerance::Tolerance;
use crate::tri_metrics::checked_sqrt;

pub fn volume(edges: &TetraEdges) -> f64 {
    edges.gram().max(0.0).sqrt() / 6.0
}

/// `r^2 = gram / (4 S^2)`.
pub fn inradius(edges: &TetraEdges) -> f64 {
    let s = face_areas(edges).s;
    (edges.gram().max(0.0) / (4.0 * s * s)).sqrt()
}

/// Half-sum of the three products of opposite edge lengths.
fn opposite_half_sum(edges: &TetraEdges) -> ([f64; 3], f64) {
    let products = [edges.len(0, 1) * edges.len(2, 3), edges.len(1, 2) * edges.len(0, 3), edges.len(2, 0) * edges.len(1, 3)];
    let q = 0.5 * products.iter().sum::<f64>();
    (products, q)
}

/// `q (q - AB CD)(q - BC AD)(q - CA BD)`.
pub fn crelle_product(edges: &TetraEdges) -> f64 {
    let (p, q) = opposite_half_sum(edges);
    q * (q - p[0]) * (q - p[1]) * (q - p[2])
}

/// Circumradius from the opposite-edge product over the volume polynomial.
pub fn circumradius(edges: &TetraEdges) -> f64 {
    (crelle_product(edges) / edges.gram()).max(0.0).sqrt()
}

/// `R^2 = sum U_X U_Y |XY|^2 / U^2`.
pub fn circumradius_from_weights(edges: &TetraEdges) -> f64 {
    let aux = circum_aux(edges);
    let u = aux.weights;
    let sum: f64 = EDGES.iter().map(|&(i, j)| u[i] * u[j] * edges.sq(i, j)).sum();
    (sum / (aux.total * aux.total)).max(0.0).sqrt()
}

/// `R^2 = sum (U_X + U_Y) |XY|^2 / (8 U)`.
pub fn circumradius_from_weight_sums(edges: &TetraEdges) -> f64 {
    let aux = circum_aux(edges);
    let u = aux.weights;
    let sum: f64 = EDGES.iter().map(|&(i, j)| (u[i] + u[j]) * edges.sq(i, j)).sum();
    (sum / (8.0 * aux.total)).max(0.0).sqrt()
}

/// Relative residual of `36 V^2 R^2` against the opposite-edge product, with
/// `R` taken from the circumcenter weights so the two sides are independent.
pub fn crelle_check(edges: &TetraEdges) -> f64 {
    let v = volume(edges);
    let r = circumradius_from_weights(edges);
    let rhs = crelle_product(edges);
    (36.0 * v * v * r * r - rhs).abs() / rhs.abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetMetricsSummary {
    pub volume: f64,
    pub inradius: f64,
    pub circumradius: f64,
    pub crelle_residual: f64,
}

pub fn summary(edges: &TetraEdges) -> TetMetricsSummary {
    TetMetricsSummary {
        volume: volume(edges),
        inradius: inradius(edges),
        circumradius: circumradius(edges),
        crelle_residual: crelle_check(edges),
    }
}

fn scale(edges: &TetraEdges) -> f64 {
    edges.sum_of_squares()
}

fn pair_sum(u: &[f64; 4], v: &[f64; 4], edges: &TetraEdges) -> f64 {
    EDGES
        .iter()
        .map(|&(i, j)| 0.5 * (u[i] * v[j] + u[j] * v[i]) * edges.sq(i, j))
        .sum()
}

/// `sum over edges of beta_i beta_j |ij|^2`.
pub fn weighted_edge_sum(c: &Components4, edges: &TetraEdges) -> f64 {
    let w = c.weights();
    pair_sum(&w, &w, edges)
}

pub fn squared_between_centers4(c1: &Components4, c2: &Components4, edges: &TetraEdges) -> f64 {
    let d = component_difference(c1, c2).entries;
    -pair_sum(&d, &d, edges)
}

/// Distance to the center from a point with the given distances to `A..D`.
pub fn dist_origin_to_center4(origin_dists: [f64; 4], comps: &Components4, edges: &TetraEdges) -> Result<f64> {
    let radial: f64 = (0..4).map(|x| comps[x] * origin_dists[x].powi(2)).sum();
    let extra: f64 = origin_dists.iter().map(|d| d * d).sum();
    checked_sqrt(radial - weighted_edge_sum(comps, edges), scale(edges) + extra)
}

pub fn dist_between_centers4(c1: &Components4, c2: &Components4, edges: &TetraEdges) -> Result<f64> {
    checked_sqrt(squared_between_centers4(c1, c2, edges), scale(edges))
}

/// Distance from `vertex` (0..4) to the center.
pub fn dist_vertex4(vertex: usize, comps: &Components4, edges: &TetraEdges) -> Result<f64> {
    let x = vertex;
    let mut radial = 0.0;
    let mut cross = 0.0;
    for &(i, j) in EDGES.iter() {
        if i == x {
            radial += comps[j] * edges.sq(i, j);
        } else if j == x {
            radial += comps[i] * edges.sq(i, j);
        } else {
            cross += comps[i] * comps[j] * edges.sq(i, j);
        }
    }
    checked_sqrt((1.0 - comps[x]) * radial - cross, scale(edges))
}

/// Length of the cevian from `vertex` through the center to the opposite face.
pub fn dist_foot4(vertex: usize, comps: &Components4, edges: &TetraEdges) -> Result<f64> {
    let rest = 1.0 - comps[vertex];
    if rest.abs() <= 16.0 * f64::EPSILON {
        return Err(GeometryError::UnitComponent { vertex: VERTEX_NAMES[vertex] });
    }
    Ok(dist_vertex4(vertex, comps, edges)? / rest.abs())
}

/// `QP^2 = R^2 - sum beta_i beta_j |ij|^2`.
pub fn dist_circum4(comps: &Components4, edges: &TetraEdges) -> Result<f64> {
    let r = circumradius(edges);
    checked_sqrt(r * r - weighted_edge_sum(comps, edges), scale(edges))
}

/// Lifts face components to the tetrahedron, with zero weight on the apex.
pub fn lift_face_components(face: Face, c: &Components3) -> Components4 {
    let mut w = [0.0; 4];
    for (k, &v) in face.vertices().iter().enumerate() {
        w[v] = c[k];
    }
    Components::new(w).expect("lifted components keep their sum")
}

/// Distance from the center to its orthogonal projection on `face`.
pub fn projection_foot_distance(comps: &Components4, edges: &TetraEdges, face: Face) -> Result<f64> {
    let sq = [0, 1, 2, 3].map(|v| dist_vertex4(v, comps, edges).map(|d| d * d));
    let mut dists = [0.0; 4];
    for (d, s) in dists.iter_mut().zip(sq) {
        *d = s?;
    }
    let foot = crate::tet_centers::projection_components(edges, &dists, face)?;
    dist_between_centers4(comps, &lift_face_components(face, &foot), edges)
}

/// Distance from the center to the plane of `face`, `|beta_X| 3V / S^X`.
pub fn dist_center_to_face(comps: &Components4, edges: &TetraEdges, face: Face) -> f64 {
    let x = face.opposite();
    comps[x].abs() * 3.0 * volume(edges) / face_areas(edges).by_vertex()[x]
}

/// Transcribed closed forms of squared center distances.
pub mod closed_form {
    use super::*;

    struct Ctx {
        sq: [[f64; 4]; 4],
        area: [f64; 4],
        s: f64,
        r2: f64,
    }

    impl Ctx {
        fn new(edges: &TetraEdges) -> Self {
            let mut sq = [[0.0; 4]; 4];
            for &(i, j) in EDGES.iter() {
                sq[i][j] = edges.sq(i, j);
                sq[j][i] = sq[i][j];
            }
            let areas = face_areas(edges);
            Self {
                sq,
                area: areas.by_vertex(),
                s: areas.s,
                r2: circumradius(edges).powi(2),
            }
        }

        fn excess(&self, x: usize) -> f64 {
            self.s - 2.0 * self.area[x]
        }

        /// The three vertices other than `x`, as ordered pairs `(v, w)` with `v < w`.
        fn others(x: usize) -> ([usize; 3], [(usize, usize); 3]) {
            let o: Vec<usize> = (0..4).filter(|&v| v != x).collect();
            ([o[0], o[1], o[2]], [(o[0], o[1]), (o[0], o[2]), (o[1], o[2])])
        }
    }

    pub fn qg_squared(edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        c.r2 - edges.sum_of_squares() / 16.0
    }

    pub fn qi_squared(edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        let sum: f64 = EDGES.iter().map(|&(i, j)| c.area[i] * c.area[j] * c.sq[i][j]).sum();
        c.r2 - sum / (c.s * c.s)
    }

    pub fn qe_squared(x: usize, edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        let (vs, pairs) = Ctx::others(x);
        let t = c.excess(x);
        let apex: f64 = vs.iter().map(|&v| c.area[x] * c.area[v] * c.sq[x][v]).sum();
        let base: f64 = pairs.iter().map(|&(v, w)| c.area[v] * c.area[w] * c.sq[v][w]).sum();
        c.r2 - (base - apex) / (t * t)
    }

    /// Centroid to incenter, written with the mean face area.
    pub fn gi_squared(edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        let mean = c.s / 4.0;
        let sum: f64 = EDGES.iter().map(|&(i, j)| (c.area[i] - mean) * (c.area[j] - mean) * c.sq[i][j]).sum();
        -sum / (c.s * c.s)
    }

    pub fn gq_squared_weights(edges: &TetraEdges) -> f64 {
        let aux = circum_aux(edges);
        let (u, total) = (aux.weights, aux.total);
        let sum: f64 = EDGES
            .iter()
            .map(|&(i, j)| (4.0 * u[i] - total) * (4.0 * u[j] - total) * edges.sq(i, j))
            .sum();
        -sum / (16.0 * total * total)
    }

    pub fn iq_squared_weights(edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        let aux = circum_aux(edges);
        let (u, total) = (aux.weights, aux.total);
        let f = |k: usize| c.s * u[k] - c.area[k] * total;
        let sum: f64 = EDGES.iter().map(|&(i, j)| f(i) * f(j) * c.sq[i][j]).sum();
        -sum / (c.s * c.s * total * total)
    }

    pub fn ge_squared(x: usize, edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        let (vs, pairs) = Ctx::others(x);
        let t = c.excess(x);
        let f = |k: usize| 4.0 * c.area[k] - t;
        let apex: f64 = vs.iter().map(|&v| (4.0 * c.area[x] + t) * f(v) * c.sq[x][v]).sum();
        let base: f64 = pairs.iter().map(|&(v, w)| f(v) * f(w) * c.sq[v][w]).sum();
        (apex - base) / (16.0 * t * t)
    }

    pub fn ie_squared(x: usize, edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        let (vs, pairs) = Ctx::others(x);
        let t = c.excess(x);
        let apex: f64 = vs.iter().map(|&v| c.area[x] * c.area[v] * c.sq[x][v]).sum();
        let base: f64 = pairs.iter().map(|&(v, w)| c.area[v] * c.area[w] * c.sq[v][w]).sum();
        ((c.s * c.s - t * t) * apex - (c.s - t).powi(2) * base) / (c.s * t).powi(2)
    }

    pub fn qe_squared_weights(x: usize, edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        let aux = circum_aux(edges);
        let (u, total) = (aux.weights, aux.total);
        let (vs, pairs) = Ctx::others(x);
        let t = c.excess(x);
        let f = |k: usize| c.area[k] * total - t * u[k];
        let lead = c.area[x] * total + t * u[x];
        let apex: f64 = vs.iter().map(|&v| lead * f(v) * c.sq[x][v]).sum();
        let base: f64 = pairs.iter().map(|&(v, w)| f(v) * f(w) * c.sq[v][w]).sum();
        (apex - base) / (t * total).powi(2)
    }

    pub fn exey_squared(x: usize, y: usize, edges: &TetraEdges) -> f64 {
        let c = Ctx::new(edges);
        let (tx, ty) = (c.excess(x), c.excess(y));
        let rest: Vec<usize> = (0..4).filter(|&v| v != x && v != y).collect();
        let (v, w) = (rest[0], rest[1]);
        let a = &c.area;
        let diff_sq = tx * tx - ty * ty;
        let num = a[x] * a[y] * (tx + ty).powi(2) * c.sq[x][y]
            - rest.iter().map(|&k| a[x] * a[k] * diff_sq * c.sq[x][k]).sum::<f64>()
            + rest.iter().map(|&k| a[y] * a[k] * diff_sq * c.sq[y][k]).sum::<f64>()
            - a[v] * a[w] * (tx - ty).powi(2) * c.sq[v][w];
        num / (tx * ty).powi(2)
    }

    /// Closed form for a pair of named centers, or `None` when none is transcribed.
    pub fn for_pair(p1: TetCenterKind, p2: TetCenterKind, edges: &TetraEdges) -> Option<f64> {
        use TetCenterKind::*;
        let rank = |k: TetCenterKind| TetCenterKind::NAMED.iter().position(|&n| n == k);
        let (lo, hi) = if rank(p1)? <= rank(p2)? { (p1, p2) } else { (p2, p1) };
        match (lo, hi) {
            (G, I) => Some(gi_squared(edges)),
            (G, Q) => Some(qg_squared(edges)),
            (I, Q) => Some(qi_squared(edges)),
            (G, e) => Some(ge_squared(e.excenter_vertex()?, edges)),
            (I, e) => Some(ie_squared(e.excenter_vertex()?, edges)),
            (Q, e) => Some(qe_squared(e.excenter_vertex()?, edges)),
            (e1, e2) if e1 != e2 => Some(exey_squared(e1.excenter_vertex()?, e2.excenter_vertex()?, edges)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetDistanceReport {
    pub pair: (TetCenterKind, TetCenterKind),
    pub squared_distance: f64,
    pub distance: f64,
    /// Independent closed-form squared distance.
    pub closed_form: Option<f64>,
}

/// The 21 pairs among the seven named centers, ordered by [`TetCenterKind::NAMED`].
pub fn center_pair_table4(edges: &TetraEdges) -> Result<Vec<TetDistanceReport>> {
    let mut comps = Vec::with_capacity(7);
    for k in TetCenterKind::NAMED {
        comps.push(tet_center_components(k, edges)?);
    }
    let atol = Tolerance::default().atol;
    let mut out = Vec::with_capacity(21);
    for i in 0..7 {
        for j in (i + 1)..7 {
            let sq = squared_between_centers4(&comps[i], &comps[j], edges);
            let squared_distance = if sq < 0.0 && sq >= -atol * scale(edges) { 0.0 } else { sq };
            let (p1, p2) = (TetCenterKind::NAMED[i], TetCenterKind::NAMED[j]);
            out.push(TetDistanceReport {
                pair: (p1, p2),
                squared_distance,
                distance: squared_distance.max(0.0).sqrt(),
                closed_form: closed_form::for_pair(p1, p2, edges),
            });
        }
    }
    Ok(out)
}

/// Non-negative slacks of the named tetrahedron inequalities. Each vanishes
/// iff the centers involved coincide, which holds for regular tetrahedra.
/// Center-pair slacks are the bracketed sums before their positive normalizers.
pub fn tet_inequality_slacks(edges: &TetraEdges) -> BTreeMap<&'static str, f64> {
    let r2 = circumradius(edges).powi(2);
    let areas = face_areas(edges);
    let (a, s) = (areas.by_vertex(), areas.s);
    let aux = circum_aux(edges);
    let (u, total) = (aux.weights, aux.total);
    let edge_sum = |f: &dyn Fn(usize, usize) -> f64| EDGES.iter().map(|&(i, j)| f(i, j) * edges.sq(i, j)).sum::<f64>();
    let mut out = BTreeMap::new();
    out.insert("circumradius_centroid", r2 - edges.sum_of_squares() / 16.0);
    out.insert("circumradius_incenter", r2 - edge_sum(&|i, j| a[i] * a[j]) / (s * s));
    out.insert("centroid_incenter", -edge_sum(&|i, j| (4.0 * a[i] - s) * (4.0 * a[j] - s)));
    out.insert(
        "centroid_circumcenter",
        -edge_sum(&|i, j| (4.0 * u[i] - total) * (4.0 * u[j] - total)),
    );
    out.insert(
        "incenter_circumcenter",
        -edge_sum(&|i, j| (s * u[i] - a[i] * total) * (s * u[j] - a[j] * total)),
    );
    out
}

/// `R^2 - sum beta_i beta_j |ij|^2` for an arbitrary center, zero iff it is the circumcenter.
pub fn circumradius_center_slack(comps: &Components4, edges: &TetraEdges) -> f64 {
    circumradius(edges).powi(2) - weighted_edge_sum(comps, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / x.abs().max(y.abs()).max(1e-300)
    }

    fn regular() -> TetraEdges {
        TetraEdges::new([1.0; 6]).unwrap()
    }

    fn pyramid() -> TetraEdges {
        TetraEdges::new([3.0, 3.0, 3.0, 2.0, 2.0, 2.0]).unwrap()
    }

    fn irregular() -> TetraEdges {
        TetraEdges::new([1.0, 1.2, 0.9, 1.1, 1.3, 1.0]).unwrap()
    }

    #[test]
    fn regular_metrics() {
        let e = regular();
        assert!(rel(volume(&e), 2f64.sqrt() / 12.0) < 1e-15);
        assert!(rel(inradius(&e), 6f64.sqrt() / 12.0) < 1e-15);
        assert!(rel(circumradius(&e), 6f64.sqrt() / 4.0) < 1e-15);
        assert!(rel(circumradius_from_weights(&e), 6f64.sqrt() / 4.0) < 1e-15);
        assert!(rel(circumradius_from_weight_sums(&e), 6f64.sqrt() / 4.0) < 1e-15);
        assert!(crelle_check(&e) < 1e-15);
        assert!(rel(crelle_product(&e), 0.1875) < 1e-15);
        let big = e.scaled(3.0).unwrap();
        assert!(rel(volume(&big), 27.0 * volume(&e)) < 1e-14);
    }

    #[test]
    fn radius_forms_agree() {
        let e = irregular();
        let r = circumradius(&e);
        assert!(rel(r, circumradius_from_weights(&e)) < 1e-12);
        assert!(rel(r, circumradius_from_weight_sums(&e)) < 1e-12);
        let s = face_areas(&e).s;
        assert!(rel(inradius(&e), 3.0 * volume(&e) / s) < 1e-14);
        assert!(crelle_check(&e) < 1e-12);
    }

    #[test]
    fn vertex_and_foot_distances() {
        let e = regular();
        let g = Components4::uniform();
        assert!(rel(dist_vertex4(0, &g, &e).unwrap(), 6f64.sqrt() / 4.0) < 1e-15);
        let foot = dist_foot4(0, &g, &e).unwrap();
        assert!(rel(foot, 6f64.sqrt() / 3.0) < 1e-15);
        let p = irregular();
        let sum: f64 = (0..4).map(|v| dist_foot4(v, &g, &p).unwrap().powi(2)).sum();
        assert!(rel(sum, 4.0 / 9.0 * p.sum_of_squares()) < 1e-14);
        let err = dist_foot4(0, &Components4::indicator(0), &p).unwrap_err();
        assert_eq!(err.kind(), "UnitComponent");
        let ag = dist_origin_to_center4([0.0, 3.0, 3.0, 3.0], &g, &pyramid()).unwrap();
        let expect = 0.25 * (3.0 * 27.0 - 12.0f64).sqrt();
        assert!(rel(ag, expect) < 1e-15);
    }

    #[test]
    fn closed_forms_match_engine() {
        let e = irregular();
        for row in center_pair_table4(&e).unwrap() {
            let closed = row.closed_form.unwrap();
            assert!(
                (row.squared_distance - closed).abs() <= 1e-10 * (1.0 + closed.abs()),
                "{}-{}: {} vs {}",
                row.pair.0,
                row.pair.1,
                row.squared_distance,
                closed
            );
        }
        let q = tet_center_components(TetCenterKind::Q, &e).unwrap();
        let g = Components4::uniform();
        let i = tet_center_components(TetCenterKind::I, &e).unwrap();
        assert!(rel(squared_between_centers4(&g, &q, &e), closed_form::gq_squared_weights(&e)) < 1e-10);
        assert!(rel(squared_between_centers4(&i, &q, &e), closed_form::iq_squared_weights(&e)) < 1e-10);
        for x in 0..4 {
            let ex = tet_center_components(TetCenterKind::excenter(x), &e).unwrap();
            assert!(rel(squared_between_centers4(&q, &ex, &e), closed_form::qe_squared_weights(x, &e)) < 1e-10);
        }
    }

    #[test]
    fn pyramid_centroid_incenter() {
        let e = pyramid();
        let g = Components4::uniform();
        let i = tet_center_components(TetCenterKind::I, &e).unwrap();
        let gi = dist_between_centers4(&g, &i, &e).unwrap();
        let ag = dist_vertex4(0, &g, &e).unwrap();
        let coefficient = (3f64.sqrt() - 2.0 * 2f64.sqrt()).abs() / (3f64.sqrt() + 6.0 * 2f64.sqrt());
        assert!(rel(gi, coefficient * ag) < 1e-13);
    }

    #[test]
    fn slacks_vanish_on_regular() {
        for (name, v) in tet_inequality_slacks(&regular()) {
            assert!(v.abs() < 1e-12, "{name}: {v}");
        }
        for (name, v) in tet_inequality_slacks(&irregular()) {
            assert!(v > 0.0, "{name}: {v}");
        }
        let p = pyramid();
        let slack = tet_inequality_slacks(&p)["circumradius_centroid"];
        assert!(rel(slack, circumradius(&p).powi(2) - (27.0 + 12.0) / 16.0) < 1e-14);
    }

    #[test]
    fn projection_distances() {
        let e = irregular();
        let i = tet_center_components(TetCenterKind::I, &e).unwrap();
        let r = inradius(&e);
        for face in Face::ALL {
            assert!(rel(dist_center_to_face(&i, &e, face), r) < 1e-14);
            assert!(rel(projection_foot_distance(&i, &e, face).unwrap(), r) < 1e-9);
        }
    }
}
