//! Triangle metrics from side lengths alone.
//!
//! Every center distance goes through one engine: for zero-sum component
//! differences `d`, the squared length is `-(d_B d_C a^2 + d_C d_A b^2 + d_A d_B c^2)`.

use std::collections::BTreeMap;

use crate::error::{GeometryError, Result};
use crate::model::{component_difference, Components3, TriangleSides};
use crate::tolerance::Tolerance;
use crate::tri_centers::{center_components, TriCenterKind};

/// Square root that clamps rounding noise in `[-atol * scale, 0)` to zero.
pub(crate) fn checked_sqrt(sq: f64, scale: f64) -> Result<f64> {
    if sq >= 0.0 {
        return Ok(sq.sqrt());
    }
    if sq >= -Tolerance::default().atol * scale.abs() {
        return Ok(0.0);
    }
    Err(GeometryError::NegativeSquaredDistance { value: sq })
}

/// `K = (a^2 + b^2 + c^2)^2 - 2 (a^4 + b^4 + c^4)`, equal to `16 S^2`.
pub fn k_invariant(a: f64, b: f64, c: f64) -> f64 {
    let (a2, b2, c2) = (a * a, b * b, c * c);
    (a2 + b2 + c2).powi(2) - 2.0 * (a2 * a2 + b2 * b2 + c2 * c2)
}

pub fn area_determinant(sides: &TriangleSides) -> f64 {
    k_invariant(sides.a(), sides.b(), sides.c()).max(0.0).sqrt() / 4.0
}

pub fn heron_area(sides: &TriangleSides) -> f64 {
    let p = sides.semi_perimeter();
    (p * (p - sides.a()) * (p - sides.b()) * (p - sides.c())).max(0.0).sqrt()
}

/// `R = abc / (4 S)`.
pub fn circumradius(sides: &TriangleSides) -> f64 {
    sides.a() * sides.b() * sides.c() / (4.0 * area_determinant(sides))
}

/// `r = S / p`.
pub fn inradius(sides: &TriangleSides) -> f64 {
    area_determinant(sides) / sides.semi_perimeter()
}

fn pair_sum(u: [f64; 3], v: [f64; 3], sides: &TriangleSides) -> f64 {
    let [a2, b2, c2] = sides.squares();
    0.5 * ((u[1] * v[2] + u[2] * v[1]) * a2 + (u[2] * v[0] + u[0] * v[2]) * b2 + (u[0] * v[1] + u[1] * v[0]) * c2)
}

/// `alpha_B alpha_C a^2 + alpha_C alpha_A b^2 + alpha_A alpha_B c^2`.
pub fn weighted_side_sum(c: &Components3, sides: &TriangleSides) -> f64 {
    pair_sum(c.weights(), c.weights(), sides)
}

/// Squared distance between two centers, unclamped.
pub fn squared_between_centers(c1: &Components3, c2: &Components3, sides: &TriangleSides) -> f64 {
    let d = component_difference(c1, c2).entries;
    -pair_sum(d, d, sides)
}

fn scale(sides: &TriangleSides) -> f64 {
    sides.squares().iter().sum()
}

/// Distance from a point `O` with the given distances to `A, B, C` to the center.
pub fn dist_origin_to_center(oa: f64, ob: f64, oc: f64, comps: &Components3, sides: &TriangleSides) -> Result<f64> {
    let sq = comps[0] * oa * oa + comps[1] * ob * ob + comps[2] * oc * oc - weighted_side_sum(comps, sides);
    checked_sqrt(sq, scale(sides) + oa * oa + ob * ob + oc * oc)
}

pub fn dist_between_centers(c1: &Components3, c2: &Components3, sides: &TriangleSides) -> Result<f64> {
    checked_sqrt(squared_between_centers(c1, c2, sides), scale(sides))
}

/// Distance from `vertex` (0, 1, 2 for A, B, C) to the center.
pub fn dist_vertex_to_center(vertex: usize, comps: &Components3, sides: &TriangleSides) -> Result<f64> {
    let x = vertex;
    let (y, z) = ((x + 1) % 3, (x + 2) % 3);
    let sq = sides.squares();
    // The side joining x and y is opposite z.
    let value = (1.0 - comps[x]) * (comps[y] * sq[z] + comps[z] * sq[y]) - comps[y] * comps[z] * sq[x];
    checked_sqrt(value, scale(sides))
}

/// Length of the cevian from `vertex` through the center to the opposite side line.
pub fn dist_vertex_to_foot(vertex: usize, comps: &Components3, sides: &TriangleSides) -> Result<f64> {
    let rest = 1.0 - comps[vertex];
    if rest.abs() <= 16.0 * f64::EPSILON {
        return Err(GeometryError::UnitComponent { vertex: crate::model::VERTEX_NAMES[vertex] });
    }
    Ok(dist_vertex_to_center(vertex, comps, sides)? / rest.abs())
}

/// `QP^2 = R^2 - (alpha_B alpha_C a^2 + alpha_C alpha_A b^2 + alpha_A alpha_B c^2)`.
pub fn dist_circumcenter_to_center(comps: &Components3, sides: &TriangleSides) -> Result<f64> {
    let r = circumradius(sides);
    checked_sqrt(r * r - weighted_side_sum(comps, sides), scale(sides))
}

/// Closed forms of selected center distances, kept independent of the engine.
pub mod closed_forms {
    use super::*;

    /// `QG^2 = R^2 - (a^2 + b^2 + c^2) / 9`.
    pub fn qg_squared(sides: &TriangleSides) -> f64 {
        let r = circumradius(sides);
        r * r - scale(sides) / 9.0
    }

    /// `QI^2 = R^2 - abc / (2p)`.
    pub fn qi_squared(sides: &TriangleSides) -> f64 {
        let r = circumradius(sides);
        r * r - sides.a() * sides.b() * sides.c() / sides.perimeter()
    }

    /// `GI^2 = -[(3b - 2p)(3c - 2p) a^2 + ...] / (36 p^2)`.
    pub fn gi_squared(sides: &TriangleSides) -> f64 {
        centroid_incenter_sum(sides) / (9.0 * sides.perimeter().powi(2))
    }

    /// `-[(3b - 2p)(3c - 2p) a^2 + (3c - 2p)(3a - 2p) b^2 + (3a - 2p)(3b - 2p) c^2]`.
    pub fn centroid_incenter_sum(sides: &TriangleSides) -> f64 {
        let two_p = sides.perimeter();
        let [a, b, c] = sides.lengths().map(|x| 3.0 * x - two_p);
        let [a2, b2, c2] = sides.squares();
        -(b * c * a2 + c * a * b2 + a * b * c2)
    }

    /// `IE_X = x sqrt(yz / (p (p - x)))`.
    pub fn ie(vertex: usize, sides: &TriangleSides) -> f64 {
        let l = sides.lengths();
        let p = sides.semi_perimeter();
        let (x, y, z) = (l[vertex], l[(vertex + 1) % 3], l[(vertex + 2) % 3]);
        x * (y * z / (p * (p - x))).sqrt()
    }

    /// `E_X E_Y = z sqrt(xy / ((p - x)(p - y)))` with `z` the third side.
    pub fn exey(first: usize, second: usize, sides: &TriangleSides) -> f64 {
        let l = sides.lengths();
        let p = sides.semi_perimeter();
        let third = 3 - first - second;
        let (x, y, z) = (l[first], l[second], l[third]);
        z * (x * y / ((p - x) * (p - y))).sqrt()
    }

    /// Closed form of the pair's distance, where one is transcribed.
    pub fn for_pair(p1: TriCenterKind, p2: TriCenterKind, sides: &TriangleSides) -> Option<f64> {
        use TriCenterKind::*;
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        match (lo, hi) {
            (G, Q) => Some(qg_squared(sides).max(0.0).sqrt()),
            (I, Q) => Some(qi_squared(sides).max(0.0).sqrt()),
            (G, I) => Some(gi_squared(sides).max(0.0).sqrt()),
            (I, e) if e.excenter_vertex().is_some() => Some(ie(e.excenter_vertex()?, sides)),
            (e1, e2) if e1.excenter_vertex().is_some() && e2.excenter_vertex().is_some() && e1 != e2 => {
                Some(exey(e1.excenter_vertex()?, e2.excenter_vertex()?, sides))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriDistanceReport {
    pub pair: (TriCenterKind, TriCenterKind),
    pub squared_distance: f64,
    pub distance: f64,
    /// Independent closed-form value, where one is transcribed.
    pub closed_form: Option<f64>,
}

/// All 21 center pairs, ordered by [`TriCenterKind::ALL`].
pub fn center_pair_table(sides: &TriangleSides) -> Vec<TriDistanceReport> {
    let comps = TriCenterKind::ALL.map(|k| center_components(k, sides));
    let mut out = Vec::with_capacity(21);
    for i in 0..7 {
        for j in (i + 1)..7 {
            let sq = squared_between_centers(&comps[i], &comps[j], sides);
            let squared_distance = if sq < 0.0 && sq >= -Tolerance::default().atol * scale(sides) { 0.0 } else { sq };
            let (p1, p2) = (TriCenterKind::ALL[i], TriCenterKind::ALL[j]);
            out.push(TriDistanceReport {
                pair: (p1, p2),
                squared_distance,
                distance: squared_distance.max(0.0).sqrt(),
                closed_form: closed_forms::for_pair(p1, p2, sides),
            });
        }
    }
    out
}

/// Areas of the sub-triangles `ABP`, `BCP`, `CAP`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubAreas {
    pub s_abp: f64,
    pub s_bcp: f64,
    pub s_cap: f64,
}

pub fn ict_areas(comps: &Components3, sides: &TriangleSides) -> SubAreas {
    let s = area_determinant(sides);
    SubAreas {
        s_abp: comps[2].abs() * s,
        s_bcp: comps[0].abs() * s,
        s_cap: comps[1].abs() * s,
    }
}

/// Distances from the center to the side lines `AB`, `BC`, `CA`.
pub fn ict_altitudes(comps: &Components3, sides: &TriangleSides) -> [f64; 3] {
    let s = area_determinant(sides);
    [
        2.0 * comps[2].abs() * s / sides.c(),
        2.0 * comps[0].abs() * s / sides.a(),
        2.0 * comps[1].abs() * s / sides.b(),
    ]
}

/// `sum alpha_X OX^2 - sum alpha_X alpha_Y XY^2`, non-negative and zero iff `O = P`.
pub fn origin_center_slack(oa: f64, ob: f64, oc: f64, comps: &Components3, sides: &TriangleSides) -> f64 {
    comps[0] * oa * oa + comps[1] * ob * ob + comps[2] * oc * oc - weighted_side_sum(comps, sides)
}

/// Non-negative slacks of the named inequalities; each vanishes iff the triangle is equilateral.
pub fn inequality_slacks(sides: &TriangleSides) -> BTreeMap<&'static str, f64> {
    use TriCenterKind::*;
    let r2 = circumradius(sides).powi(2);
    let c = |k| center_components(k, sides);
    let between = |k1, k2| squared_between_centers(&c(k1), &c(k2), sides);
    let mut out = BTreeMap::new();
    out.insert("circumradius_centroid", r2 - scale(sides) / 9.0);
    out.insert(
        "circumradius_incenter",
        r2 - sides.a() * sides.b() * sides.c() / sides.perimeter(),
    );
    out.insert("circumradius_orthocenter", r2 - weighted_side_sum(&c(H), sides));
    out.insert("circumcenter_centroid", between(Q, G));
    out.insert("circumcenter_incenter", between(Q, I));
    out.insert("circumcenter_orthocenter", between(Q, H));
    out.insert("centroid_incenter", closed_forms::centroid_incenter_sum(sides));
    out.insert("centroid_orthocenter", between(G, H));
    out.insert("incenter_orthocenter", between(I, H));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Components;

    fn sides(a: f64, b: f64, c: f64) -> TriangleSides {
        TriangleSides::new(a, b, c).unwrap()
    }

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / x.abs().max(y.abs()).max(1e-300)
    }

    #[test]
    fn areas_and_k() {
        assert_eq!(area_determinant(&sides(3.0, 4.0, 5.0)), 6.0);
        assert!(rel(area_determinant(&sides(13.0, 14.0, 15.0)), 84.0) < 1e-15);
        assert!(rel(area_determinant(&sides(1.0, 1.0, 1.0)), 3f64.sqrt() / 4.0) < 1e-15);
        assert_eq!(k_invariant(3.0, 4.0, 5.0), 576.0);
        assert_eq!(k_invariant(1.0, 1.0, 2.0), 0.0);
        for (a, b, c) in [(13., 14., 15.), (13., 15., 14.), (14., 13., 15.), (14., 15., 13.), (15., 13., 14.), (15., 14., 13.)] {
            assert_eq!(k_invariant(a, b, c), 112896.0);
        }
    }

    #[test]
    fn named_distances_345() {
        let s = sides(3.0, 4.0, 5.0);
        let g = center_components(TriCenterKind::G, &s);
        let i = center_components(TriCenterKind::I, &s);
        let q = center_components(TriCenterKind::Q, &s);
        assert!(rel(dist_between_centers(&g, &i, &s).unwrap(), 1.0 / 3.0) < 1e-14);
        assert!(rel(dist_between_centers(&q, &i, &s).unwrap(), 1.25f64.sqrt()) < 1e-14);
        assert_eq!(dist_between_centers(&i, &i, &s).unwrap(), 0.0);
        assert!(rel(dist_vertex_to_center(0, &g, &s).unwrap(), 73f64.sqrt() / 3.0) < 1e-14);
        assert!(rel(dist_vertex_to_center(2, &i, &s).unwrap(), 2f64.sqrt()) < 1e-14);
        assert_eq!(dist_vertex_to_center(0, &Components3::indicator(0), &s).unwrap(), 0.0);
        assert!(rel(dist_vertex_to_foot(0, &g, &s).unwrap(), 73f64.sqrt() / 2.0) < 1e-14);
        assert!(rel(dist_circumcenter_to_center(&i, &s).unwrap(), 1.25f64.sqrt()) < 1e-14);
        assert!(dist_circumcenter_to_center(&q, &s).unwrap() < 1e-7);
    }

    #[test]
    fn origin_distance_examples() {
        let s = sides(3.0, 4.0, 5.0);
        let g = center_components(TriCenterKind::G, &s);
        // O at A: OA = 0, OB = c, OC = b.
        let ag = dist_origin_to_center(0.0, 5.0, 4.0, &g, &s).unwrap();
        assert!(rel(ag, (2.0 * 16.0 + 2.0 * 25.0 - 9.0f64).sqrt() / 3.0) < 1e-14);
        let i = center_components(TriCenterKind::I, &s);
        let (ia, ib, ic) = (
            dist_vertex_to_center(0, &i, &s).unwrap(),
            dist_vertex_to_center(1, &i, &s).unwrap(),
            dist_vertex_to_center(2, &i, &s).unwrap(),
        );
        assert!(dist_origin_to_center(ia, ib, ic, &i, &s).unwrap() < 1e-6);
        let bogus = dist_origin_to_center(0.0, 0.0, 0.0, &g, &s);
        assert_eq!(bogus.unwrap_err().kind(), "NegativeSquaredDistance");
    }

    #[test]
    fn median_squares_identity() {
        let s = sides(4.0, 5.0, 6.0);
        let g = Components3::uniform();
        let total: f64 = (0..3).map(|v| dist_vertex_to_foot(v, &g, &s).unwrap().powi(2)).sum();
        assert!(rel(total, 0.75 * (16.0 + 25.0 + 36.0)) < 1e-14);
        let e = sides(2.0, 2.0, 2.0);
        assert!(rel(dist_vertex_to_foot(1, &g, &e).unwrap(), 3f64.sqrt()) < 1e-14);
    }

    #[test]
    fn closed_forms_match_engine() {
        let s = sides(3.0, 4.0, 5.0);
        assert!(rel(closed_forms::ie(0, &s), 10f64.sqrt()) < 1e-14);
        for row in center_pair_table(&sides(5.0, 6.0, 7.5)) {
            if let Some(cf) = row.closed_form {
                assert!(rel(cf, row.distance) < 1e-12, "{:?}", row);
            }
        }
        let e = sides(1.5, 1.5, 1.5);
        for row in center_pair_table(&e) {
            match row.pair {
                (p, q) if p.excenter_vertex().is_some() && q.excenter_vertex().is_some() => {
                    assert!(rel(row.distance, 3.0) < 1e-14)
                }
                (p, q) if p.excenter_vertex().is_none() && q.excenter_vertex().is_none() => {
                    assert!(row.distance < 1e-7)
                }
                _ => {}
            }
        }
        assert_eq!(center_pair_table(&s).len(), 21);
    }

    #[test]
    fn sub_areas_and_altitudes() {
        let s = sides(3.0, 4.0, 5.0);
        let g = ict_areas(&Components3::uniform(), &s);
        assert!(rel(g.s_abp, 2.0) < 1e-15 && rel(g.s_bcp, 2.0) < 1e-15 && rel(g.s_cap, 2.0) < 1e-15);
        let i = ict_areas(&center_components(TriCenterKind::I, &s), &s);
        assert!(rel(i.s_abp, 2.5) < 1e-15 && rel(i.s_bcp, 1.5) < 1e-15 && rel(i.s_cap, 2.0) < 1e-15);
        let c = ict_areas(&Components3::indicator(2), &s);
        assert_eq!((c.s_abp, c.s_bcp, c.s_cap), (6.0, 0.0, 0.0));
        let h = ict_altitudes(&center_components(TriCenterKind::I, &s), &s);
        assert!(h.iter().all(|&x| rel(x, 1.0) < 1e-15));
        let h = ict_altitudes(&Components3::uniform(), &s);
        assert!(rel(h[0], 0.8) < 1e-15 && rel(h[1], 4.0 / 3.0) < 1e-15 && rel(h[2], 1.0) < 1e-15);
        let h = ict_altitudes(&Components::indicator(2), &s);
        assert_eq!(h, [2.4, 0.0, 0.0]);
    }

    #[test]
    fn inequality_examples() {
        let s = inequality_slacks(&sides(3.0, 4.0, 5.0));
        assert!(rel(s["circumradius_centroid"], 6.25 - 50.0 / 9.0) < 1e-14);
        assert!(rel(s["centroid_incenter"], 144.0) < 1e-14);
        for (_, v) in inequality_slacks(&sides(2.0, 2.0, 2.0)) {
            assert!(v.abs() <= 1e-12);
        }
    }
}
