use intercenter::model::{face_components_from_tetra, vertex_foot_ratios3, Components3};
use intercenter::oracle::{definitional_center, embed_tetra, embed_triangle};
use intercenter::tet_centers::{concurrency_conditions, projection_of_center, tet_center_components};
use intercenter::tet_metrics as tm;
use intercenter::tri_centers::{center_components, euler_relation};
use intercenter::tri_metrics as trm;
use intercenter::verify::{min_angle_degrees, tetra_case};
use intercenter::{Face, TetCenterKind, TetraEdges, Tolerance, TriCenterKind, TriangleSides};
use proptest::prelude::*;

fn triangle() -> impl Strategy<Value = TriangleSides> {
    (0.2f64..5.0, 0.2f64..5.0, 0.05f64..0.95)
        .prop_filter_map("degenerate", |(a, b, t)| {
            let (lo, hi) = ((a - b).abs(), a + b);
            TriangleSides::new(a, b, lo + t * (hi - lo)).ok()
        })
        .prop_filter("thin", |s| min_angle_degrees(s) >= 3.0)
}

fn tetra() -> impl Strategy<Value = TetraEdges> {
    (any::<u64>(), 0usize..10_000).prop_filter_map("degenerate", |(seed, case)| tetra_case(seed, case).map(|c| c.0))
}

fn close(x: f64, y: f64, scale: f64) -> bool {
    (x - y).abs() <= 1e-12 + 1e-9 * scale
}

proptest! {
    #[test]
    fn components_sum_to_one(s in triangle()) {
        for kind in TriCenterKind::ALL {
            prop_assert!(close(center_components(kind, &s).sum(), 1.0, 1.0));
        }
    }

    #[test]
    fn components_are_scale_invariant(s in triangle(), k in 0.1f64..10.0) {
        let scaled = s.scaled(k).unwrap();
        for kind in TriCenterKind::ALL {
            let (c1, c2) = (center_components(kind, &s), center_components(kind, &scaled));
            for i in 0..3 {
                prop_assert!(close(c1[i], c2[i], c1[i].abs()));
            }
        }
    }

    #[test]
    fn distances_scale_linearly(s in triangle(), k in 0.1f64..10.0) {
        let scaled = s.scaled(k).unwrap();
        for (r1, r2) in trm::center_pair_table(&s).iter().zip(trm::center_pair_table(&scaled)) {
            prop_assert!(close(k * r1.distance, r2.distance, r2.distance.max(s.perimeter() * k)));
        }
    }

    #[test]
    fn incenter_follows_side_relabeling(s in triangle()) {
        let [a, b, c] = s.lengths();
        let rotated = TriangleSides::new(b, c, a).unwrap();
        let (orig, rot) = (center_components(TriCenterKind::I, &s), center_components(TriCenterKind::I, &rotated));
        for i in 0..3 {
            prop_assert!(close(orig[(i + 1) % 3], rot[i], 1.0));
        }
    }

    #[test]
    fn engine_matches_oracle(s in triangle()) {
        let tri = embed_triangle(&s);
        for kind in TriCenterKind::ALL {
            let p = tri.point_from_components(&center_components(kind, &s));
            let q = definitional_center(&tri, kind);
            prop_assert!((p - q).norm() <= 1e-12 + 1e-9 * s.perimeter());
        }
    }

    #[test]
    fn euler_line(s in triangle()) {
        let e = euler_relation(&s);
        prop_assert!(e.collinearity_residual <= 1e-9 * s.perimeter());
        prop_assert!(close(e.gh_over_gq, -2.0, 2.0) || !e.gh_over_gq.is_finite());
    }

    #[test]
    fn kappa_sum_is_two(s in triangle()) {
        for kind in [TriCenterKind::G, TriCenterKind::I, TriCenterKind::Ea] {
            let feet = vertex_foot_ratios3(&center_components(kind, &s)).unwrap();
            prop_assert!(close(feet.integral.iter().sum(), 2.0, 2.0));
            prop_assert!(close(feet.fractional.iter().map(|l| 1.0 / (1.0 + l)).sum(), 1.0, 1.0));
        }
    }

    #[test]
    fn triangle_slacks_nonnegative(s in triangle()) {
        let scale = s.squares().iter().sum::<f64>().powi(2);
        for (name, v) in trm::inequality_slacks(&s) {
            prop_assert!(v >= -1e-12 * scale.max(1.0), "{name} = {v}");
        }
    }

    #[test]
    fn tetra_components_sum_to_one(e in tetra()) {
        for kind in TetCenterKind::NAMED {
            let c = tet_center_components(kind, &e).unwrap();
            prop_assert!(close(c.sum(), 1.0, 1.0));
        }
    }

    #[test]
    fn circumcenter_identity(e in tetra()) {
        let q = tet_center_components(TetCenterKind::Q, &e).unwrap();
        let r2 = tm::circumradius(&e).powi(2);
        prop_assert!(close(tm::weighted_edge_sum(&q, &e), r2, r2));
    }

    #[test]
    fn radius_formulas_agree(e in tetra()) {
        let r = tm::circumradius(&e);
        prop_assert!(close(tm::circumradius_from_weights(&e), r, r));
        prop_assert!(close(tm::circumradius_from_weight_sums(&e), r, r));
        prop_assert!(tm::crelle_check(&e) <= 1e-9);
    }

    #[test]
    fn volume_is_relabeling_invariant(e in tetra()) {
        let p = e.permuted([2, 0, 3, 1]).unwrap();
        let v = tm::volume(&e);
        prop_assert!(close(tm::volume(&p), v, v));
    }

    #[test]
    fn incenter_follows_vertex_relabeling(e in tetra()) {
        let perm = [1, 2, 3, 0];
        let p = e.permuted(perm).unwrap();
        let (orig, moved) = (
            tet_center_components(TetCenterKind::I, &e).unwrap(),
            tet_center_components(TetCenterKind::I, &p).unwrap(),
        );
        for i in 0..4 {
            prop_assert!(close(orig[i], moved[perm[i]], 1.0));
        }
    }

    #[test]
    fn center_faces_are_concurrent(e in tetra()) {
        let tol = Tolerance::default();
        for kind in [TetCenterKind::G, TetCenterKind::I, TetCenterKind::Q] {
            let beta = tet_center_components(kind, &e).unwrap();
            let Ok(faces) = Face::ALL.iter().map(|&f| face_components_from_tetra(&beta, f)).collect::<Result<Vec<Components3>, _>>() else {
                continue;
            };
            let Ok(report) = concurrency_conditions(&faces.try_into().unwrap(), &tol) else { continue };
            prop_assert!(report.concurrent, "{kind}: {report:?}");
            let rebuilt = report.components.unwrap();
            for i in 0..4 {
                prop_assert!((rebuilt[i] - beta[i]).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn incenter_foot_is_at_inradius(e in tetra()) {
        let tet = embed_tetra(&e).unwrap();
        let i = tet.point_from_components(&tet_center_components(TetCenterKind::I, &e).unwrap());
        let r = tm::inradius(&e);
        for face in Face::ALL {
            let foot = tet.face_point(face, &projection_of_center(TetCenterKind::I, &e, face).unwrap());
            prop_assert!(((i - foot).norm() - r).abs() <= 1e-8 * e.max_edge());
        }
    }

    #[test]
    fn tetra_slacks_nonnegative(e in tetra()) {
        // The seeded generator keeps every vertex in the unit cube.
        for (name, v) in tm::tet_inequality_slacks(&e) {
            prop_assert!(v >= -1e-12, "{name} = {v}");
        }
    }
}
