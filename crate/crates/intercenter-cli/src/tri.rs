use std::collections::BTreeMap;

use intercenter::oracle::{definitional_center, embed_triangle, EmbeddedTriangle};
use intercenter::tri_centers::{center_components, center_ir};
use intercenter::tri_metrics::{self as trm, closed_forms};
use intercenter::{Tolerance, TriCenterKind, TriangleSides};

use crate::error::CliError;
use crate::report::{reals, ComponentsEntry, InequalityEntry, Quantity, Real, ReportDocument, CLOSED_FORM};
use crate::request::{pair_key, parse_list, parse_pairs, Request};

struct Context {
    sides: TriangleSides,
    tri: EmbeddedTriangle,
    perimeter: f64,
}

pub fn report(sides: TriangleSides, req: &Request, doc: &mut ReportDocument) -> Result<(), CliError> {
    let ctx = Context {
        sides,
        tri: embed_triangle(&sides),
        perimeter: sides.perimeter(),
    };
    let centers = match &req.centers {
        Some(list) => Some(parse_list(list, &TriCenterKind::ALL)?),
        None => None,
    };
    if let Some(kinds) = &centers {
        components(&ctx, kinds, doc);
    }
    if let Some(list) = &req.distances {
        doc.distances = Some(distances(&ctx, list, &mut doc.unavailable)?);
    }
    if req.metrics {
        doc.metrics = Some(metrics(&ctx));
    }
    if req.inequalities {
        doc.inequalities = Some(inequalities(&ctx, &req.tol));
    }
    if req.areas {
        let kinds = centers.unwrap_or_else(|| TriCenterKind::ALL.to_vec());
        doc.areas = Some(areas(&ctx, &kinds));
    }
    Ok(())
}

fn components(ctx: &Context, kinds: &[TriCenterKind], doc: &mut ReportDocument) {
    let mut comps = BTreeMap::new();
    let mut irs = BTreeMap::new();
    for &kind in kinds {
        let c = center_components(kind, &ctx.sides);
        let oracle = definitional_center(&ctx.tri, kind);
        let gap = (ctx.tri.point_from_components(&c) - oracle).norm() / ctx.perimeter;
        comps.insert(
            kind.name().to_string(),
            ComponentsEntry {
                weights: reals(c.weights()),
                provenance: CLOSED_FORM.to_string(),
                oracle_residual: Some(Real(gap)),
            },
        );
        match center_ir(kind, &ctx.sides) {
            Ok(ir) => {
                let ratios = ["AB", "BC", "CA"].iter().zip(ir.as_array()).map(|(k, v)| (k.to_string(), Real(v)));
                irs.insert(kind.name().to_string(), ratios.collect());
            }
            Err(e) => {
                doc.unavailable.insert(format!("ir.{}", kind.name()), format!("{}: {e}", e.kind()));
            }
        }
    }
    doc.components = Some(comps);
    doc.ir = Some(irs);
}

fn distances(
    ctx: &Context,
    list: &str,
    unavailable: &mut BTreeMap<String, String>,
) -> Result<BTreeMap<String, Quantity>, CliError> {
    let pairs = if list.trim().eq_ignore_ascii_case("all") {
        let all = TriCenterKind::ALL;
        (0..7).flat_map(|i| ((i + 1)..7).map(move |j| (all[i], all[j]))).collect()
    } else {
        parse_pairs::<TriCenterKind>(list)?
    };
    let mut out = BTreeMap::new();
    for (p1, p2) in pairs {
        let key = pair_key(p1.name(), p2.name());
        let c1 = center_components(p1, &ctx.sides);
        let c2 = center_components(p2, &ctx.sides);
        let value = match trm::dist_between_centers(&c1, &c2, &ctx.sides) {
            Ok(v) => v,
            Err(e) => {
                unavailable.insert(format!("distances.{key}"), format!("{}: {e}", e.kind()));
                continue;
            }
        };
        let oracle = (definitional_center(&ctx.tri, p1) - definitional_center(&ctx.tri, p2)).norm();
        let mut q = Quantity::checked(value, oracle, ctx.perimeter);
        if let Some(cf) = closed_forms::for_pair(p1, p2, &ctx.sides) {
            q.closed_form = Some(Real(cf));
            let worst = q.residual.map_or(0.0, |r| r.0).max((value - cf).abs() / ctx.perimeter);
            q.residual = Some(Real(worst));
        }
        out.insert(key, q);
    }
    Ok(out)
}

fn metrics(ctx: &Context) -> BTreeMap<String, Quantity> {
    let s = &ctx.sides;
    let circum = definitional_center(&ctx.tri, TriCenterKind::Q);
    let incenter = definitional_center(&ctx.tri, TriCenterKind::I);
    let rel = |v: f64, o: f64| Quantity::checked(v, o, v.abs().max(o.abs()).max(f64::MIN_POSITIVE));
    let mut out = BTreeMap::new();
    out.insert("area".to_string(), rel(trm::area_determinant(s), ctx.tri.area()));
    out.insert("area_heron".to_string(), rel(trm::heron_area(s), ctx.tri.area()));
    out.insert("circumradius".to_string(), rel(trm::circumradius(s), (circum - ctx.tri.pa).norm()));
    out.insert(
        "inradius".to_string(),
        rel(trm::inradius(s), ctx.tri.signed_side_distance(0, &incenter).abs()),
    );
    out.insert("perimeter".to_string(), Quantity::closed(ctx.perimeter));
    out
}

fn inequalities(ctx: &Context, tol: &Tolerance) -> BTreeMap<String, InequalityEntry> {
    trm::inequality_slacks(&ctx.sides)
        .into_iter()
        .map(|(k, v)| {
            (
                k.to_string(),
                InequalityEntry {
                    slack: Real(v),
                    holds: v >= -tol.atol,
                },
            )
        })
        .collect()
}

fn areas(ctx: &Context, kinds: &[TriCenterKind]) -> BTreeMap<String, Quantity> {
    let [pa, pb, pc] = ctx.tri.vertices();
    let total = ctx.tri.area();
    let area = |u: (f64, f64), v: (f64, f64), w: (f64, f64)| {
        0.5 * ((v.0 - u.0) * (w.1 - u.1) - (v.1 - u.1) * (w.0 - u.0)).abs()
    };
    let mut out = BTreeMap::new();
    for &kind in kinds {
        let sub = trm::ict_areas(&center_components(kind, &ctx.sides), &ctx.sides);
        let p = definitional_center(&ctx.tri, kind);
        let (a, b, c, q) = (xy(&pa), xy(&pb), xy(&pc), xy(&p));
        for (name, value, oracle) in [
            ("ABP", sub.s_abp, area(a, b, q)),
            ("BCP", sub.s_bcp, area(b, c, q)),
            ("CAP", sub.s_cap, area(c, a, q)),
        ] {
            out.insert(format!("{}.{name}", kind.name()), Quantity::checked(value, oracle, total));
        }
    }
    out
}

fn xy<P: std::ops::Index<usize, Output = f64>>(p: &P) -> (f64, f64) {
    (p[0], p[1])
}
