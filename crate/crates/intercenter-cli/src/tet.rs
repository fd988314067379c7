use std::collections::BTreeMap;

use intercenter::oracle::{
    definitional_center4_solved, embed_tetra, locate_point, projection_foot_oracle, trilateration_residual,
    EmbeddedTetra, Vector3,
};
use intercenter::tet_centers::{
    face_areas, projection_components, projection_of_center, tet_center_components_with, tet_center_ir_tensor,
};
use intercenter::tet_metrics::{self as tm, closed_form};
use intercenter::{Components3, Components4, Face, GeometryError, TetCenterKind, TetraEdges, Tolerance};

use crate::error::CliError;
use crate::report::{
    reals, ComponentsEntry, InequalityEntry, PointProjection, ProjectionSection, Quantity, Real, ReportDocument,
    CLOSED_FORM,
};
use crate::request::{pair_key, parse_list, parse_pairs, Request};

struct Context {
    edges: TetraEdges,
    tet: EmbeddedTetra,
    scale: f64,
    tol: Tolerance,
}

impl Context {
    /// Closed-form components and the oracle's point for the same center.
    fn center(&self, kind: TetCenterKind) -> Result<(Components4, Vector3<f64>), GeometryError> {
        let comps = tet_center_components_with(kind, &self.edges, &self.tol)?;
        let (p, _) = definitional_center4_solved(&self.tet, kind, &self.tol)?;
        Ok((comps, p))
    }

    fn realized_gap(&self, comps: &Components4, oracle: &Vector3<f64>) -> f64 {
        (self.tet.point_from_components(comps) - oracle).norm() / self.scale
    }
}

fn note(unavailable: &mut BTreeMap<String, String>, key: String, e: &GeometryError) {
    unavailable.insert(key, format!("{}: {e}", e.kind()));
}

pub fn report(edges: TetraEdges, req: &Request, doc: &mut ReportDocument) -> Result<(), CliError> {
    let ctx = Context {
        edges,
        tet: embed_tetra(&edges)?,
        scale: edges.max_edge(),
        tol: req.tol,
    };
    let centers = match &req.centers {
        Some(list) => Some(parse_list(list, &TetCenterKind::NAMED)?),
        None => None,
    };
    if let Some(kinds) = &centers {
        components(&ctx, kinds, doc);
    }
    if let Some(list) = &req.distances {
        doc.distances = Some(distances(&ctx, list, &mut doc.unavailable)?);
    }
    if req.metrics {
        doc.metrics = Some(metrics(&ctx)?);
    }
    if req.inequalities {
        doc.inequalities = Some(inequalities(&ctx));
    }
    if req.areas {
        doc.areas = Some(areas(&ctx));
    }
    if let Some(face) = req.project {
        let kinds =
            centers.unwrap_or_else(|| vec![TetCenterKind::G, TetCenterKind::I, TetCenterKind::Q]);
        doc.projection = Some(projection(&ctx, face, &kinds, req.point_dists, &mut doc.unavailable)?);
    }
    Ok(())
}

fn components(ctx: &Context, kinds: &[TetCenterKind], doc: &mut ReportDocument) {
    let mut comps = BTreeMap::new();
    let mut irs = BTreeMap::new();
    for &kind in kinds {
        let name = kind.name();
        match ctx.center(kind) {
            Ok((c, oracle)) => {
                comps.insert(
                    name.clone(),
                    ComponentsEntry {
                        weights: reals(c.weights()),
                        provenance: CLOSED_FORM.to_string(),
                        oracle_residual: Some(Real(ctx.realized_gap(&c, &oracle))),
                    },
                );
            }
            Err(e) => note(&mut doc.unavailable, format!("components.{name}"), &e),
        }
        match tet_center_ir_tensor(kind, &ctx.edges) {
            Ok(ir) => {
                let mut ratios = BTreeMap::new();
                for face in Face::ALL {
                    let [y, z, w] = face.vertices().map(|v| intercenter::model::VERTEX_NAMES[v]);
                    let labels = [format!("{y}{z}"), format!("{z}{w}"), format!("{w}{y}")];
                    for (label, v) in labels.into_iter().zip(ir.face(face).as_array()) {
                        ratios.insert(format!("{face}:{label}"), Real(v));
                    }
                }
                irs.insert(name, ratios);
            }
            Err(e) => note(&mut doc.unavailable, format!("ir.{name}"), &e),
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
        let all = TetCenterKind::NAMED;
        (0..7).flat_map(|i| ((i + 1)..7).map(move |j| (all[i], all[j]))).collect()
    } else {
        parse_pairs::<TetCenterKind>(list)?
    };
    let mut out = BTreeMap::new();
    for (p1, p2) in pairs {
        let key = pair_key(p1.name(), p2.name());
        let found = ctx.center(p1).and_then(|a| {
            let b = ctx.center(p2)?;
            Ok((tm::dist_between_centers4(&a.0, &b.0, &ctx.edges)?, a.1, b.1))
        });
        let (value, o1, o2) = match found {
            Ok(v) => v,
            Err(e) => {
                note(unavailable, format!("distances.{key}"), &e);
                continue;
            }
        };
        let oracle = (o1 - o2).norm();
        let mut q = Quantity::checked(value, oracle, ctx.scale);
        if let Some(sq) = closed_form::for_pair(p1, p2, &ctx.edges) {
            let cf = sq.max(0.0).sqrt();
            q.closed_form = Some(Real(cf));
            let worst = q.residual.map_or(0.0, |r| r.0).max((value - cf).abs() / ctx.scale);
            q.residual = Some(Real(worst));
        }
        out.insert(key, q);
    }
    Ok(out)
}

fn rel(v: f64, o: f64) -> Quantity {
    Quantity::checked(v, o, v.abs().max(o.abs()).max(f64::MIN_POSITIVE))
}

fn metrics(ctx: &Context) -> Result<BTreeMap<String, Quantity>, CliError> {
    let e = &ctx.edges;
    let (incenter, _) = definitional_center4_solved(&ctx.tet, TetCenterKind::I, &ctx.tol)?;
    let circum = ctx.tet.circumcenter_solved().x;
    let mut out = BTreeMap::new();
    out.insert("volume".to_string(), rel(tm::volume(e), ctx.tet.volume()));
    out.insert(
        "inradius".to_string(),
        rel(tm::inradius(e), ctx.tet.signed_plane_distance(Face::Abc, &incenter).abs()),
    );
    let mut r = rel(tm::circumradius(e), (circum - ctx.tet.pa).norm());
    let alt = tm::circumradius_from_weights(e);
    r.closed_form = Some(Real(alt));
    r.residual = Some(Real(r.residual.map_or(0.0, |x| x.0).max((r.value.0 - alt).abs() / r.value.0)));
    out.insert("circumradius".to_string(), r);
    out.insert("crelle_residual".to_string(), Quantity::closed(tm::crelle_check(e)));
    Ok(out)
}

fn inequalities(ctx: &Context) -> BTreeMap<String, InequalityEntry> {
    tm::tet_inequality_slacks(&ctx.edges)
        .into_iter()
        .map(|(k, v)| {
            (
                k.to_string(),
                InequalityEntry {
                    slack: Real(v),
                    holds: v >= -ctx.tol.atol,
                },
            )
        })
        .collect()
}

fn areas(ctx: &Context) -> BTreeMap<String, Quantity> {
    let closed = face_areas(&ctx.edges);
    let oracle = ctx.tet.face_areas();
    let mut out = BTreeMap::new();
    for face in Face::ALL {
        let x = face.opposite();
        out.insert(face.name().to_string(), rel(closed.by_vertex()[x], oracle[x]));
    }
    out.insert("total".to_string(), rel(closed.s, oracle.iter().sum()));
    out
}

fn projection(
    ctx: &Context,
    face: Face,
    kinds: &[TetCenterKind],
    point_dists: Option<[f64; 4]>,
    unavailable: &mut BTreeMap<String, String>,
) -> Result<ProjectionSection, CliError> {
    let mut section = ProjectionSection {
        face: face.name().to_string(),
        centers: BTreeMap::new(),
        distance_to_face: BTreeMap::new(),
        point: None,
    };
    let face_gap = |c: &Components3, oracle: &Vector3<f64>| (ctx.tet.face_point(face, c) - oracle).norm() / ctx.scale;
    for &kind in kinds {
        let name = kind.name();
        let found = ctx.center(kind).and_then(|(beta, p)| Ok((beta, p, projection_of_center(kind, &ctx.edges, face)?)));
        let (beta, p, c) = match found {
            Ok(v) => v,
            Err(e) => {
                note(unavailable, format!("projection.{name}"), &e);
                continue;
            }
        };
        let foot = projection_foot_oracle(&ctx.tet, &p, face);
        section.centers.insert(
            name.clone(),
            ComponentsEntry {
                weights: reals(c.weights()),
                provenance: CLOSED_FORM.to_string(),
                oracle_residual: Some(Real(face_gap(&c, &foot))),
            },
        );
        let dist = tm::dist_center_to_face(&beta, &ctx.edges, face);
        let oracle_dist = ctx.tet.signed_plane_distance(face, &p).abs();
        section.distance_to_face.insert(name, Quantity::checked(dist, oracle_dist, ctx.scale));
    }
    if let Some(d) = point_dists {
        let sq = d.map(|x| x * x);
        let c = projection_components(&ctx.edges, &sq, face)?;
        let located = locate_point(&ctx.tet, &sq).x;
        let foot = projection_foot_oracle(&ctx.tet, &located, face);
        section.point = Some(PointProjection {
            squared_distances: reals(sq),
            components: ComponentsEntry {
                weights: reals(c.weights()),
                provenance: CLOSED_FORM.to_string(),
                oracle_residual: Some(Real(face_gap(&c, &foot))),
            },
            consistency_residual: Real(trilateration_residual(&ctx.tet, &located, &sq) / (ctx.scale * ctx.scale)),
        });
    }
    Ok(section)
}
