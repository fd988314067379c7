//! Seeded randomized comparison of the closed forms against the coordinate oracle.
//!
//! Case `i` draws from its own ChaCha stream, so results do not depend on
//! evaluation order. With the `parallel` feature, cases run on the rayon pool;
//! the reduction is a sequential fold over the case-ordered results.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use nalgebra::{Vector2, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    face_components_from_tetra, fractional_ratio_determinant, validate_tetrahedron, validate_triangle,
    vertex_foot_ratios3, vertex_foot_ratios4, Components3, Components4, Face, TetraEdges, TriangleSides,
};
use crate::oracle::{
    definitional_center4_solved, definitional_center_solved, embed_tetra, embed_triangle, menelaus_product,
    projection_foot_oracle, EmbeddedTetra,
};
use crate::tet_centers::{
    circum_aux, concurrency_conditions, cross_check, projection_components, projection_of_center,
    tet_center_components, tet_center_ir_tensor, TetCenterKind,
};
use crate::tet_metrics::{self as tm, closed_form as tcf};
use crate::tolerance::{relative_error, Tolerance};
use crate::tri_centers::{center_components, center_ir, euler_relation, TriCenterKind};
use crate::tri_metrics::{self as trm, closed_forms as cf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyScope {
    Tri,
    Tet,
    All,
}

impl VerifyScope {
    fn includes_tri(self) -> bool {
        matches!(self, Self::Tri | Self::All)
    }

    fn includes_tet(self) -> bool {
        matches!(self, Self::Tet | Self::All)
    }
}

impl FromStr for VerifyScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tri" => Ok(Self::Tri),
            "tet" => Ok(Self::Tet),
            "all" => Ok(Self::All),
            _ => Err(format!("unknown scope '{s}' (expected tri, tet or all)")),
        }
    }
}

impl fmt::Display for VerifyScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Tri => "tri",
            Self::Tet => "tet",
            Self::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cases: usize,
    pub scope: VerifyScope,
    pub tol: Tolerance,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            cases: 1000,
            scope: VerifyScope::All,
            tol: Tolerance::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecutionMode {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is off.
    Parallel,
}

impl ExecutionMode {
    pub fn default_mode() -> Self {
        if cfg!(feature = "parallel") {
            Self::Parallel
        } else {
            Self::Sequential
        }
    }
}

/// Minimum interior angle below which a random triangle is skipped.
pub const MIN_ANGLE_DEGREES: f64 = 1.0;
/// Random tetrahedra with `gram < GRAM_FLOOR * delta2^3` are skipped.
pub const GRAM_FLOOR: f64 = 1e-6;

/// Bound applied to squared quantities that should vanish, relative to the squared scale.
const VANISHING_FLOOR: f64 = 1e-6;

/// One suite's tolerance; a suite passes if every case residual is at most this.
#[derive(Debug, Clone, Copy)]
struct SuiteSpec {
    name: &'static str,
    tolerance_of: fn(&Tolerance) -> f64,
}

const TRI_SUITES: [SuiteSpec; 6] = [
    SuiteSpec { name: "tri.centers", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tri.distances", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tri.closed_forms", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tri.identities", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tri.euler", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tri.inequalities", tolerance_of: |t| t.atol },
];

const TET_SUITES: [SuiteSpec; 9] = [
    SuiteSpec { name: "tet.centers", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tet.circumcenter", tolerance_of: |t| 10.0 * t.rtol },
    SuiteSpec { name: "tet.metrics", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tet.distances", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tet.GI", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tet.projection", tolerance_of: |t| 10.0 * t.rtol },
    SuiteSpec { name: "tet.identities", tolerance_of: |t| t.rtol },
    SuiteSpec { name: "tet.inequalities", tolerance_of: |t| t.atol },
    SuiteSpec { name: "tet.concurrency", tolerance_of: |t| t.rtol },
];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSummary {
    pub name: &'static str,
    pub tolerance: f64,
    pub max_residual: f64,
    /// Case index holding the largest residual.
    pub worst_case: Option<usize>,
    /// Lengths of that case, for reproduction.
    pub worst_lengths: Vec<f64>,
    pub evaluated: usize,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: usize,
    pub scope: VerifyScope,
    pub suites: Vec<SuiteSummary>,
    pub skipped_triangles: usize,
    pub skipped_tetrahedra: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteSummary::passed)
    }

    pub fn failed_suites(&self) -> Vec<&'static str> {
        self.suites.iter().filter(|s| !s.passed()).map(|s| s.name).collect()
    }

    /// Plain-text summary, one line per suite. Deterministic for a given config.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verify seed={} cases={} scope={}", self.seed, self.cases, self.scope);
        if self.scope.includes_tri() {
            let _ = writeln!(out, "skipped triangles: {}", self.skipped_triangles);
        }
        if self.scope.includes_tet() {
            let _ = writeln!(out, "skipped tetrahedra: {}", self.skipped_tetrahedra);
        }
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{:<18} {}  evaluated={:<5} max_residual={:.3e}  tolerance={:.0e}",
                s.name,
                if s.passed() { "PASS" } else { "FAIL" },
                s.evaluated,
                s.max_residual,
                s.tolerance
            );
            if !s.passed() {
                let lengths: Vec<String> = s.worst_lengths.iter().map(|x| format!("{x:?}")).collect();
                let _ = writeln!(
                    out,
                    "  worst case {}: lengths {}",
                    s.worst_case.map_or_else(|| "-".to_string(), |c| c.to_string()),
                    lengths.join(" ")
                );
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Residuals of one evaluated case, one per suite.
struct CaseOutcome {
    lengths: Vec<f64>,
    residuals: Vec<f64>,
}

fn case_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Sorted uniform triple, redrawn until it forms a triangle.
pub fn random_triangle(seed: u64, case: usize) -> TriangleSides {
    let mut rng = case_rng(seed, 2 * case as u64);
    loop {
        let mut s = [rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()];
        s.sort_by(f64::total_cmp);
        if let Ok(t) = validate_triangle(s[0], s[1], s[2]) {
            return t;
        }
    }
}

/// Four points in the unit cube, and the edge lengths they measure.
pub fn random_tetra_points(seed: u64, case: usize) -> [Vector3<f64>; 4] {
    let mut rng = case_rng(seed, 2 * case as u64 + 1);
    [(); 4].map(|_| Vector3::new(rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()))
}

pub fn min_angle_degrees(sides: &TriangleSides) -> f64 {
    let [a2, b2, c2] = sides.squares();
    let [a, b, c] = sides.lengths();
    let cosines = [(b2 + c2 - a2) / (2.0 * b * c), (c2 + a2 - b2) / (2.0 * c * a), (a2 + b2 - c2) / (2.0 * a * b)];
    cosines
        .iter()
        .map(|x| x.clamp(-1.0, 1.0).acos().to_degrees())
        .fold(f64::INFINITY, f64::min)
}

/// The triangle of case `case`, or `None` if it falls under the angle filter.
pub fn triangle_case(seed: u64, case: usize) -> Option<TriangleSides> {
    let t = random_triangle(seed, case);
    (min_angle_degrees(&t) >= MIN_ANGLE_DEGREES).then_some(t)
}

/// The tetrahedron of case `case`, or `None` if it is near-flat.
pub fn tetra_case(seed: u64, case: usize) -> Option<(TetraEdges, [Vector3<f64>; 4])> {
    let pts = random_tetra_points(seed, case);
    let lengths = EmbeddedTetra::from_points(pts).measured_edges();
    let edges = validate_tetrahedron(lengths, &Tolerance::default()).ok()?;
    let poly = edges.polynomials();
    (poly.gram() >= GRAM_FLOOR * poly.delta2.powi(3)).then_some((edges, pts))
}

fn finite_or_inf(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x
    }
}

macro_rules! residual {
    ($e:expr) => {
        (|| -> crate::error::Result<f64> { Ok($e) })().map_or(f64::INFINITY, finite_or_inf)
    };
}

fn tri_residuals(sides: &TriangleSides, seed: u64, case: usize) -> Vec<f64> {
    let perimeter = sides.perimeter();
    let sq_scale: f64 = sides.squares().iter().sum();
    let tri = embed_triangle(sides);
    let comps = TriCenterKind::ALL.map(|k| center_components(k, sides));
    let oracle_points = TriCenterKind::ALL.map(|k| definitional_center_solved(&tri, k).0);

    let centers = (0..7)
        .map(|k| (tri.point_from_components(&comps[k]) - oracle_points[k]).norm() / perimeter)
        .fold(0.0, f64::max);

    let distances = residual!({
        let mut worst: f64 = 0.0;
        let mut idx = 0;
        for i in 0..7 {
            for j in (i + 1)..7 {
                let engine = trm::dist_between_centers(&comps[i], &comps[j], sides)?;
                let oracle = (oracle_points[i] - oracle_points[j]).norm();
                worst = worst.max((engine - oracle).abs() / perimeter);
                idx += 1;
            }
        }
        debug_assert_eq!(idx, 21);
        worst
    });

    let closed_forms = {
        let floor = VANISHING_FLOOR * sq_scale;
        let mut worst: f64 = 0.0;
        for row in trm::center_pair_table(sides) {
            if let Some(c) = row.closed_form {
                worst = worst.max(relative_error(row.squared_distance, c * c, floor));
            }
        }
        let q = &comps[3];
        let qg = trm::dist_circumcenter_to_center(&comps[0], sides).map_or(f64::INFINITY, |d| d * d);
        worst = worst.max(relative_error(qg, cf::qg_squared(sides), floor));
        let qi = trm::squared_between_centers(q, &comps[1], sides);
        worst.max(relative_error(qi, cf::qi_squared(sides), floor))
    };

    let identities = residual!({
        let mut worst: f64 = 0.0;
        for (k, kind) in TriCenterKind::ALL.into_iter().enumerate() {
            let Ok(ir) = center_ir(kind, sides) else { continue };
            worst = worst.max((ir.ceva_product() - 1.0).abs());
            let Ok(feet) = vertex_foot_ratios3(&comps[k]) else { continue };
            let kappa: f64 = feet.integral.iter().sum();
            worst = worst.max((kappa - 2.0).abs());
            let reciprocal: f64 = feet.fractional.iter().map(|l| 1.0 / (1.0 + l)).sum();
            worst = worst.max((reciprocal - 1.0).abs());
            let [l1, l2, l3] = feet.fractional;
            let det = fractional_ratio_determinant(l1, l2, l3);
            worst = worst.max(det.abs() / (1.0 + (l1 * l2 * l3).abs()));
        }
        // A transversal through interior points of AB and BC, kept away from parallel to CA.
        let mut rng = case_rng(seed ^ 0x6d65_6e65_6c61_7573, case as u64);
        let (t1, t2) = loop {
            let t1: f64 = rng.random_range(0.05..0.95);
            let t2: f64 = rng.random_range(0.05..0.95);
            if (1.0 - t1 - t2).abs() > 0.05 {
                break (t1, t2);
            }
        };
        let p: Vector2<f64> = tri.pa + (tri.pb - tri.pa) * t1;
        let r: Vector2<f64> = tri.pb + (tri.pc - tri.pb) * t2;
        let product = menelaus_product(&tri, &p, &(r - p))?;
        worst.max((product + 1.0).abs())
    });

    let euler = {
        let e = euler_relation(sides);
        (e.gh_over_gq + 2.0).abs().max(e.collinearity_residual / perimeter)
    };

    let inequalities = trm::inequality_slacks(sides)
        .values()
        .map(|&v| (-v).max(0.0))
        .fold(0.0, f64::max);

    vec![centers, distances, closed_forms, identities, euler, inequalities]
        .into_iter()
        .map(finite_or_inf)
        .collect()
}

fn tet_kinds() -> [TetCenterKind; 8] {
    let mut out = [TetCenterKind::PowerIncenter(2.0); 8];
    out[..7].copy_from_slice(&TetCenterKind::NAMED);
    out
}

fn normalized(w: [f64; 4]) -> [f64; 4] {
    let s: f64 = w.iter().sum();
    w.map(|x| x / s)
}

fn max_component_gap(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    let scale = a.iter().chain(b.iter()).fold(0.0f64, |m, x| m.max(x.abs()));
    (0..4).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max) / scale
}

/// Closed form of the centroid-incenter squared distance; swappable so tests can inject a fault.
type GiForm = fn(&TetraEdges) -> f64;

fn tet_residuals(edges: &TetraEdges, case: usize, seed: u64, tol: &Tolerance, gi_form: GiForm) -> Vec<f64> {
    let max_edge = edges.max_edge();
    let sq_scale = max_edge * max_edge;
    let floor = VANISHING_FLOOR * sq_scale;
    let tet = match embed_tetra(edges) {
        Ok(t) => t,
        Err(_) => return vec![f64::INFINITY; TET_SUITES.len()],
    };
    let kinds = tet_kinds();

    let centers = residual!({
        let mut worst: f64 = 0.0;
        for kind in kinds {
            let comps = tet_center_components(kind, edges)?;
            let (oracle, _) = definitional_center4_solved(&tet, kind, tol)?;
            worst = worst.max((tet.point_from_components(&comps) - oracle).norm() / max_edge);
        }
        worst
    });

    let circumcenter = residual!({
        let primary = normalized(circum_aux(edges).weights);
        let det = normalized(cross_check::circum_weights_determinant(edges));
        let sym = normalized(cross_check::circum_weights_symmetric(edges));
        let solved = tet.circumcenter_solved().x;
        let q = tet_center_components(TetCenterKind::Q, edges)?;
        let point_gap = (tet.point_from_components(&q) - solved).norm() / max_edge;
        max_component_gap(&primary, &det)
            .max(max_component_gap(&primary, &sym))
            .max(max_component_gap(&det, &sym))
            .max(point_gap)
    });

    let metrics = residual!({
        let oracle_volume = tet.volume();
        let v = tm::volume(edges);
        let r = tm::inradius(edges);
        let big_r = tm::circumradius(edges);
        let incenter = tet_center_components(TetCenterKind::I, edges)?;
        let ip = tet.point_from_components(&incenter);
        let plane_r = Face::ALL
            .map(|f| tet.signed_plane_distance(f, &ip))
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let solved_q = tet.circumcenter_solved().x;
        let oracle_big_r = (solved_q - tet.pa).norm();
        let u = circum_aux(edges).total;
        relative_error(v, oracle_volume, 0.0)
            .max(relative_error(r, plane_r, 0.0))
            .max(relative_error(big_r, oracle_big_r, 0.0))
            .max(relative_error(big_r, tm::circumradius_from_weights(edges), 0.0))
            .max(relative_error(big_r, tm::circumradius_from_weight_sums(edges), 0.0))
            .max(tm::crelle_check(edges))
            .max(relative_error(u, 144.0 * v * v, 0.0))
    });

    // Closed forms are compared as distances, within rtol of the largest edge.
    let distance_gap = |closed_sq: f64, engine: f64| (closed_sq.max(0.0).sqrt() - engine).abs() / max_edge;
    let distances = residual!({
        let mut comps = Vec::new();
        let mut points = Vec::new();
        for kind in TetCenterKind::NAMED {
            comps.push(tet_center_components(kind, edges)?);
            points.push(definitional_center4_solved(&tet, kind, tol)?.0);
        }
        let mut worst: f64 = 0.0;
        for (k, row) in tm::center_pair_table4(edges)?.into_iter().enumerate() {
            let (i, j) = pair_position(k);
            let oracle = (points[i] - points[j]).norm();
            let engine = tm::dist_between_centers4(&comps[i], &comps[j], edges)?;
            worst = worst.max((engine - oracle).abs() / max_edge);
            if let Some(c) = row.closed_form {
                worst = worst.max(distance_gap(c, engine));
            }
        }
        let g = &comps[0];
        let (i, q) = (&comps[1], &comps[2]);
        worst = worst.max(distance_gap(tcf::gq_squared_weights(edges), tm::dist_between_centers4(g, q, edges)?));
        worst = worst.max(distance_gap(tcf::iq_squared_weights(edges), tm::dist_between_centers4(i, q, edges)?));
        for x in 0..4 {
            let e = &comps[3 + x];
            worst = worst.max(distance_gap(tcf::qe_squared_weights(x, edges), tm::dist_between_centers4(q, e, edges)?));
        }
        worst
    });

    let gi = residual!({
        let g = Components4::uniform();
        let i = tet_center_components(TetCenterKind::I, edges)?;
        let engine = tm::squared_between_centers4(&g, &i, edges);
        let closed = gi_form(edges);
        let og = definitional_center4_solved(&tet, TetCenterKind::G, tol)?.0;
        let oi = definitional_center4_solved(&tet, TetCenterKind::I, tol)?.0;
        let oracle = (og - oi).norm_squared();
        relative_error(closed, engine, floor)
            .max(relative_error(closed, oracle, floor))
            .max(relative_error(engine, oracle, floor))
    });

    let projection = residual!({
        let mut rng = case_rng(seed ^ 0x7072_6f6a_6563_7473, case as u64);
        let p = Vector3::new(
            rng.random_range(-0.5..1.5),
            rng.random_range(-0.5..1.5),
            rng.random_range(-0.5..1.5),
        );
        let sq = tet.vertices().map(|v| (v - p).norm_squared());
        let mut worst: f64 = 0.0;
        for face in Face::ALL {
            let c = projection_components(edges, &sq, face)?;
            let oracle = projection_foot_oracle(&tet, &p, face);
            worst = worst.max((tet.face_point(face, &c) - oracle).norm() / max_edge);
            for kind in [TetCenterKind::Q, TetCenterKind::G, TetCenterKind::I] {
                let closed = projection_of_center(kind, edges, face)?;
                let center = definitional_center4_solved(&tet, kind, tol)?.0;
                let foot = projection_foot_oracle(&tet, &center, face);
                worst = worst.max((tet.face_point(face, &closed) - foot).norm() / max_edge);
            }
            let incenter = tet_center_components(TetCenterKind::I, edges)?;
            let r = tm::inradius(edges);
            worst = worst.max(relative_error(tm::projection_foot_distance(&incenter, edges, face)?, r, 0.0));
        }
        worst
    });

    let identities = residual!({
        let mut worst: f64 = 0.0;
        for kind in kinds {
            let beta = tet_center_components(kind, edges)?;
            let feet = vertex_foot_ratios4(&beta)?;
            worst = worst.max((feet.integral.iter().sum::<f64>() - 3.0).abs());
            if kind.excenter_vertex().is_none() && !matches!(kind, TetCenterKind::PowerIncenter(_)) {
                let tensor = tet_center_ir_tensor(kind, edges)?;
                for f in &tensor.faces {
                    worst = worst.max((f.ceva_product() - 1.0).abs());
                }
            }
            let faces = Face::ALL.map(|f| face_components_from_tetra(&beta, f));
            for x in 0..4 {
                let mut sum = 0.0;
                for face in Face::ALL {
                    if face.opposite() == x {
                        continue;
                    }
                    let c = faces[face as usize].clone()?;
                    let pos = face.vertices().iter().position(|&v| v == x).expect("vertex on face");
                    sum += 1.0 / c[pos];
                }
                let expect = (2.0 + beta[x]) / beta[x];
                worst = worst.max(relative_error(sum, expect, 1.0));
            }
        }
        worst
    });

    let inequalities = tm::tet_inequality_slacks(edges)
        .values()
        .map(|&v| (-v).max(0.0))
        .fold(0.0, f64::max);

    let concurrency = residual!({
        let mut worst: f64 = 0.0;
        for kind in [TetCenterKind::I, TetCenterKind::PowerIncenter(2.0), TetCenterKind::Q] {
            let beta = tet_center_components(kind, edges)?;
            let mut faces = [Components3::uniform(); 4];
            for face in Face::ALL {
                faces[face as usize] = face_components_from_tetra(&beta, face)?;
            }
            let report = concurrency_conditions(&faces, tol)?;
            let Some(rebuilt) = report.components else { return Ok(f64::INFINITY) };
            worst = worst.max(max_component_gap(&rebuilt.weights(), &beta.weights()));
        }
        worst
    });

    vec![centers, circumcenter, metrics, distances, gi, projection, identities, inequalities, concurrency]
        .into_iter()
        .map(finite_or_inf)
        .collect()
}

/// Row-major position of pair `k` among the 21 pairs of seven items.
fn pair_position(k: usize) -> (usize, usize) {
    let mut n = 0;
    for i in 0..7 {
        for j in (i + 1)..7 {
            if n == k {
                return (i, j);
            }
            n += 1;
        }
    }
    unreachable!("pair index out of range")
}

fn map_cases<T: Send>(cases: usize, mode: ExecutionMode, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    match mode {
        #[cfg(feature = "parallel")]
        ExecutionMode::Parallel => {
            use rayon::prelude::*;
            (0..cases).into_par_iter().map(f).collect()
        }
        _ => (0..cases).map(f).collect(),
    }
}

fn reduce(specs: &[SuiteSpec], outcomes: &[Option<CaseOutcome>], tol: &Tolerance) -> Vec<SuiteSummary> {
    let mut out: Vec<SuiteSummary> = specs
        .iter()
        .map(|s| SuiteSummary {
            name: s.name,
            tolerance: (s.tolerance_of)(tol),
            max_residual: 0.0,
            worst_case: None,
            worst_lengths: Vec::new(),
            evaluated: 0,
        })
        .collect();
    for (case, outcome) in outcomes.iter().enumerate() {
        let Some(o) = outcome else { continue };
        for (suite, &r) in out.iter_mut().zip(&o.residuals) {
            suite.evaluated += 1;
            if r > suite.max_residual || suite.worst_case.is_none() {
                suite.max_residual = suite.max_residual.max(r);
                suite.worst_case = Some(case);
                suite.worst_lengths = o.lengths.clone();
            }
        }
    }
    out
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    run_with_mode(config, ExecutionMode::default_mode())
}

pub fn run_with_mode(config: &VerifyConfig, mode: ExecutionMode) -> VerifyReport {
    run_inner(config, mode, tcf::gi_squared)
}

fn run_inner(config: &VerifyConfig, mode: ExecutionMode, gi_form: GiForm) -> VerifyReport {
    let mut suites = Vec::new();
    let mut skipped_triangles = 0;
    let mut skipped_tetrahedra = 0;
    let seed = config.seed;
    if config.scope.includes_tri() {
        let outcomes = map_cases(config.cases, mode, |i| {
            triangle_case(seed, i).map(|sides| CaseOutcome {
                lengths: sides.lengths().to_vec(),
                residuals: tri_residuals(&sides, seed, i),
            })
        });
        skipped_triangles = outcomes.iter().filter(|o| o.is_none()).count();
        suites.extend(reduce(&TRI_SUITES, &outcomes, &config.tol));
    }
    if config.scope.includes_tet() {
        let tol = config.tol;
        let outcomes = map_cases(config.cases, mode, |i| {
            tetra_case(seed, i).map(|(edges, _)| CaseOutcome {
                lengths: edges.lengths().to_vec(),
                residuals: tet_residuals(&edges, i, seed, &tol, gi_form),
            })
        });
        skipped_tetrahedra = outcomes.iter().filter(|o| o.is_none()).count();
        suites.extend(reduce(&TET_SUITES, &outcomes, &config.tol));
    }
    VerifyReport {
        seed,
        cases: config.cases,
        scope: config.scope,
        suites,
        skipped_triangles,
        skipped_tetrahedra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        assert_eq!(random_triangle(7, 3), random_triangle(7, 3));
        assert_ne!(random_triangle(7, 3), random_triangle(7, 4));
        assert_eq!(random_tetra_points(7, 3), random_tetra_points(7, 3));
    }

    #[test]
    fn small_run_passes_in_both_modes() {
        let config = VerifyConfig {
            cases: 40,
            ..VerifyConfig::default()
        };
        let seq = run_with_mode(&config, ExecutionMode::Sequential);
        let par = run_with_mode(&config, ExecutionMode::Parallel);
        assert_eq!(seq, par);
        assert!(seq.passed(), "{}", seq.render());
        assert!(seq.suites.iter().any(|s| s.name == "tet.GI"));
    }

    #[test]
    fn sign_fault_in_gi_form_is_caught() {
        let config = VerifyConfig {
            cases: 20,
            scope: VerifyScope::Tet,
            ..VerifyConfig::default()
        };
        let report = run_inner(&config, ExecutionMode::Sequential, |e| -tcf::gi_squared(e));
        assert_eq!(report.failed_suites(), vec!["tet.GI"]);
        assert!(report.render().contains("tet.GI             FAIL"));
    }

    #[test]
    fn angle_filter() {
        let sliver = TriangleSides::new(1.0, 1.0, 1.9999).unwrap();
        assert!(min_angle_degrees(&sliver) < MIN_ANGLE_DEGREES);
        let eq = TriangleSides::new(1.0, 1.0, 1.0).unwrap();
        assert!((min_angle_degrees(&eq) - 60.0).abs() < 1e-12);
    }
}
