mod error;
mod input;
mod report;
mod request;
mod tet;
mod tri;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use intercenter::verify::{self, VerifyConfig, VerifyReport, VerifyScope};
use intercenter::{validate_tetrahedron, Face, Tolerance, TriangleSides};
use serde_json::json;

use error::{input as input_error, CliError};
use input::{InputDocument, Kind};
use report::{Real, ReportDocument, ToleranceDoc};
use request::Request;

const RTOL_ENV: &str = "INTERCENTER_TOL_RTOL";
const ATOL_ENV: &str = "INTERCENTER_TOL_ATOL";

#[derive(Parser)]
#[command(name = "intercenter", version, about = "Centers, distances and metrics of triangles and tetrahedra from lengths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on a triangle given by its sides a = BC, b = CA, c = AB.
    Tri(TriArgs),
    /// Report on a tetrahedron given by its edges AB AC AD BC CD DB.
    Tet(TetArgs),
    /// Run the randomized comparison against the coordinate oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Read lengths or coordinates from a JSON input document.
    #[arg(long, value_name = "FILE")]
    coords: Option<PathBuf>,
    /// `all` or a comma-separated list such as `G,I,E_A`.
    #[arg(long, value_name = "LIST")]
    centers: Option<String>,
    /// `all` or comma-separated pairs such as `G:I,Q:H`.
    #[arg(long, value_name = "LIST|all")]
    distances: Option<String>,
    #[arg(long)]
    metrics: bool,
    #[arg(long)]
    inequalities: bool,
    /// Sub-triangle areas per center (triangles) or face areas (tetrahedra).
    #[arg(long)]
    areas: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Relative tolerance; defaults to $INTERCENTER_TOL_RTOL, then 1e-9.
    #[arg(long, allow_negative_numbers = true)]
    rtol: Option<f64>,
    /// Absolute tolerance; defaults to $INTERCENTER_TOL_ATOL, then 1e-12.
    #[arg(long, allow_negative_numbers = true)]
    atol: Option<f64>,
}

#[derive(Args)]
struct TriArgs {
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true, conflicts_with = "coords")]
    sides: Option<Vec<f64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TetArgs {
    #[arg(
        long,
        num_args = 6,
        value_names = ["AB", "AC", "AD", "BC", "CD", "DB"],
        allow_negative_numbers = true,
        conflicts_with = "coords"
    )]
    edges: Option<Vec<f64>>,
    /// Project onto a face, named `BCD`, `CDA`, `DAB`, `ABC` or by its opposite vertex.
    #[arg(long, value_name = "FACE")]
    project: Option<Face>,
    /// Distances from a point to A, B, C, D; its projection is added to the report.
    #[arg(long, num_args = 4, value_names = ["PA", "PB", "PC", "PD"], allow_negative_numbers = true, requires = "project")]
    point_dists: Option<Vec<f64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    #[arg(long, default_value = "all")]
    scope: VerifyScope,
    #[arg(long, value_enum, default_value = "text")]
    format: VerifyFormat,
    #[arg(long, allow_negative_numbers = true)]
    rtol: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    atol: Option<f64>,
}

fn env_tolerance(var: &str) -> Result<Option<f64>, CliError> {
    match std::env::var(var) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| input_error(format!("{var}='{v}' is not a number"))),
        Err(_) => Ok(None),
    }
}

/// Flag, then input document, then environment, then the library default.
fn resolve_tolerance(rtol: Option<f64>, atol: Option<f64>, doc: Option<&InputDocument>) -> Result<Tolerance, CliError> {
    let opts = doc.and_then(|d| d.options.as_ref());
    let default = Tolerance::default();
    let rtol = match rtol.or(opts.and_then(|o| o.rtol).map(|r| r.0)) {
        Some(v) => v,
        None => env_tolerance(RTOL_ENV)?.unwrap_or(default.rtol),
    };
    let atol = match atol.or(opts.and_then(|o| o.atol).map(|r| r.0)) {
        Some(v) => v,
        None => env_tolerance(ATOL_ENV)?.unwrap_or(default.atol),
    };
    Ok(Tolerance::new(rtol, atol)?)
}

fn load_document(kind: Kind, lengths: Option<Vec<f64>>, path: Option<&PathBuf>) -> Result<(InputDocument, Vec<f64>), CliError> {
    let mut doc = match (lengths, path) {
        (Some(values), None) => InputDocument::from_lengths(kind, &values),
        (None, Some(p)) => InputDocument::load(p)?,
        _ => {
            let flag = if kind == Kind::Triangle { "--sides" } else { "--edges" };
            return Err(input_error(format!("give either {flag} or --coords")));
        }
    };
    let lengths = doc.resolve(kind)?;
    Ok((doc, lengths))
}

fn request(common: &Common, tol: Tolerance, project: Option<Face>, point_dists: Option<Vec<f64>>) -> Result<Request, CliError> {
    let point_dists = match point_dists {
        Some(d) => {
            if let Some(bad) = d.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                return Err(input_error(format!("point distance {bad} must be finite and non-negative")));
            }
            Some([d[0], d[1], d[2], d[3]])
        }
        None => None,
    };
    let nothing = common.centers.is_none()
        && common.distances.is_none()
        && !common.metrics
        && !common.inequalities
        && !common.areas
        && project.is_none();
    Ok(Request {
        // A bare invocation reports every center plus the metrics.
        centers: if nothing { Some("all".into()) } else { common.centers.clone() },
        distances: common.distances.clone(),
        metrics: common.metrics || nothing,
        inequalities: common.inequalities,
        areas: common.areas,
        project,
        point_dists,
        tol,
    })
}

fn empty_report(doc: InputDocument, tol: &Tolerance) -> ReportDocument {
    ReportDocument {
        input: doc,
        tolerance: ToleranceDoc {
            rtol: Real(tol.rtol),
            atol: Real(tol.atol),
        },
        components: None,
        ir: None,
        distances: None,
        metrics: None,
        inequalities: None,
        areas: None,
        projection: None,
        unavailable: BTreeMap::new(),
    }
}

fn render(doc: &ReportDocument, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => report::to_json(doc),
        Format::Csv => report::to_csv(doc),
    }
}

fn cmd_tri(args: TriArgs) -> Result<String, CliError> {
    let (doc, lengths) = load_document(Kind::Triangle, args.sides, args.common.coords.as_ref())?;
    let tol = resolve_tolerance(args.common.rtol, args.common.atol, Some(&doc))?;
    let sides = TriangleSides::new(lengths[0], lengths[1], lengths[2])?;
    let req = request(&args.common, tol, None, None)?;
    let mut out = empty_report(doc, &tol);
    tri::report(sides, &req, &mut out)?;
    render(&out, args.common.format)
}

fn cmd_tet(args: TetArgs) -> Result<String, CliError> {
    let (doc, lengths) = load_document(Kind::Tetrahedron, args.edges, args.common.coords.as_ref())?;
    let tol = resolve_tolerance(args.common.rtol, args.common.atol, Some(&doc))?;
    let edges = validate_tetrahedron(lengths.try_into().expect("six lengths"), &tol)?;
    let req = request(&args.common, tol, args.project, args.point_dists)?;
    let mut out = empty_report(doc, &tol);
    tet::report(edges, &req, &mut out)?;
    render(&out, args.common.format)
}

fn verify_json(r: &VerifyReport) -> serde_json::Value {
    let suites: serde_json::Map<String, serde_json::Value> = r
        .suites
        .iter()
        .map(|s| {
            let entry = json!({
                "evaluated": s.evaluated,
                "max_residual": Real(s.max_residual),
                "passed": s.passed(),
                "tolerance": Real(s.tolerance),
                "worst_case": s.worst_case,
                "worst_lengths": s.worst_lengths.iter().map(|&x| Real(x)).collect::<Vec<_>>(),
            });
            (s.name.to_string(), entry)
        })
        .collect();
    json!({
        "cases": r.cases,
        "passed": r.passed(),
        "scope": r.scope.to_string(),
        "seed": r.seed,
        "skipped_tetrahedra": r.skipped_tetrahedra,
        "skipped_triangles": r.skipped_triangles,
        "suites": suites,
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<(String, bool), CliError> {
    if args.cases == 0 {
        return Err(input_error("--cases must be at least 1"));
    }
    let tol = resolve_tolerance(args.rtol, args.atol, None)?;
    let config = VerifyConfig {
        seed: args.seed,
        cases: args.cases,
        scope: args.scope,
        tol,
    };
    let r = verify::run(&config);
    let text = match args.format {
        VerifyFormat::Text => r.render(),
        VerifyFormat::Json => report::to_json(&verify_json(&r))?,
        VerifyFormat::Csv => report::to_csv(&verify_json(&r))?,
    };
    Ok((text, r.passed()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Tri(a) => cmd_tri(a).map(|t| (t, true)),
        Command::Tet(a) => cmd_tet(a).map(|t| (t, true)),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok((text, passed)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.kind());
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        Cli::try_parse_from(std::iter::once("intercenter").chain(args.iter().copied())).unwrap().command
    }

    #[test]
    fn report_document_round_trips() {
        let Command::Tet(a) = parse(&[
            "tet", "--edges", "1", "1.2", "0.9", "1.1", "1.3", "1", "--centers", "all,P2", "--distances", "all",
            "--metrics", "--inequalities", "--areas", "--project", "CDA", "--point-dists", "1", "1", "1", "1",
        ]) else {
            unreachable!()
        };
        let text = cmd_tet(a).map_err(|e| format!("{}: {e}", e.kind())).unwrap();
        let doc: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(report::to_json(&doc).unwrap(), text);
        let again: ReportDocument = serde_json::from_str(&report::to_json(&doc).unwrap()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn triangle_report_round_trips() {
        let Command::Tri(a) = parse(&["tri", "--sides", "3", "4", "5", "--centers", "all", "--distances", "all", "--areas"]) else {
            unreachable!()
        };
        let text = cmd_tri(a).unwrap();
        let doc: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(report::to_json(&doc).unwrap(), text);
    }
}
