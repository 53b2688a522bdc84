//! qtrans: exact command-line analysis of quasi-translations x + H over Q.
//!
//! Maps are semicolon-separated component expressions in x1..xN; the
//! variable count is inferred from the highest index used unless -n is
//! given. Exit codes: 0 success, 1 a mathematical assertion failed on valid
//! input, 2 unusable input, 70 internal invariant violated.

mod examples;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use qtrans_core::classify::classify_small;
use qtrans_core::hessian::{find_relation, hesse_check, image_span, qt_from_relation};
use qtrans_core::parser::parse_x;
use qtrans_core::polymap::gradient;
use qtrans_core::quasitrans::{
    check_qt, conjugate, homogenize, is_invariant, iterate, quasi_degree, strip_gcd,
};
use qtrans_core::rat::rat_string;
use qtrans_core::{Error, Poly, PolyMap, QuasiTranslation, RankMode, RelationSearch, Result};

use report::{
    map_json, poly_json, qmatrix_json, rank_json, rat_vec_json, rat_vec_text, Report,
};

#[derive(Parser)]
#[command(name = "qtrans", version, about = "Exact toolkit for quasi-translations x + H over the rationals")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the three equivalent quasi-translation conditions for a map.
    Check(CheckArgs),
    /// Decide whether a polynomial is invariant under x + H.
    Invariant(MapPolyArgs),
    /// Quasi-degree of a polynomial along a quasi-translation.
    Nu(MapPolyArgs),
    /// Compose x + H with itself m times.
    Iterate(IterateArgs),
    /// Split H into the gcd of its components and the reduced map.
    StripGcd(MapArgs),
    /// Conjugate a quasi-translation by a polynomial automorphism.
    Conjugate(ConjugateArgs),
    /// Homogenize a quasi-translation with one extra variable.
    Homogenize(HomogenizeArgs),
    /// Search for a polynomial relation among the components of a map.
    FindRelation(FindRelationArgs),
    /// Derive a candidate quasi-translation from a singular Hessian.
    FromHessian(FromHessianArgs),
    /// Look for a constant dependence among the partial derivatives.
    Hesse(HesseArgs),
    /// Dimension of the linear span of the image of a map.
    Span(MapArgs),
    /// Normal form and two-component decomposition in small dimension.
    Classify(MapArgs),
    /// Run the bundled worked examples end to end.
    PaperExamples(PaperExamplesArgs),
}

#[derive(Args)]
struct OutputOpts {
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Randomized,
    Certified,
}

#[derive(Args)]
struct RankOpts {
    /// Rank computation mode; defaults to certified for n <= 5.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Seed for randomized rank checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CheckArgs {
    /// Map H as semicolon-separated components.
    #[arg(long, value_name = "MAP")]
    map: String,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    rank: RankOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct MapArgs {
    /// Map H as semicolon-separated components.
    #[arg(long, value_name = "MAP")]
    map: String,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct MapPolyArgs {
    /// Map H as semicolon-separated components.
    #[arg(long, value_name = "MAP")]
    map: String,
    /// Polynomial f to test along x + H.
    #[arg(long, value_name = "POLY")]
    poly: String,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct IterateArgs {
    /// Map H as semicolon-separated components.
    #[arg(long, value_name = "MAP")]
    map: String,
    /// Number of compositions.
    #[arg(short = 'm', long, value_name = "M")]
    times: u32,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct ConjugateArgs {
    /// Map H as semicolon-separated components.
    #[arg(long, value_name = "MAP")]
    map: String,
    /// Forward automorphism F.
    #[arg(long, value_name = "MAP")]
    forward: String,
    /// Inverse automorphism G with G(F) = F(G) = x.
    #[arg(long, value_name = "MAP")]
    inverse: String,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct HomogenizeArgs {
    /// Map H as semicolon-separated components.
    #[arg(long, value_name = "MAP")]
    map: String,
    /// Homogenization degree; defaults to the degree of the map.
    #[arg(long, value_name = "D")]
    degree: Option<u32>,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct FindRelationArgs {
    /// Target map G whose components are tested for a relation.
    #[arg(long, value_name = "MAP", conflicts_with = "poly", required_unless_present = "poly")]
    map: Option<String>,
    /// Polynomial h; the target becomes its gradient.
    #[arg(long, value_name = "POLY")]
    poly: Option<String>,
    /// Largest relation degree the search visits.
    #[arg(long, value_name = "D", default_value_t = 6)]
    deg_cap: u32,
    /// Restrict the search to homogeneous relations.
    #[arg(long)]
    homogeneous: bool,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    rank: RankOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct FromHessianArgs {
    /// Polynomial h whose gradient feeds the relation search.
    #[arg(long, value_name = "POLY")]
    poly: String,
    /// Largest relation degree the search visits.
    #[arg(long, value_name = "D", default_value_t = 6)]
    deg_cap: u32,
    /// Restrict the search to homogeneous relations.
    #[arg(long)]
    homogeneous: bool,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    rank: RankOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct HesseArgs {
    /// Polynomial h to test.
    #[arg(long, value_name = "POLY")]
    poly: String,
    /// Also allow an affine dependence sum c_j dh/dx_j = c0.
    #[arg(long)]
    affine: bool,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n', long = "dim", value_name = "N")]
    dim: Option<usize>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct PaperExamplesArgs {
    #[command(flatten)]
    output: OutputOpts,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.verb {
        Verb::Check(args) => cmd_check(args),
        Verb::Invariant(args) => cmd_invariant(args),
        Verb::Nu(args) => cmd_nu(args),
        Verb::Iterate(args) => cmd_iterate(args),
        Verb::StripGcd(args) => cmd_strip_gcd(args),
        Verb::Conjugate(args) => cmd_conjugate(args),
        Verb::Homogenize(args) => cmd_homogenize(args),
        Verb::FindRelation(args) => cmd_find_relation(args),
        Verb::FromHessian(args) => cmd_from_hessian(args),
        Verb::Hesse(args) => cmd_hesse(args),
        Verb::Span(args) => cmd_span(args),
        Verb::Classify(args) => cmd_classify(args),
        Verb::PaperExamples(args) => cmd_paper_examples(args),
    }
}

/// Maps library errors onto the exit-code contract: bad input is 2, a failed
/// mathematical assertion on well-formed input is 1, broken internal
/// invariants are 70.
fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Internal(_) => 70,
        Error::Parse { .. }
        | Error::UnknownIdentifier { .. }
        | Error::ArityMismatch { .. }
        | Error::DimensionMismatch(_)
        | Error::IndexOutOfRange { .. }
        | Error::NotSquare { .. }
        | Error::NotSquareMap { .. }
        | Error::NegativeExponent
        | Error::DegreeTooSmall { .. }
        | Error::Precondition(_) => 2,
        _ => 1,
    }
}

/// Highest x-index mentioned in any of the texts.
fn inferred_arity(texts: &[&str]) -> usize {
    let mut max = 0usize;
    for text in texts {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'x' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                let mut j = i + 1;
                let mut value = 0usize;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    value = value * 10 + (bytes[j] - b'0') as usize;
                    j += 1;
                }
                max = max.max(value);
                i = j;
            } else {
                i += 1;
            }
        }
    }
    max
}

fn parse_map_arg(text: &str, dim: Option<usize>) -> Result<PolyMap> {
    let parts: Vec<&str> = text.split(';').collect();
    let n = dim.unwrap_or_else(|| inferred_arity(&parts).max(parts.len()));
    let components = parts.iter().map(|part| parse_x(part, n)).collect::<Result<Vec<_>>>()?;
    Ok(PolyMap::new(components))
}

fn parse_poly_arg(text: &str, dim: Option<usize>) -> Result<Poly> {
    let n = dim.unwrap_or_else(|| inferred_arity(&[text]).max(1));
    parse_x(text, n)
}

fn parse_map_and_poly(
    map_text: &str,
    poly_text: &str,
    dim: Option<usize>,
) -> Result<(PolyMap, Poly)> {
    let parts: Vec<&str> = map_text.split(';').collect();
    let mut texts = parts.clone();
    texts.push(poly_text);
    let n = dim.unwrap_or_else(|| inferred_arity(&texts).max(parts.len()));
    let components = parts.iter().map(|part| parse_x(part, n)).collect::<Result<Vec<_>>>()?;
    Ok((PolyMap::new(components), parse_x(poly_text, n)?))
}

fn resolve_mode(mode: Option<Mode>, n: usize) -> RankMode {
    match mode {
        Some(Mode::Randomized) => RankMode::Randomized,
        Some(Mode::Certified) => RankMode::Certified,
        None if n <= 5 => RankMode::Certified,
        None => RankMode::Randomized,
    }
}

fn y_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("y{i}")).collect()
}

fn emit(report: Report, output: &OutputOpts) -> Result<()> {
    report
        .emit(output.json, output.out.as_deref())
        .map_err(|e| Error::Precondition(format!("cannot write report: {e}")))
}

fn rank_line(report: &qtrans_core::RankReport) -> String {
    let mode = format!("{:?}", report.mode).to_lowercase();
    match report.failure_bound_text() {
        Some(bound) => {
            format!("jacobian rank: {} ({mode}, failure bound {bound})", report.rank)
        }
        None => format!("jacobian rank: {} ({mode})", report.rank),
    }
}

fn cmd_check(args: CheckArgs) -> Result<u8> {
    let map = parse_map_arg(&args.map, args.dim)?;
    let qt_report = check_qt(&map)?;
    let rank = map.jacobian().rank(resolve_mode(args.rank.mode, map.arity()), args.rank.seed)?;

    let mut rep = Report::new("check");
    rep.line(format!("map: {map}"));
    rep.line(format!("condition (1) inverse composition: {}", qt_report.cond_inverse));
    rep.line(format!("condition (2) stable under deformation: {}", qt_report.cond_deform));
    rep.line(format!("condition (3) Jacobian annihilates map: {}", qt_report.cond_jhh));
    match qt_report.nilpotency_index {
        Some(k) => rep.line(format!("nilpotency index: {k}")),
        None => rep.line("nilpotency index: none"),
    }
    rep.line(format!("truncated series identity: {}", qt_report.series_identity));
    rep.line(rank_line(&rank));
    let verdict = if qt_report.is_qt() { "quasi-translation" } else { "not a quasi-translation" };
    rep.line(format!("verdict: {verdict}"));

    rep.field("map", map_json(&map));
    rep.field("n", map.arity().into());
    rep.field("cond_inverse", qt_report.cond_inverse.into());
    rep.field("cond_deform", qt_report.cond_deform.into());
    rep.field("cond_jhh", qt_report.cond_jhh.into());
    rep.field(
        "nilpotency_index",
        qt_report.nilpotency_index.map_or(Value::Null, Value::from),
    );
    rep.field("series_identity", qt_report.series_identity.into());
    rep.field("jacobian_rank", rank_json(&rank));
    rep.field("is_qt", qt_report.is_qt().into());
    let ok = qt_report.is_qt();
    emit(rep, &args.output)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_invariant(args: MapPolyArgs) -> Result<u8> {
    let (map, poly) = parse_map_and_poly(&args.map, &args.poly, args.dim)?;
    let qt = QuasiTranslation::verify(map)?;
    let invariant = is_invariant(&poly, &qt)?;

    let mut rep = Report::new("invariant");
    rep.line(format!("map: {}", qt.map()));
    rep.line(format!("poly: {poly}"));
    rep.line(format!("invariant: {invariant}"));
    rep.field("map", map_json(qt.map()));
    rep.field("poly", poly_json(&poly));
    rep.field("invariant", invariant.into());
    emit(rep, &args.output)?;
    Ok(if invariant { 0 } else { 1 })
}

fn cmd_nu(args: MapPolyArgs) -> Result<u8> {
    let (map, poly) = parse_map_and_poly(&args.map, &args.poly, args.dim)?;
    let qt = QuasiTranslation::verify(map)?;
    let nu = quasi_degree(&poly, &qt);

    let mut rep = Report::new("nu");
    rep.line(format!("map: {}", qt.map()));
    rep.line(format!("poly: {poly}"));
    rep.line(format!("nu: {nu}"));
    rep.field("map", map_json(qt.map()));
    rep.field("poly", poly_json(&poly));
    rep.field("nu", Value::String(nu.to_string()));
    emit(rep, &args.output)?;
    Ok(0)
}

fn cmd_iterate(args: IterateArgs) -> Result<u8> {
    let map = parse_map_arg(&args.map, args.dim)?;
    let qt = QuasiTranslation::verify(map)?;
    let result = iterate(&qt, args.times)?;

    let mut rep = Report::new("iterate");
    rep.line(format!("map: {}", qt.map()));
    rep.line(format!("times: {}", args.times));
    rep.line(format!("result: {result}"));
    rep.field("map", map_json(qt.map()));
    rep.field("times", args.times.into());
    rep.field("result", map_json(&result));
    emit(rep, &args.output)?;
    Ok(0)
}

fn cmd_strip_gcd(args: MapArgs) -> Result<u8> {
    let map = parse_map_arg(&args.map, args.dim)?;
    let qt = QuasiTranslation::verify(map)?;
    let (g, reduced) = strip_gcd(&qt)?;

    let mut rep = Report::new("strip-gcd");
    rep.line(format!("map: {}", qt.map()));
    rep.line(format!("gcd: {g}"));
    rep.line(format!("reduced: {}", reduced.map()));
    rep.field("map", map_json(qt.map()));
    rep.field("gcd", poly_json(&g));
    rep.field("reduced", map_json(reduced.map()));
    emit(rep, &args.output)?;
    Ok(0)
}

fn cmd_conjugate(args: ConjugateArgs) -> Result<u8> {
    let all = [args.map.as_str(), args.forward.as_str(), args.inverse.as_str()];
    let parts: Vec<&str> = args.map.split(';').collect();
    let n = args.dim.unwrap_or_else(|| inferred_arity(&all).max(parts.len()));
    let map = parse_map_arg(&args.map, Some(n))?;
    let forward = parse_map_arg(&args.forward, Some(n))?;
    let inverse = parse_map_arg(&args.inverse, Some(n))?;
    let qt = QuasiTranslation::verify(map)?;
    let conjugated = conjugate(&qt, &forward, &inverse)?;

    let mut rep = Report::new("conjugate");
    rep.line(format!("map: {}", qt.map()));
    rep.line(format!("forward: {forward}"));
    rep.line(format!("inverse: {inverse}"));
    rep.line(format!("conjugated: {}", conjugated.map()));
    rep.field("map", map_json(qt.map()));
    rep.field("forward", map_json(&forward));
    rep.field("inverse", map_json(&inverse));
    rep.field("conjugated", map_json(conjugated.map()));
    emit(rep, &args.output)?;
    Ok(0)
}

fn cmd_homogenize(args: HomogenizeArgs) -> Result<u8> {
    let map = parse_map_arg(&args.map, args.dim)?;
    let qt = QuasiTranslation::verify(map)?;
    let degree = args.degree.unwrap_or_else(|| qt.map().degree().unwrap_or(0));
    let lifted = homogenize(&qt, degree)?;

    let mut rep = Report::new("homogenize");
    rep.line(format!("map: {}", qt.map()));
    rep.line(format!("degree: {degree}"));
    rep.line(format!("lifted ({} variables): {}", lifted.arity(), lifted.map()));
    rep.field("map", map_json(qt.map()));
    rep.field("degree", degree.into());
    rep.field("lifted_n", lifted.arity().into());
    rep.field("lifted", map_json(lifted.map()));
    emit(rep, &args.output)?;
    Ok(0)
}

/// Shared reporting for the relation search; returns the found relation.
fn report_search(
    rep: &mut Report,
    search: &RelationSearch,
    target: &PolyMap,
    rank_opts: &RankOpts,
) -> Result<Option<qtrans_core::Relation>> {
    match search {
        RelationSearch::Found(rel) => {
            let names = y_names(target.arity());
            rep.line(format!("relation: {}", rel.r().display_with(&names)));
            rep.line(format!("degree: {}", rel.degree()));
            rep.line(format!("minimal: {}", rel.minimal()));
            rep.field("found", true.into());
            rep.field("relation", Value::String(rel.r().display_with(&names)));
            rep.field("degree", rel.degree().into());
            rep.field("minimal", rel.minimal().into());
            Ok(Some(rel.clone()))
        }
        RelationSearch::Independent { rank } => {
            rep.line(format!(
                "no relation exists: the components are algebraically independent (certified rank {})",
                rank.rank
            ));
            rep.field("found", false.into());
            rep.field("independent", true.into());
            rep.field("jacobian_rank", rank_json(rank));
            Ok(None)
        }
        RelationSearch::NoneUpToCap { cap } => {
            let mode = resolve_mode(rank_opts.mode, target.arity());
            let rank = target.jacobian().rank(mode, rank_opts.seed)?;
            rep.line(format!("no relation up to degree {cap}"));
            rep.line(rank_line(&rank));
            rep.field("found", false.into());
            rep.field("independent", false.into());
            rep.field("cap", (*cap).into());
            rep.field("jacobian_rank", rank_json(&rank));
            Ok(None)
        }
    }
}

fn cmd_find_relation(args: FindRelationArgs) -> Result<u8> {
    let target = match (&args.map, &args.poly) {
        (Some(map_text), None) => parse_map_arg(map_text, args.dim)?,
        (None, Some(poly_text)) => gradient(&parse_poly_arg(poly_text, args.dim)?),
        _ => return Err(Error::Precondition("give exactly one of --map and --poly".into())),
    };
    let search = find_relation(&target, args.deg_cap, args.homogeneous)?;

    let mut rep = Report::new("find-relation");
    rep.line(format!("target: {target}"));
    rep.field("target", map_json(&target));
    let found = report_search(&mut rep, &search, &target, &args.rank)?;
    let ok = found.is_some();
    emit(rep, &args.output)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_from_hessian(args: FromHessianArgs) -> Result<u8> {
    let h = parse_poly_arg(&args.poly, args.dim)?;
    let grad = gradient(&h);
    let search = find_relation(&grad, args.deg_cap, args.homogeneous)?;

    let mut rep = Report::new("from-hessian");
    rep.line(format!("poly: {h}"));
    rep.line(format!("gradient: {grad}"));
    rep.field("poly", poly_json(&h));
    rep.field("gradient", map_json(&grad));
    let code = match report_search(&mut rep, &search, &grad, &args.rank)? {
        Some(rel) => {
            let map = qt_from_relation(&h, &rel)?;
            let is_qt = check_qt(&map)?.is_qt();
            rep.line(format!("map: {map}"));
            rep.line(format!("quasi-translation: {is_qt}"));
            rep.field("map", map_json(&map));
            rep.field("is_qt", is_qt.into());
            if is_qt {
                0
            } else {
                1
            }
        }
        None => 1,
    };
    emit(rep, &args.output)?;
    Ok(code)
}

fn cmd_hesse(args: HesseArgs) -> Result<u8> {
    let h = parse_poly_arg(&args.poly, args.dim)?;
    let cert = hesse_check(&h, args.affine)?;

    let mut rep = Report::new("hesse");
    rep.line(format!("poly: {h}"));
    rep.field("poly", poly_json(&h));
    rep.field("affine", args.affine.into());
    let code = match &cert {
        Some(cert) => {
            rep.line(format!("certificate c: {}", rat_vec_text(&cert.c)));
            rep.line(format!("c0: {}", rat_string(&cert.c0)));
            rep.field("found", true.into());
            rep.field("c", rat_vec_json(&cert.c));
            rep.field("c0", Value::String(rat_string(&cert.c0)));
            0
        }
        None => {
            rep.line("no constant dependence among the partial derivatives");
            rep.field("found", false.into());
            1
        }
    };
    emit(rep, &args.output)?;
    Ok(code)
}

fn cmd_span(args: MapArgs) -> Result<u8> {
    let map = parse_map_arg(&args.map, args.dim)?;
    let span = image_span(&map)?;

    let mut rep = Report::new("span");
    rep.line(format!("map: {map}"));
    rep.line(format!("dim: {}", span.dim));
    for basis in &span.basis {
        rep.line(format!("basis: {}", rat_vec_text(basis)));
    }
    for annihilator in &span.annihilators {
        rep.line(format!("annihilator: {}", rat_vec_text(annihilator)));
    }
    rep.field("map", map_json(&map));
    rep.field("dim", span.dim.into());
    rep.field("basis", Value::Array(span.basis.iter().map(|v| rat_vec_json(v)).collect()));
    rep.field(
        "annihilators",
        Value::Array(span.annihilators.iter().map(|v| rat_vec_json(v)).collect()),
    );
    emit(rep, &args.output)?;
    Ok(0)
}

fn cmd_classify(args: MapArgs) -> Result<u8> {
    let map = parse_map_arg(&args.map, args.dim)?;
    let qt = QuasiTranslation::verify(map)?;
    let classification = classify_small(&qt)?;
    let nf = &classification.normal_form;

    let mut rep = Report::new("classify");
    rep.line(format!("map: {}", qt.map()));
    rep.line(format!("n: {}", qt.arity()));
    rep.line(format!("zero components after normalization: {}", nf.s));
    for i in 0..nf.t.rows() {
        rep.line(format!("T row {}: {}", i + 1, rat_vec_text(nf.t.row(i))));
    }
    rep.line(format!("normalized: {}", nf.h_normalized));
    rep.field("map", map_json(qt.map()));
    rep.field("n", qt.arity().into());
    rep.field("s", nf.s.into());
    rep.field("t", qmatrix_json(&nf.t));
    rep.field("normalized", map_json(&nf.h_normalized));
    match &classification.tail {
        Some(tail) => {
            rep.line(format!("tail gcd g: {}", tail.g));
            rep.line(format!("tail a: {}", tail.a));
            rep.line(format!("tail b: {}", tail.b));
            for (k, c) in &tail.parts {
                rep.line(format!("part k={k}: {c}"));
            }
            let parts: Vec<Value> = tail
                .parts
                .iter()
                .map(|(k, c)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("k".into(), (*k).into());
                    obj.insert("c".into(), poly_json(c));
                    Value::Object(obj)
                })
                .collect();
            let mut obj = serde_json::Map::new();
            obj.insert("g".into(), poly_json(&tail.g));
            obj.insert("a".into(), poly_json(&tail.a));
            obj.insert("b".into(), poly_json(&tail.b));
            obj.insert("parts".into(), Value::Array(parts));
            rep.field("tail", Value::Object(obj));
        }
        None => {
            rep.line("tail: none");
            rep.field("tail", Value::Null);
        }
    }
    emit(rep, &args.output)?;
    Ok(0)
}

fn cmd_paper_examples(args: PaperExamplesArgs) -> Result<u8> {
    let runs = examples::run_all()?;
    let mut rep = Report::new("paper-examples");
    let mut all_ok = true;
    let mut entries = Vec::new();
    for run in &runs {
        let tag = if run.ok { "ok" } else { "FAIL" };
        rep.line(format!("[{tag}] {}", run.name));
        for detail in &run.details {
            rep.line(format!("  {detail}"));
        }
        all_ok &= run.ok;
        let mut obj = serde_json::Map::new();
        obj.insert("name".into(), Value::String(run.name.into()));
        obj.insert("ok".into(), run.ok.into());
        obj.insert(
            "details".into(),
            Value::Array(run.details.iter().map(|d| Value::String(d.clone())).collect()),
        );
        entries.push(Value::Object(obj));
    }
    rep.line(if all_ok { "all examples passed" } else { "some examples FAILED" });
    rep.field("examples", Value::Array(entries));
    rep.field("ok", all_ok.into());
    emit(rep, &args.output)?;
    Ok(if all_ok { 0 } else { 1 })
}
