//! JSON subcommands behind the `tropgeom` binary.
//!
//! Every subcommand reads one JSON document and produces one JSON document
//! (or an SVG for `render`). Domain failures map to exit code 1 with
//! `{"error": code, "message": text}`; unreadable input maps to exit code 2.

pub mod render;
pub mod scene;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::collineation::{
    collineations_agree, default_mu_samples, induced_collineation, random_monomial_map, random_probe_classes,
    reconstruct_semilinear, tp2_automorphism_suite, SemilinearMap,
};
use crate::crossratio::{check_scalar_invariance, cross_ratio, cross_ratio_under, find_noninvariance_witness};
use crate::error::Error;
use crate::linalg::{is_tropically_singular_in, optimal_permutation_count, tdet_in, TropMatrix, TropVector};
use crate::pencil::{
    construct_projectivity_for_triples, construct_projectivity_nth, is_compatible, make_pencil, reduce_pencil,
    LineMap, Perspectivity, Projectivity, ReducedPencil,
};
use crate::plane::{
    general_position, incidence, intersection, is_coaxial_lines, is_coaxial_points, line_from_coeffs, stable_intersect,
    stable_line, PlanePoint, TropLine,
};
use crate::scalar::{Convention, TropScalar};

/// Subcommand names, in the order shown by `--help`.
pub const SUBCOMMANDS: [&str; 15] = [
    "line",
    "incidence",
    "stable-line",
    "intersect",
    "coaxial",
    "pencil",
    "perspectivity",
    "projectivity",
    "tdet",
    "singular",
    "crossratio",
    "witness",
    "reconstruct",
    "check-tp2",
    "render",
];

/// Subcommands that run without an input document.
pub const INPUT_OPTIONAL: [&str; 3] = ["witness", "reconstruct", "check-tp2"];

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub convention: Convention,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
}

#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Malformed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Malformed(_) => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            CliError::Domain(e) => json!({"error": e.code(), "message": e.to_string()}),
            CliError::Malformed(m) => json!({"error": "malformed_input", "message": m}),
        };
        v.to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse<T: DeserializeOwned>(input: &str) -> CliResult<T> {
    let input = if input.trim().is_empty() { "{}" } else { input };
    serde_json::from_str(input).map_err(|e| CliError::Malformed(e.to_string()))
}

fn to_string<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Malformed(e.to_string()))
}

fn max_plus_only(opts: &Options, what: &str) -> CliResult<()> {
    match opts.convention {
        Convention::MaxPlus => Ok(()),
        Convention::MinPlus => Err(Error::ConventionMismatch(format!("{what} is only defined for max-plus")).into()),
    }
}

/// Runs one subcommand on a JSON document.
pub fn run_subcommand(name: &str, input: &str, opts: &Options) -> CliResult<String> {
    match name {
        "line" => cmd_line(input, opts),
        "incidence" => cmd_incidence(input, opts),
        "stable-line" => cmd_stable_line(input, opts),
        "intersect" => cmd_intersect(input, opts),
        "coaxial" => cmd_coaxial(input, opts),
        "pencil" => cmd_pencil(input, opts),
        "perspectivity" => cmd_perspectivity(input, opts),
        "projectivity" => cmd_projectivity(input, opts),
        "tdet" => cmd_tdet(input, opts),
        "singular" => cmd_singular(input, opts),
        "crossratio" => cmd_crossratio(input, opts),
        "witness" => cmd_witness(input, opts),
        "reconstruct" => cmd_reconstruct(input, opts),
        "check-tp2" => cmd_check_tp2(opts),
        "render" => cmd_render(input, opts),
        other => Err(CliError::Malformed(format!("unknown subcommand `{other}`"))),
    }
}

fn line_json(l: &TropLine) -> Value {
    let (a, b, c) = l.canonical_coeffs();
    json!({
        "line": l,
        "canonical": TropLine::new(a, b, c),
        "vertex": l.vertex(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LineInput {
    a: Option<TropScalar>,
    b: Option<TropScalar>,
    c: Option<TropScalar>,
    vertex: Option<PlanePoint>,
}

fn cmd_line(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "plane geometry")?;
    let inp: LineInput = parse(input)?;
    let line = match (inp.a, inp.b, inp.c, inp.vertex) {
        (Some(a), Some(b), Some(c), None) => line_from_coeffs(&a, &b, &c)?,
        (None, None, None, Some(v)) => TropLine::with_vertex(&v),
        _ => return Err(CliError::Malformed("expected either a, b, c or vertex".into())),
    };
    to_string(&line_json(&line))
}

#[derive(Deserialize)]
struct IncidenceInput {
    line: TropLine,
    point: PlanePoint,
}

fn cmd_incidence(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "plane geometry")?;
    let inp: IncidenceInput = parse(input)?;
    let label = incidence(&inp.point, &inp.line);
    to_string(&json!({"incident": label.is_some(), "label": label}))
}

#[derive(Deserialize)]
struct PairInput {
    p: PlanePoint,
    q: PlanePoint,
}

fn cmd_stable_line(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "plane geometry")?;
    let inp: PairInput = parse(input)?;
    let line = stable_line(&inp.p, &inp.q)?;
    to_string(&line_json(&line))
}

#[derive(Deserialize)]
struct LinePairInput {
    l1: TropLine,
    l2: TropLine,
}

fn cmd_intersect(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "plane geometry")?;
    let inp: LinePairInput = parse(input)?;
    let stable = stable_intersect(&inp.l1, &inp.l2)?;
    to_string(&json!({
        "stable": stable,
        "set": intersection(&inp.l1, &inp.l2)?,
        "general_position": general_position(&inp.l1, &inp.l2)?,
    }))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoaxialInput {
    Points { p: PlanePoint, q: PlanePoint },
    Lines { l1: TropLine, l2: TropLine },
}

fn cmd_coaxial(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "plane geometry")?;
    let coaxial = match parse(input)? {
        CoaxialInput::Points { p, q } => is_coaxial_points(&p, &q)?,
        CoaxialInput::Lines { l1, l2 } => is_coaxial_lines(&l1, &l2),
    };
    to_string(&json!({ "coaxial": coaxial }))
}

#[derive(Deserialize)]
struct PencilInput {
    line: TropLine,
    #[serde(default)]
    points: Vec<PlanePoint>,
}

#[derive(Deserialize)]
struct PencilCommand {
    #[serde(flatten)]
    pencil: PencilInput,
    compare: Option<PencilInput>,
}

fn cmd_pencil(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "plane geometry")?;
    let inp: PencilCommand = parse(input)?;
    let pencil = make_pencil(&inp.pencil.line, &inp.pencil.points)?;
    let labels: Vec<_> = pencil.points().iter().map(|p| pencil.line().label_of(p)).collect();
    let mut out = json!({
        "counts": pencil.counts(),
        "labels": labels,
        "reduced": reduce_pencil(&pencil),
    });
    if let Some(other) = inp.compare {
        let other = make_pencil(&other.line, &other.points)?;
        out["compatible"] = json!(is_compatible(&pencil, &other));
    }
    to_string(&out)
}

#[derive(Deserialize)]
struct PerspectivityInput {
    center: PlanePoint,
    source: TropLine,
    target: TropLine,
    #[serde(default)]
    points: Vec<PlanePoint>,
}

fn cmd_perspectivity(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "plane geometry")?;
    let inp: PerspectivityInput = parse(input)?;
    let f = Perspectivity::new(inp.center, inp.source, inp.target)?;
    let images = inp
        .points
        .iter()
        .map(|x| {
            let y = f.apply(x)?;
            Ok(json!({
                "point": x,
                "image": y,
                "source_ray": f.source().label_of(x),
                "target_ray": f.target().label_of(&y),
            }))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    to_string(&json!({ "perspectivity": f, "images": images }))
}

#[derive(Deserialize)]
struct TriplePencil {
    line: TropLine,
    points: [PlanePoint; 3],
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ProjectivityInput {
    Construct {
        source: Box<TriplePencil>,
        target: Box<TriplePencil>,
        #[serde(default)]
        choice: usize,
        #[serde(default)]
        apply: Vec<PlanePoint>,
    },
    Apply {
        projectivity: Projectivity,
        apply: Vec<PlanePoint>,
    },
}

fn apply_all(f: &Projectivity, pts: &[PlanePoint]) -> crate::Result<Vec<Value>> {
    pts.iter().map(|x| Ok(json!({"point": x, "image": f.apply(x)?}))).collect()
}

fn cmd_projectivity(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "plane geometry")?;
    match parse(input)? {
        ProjectivityInput::Construct { source, target, choice, apply } => {
            let reduced = (
                ReducedPencil::new(&source.line, &source.points),
                ReducedPencil::new(&target.line, &target.points),
            );
            let built = match reduced {
                (Ok(r1), Ok(r2)) if r1.triple().is_some() && r2.triple().is_some() => {
                    construct_projectivity_nth(&r1, &r2, choice)?
                }
                _ => construct_projectivity_for_triples(&source.line, &source.points, &target.line, &target.points, choice)?,
            };
            let images = apply_all(&built.projectivity, &apply)?;
            to_string(&json!({ "construction": built, "images": images }))
        }
        ProjectivityInput::Apply { projectivity, apply } => {
            let images = apply_all(&projectivity, &apply)?;
            to_string(&json!({ "images": images }))
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Wrapped { matrix: TropMatrix },
    Bare(TropMatrix),
}

impl MatrixInput {
    fn into_matrix(self) -> TropMatrix {
        match self {
            MatrixInput::Wrapped { matrix } | MatrixInput::Bare(matrix) => matrix,
        }
    }
}

fn cmd_tdet(input: &str, opts: &Options) -> CliResult<String> {
    let m = parse::<MatrixInput>(input)?.into_matrix();
    let value = tdet_in(opts.convention, &m)?;
    let singular = is_tropically_singular_in(opts.convention, &m)?;
    to_string(&json!({ "tdet": value, "singular": singular }))
}

fn cmd_singular(input: &str, opts: &Options) -> CliResult<String> {
    let m = parse::<MatrixInput>(input)?.into_matrix();
    let singular = is_tropically_singular_in(opts.convention, &m)?;
    let count = match opts.convention {
        Convention::MaxPlus => optimal_permutation_count(&m)?,
        Convention::MinPlus => None,
    };
    to_string(&json!({ "singular": singular, "optimal_permutations": count }))
}

#[derive(Deserialize)]
struct CrossRatioInput {
    a: TropVector,
    b: TropVector,
    c: TropVector,
    d: TropVector,
    scalings: Option<[TropScalar; 4]>,
    matrix: Option<TropMatrix>,
}

fn cmd_crossratio(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "the cross-ratio")?;
    let inp: CrossRatioInput = parse(input)?;
    let quad = [&inp.a, &inp.b, &inp.c, &inp.d];
    let r = cross_ratio(&inp.a, &inp.b, &inp.c, &inp.d)?;
    let mut out = serde_json::to_value(&r).map_err(|e| CliError::Malformed(e.to_string()))?;
    if let Some(ls) = &inp.scalings {
        let inv = check_scalar_invariance(quad, [&ls[0], &ls[1], &ls[2], &ls[3]])?;
        out["scaled_value"] = json!(inv.scaled);
        out["invariant"] = json!(inv.invariant);
    }
    if let Some(m) = &inp.matrix {
        let (_, after) = cross_ratio_under(m, quad)?;
        out["matrix_invariant"] = json!(after == r.value);
        out["transformed_value"] = json!(after);
    }
    to_string(&out)
}

fn cmd_witness(input: &str, opts: &Options) -> CliResult<String> {
    #[derive(Deserialize, Default)]
    struct WitnessInput {
        seed: Option<u64>,
        budget: Option<u64>,
    }
    let inp: WitnessInput = parse(input)?;
    let seed = opts.seed.or(inp.seed).unwrap_or(1);
    let budget = opts.budget.or(inp.budget).unwrap_or(100_000);
    let w = find_noninvariance_witness(seed, budget)?;
    to_string(&json!({ "seed": seed, "budget": budget, "witness": w, "verified": w.verify()? }))
}

#[derive(Deserialize, Default)]
struct ReconstructInput {
    map: Option<SemilinearMap>,
    dim: Option<usize>,
    samples: Option<Vec<TropScalar>>,
    probes: Option<usize>,
}

fn cmd_reconstruct(input: &str, opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "reconstruction")?;
    let inp: ReconstructInput = parse(input)?;
    let seed = opts.seed.unwrap_or(1);
    let map = match inp.map {
        Some(m) => m,
        None => random_monomial_map(inp.dim.unwrap_or(3), seed),
    };
    let n = map.matrix.ncols();
    let sigma = induced_collineation(&map)?;
    let samples = inp.samples.unwrap_or_else(default_mu_samples);
    let r = reconstruct_semilinear(&sigma, n, &samples)?;
    let probes = random_probe_classes(n, inp.probes.unwrap_or(1000), seed);
    let agree = match r.to_semilinear_map() {
        Ok(back) => collineations_agree(&sigma, &induced_collineation(&back)?, &probes)?,
        Err(_) => false,
    };
    to_string(&json!({
        "map": map,
        "reconstruction": r,
        "round_trip": { "probes": probes.len(), "agree": agree },
    }))
}

fn cmd_check_tp2(opts: &Options) -> CliResult<String> {
    max_plus_only(opts, "the automorphism suite")?;
    to_string(&tp2_automorphism_suite()?)
}

fn cmd_render(input: &str, opts: &Options) -> CliResult<String> {
    let scene: scene::Scene = parse(input)?;
    let convention = scene.convention;
    if convention != Convention::MaxPlus || opts.convention != Convention::MaxPlus {
        return Err(Error::ConventionMismatch("scenes are drawn in max-plus".into()).into());
    }
    let resolved = scene.resolve()?;
    Ok(render::render_svg(&resolved)?)
}
