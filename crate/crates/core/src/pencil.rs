//! Tropical pencils, perspectivities and projectivities.
//!
//! A perspectivity with center `P` sends `X` on the source line to the
//! stable intersection of the line `PX` with the target line. A
//! projectivity chains perspectivities. [`construct_projectivity`] builds a
//! two-stage projectivity sending a marked triple `A, B, C` to `A′, B′, C′`:
//! stage one goes through a center `p′` on the line `AA′` onto an auxiliary
//! line `l′` through `A′`, stage two goes from `l′` onto the target through
//! `p″ = (C₁C′) · (B₁B′)`, where `B₁`, `C₁` are the stage-one images.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane::{is_coaxial_lines, stable_intersect, stable_line, PlanePoint, RayLabel, TropLine};
use crate::scalar::{rat, ratio, Rational};

/// Number of marked points per ray: `p` on `(1,1)`, `q` on `(−1,0)`,
/// `r` on `(0,−1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RayCounts {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl RayCounts {
    fn bump(&mut self, ray: RayLabel) {
        match ray {
            RayLabel::RayDiag => self.p += 1,
            RayLabel::RayLeft => self.q += 1,
            RayLabel::RayDown => self.r += 1,
            RayLabel::Vertex => {}
        }
    }

    pub fn total(&self) -> usize {
        self.p + self.q + self.r
    }
}

impl fmt::Display for RayCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.r)
    }
}

/// A line with marked points, none of them at the vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pencil {
    line: TropLine,
    points: Vec<PlanePoint>,
    counts: RayCounts,
}

impl Pencil {
    pub fn line(&self) -> &TropLine {
        &self.line
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn counts(&self) -> RayCounts {
        self.counts
    }

    /// Marked points on `ray`, in input order.
    pub fn points_on(&self, ray: RayLabel) -> impl Iterator<Item = &PlanePoint> {
        self.points.iter().filter(move |p| self.line.label_of(p) == Some(ray))
    }
}

pub fn make_pencil(line: &TropLine, pts: &[PlanePoint]) -> Result<Pencil> {
    let mut counts = RayCounts::default();
    for p in pts {
        match line.label_of(p) {
            None => return Err(Error::NotIncident(p.to_string())),
            Some(RayLabel::Vertex) => return Err(Error::VertexPoint(p.to_string())),
            Some(ray) => counts.bump(ray),
        }
    }
    Ok(Pencil { line: line.clone(), points: pts.to_vec(), counts })
}

/// One representative per occupied ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedPencil {
    line: TropLine,
    reps: Vec<(RayLabel, PlanePoint)>,
}

impl ReducedPencil {
    /// Validates that each representative sits on its own ray of `line`.
    pub fn new(line: &TropLine, points: &[PlanePoint]) -> Result<Self> {
        let pencil = make_pencil(line, points)?;
        let c = pencil.counts;
        if c.p > 1 || c.q > 1 || c.r > 1 {
            return Err(Error::PreconditionViolated("a reduced pencil has at most one point per ray".into()));
        }
        Ok(reduce_pencil(&pencil))
    }

    pub fn line(&self) -> &TropLine {
        &self.line
    }

    pub fn reps(&self) -> &[(RayLabel, PlanePoint)] {
        &self.reps
    }

    pub fn rep(&self, ray: RayLabel) -> Option<&PlanePoint> {
        self.reps.iter().find(|(r, _)| *r == ray).map(|(_, p)| p)
    }

    pub fn counts(&self) -> RayCounts {
        let mut c = RayCounts::default();
        for (ray, _) in &self.reps {
            c.bump(*ray);
        }
        c
    }

    /// The marked triple ordered as `(A, B, C)` = (left, down, diagonal).
    pub fn triple(&self) -> Option<[PlanePoint; 3]> {
        Some([
            self.rep(RayLabel::RayLeft)?.clone(),
            self.rep(RayLabel::RayDown)?.clone(),
            self.rep(RayLabel::RayDiag)?.clone(),
        ])
    }
}

/// Keeps the marked point nearest the vertex on each ray.
pub fn reduce_pencil(pencil: &Pencil) -> ReducedPencil {
    let reps = RayLabel::RAYS
        .iter()
        .filter_map(|&ray| {
            pencil
                .points_on(ray)
                .min_by_key(|p| pencil.line.ray_parameter(p).expect("marked points are incident"))
                .map(|p| (ray, p.clone()))
        })
        .collect();
    ReducedPencil { line: pencil.line.clone(), reps }
}

/// Non-coaxial lines with equal ray counts.
pub fn is_compatible(p1: &Pencil, p2: &Pencil) -> bool {
    !is_coaxial_lines(&p1.line, &p2.line) && p1.counts == p2.counts
}

/// Image of `x` under the perspectivity with `center` from `src` to `dst`.
pub fn perspectivity_apply(center: &PlanePoint, src: &TropLine, dst: &TropLine, x: &PlanePoint) -> Result<PlanePoint> {
    if !src.contains(x) {
        return Err(Error::NotIncident(x.to_string()));
    }
    if src.contains(center) || dst.contains(center) {
        return Err(Error::CenterOnLine);
    }
    if is_coaxial_lines(src, dst) {
        return Err(Error::CoaxialLines);
    }
    project(center, dst, x)
}

fn project(center: &PlanePoint, dst: &TropLine, x: &PlanePoint) -> Result<PlanePoint> {
    stable_intersect(&stable_line(center, x)?, dst)
}

/// A map between points of two lines.
pub trait LineMap {
    fn source(&self) -> &TropLine;
    fn target(&self) -> &TropLine;
    fn apply(&self, x: &PlanePoint) -> Result<PlanePoint>;
}

/// A perspectivity between two non-coaxial lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perspectivity {
    center: PlanePoint,
    source: TropLine,
    target: TropLine,
}

impl Perspectivity {
    pub fn new(center: PlanePoint, source: TropLine, target: TropLine) -> Result<Self> {
        if source.contains(&center) || target.contains(&center) {
            return Err(Error::CenterOnLine);
        }
        if is_coaxial_lines(&source, &target) {
            return Err(Error::CoaxialLines);
        }
        Ok(Perspectivity { center, source, target })
    }

    pub fn center(&self) -> &PlanePoint {
        &self.center
    }
}

impl LineMap for Perspectivity {
    fn source(&self) -> &TropLine {
        &self.source
    }

    fn target(&self) -> &TropLine {
        &self.target
    }

    fn apply(&self, x: &PlanePoint) -> Result<PlanePoint> {
        if !self.source.contains(x) {
            return Err(Error::NotIncident(x.to_string()));
        }
        project(&self.center, &self.target, x)
    }
}

/// A chain of at least two perspectivities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projectivity {
    stages: Vec<Perspectivity>,
}

impl Projectivity {
    pub fn new(stages: Vec<Perspectivity>) -> Result<Self> {
        if stages.len() < 2 {
            return Err(Error::PreconditionViolated("a projectivity chains at least two perspectivities".into()));
        }
        for pair in stages.windows(2) {
            if pair[0].target != pair[1].source {
                return Err(Error::PreconditionViolated("consecutive stages do not share a line".into()));
            }
        }
        Ok(Projectivity { stages })
    }

    pub fn stages(&self) -> &[Perspectivity] {
        &self.stages
    }
}

impl<'de> Deserialize<'de> for Projectivity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            stages: Vec<Perspectivity>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let stages = raw
            .stages
            .into_iter()
            .map(|s| Perspectivity::new(s.center, s.source, s.target))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Projectivity::new(stages).map_err(serde::de::Error::custom)
    }
}

impl LineMap for Projectivity {
    fn source(&self) -> &TropLine {
        &self.stages[0].source
    }

    fn target(&self) -> &TropLine {
        &self.stages[self.stages.len() - 1].target
    }

    fn apply(&self, x: &PlanePoint) -> Result<PlanePoint> {
        self.stages.iter().try_fold(x.clone(), |acc, stage| stage.apply(&acc))
    }
}

pub fn apply_projectivity(f: &Projectivity, x: &PlanePoint) -> Result<PlanePoint> {
    f.apply(x)
}

/// Which deterministic candidate produced a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionChoice {
    /// Ray of the line `AA′` carrying `p′`, and its parameter from the vertex.
    pub center_ray: RayLabel,
    #[serde(with = "crate::scalar::serde_rational")]
    pub center_parameter: Rational,
    /// How the auxiliary line `l′` through `A′` was chosen.
    pub auxiliary: AuxiliaryLine,
    /// Position of this construction among all valid candidates (0-based).
    pub index: usize,
}

/// Candidate auxiliary lines through `A′`, in search order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuxiliaryLine {
    /// The stable line through `A′` and `C`.
    ThroughC,
    /// The line with vertex `A′`.
    VertexAtAPrime,
    /// A line whose ray `ray` carries `A′` at distance `parameter` from its vertex.
    Slid {
        ray: RayLabel,
        #[serde(with = "crate::scalar::serde_rational")]
        parameter: Rational,
    },
}

/// A two-stage projectivity together with its construction data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectivityConstruction {
    pub projectivity: Projectivity,
    pub p_prime: PlanePoint,
    pub l_prime: TropLine,
    pub b1: PlanePoint,
    pub c1: PlanePoint,
    pub p_double_prime: PlanePoint,
    pub choice: ConstructionChoice,
    /// Set when the marked points do not sit on pairwise distinct rays
    /// mapped ray to ray, a case the classical argument only sketches.
    pub beyond_written_proof: bool,
    /// Number of candidates examined before this one was accepted.
    pub candidates_tried: usize,
}

/// Dyadic parameters `1, 2, 4, …, 2^10`, then `1/2, …, 1/2^4`.
fn dyadic_parameters() -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..=10).map(|k| rat(1 << k)).collect();
    out.extend((1..=4).map(|k| ratio(1, 1 << k)));
    out
}

fn auxiliary_candidates(a_prime: &PlanePoint, c: &PlanePoint) -> Vec<(AuxiliaryLine, TropLine)> {
    let mut out = Vec::new();
    if a_prime != c {
        if let Ok(l) = stable_line(a_prime, c) {
            out.push((AuxiliaryLine::ThroughC, l));
        }
    }
    out.push((AuxiliaryLine::VertexAtAPrime, TropLine::with_vertex(a_prime)));
    for t in dyadic_parameters() {
        for ray in RayLabel::RAYS {
            // A′ sits on `ray` of the line, so its vertex is A′ − t·dir.
            let (dx, dy) = ray.direction();
            let vertex = a_prime.along((-dx, -dy), &t);
            out.push((AuxiliaryLine::Slid { ray, parameter: t.clone() }, TropLine::with_vertex(&vertex)));
        }
    }
    out
}

/// Builds the `n`-th valid two-stage projectivity (in deterministic search
/// order) sending `src` = `(A, B, C)` to `dst` = `(A′, B′, C′)` pointwise.
///
/// Points may sit on any rays; the result is flagged when they are not on
/// pairwise distinct rays matched ray to ray.
pub fn construct_projectivity_for_triples(
    l1: &TropLine,
    src: &[PlanePoint; 3],
    l2: &TropLine,
    dst: &[PlanePoint; 3],
    n: usize,
) -> Result<ProjectivityConstruction> {
    for p in src {
        if !l1.contains(p) {
            return Err(Error::NotIncident(p.to_string()));
        }
    }
    for p in dst {
        if !l2.contains(p) {
            return Err(Error::NotIncident(p.to_string()));
        }
    }
    if is_coaxial_lines(l1, l2) {
        return Err(Error::Incompatible("lines are coaxial".into()));
    }
    let labels = |l: &TropLine, pts: &[PlanePoint; 3]| pts.iter().map(|p| l.label_of(p)).collect::<Vec<_>>();
    let (lab1, lab2) = (labels(l1, src), labels(l2, dst));
    let distinct = |lab: &[Option<RayLabel>]| {
        lab.iter().all(|l| *l != Some(RayLabel::Vertex)) && lab[0] != lab[1] && lab[1] != lab[2] && lab[0] != lab[2]
    };
    let beyond_written_proof = !(distinct(&lab1) && lab1 == lab2);

    let [a, b, c] = src;
    let [a2, b2, c2] = dst;
    let line_aa = stable_line(a, a2).map_err(|_| Error::DegenerateConfiguration("A coincides with A′".into()))?;
    let params = dyadic_parameters();
    let mut tried = 0usize;
    let mut found = 0usize;

    for (auxiliary, l_prime) in auxiliary_candidates(a2, c) {
        if l_prime == *l1 || l_prime == *l2 || is_coaxial_lines(l1, &l_prime) || is_coaxial_lines(&l_prime, l2) {
            continue;
        }
        for t in &params {
            for center_ray in RayLabel::RAYS {
                tried += 1;
                let p_prime = line_aa.point_on(center_ray, t);
                let Some(built) = try_candidate(l1, l2, &l_prime, &p_prime, [a, b, c], [a2, b2, c2]) else {
                    continue;
                };
                if found < n {
                    found += 1;
                    continue;
                }
                let (projectivity, b1, c1, p_double_prime) = built;
                return Ok(ProjectivityConstruction {
                    projectivity,
                    p_prime,
                    l_prime,
                    b1,
                    c1,
                    p_double_prime,
                    choice: ConstructionChoice {
                        center_ray,
                        center_parameter: t.clone(),
                        auxiliary,
                        index: n,
                    },
                    beyond_written_proof,
                    candidates_tried: tried,
                });
            }
        }
    }
    Err(Error::DegenerateConfiguration(format!(
        "no valid choice of p′ and l′ among {tried} candidates ({found} valid, index {n} requested)"
    )))
}

type Built = (Projectivity, PlanePoint, PlanePoint, PlanePoint);

fn try_candidate(
    l1: &TropLine,
    l2: &TropLine,
    l_prime: &TropLine,
    p_prime: &PlanePoint,
    [a, b, c]: [&PlanePoint; 3],
    [a2, b2, c2]: [&PlanePoint; 3],
) -> Option<Built> {
    let stage1 = Perspectivity::new(p_prime.clone(), l1.clone(), l_prime.clone()).ok()?;
    if stage1.apply(a).ok()? != *a2 {
        return None;
    }
    let b1 = stage1.apply(b).ok()?;
    let c1 = stage1.apply(c).ok()?;
    let through_c = stable_line(&c1, c2).ok()?;
    let through_b = stable_line(&b1, b2).ok()?;
    let p_double_prime = stable_intersect(&through_c, &through_b).ok()?;
    let stage2 = Perspectivity::new(p_double_prime.clone(), l_prime.clone(), l2.clone()).ok()?;
    let projectivity = Projectivity::new(vec![stage1, stage2]).ok()?;
    for (x, y) in [(a, a2), (b, b2), (c, c2)] {
        if projectivity.apply(x).ok()? != *y {
            return None;
        }
    }
    Some((projectivity, b1, c1, p_double_prime))
}

/// [`construct_projectivity_for_triples`] for two full reduced pencils,
/// matching representatives ray by ray.
pub fn construct_projectivity(rp1: &ReducedPencil, rp2: &ReducedPencil) -> Result<ProjectivityConstruction> {
    construct_projectivity_nth(rp1, rp2, 0)
}

pub fn construct_projectivity_nth(rp1: &ReducedPencil, rp2: &ReducedPencil, n: usize) -> Result<ProjectivityConstruction> {
    if is_coaxial_lines(rp1.line(), rp2.line()) {
        return Err(Error::Incompatible("lines are coaxial".into()));
    }
    if rp1.counts() != rp2.counts() {
        return Err(Error::Incompatible(format!("ray counts {} and {} differ", rp1.counts(), rp2.counts())));
    }
    let (Some(src), Some(dst)) = (rp1.triple(), rp2.triple()) else {
        return Err(Error::Incompatible("both pencils need one point on every ray".into()));
    };
    construct_projectivity_for_triples(rp1.line(), &src, rp2.line(), &dst, n)
}

/// Images of every marked point agree up to coaxiality on the target:
/// equal, or on the same ray of the common target line.
pub fn projectivities_equivalent<F: LineMap + ?Sized, G: LineMap + ?Sized>(f: &F, g: &G, pencil: &Pencil) -> Result<bool> {
    for map in [f.source(), g.source()] {
        if let Some(p) = pencil.points.iter().find(|p| !map.contains(p)) {
            return Err(Error::NotIncident(p.to_string()));
        }
    }
    if f.target() != g.target() {
        return Ok(false);
    }
    let target = f.target();
    for x in &pencil.points {
        let (fx, gx) = (f.apply(x)?, g.apply(x)?);
        if fx == gx {
            continue;
        }
        match (target.label_of(&fx), target.label_of(&gx)) {
            (Some(r1), Some(r2)) if r1 == r2 && r1 != RayLabel::Vertex => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// The ray of `target` that no perspectivity with this center can reach.
///
/// The complement of a line has three open sectors, each bounded by two
/// rays. Every line through a center in one sector meets the opposite ray,
/// if at all, along a parallel piece, so the stable intersection never lands
/// on that ray. Returns `None` when the center lies on `target`.
pub fn unreachable_ray(center: &PlanePoint, target: &TropLine) -> Option<RayLabel> {
    let w = target.vertex();
    let (dx, dy) = (&center.x - &w.x, &center.y - &w.y);
    let zero = Rational::zero();
    if dx < zero && dy < zero {
        Some(RayLabel::RayDiag)
    } else if dy > zero && dy > dx {
        Some(RayLabel::RayDown)
    } else if dx > zero && dx > dy {
        Some(RayLabel::RayLeft)
    } else {
        None
    }
}
