//! Tropical lines in the plane.
//!
//! A line `a ⊙ x ⊕ b ⊙ y ⊕ c` is the locus where `max(a + x, b + y, c)` is
//! attained at least twice: three rays leaving the vertex `(c − a, c − b)`
//! in directions `(−1, 0)`, `(0, −1)` and `(1, 1)`.
//!
//! Lines through two points and points on two lines both come from the
//! tropical cross product (tropical Cramer's rule), which picks the stable
//! answer when the set-theoretic one is not unique.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, rat, serde_rational, Rational, TropScalar};

/// A point of `R²` with exact coordinates, encoded as `["x", "y"]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "PointPair", into = "PointPair")]
pub struct PlanePoint {
    pub x: Rational,
    pub y: Rational,
}

#[derive(Serialize, Deserialize)]
struct PointPair(#[serde(with = "serde_rational")] Rational, #[serde(with = "serde_rational")] Rational);

impl From<PointPair> for PlanePoint {
    fn from(p: PointPair) -> Self {
        PlanePoint { x: p.0, y: p.1 }
    }
}

impl From<PlanePoint> for PointPair {
    fn from(p: PlanePoint) -> Self {
        PointPair(p.x, p.y)
    }
}

impl PlanePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        PlanePoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        PlanePoint { x: rat(x), y: rat(y) }
    }

    /// `self + t · dir`.
    pub fn along(&self, dir: (i64, i64), t: &Rational) -> Self {
        PlanePoint { x: &self.x + t * rat(dir.0), y: &self.y + t * rat(dir.1) }
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Where a point sits on a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RayLabel {
    Vertex,
    /// Direction `(−1, 0)`.
    RayLeft,
    /// Direction `(0, −1)`.
    RayDown,
    /// Direction `(1, 1)`.
    RayDiag,
}

impl RayLabel {
    pub const RAYS: [RayLabel; 3] = [RayLabel::RayLeft, RayLabel::RayDown, RayLabel::RayDiag];

    /// Primitive direction; `(0, 0)` for the vertex.
    pub fn direction(self) -> (i64, i64) {
        match self {
            RayLabel::Vertex => (0, 0),
            RayLabel::RayLeft => (-1, 0),
            RayLabel::RayDown => (0, -1),
            RayLabel::RayDiag => (1, 1),
        }
    }
}

/// A plane tropical line with finite coefficients.
///
/// Coefficients are kept as given; equality and hashing only look at the
/// vertex, which determines the line up to common scaling.
#[derive(Clone, Debug, Serialize)]
pub struct TropLine {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
    #[serde(with = "serde_rational")]
    c: Rational,
}

impl PartialEq for TropLine {
    fn eq(&self, other: &Self) -> bool {
        self.vertex() == other.vertex()
    }
}

impl Eq for TropLine {}

impl Hash for TropLine {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertex().hash(state);
    }
}

impl TropLine {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        TropLine { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        TropLine::new(rat(a), rat(b), rat(c))
    }

    /// The line whose vertex is `v`.
    pub fn with_vertex(v: &PlanePoint) -> Self {
        TropLine::new(-&v.x, -&v.y, Rational::zero())
    }

    pub fn coeffs(&self) -> (&Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c)
    }

    /// Coefficients scaled so the largest is `0`.
    pub fn canonical_coeffs(&self) -> (Rational, Rational, Rational) {
        let m = self.a.clone().max(self.b.clone()).max(self.c.clone());
        (&self.a - &m, &self.b - &m, &self.c - &m)
    }

    pub fn vertex(&self) -> PlanePoint {
        PlanePoint { x: &self.c - &self.a, y: &self.c - &self.b }
    }

    /// Ray classification of `p`, or `None` when `p` is off the line.
    pub fn label_of(&self, p: &PlanePoint) -> Option<RayLabel> {
        let tx = &self.a + &p.x;
        let ty = &self.b + &p.y;
        let tc = &self.c;
        match (tx == ty, ty == *tc, tx == *tc) {
            (true, true, _) => Some(RayLabel::Vertex),
            (true, false, _) if tx > *tc => Some(RayLabel::RayDiag),
            (false, true, _) if ty > tx => Some(RayLabel::RayLeft),
            (false, false, true) if tx > ty => Some(RayLabel::RayDown),
            _ => None,
        }
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.label_of(p).is_some()
    }

    /// Distance from the vertex along the ray carrying `p` (in units of the
    /// primitive direction), or `None` when `p` is off the line.
    pub fn ray_parameter(&self, p: &PlanePoint) -> Option<Rational> {
        let v = self.vertex();
        Some(match self.label_of(p)? {
            RayLabel::Vertex => Rational::zero(),
            RayLabel::RayLeft => &v.x - &p.x,
            RayLabel::RayDown => &v.y - &p.y,
            RayLabel::RayDiag => &p.x - &v.x,
        })
    }

    /// The point at parameter `t` on `ray`.
    pub fn point_on(&self, ray: RayLabel, t: &Rational) -> PlanePoint {
        self.vertex().along(ray.direction(), t)
    }
}

impl fmt::Display for TropLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}⊙x ⊕ {}⊙y ⊕ {}",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c)
        )
    }
}

#[derive(Deserialize)]
struct RawLine {
    a: TropScalar,
    b: TropScalar,
    c: TropScalar,
}

impl<'de> Deserialize<'de> for TropLine {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawLine::deserialize(deserializer)?;
        line_from_coeffs(&raw.a, &raw.b, &raw.c).map_err(serde::de::Error::custom)
    }
}

pub fn line_from_coeffs(a: &TropScalar, b: &TropScalar, c: &TropScalar) -> Result<TropLine> {
    match (a, b, c) {
        (TropScalar::Finite(a), TropScalar::Finite(b), TropScalar::Finite(c)) => {
            Ok(TropLine::new(a.clone(), b.clone(), c.clone()))
        }
        _ => Err(Error::DegenerateLine),
    }
}

/// Incidence with ray classification; `None` means off the line.
pub fn incidence(p: &PlanePoint, line: &TropLine) -> Option<RayLabel> {
    line.label_of(p)
}

/// The stable line through `p` and `q`.
///
/// Cross product of `(p.x, p.y, 0)` and `(q.x, q.y, 0)`. For a coaxial pair
/// the vertex lands on one of the inputs: the right one of a horizontal
/// pair, the upper one of a vertical pair, the lower-left one of a diagonal
/// pair.
pub fn stable_line(p: &PlanePoint, q: &PlanePoint) -> Result<TropLine> {
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    let a = p.y.clone().max(q.y.clone());
    let b = p.x.clone().max(q.x.clone());
    let c = (&p.x + &q.y).max(&p.y + &q.x);
    Ok(TropLine::new(a, b, c))
}

/// The stable intersection point of two distinct lines.
pub fn stable_intersect(l1: &TropLine, l2: &TropLine) -> Result<PlanePoint> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    let x1 = (&l1.b + &l2.c).max(&l2.b + &l1.c);
    let x2 = (&l1.a + &l2.c).max(&l2.a + &l1.c);
    let x3 = (&l1.a + &l2.b).max(&l2.a + &l1.b);
    Ok(PlanePoint { x: x1 - &x3, y: x2 - x3 })
}

fn coaxial_difference(dx: &Rational, dy: &Rational) -> bool {
    dx.is_zero() || dy.is_zero() || dx == dy
}

/// Whether `p` and `q` share an axis direction, i.e. infinitely many lines
/// pass through both.
pub fn is_coaxial_points(p: &PlanePoint, q: &PlanePoint) -> Result<bool> {
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    Ok(coaxial_difference(&(&q.x - &p.x), &(&q.y - &p.y)))
}

/// Lines are coaxial when their vertices are. Equal vertices count as
/// coaxial.
pub fn is_coaxial_lines(l1: &TropLine, l2: &TropLine) -> bool {
    let (v1, v2) = (l1.vertex(), l2.vertex());
    coaxial_difference(&(&v2.x - &v1.x), &(&v2.y - &v1.y))
}

/// Set-theoretic intersection of two distinct lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "at", rename_all = "snake_case")]
pub enum Intersection {
    /// A single common point.
    Point(PlanePoint),
    /// The lines share at least one half ray, listed by start and direction.
    Unbounded(Vec<(PlanePoint, RayLabel)>),
}

fn cross(a: (&Rational, &Rational), b: (&Rational, &Rational)) -> Rational {
    a.0 * b.1 - a.1 * b.0
}

/// Exact intersection of the two corner loci, ray by ray.
pub fn intersection(l1: &TropLine, l2: &TropLine) -> Result<Intersection> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    let (v1, v2) = (l1.vertex(), l2.vertex());
    let mut points: Vec<PlanePoint> = Vec::new();
    let mut shared: Vec<(PlanePoint, RayLabel)> = Vec::new();
    for r1 in RayLabel::RAYS {
        for r2 in RayLabel::RAYS {
            let (d1, d2) = (r1.direction(), r2.direction());
            let (d1x, d1y, d2x, d2y) = (rat(d1.0), rat(d1.1), rat(d2.0), rat(d2.1));
            let wx = &v2.x - &v1.x;
            let wy = &v2.y - &v1.y;
            if r1 == r2 {
                if cross((&wx, &wy), (&d1x, &d1y)).is_zero() {
                    // Same direction on a common axis: the later origin starts the overlap.
                    let along = &wx * &d1x + &wy * &d1y;
                    let start = if along.is_positive() { v2.clone() } else { v1.clone() };
                    shared.push((start, r1));
                }
                continue;
            }
            // v1 + t·d1 = v2 + s·d2 with t, s ≥ 0.
            let det = cross((&d2x, &d2y), (&d1x, &d1y));
            let t = cross((&d2x, &d2y), (&wx, &wy)) / &det;
            let s = cross((&d1x, &d1y), (&wx, &wy)) / &det;
            if !t.is_negative() && !s.is_negative() {
                let p = v1.along(d1, &t);
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
    }
    if !shared.is_empty() {
        return Ok(Intersection::Unbounded(shared));
    }
    match points.len() {
        1 => Ok(Intersection::Point(points.pop().expect("one point"))),
        // Distinct tropical lines always meet, and isolated meetings are single points.
        n => Err(Error::DegenerateConfiguration(format!("{n} isolated intersection points"))),
    }
}

/// True when the two lines meet in exactly one point.
pub fn general_position(l1: &TropLine, l2: &TropLine) -> Result<bool> {
    Ok(matches!(intersection(l1, l2)?, Intersection::Point(_)))
}

/// Whether `(L, p_1, …, p_n)` is stable: either `L` is the only line
/// through the points, or one of them is its vertex.
pub fn is_stable_marked_line(line: &TropLine, pts: &[PlanePoint]) -> Result<bool> {
    if pts.len() < 2 {
        return Err(Error::PreconditionViolated("a marked line needs at least two points".into()));
    }
    if let Some(p) = pts.iter().find(|p| !line.contains(p)) {
        return Err(Error::NotIncident(p.to_string()));
    }
    let v = line.vertex();
    if pts.contains(&v) {
        return Ok(true);
    }
    // Away from the vertex, points on different rays are never coaxial, and
    // points on one ray leave the vertex free to slide. So the line is
    // pinned exactly when some pair is not coaxial.
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if p != q && !is_coaxial_points(p, q)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `count` distinct lines through a coaxial pair, obtained by sliding the
/// vertex of the stable line away along the shared axis.
pub fn lines_through_coaxial_pair(p: &PlanePoint, q: &PlanePoint, count: usize) -> Result<Vec<TropLine>> {
    if !is_coaxial_points(p, q)? {
        return Err(Error::PreconditionViolated("points are not coaxial".into()));
    }
    let base = stable_line(p, q)?;
    let v = base.vertex();
    let other = if v == *p { q } else { p };
    // Direction from the vertex towards the other point, reversed.
    let dx = &other.x - &v.x;
    let dy = &other.y - &v.y;
    let dir = (sign(&dx), sign(&dy));
    let back = (-dir.0, -dir.1);
    Ok((0..count).map(|k| TropLine::with_vertex(&v.along(back, &rat(k as i64)))).collect())
}

fn sign(q: &Rational) -> i64 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
