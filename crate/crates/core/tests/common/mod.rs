//! Generators and brute-force oracles shared by the integration tests.
//!
//! Oracles work on plain integers or rationals and never call the routine
//! they check.
#![allow(dead_code)]

use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use tropgeom::scalar::{rat, ratio};
use tropgeom::{PlanePoint, Rational, TropLine, TropMatrix, TropScalar, TropVector};

/// Integer coordinates with `None` as −∞.
pub type IntVec = Vec<Option<i64>>;

pub fn to_vec(v: &[Option<i64>]) -> TropVector {
    TropVector::new(v.iter().map(|c| c.map_or(TropScalar::NegInf, TropScalar::int)).collect())
}

pub fn to_matrix(m: &[IntVec]) -> TropMatrix {
    TropMatrix::new(m.iter().map(|r| to_vec(r).coords().to_vec()).collect()).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

pub fn pt(x: i64, y: i64) -> PlanePoint {
    PlanePoint::from_ints(x, y)
}

// ---------------------------------------------------------------- strategies

/// A rational with small numerator and denominator in {1, 2, 3, 4, 6}.
pub fn small_rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, prop::sample::select(vec![1i64, 2, 3, 4, 6])).prop_map(|(n, d)| ratio(n, d))
}

pub fn scalar() -> impl Strategy<Value = TropScalar> {
    prop_oneof![1 => Just(TropScalar::NegInf), 6 => small_rational(40).prop_map(TropScalar::Finite)]
}

pub fn finite_scalar() -> impl Strategy<Value = TropScalar> {
    small_rational(40).prop_map(TropScalar::Finite)
}

pub fn vector(d: usize) -> impl Strategy<Value = TropVector> {
    prop::collection::vec(scalar(), d).prop_map(TropVector::new)
}

pub fn finite_vector(d: usize) -> impl Strategy<Value = TropVector> {
    prop::collection::vec(finite_scalar(), d).prop_map(TropVector::new)
}

pub fn point() -> impl Strategy<Value = PlanePoint> {
    (small_rational(30), small_rational(30)).prop_map(|(x, y)| PlanePoint::new(x, y))
}

pub fn line() -> impl Strategy<Value = TropLine> {
    point().prop_map(|v| TropLine::with_vertex(&v))
}

// ------------------------------------------------------------ seeded drawing

pub fn rand_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let d = [1i64, 2, 3, 4, 5, 7][rng.gen_range(0..6)];
    ratio(rng.gen_range(-bound * d..=bound * d), d)
}

pub fn rand_point<R: Rng>(rng: &mut R, bound: i64) -> PlanePoint {
    PlanePoint::new(rand_rational(rng, bound), rand_rational(rng, bound))
}

pub fn rand_line<R: Rng>(rng: &mut R, bound: i64) -> TropLine {
    TropLine::with_vertex(&rand_point(rng, bound))
}

pub fn rand_finite_vector<R: Rng>(rng: &mut R, d: usize, bound: i64) -> TropVector {
    TropVector::new((0..d).map(|_| TropScalar::Finite(rand_rational(rng, bound))).collect())
}

// ------------------------------------------------------------------- oracles

/// `max(a + x, b + y, c)` is attained at least twice.
pub fn on_line_oracle(coeffs: (&Rational, &Rational, &Rational), p: &PlanePoint) -> bool {
    let terms = [coeffs.0 + &p.x, coeffs.1 + &p.y, coeffs.2.clone()];
    let m = terms.iter().max().unwrap();
    terms.iter().filter(|t| *t == m).count() >= 2
}

/// Incidence for the line whose vertex is `v`, i.e. coefficients `(−vx, −vy, 0)`.
pub fn on_vertex_line(v: &PlanePoint, p: &PlanePoint) -> bool {
    on_line_oracle((&-&v.x, &-&v.y, &Rational::zero()), p)
}

/// All vertices on the grid of spacing `1/4` inside `[lo, hi]²` whose line
/// contains both points.
pub fn vertex_grid_oracle(p: &PlanePoint, q: &PlanePoint, lo: i64, hi: i64) -> Vec<PlanePoint> {
    let mut out = Vec::new();
    for i in 4 * lo..=4 * hi {
        for j in 4 * lo..=4 * hi {
            let v = PlanePoint::new(ratio(i, 4), ratio(j, 4));
            if on_vertex_line(&v, p) && on_vertex_line(&v, q) {
                out.push(v);
            }
        }
    }
    out
}

/// Integer points of `[lo, hi]²` lying on both lines.
pub fn common_grid_points(l1: &TropLine, l2: &TropLine, lo: i64, hi: i64) -> Vec<PlanePoint> {
    let (v1, v2) = (l1.vertex(), l2.vertex());
    let mut out = Vec::new();
    for x in lo..=hi {
        for y in lo..=hi {
            let p = PlanePoint::new(rat(x), rat(y));
            if on_vertex_line(&v1, &p) && on_vertex_line(&v2, &p) {
                out.push(p);
            }
        }
    }
    out
}

fn ext_add(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn ext_mul(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

/// Max-plus combination over integers.
pub fn combine_ints(lambdas: &[Option<i64>], gens: &[IntVec]) -> IntVec {
    let d = gens[0].len();
    (0..d).map(|j| lambdas.iter().zip(gens).fold(None, |acc, (l, g)| ext_add(acc, ext_mul(*l, g[j])))).collect()
}

/// Searches `λ ∈ ({−∞} ∪ [−8, 8])^k` for an exact representation of `x`.
pub fn brute_force_span(x: &[Option<i64>], gens: &[IntVec]) -> Option<Vec<Option<i64>>> {
    let choices: Vec<Option<i64>> = std::iter::once(None).chain((-8..=8).map(Some)).collect();
    let k = gens.len();
    let mut idx = vec![0usize; k];
    loop {
        let lambdas: Vec<Option<i64>> = idx.iter().map(|&i| choices[i]).collect();
        if combine_ints(&lambdas, gens) == x {
            return Some(lambdas);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Every permutation of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        heap(k - 1, a, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            heap(k - 1, a, out);
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Best permutation sum and how many permutations attain it.
pub fn tdet_oracle(m: &[IntVec]) -> (Option<i64>, usize) {
    let n = m.len();
    let sums: Vec<Option<i64>> =
        permutations(n).iter().map(|p| (0..n).try_fold(0i64, |acc, i| m[i][p[i]].map(|v| acc + v))).collect();
    let best = sums.iter().copied().max().unwrap();
    (best, sums.iter().filter(|s| **s == best).count())
}

/// `a₁b₂ ⊕ a₂b₁` over rationals, `None` as −∞.
pub fn bracket_oracle(a: &[Option<Rational>; 2], b: &[Option<Rational>; 2]) -> Option<Rational> {
    let t1 = a[0].as_ref().zip(b[1].as_ref()).map(|(x, y)| x + y);
    let t2 = a[1].as_ref().zip(b[0].as_ref()).map(|(x, y)| x + y);
    match (t1, t2) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub fn as_opt(v: &TropVector) -> [Option<Rational>; 2] {
    let c = v.coords();
    [c[0].as_finite().cloned(), c[1].as_finite().cloned()]
}

pub fn scalar_to_opt(s: &TropScalar) -> Option<Rational> {
    s.as_finite().cloned()
}

// ------------------------------------------------------------ pencil fixtures

/// Lines and marked triples `A, B, C ↦ A′, B′, C′`.
#[derive(Clone, Debug)]
pub struct TripleFixture {
    pub name: String,
    pub l1: TropLine,
    pub src: [PlanePoint; 3],
    pub l2: TropLine,
    pub dst: [PlanePoint; 3],
}

impl TripleFixture {
    fn new(name: &str, v1: (i64, i64), src: [(i64, i64); 3], v2: (i64, i64), dst: [(i64, i64); 3]) -> Self {
        TripleFixture {
            name: name.into(),
            l1: TropLine::with_vertex(&pt(v1.0, v1.1)),
            src: src.map(|(x, y)| pt(x, y)),
            l2: TropLine::with_vertex(&pt(v2.0, v2.1)),
            dst: dst.map(|(x, y)| pt(x, y)),
        }
    }

    /// Applies a map of the plane that sends tropical lines to tropical lines.
    fn mapped(&self, tag: &str, f: impl Fn(&PlanePoint) -> PlanePoint) -> Self {
        TripleFixture {
            name: format!("{} {tag}", self.name),
            l1: TropLine::with_vertex(&f(&self.l1.vertex())),
            src: self.src.clone().map(|p| f(&p)),
            l2: TropLine::with_vertex(&f(&self.l2.vertex())),
            dst: self.dst.clone().map(|p| f(&p)),
        }
    }
}

/// Configurations whose targets use at most two rays, where the
/// two-perspectivity construction succeeds. Translations, positive
/// dilations and the swap of coordinates preserve feasibility.
pub fn feasible_fixtures() -> Vec<TripleFixture> {
    let base = [
        TripleFixture::new("f1", (-2, -7), [(-11, -7), (-2, -18), (3, -2)], (-4, 0), [(2, 6), (11, 15), (5, 9)]),
        TripleFixture::new("f2", (-7, 2), [(-18, 2), (-7, -9), (0, 9)], (6, 0), [(15, 9), (6, -1), (21, 15)]),
        TripleFixture::new("f3", (-1, -8), [(-13, -8), (-1, -21), (9, 2)], (-7, -5), [(-5, -3), (-4, -2), (6, 8)]),
        TripleFixture::new("f4", (-1, -5), [(-12, -5), (-1, -11), (11, 7)], (-8, -4), [(-11, -4), (-14, -4), (-18, -4)]),
        TripleFixture::new("f5", (1, -4), [(-12, -4), (1, -15), (14, 9)], (3, 5), [(-9, 5), (1, 5), (2, 5)]),
    ];
    let mut out = Vec::new();
    for f in base {
        out.push(f.mapped("shifted", |p| PlanePoint::new(&p.x + rat(3), &p.y - rat(2))));
        out.push(f.mapped("dilated", |p| PlanePoint::new(&p.x * q(3, 2), &p.y * q(3, 2))));
        out.push(f.mapped("swapped", |p| PlanePoint::new(p.y.clone(), p.x.clone())));
        out.push(f);
    }
    out
}

/// Compatible pencil pairs with one marked point on every ray of both
/// lines, matched ray to ray. The first one follows the layout of the
/// classical two-stage drawing.
pub fn full_triple_fixtures(count: usize, seed: u64) -> Vec<TripleFixture> {
    use rand::SeedableRng;
    use tropgeom::plane::is_coaxial_lines;
    use tropgeom::RayLabel;
    let mut out = vec![
        TripleFixture::new("two-stage drawing", (0, 0), [(-2, 0), (0, -2), (2, 2)], (12, 4), [(9, 4), (12, 2), (15, 7)]),
        TripleFixture::new("perspectivity drawing", (0, 0), [(-3, 0), (0, -3), (2, 2)], (9, 3), [(5, 3), (9, 0), (12, 6)]),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let (l1, l2) = (rand_line(&mut rng, 10), rand_line(&mut rng, 10));
        if is_coaxial_lines(&l1, &l2) {
            continue;
        }
        let on = |l: &TropLine, rng: &mut rand_chacha::ChaCha8Rng| {
            [RayLabel::RayLeft, RayLabel::RayDown, RayLabel::RayDiag].map(|r| l.point_on(r, &rat(rng.gen_range(1..=12))))
        };
        let (src, dst) = (on(&l1, &mut rng), on(&l2, &mut rng));
        out.push(TripleFixture { name: format!("random {}", out.len()), l1, src, l2, dst });
    }
    out
}
