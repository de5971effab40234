//! Semilinear maps, collineations of `TP^{n−1}`, and the reconstruction of a
//! semilinear map `(λ, μ)` from the collineation it induces.
//!
//! Over the max-plus rationals the automorphisms `μ` exposed here are the
//! scalings `c ↦ s·c` with `s > 0`; a semilinear map acts as
//! `λ(x) = M ⊙ μ(x)`. Only monomial matrices are invertible, so only those
//! induce collineations.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ensure_dim, span_membership, span_solution_is_unique, TropMatrix, TropVector};
use crate::projective::{canonicalize, ProjPoint};
use crate::scalar::{rat, Rational, TropScalar};

/// `c ↦ s·c` on finite values, fixing `−∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawScaling")]
pub struct ScalingAutomorphism {
    #[serde(with = "crate::scalar::serde_rational")]
    s: Rational,
}

#[derive(Deserialize)]
struct RawScaling {
    #[serde(with = "crate::scalar::serde_rational")]
    s: Rational,
}

impl TryFrom<RawScaling> for ScalingAutomorphism {
    type Error = Error;

    fn try_from(raw: RawScaling) -> Result<Self> {
        ScalingAutomorphism::new(raw.s)
    }
}

impl ScalingAutomorphism {
    pub fn new(s: Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::PreconditionViolated(format!("scaling factor {s} is not positive")));
        }
        Ok(ScalingAutomorphism { s })
    }

    pub fn identity() -> Self {
        ScalingAutomorphism { s: Rational::one() }
    }

    pub fn factor(&self) -> &Rational {
        &self.s
    }

    pub fn is_identity(&self) -> bool {
        self.s.is_one()
    }

    pub fn apply(&self, c: &TropScalar) -> TropScalar {
        match c {
            TropScalar::Finite(q) => TropScalar::Finite(q * &self.s),
            other => other.clone(),
        }
    }

    pub fn apply_vector(&self, v: &TropVector) -> TropVector {
        TropVector::new(v.coords().iter().map(|c| self.apply(c)).collect())
    }
}

impl Default for ScalingAutomorphism {
    fn default() -> Self {
        Self::identity()
    }
}

/// Anything that maps vectors of `T^n` to vectors of `T^n`.
pub trait VectorMap {
    fn dim(&self) -> usize;
    fn map(&self, v: &TropVector) -> Result<TropVector>;
}

impl VectorMap for TropMatrix {
    fn dim(&self) -> usize {
        self.ncols()
    }

    fn map(&self, v: &TropVector) -> Result<TropVector> {
        self.apply(v)
    }
}

/// `λ(x) = M ⊙ μ(x)`; the columns of `M` are the images of the unit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilinearMap {
    pub matrix: TropMatrix,
    #[serde(default)]
    pub mu: ScalingAutomorphism,
}

impl SemilinearMap {
    pub fn new(matrix: TropMatrix, mu: ScalingAutomorphism) -> Result<Self> {
        matrix.require_square()?;
        Ok(SemilinearMap { matrix, mu })
    }

    pub fn linear(matrix: TropMatrix) -> Result<Self> {
        Self::new(matrix, ScalingAutomorphism::identity())
    }
}

impl VectorMap for SemilinearMap {
    fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    fn map(&self, v: &TropVector) -> Result<TropVector> {
        self.matrix.apply(&self.mu.apply_vector(v))
    }
}

/// Checks `f(X ⊕ Y) = f(X) ⊕ f(Y)` and `f(α ⊙ X) = μ(α) ⊙ f(X)` on each probe.
pub fn is_semilinear<F: VectorMap + ?Sized>(
    f: &F,
    mu: &ScalingAutomorphism,
    probes: &[(TropVector, TropVector, TropScalar)],
) -> Result<bool> {
    for (x, y, alpha) in probes {
        ensure_dim(f.dim(), x.dim())?;
        ensure_dim(f.dim(), y.dim())?;
        if f.map(&x.oplus(y)?)? != f.map(x)?.oplus(&f.map(y)?)? {
            return Ok(false);
        }
        if f.map(&x.scaled(alpha))? != f.map(x)?.scaled(&mu.apply(alpha)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A map on rank-one classes, queried pointwise.
pub trait Collineation: Send + Sync {
    fn dim(&self) -> usize;
    fn image(&self, p: &ProjPoint) -> Result<ProjPoint>;
}

/// The collineation `[x] ↦ [λ(x)]` of a semilinear map with monomial matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedCollineation {
    map: SemilinearMap,
}

impl InducedCollineation {
    pub fn map(&self) -> &SemilinearMap {
        &self.map
    }
}

impl Collineation for InducedCollineation {
    fn dim(&self) -> usize {
        self.map.dim()
    }

    fn image(&self, p: &ProjPoint) -> Result<ProjPoint> {
        ensure_dim(self.dim(), p.dim())?;
        canonicalize(&self.map.map(p.rep())?)
    }
}

pub fn induced_collineation(f: &SemilinearMap) -> Result<InducedCollineation> {
    f.matrix.require_square()?;
    if !f.matrix.is_monomial() {
        return Err(Error::NotInvertible("only monomial matrices are invertible over T".into()));
    }
    Ok(InducedCollineation { map: f.clone() })
}

/// Permutation matrix with `P[perm[j]][j] = 0`.
pub fn permutation_matrix(perm: &[usize]) -> Result<TropMatrix> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::PreconditionViolated(format!("{perm:?} is not a permutation")));
        }
    }
    let mut rows = vec![vec![TropScalar::NegInf; n]; n];
    for (j, &i) in perm.iter().enumerate() {
        rows[i][j] = TropScalar::int(0);
    }
    TropMatrix::new(rows)
}

/// Sends coordinate `j` to coordinate `perm[j]`.
pub fn coordinate_permutation(perm: &[usize]) -> Result<InducedCollineation> {
    induced_collineation(&SemilinearMap::linear(permutation_matrix(perm)?)?)
}

/// A collineation given by a closure.
pub struct FnCollineation<F> {
    dim: usize,
    f: F,
}

impl<F> FnCollineation<F>
where
    F: Fn(&ProjPoint) -> Result<ProjPoint> + Send + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        FnCollineation { dim, f }
    }
}

impl<F> Collineation for FnCollineation<F>
where
    F: Fn(&ProjPoint) -> Result<ProjPoint> + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn image(&self, p: &ProjPoint) -> Result<ProjPoint> {
        ensure_dim(self.dim, p.dim())?;
        (self.f)(p)
    }
}

impl<F> fmt::Debug for FnCollineation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnCollineation").field("dim", &self.dim).finish_non_exhaustive()
    }
}

fn in_span(x: &ProjPoint, a: &ProjPoint, b: &ProjPoint) -> Result<bool> {
    Ok(span_membership(x.rep(), &[a.rep().clone(), b.rep().clone()])?.member)
}

/// True iff `σL₁ ∈ span{σL₂, σL₃}` for every triple; each triple must
/// itself satisfy `L₁ ∈ span{L₂, L₃}`.
pub fn preserves_coaxiality<C: Collineation + ?Sized>(sigma: &C, triples: &[[ProjPoint; 3]]) -> Result<bool> {
    for [l1, l2, l3] in triples {
        if !in_span(l1, l2, l3)? {
            return Err(Error::PreconditionViolated(format!("{} is not in the span of {} and {}", l1.rep(), l2.rep(), l3.rep())));
        }
        if !in_span(&sigma.image(l1)?, &sigma.image(l2)?, &sigma.image(l3)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same images on every probe.
pub fn collineations_agree<A, B>(a: &A, b: &B, probes: &[ProjPoint]) -> Result<bool>
where
    A: Collineation + ?Sized,
    B: Collineation + ?Sized,
{
    for p in probes {
        if a.image(p)? != b.image(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One verified lemma of the reconstruction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: &'static str,
    pub passed: bool,
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuSample {
    pub c: TropScalar,
    pub mu: TropScalar,
}

/// Everything recovered from a collineation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    /// The chosen representative of `σ⟨e₁⟩`.
    pub v1: TropVector,
    /// `γ_i` with `σ⟨e₁ ⊕ e_i⟩ = ⟨v′₁ ⊕ γ_i w_i⟩`; the entry for `i = 1` is `0`.
    pub gammas: Vec<TropScalar>,
    pub basis_images: Vec<TropVector>,
    pub mu_table: Vec<MuSample>,
    /// `s` with `μ(c) = s·c` on every finite sample, when one exists.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub mu_scale: Option<Rational>,
    pub ledger: Vec<LemmaCheck>,
    pub queries: usize,
}

fn serialize_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&crate::scalar::format_rational(q)),
        None => s.serialize_none(),
    }
}

impl Reconstruction {
    pub fn all_lemmas_pass(&self) -> bool {
        self.ledger.iter().all(|l| l.passed)
    }

    /// The semilinear map assembled from the basis images and the fitted `μ`.
    pub fn to_semilinear_map(&self) -> Result<SemilinearMap> {
        let s = self
            .mu_scale
            .clone()
            .ok_or_else(|| Error::NoSolution("μ is not a scaling on the samples".into()))?;
        SemilinearMap::new(TropMatrix::from_columns(&self.basis_images)?, ScalingAutomorphism::new(s)?)
    }
}

struct Prober<'a, C: ?Sized> {
    sigma: &'a C,
    n: usize,
    queries: usize,
}

impl<C: Collineation + ?Sized> Prober<'_, C> {
    fn query(&mut self, v: TropVector) -> Result<TropVector> {
        self.queries += 1;
        Ok(self.sigma.image(&canonicalize(&v)?)?.into_rep())
    }

    /// `e₁ ⊕ c ⊙ e_i`.
    fn probe(&self, i: usize, c: &TropScalar) -> TropVector {
        let mut coords = vec![TropScalar::NegInf; self.n];
        coords[0] = TropScalar::int(0);
        coords[i] = c.clone();
        TropVector::new(coords)
    }

    /// The `m` with `[y] = [v₁ ⊕ m ⊙ w]`.
    fn match_pencil(&self, y: &TropVector, v1: &TropVector, w: &TropVector, what: &str) -> Result<TropScalar> {
        let gens = [v1.clone(), w.clone()];
        let cert = span_membership(y, &gens)?;
        if !cert.member {
            return Err(Error::NoSolution(format!("{what}: image {y} is not in the span of {v1} and {w}")));
        }
        if !span_solution_is_unique(y, &gens, &cert)? {
            return Err(Error::AmbiguousSolution(format!("{what}: image {y} has several coordinates in the span of {v1} and {w}")));
        }
        match (&cert.coefficients[0], &cert.coefficients[1]) {
            (TropScalar::Finite(l1), TropScalar::Finite(l2)) => Ok(TropScalar::Finite(l2 - l1)),
            (TropScalar::Finite(_), _) => Ok(TropScalar::NegInf),
            _ => Err(Error::NoSolution(format!("{what}: image {y} does not involve {v1}"))),
        }
    }

    fn mu(&mut self, i: usize, v1: &TropVector, vi: &TropVector, c: &TropScalar) -> Result<TropScalar> {
        let y = self.query(self.probe(i, c))?;
        self.match_pencil(&y, v1, vi, &format!("μ_{}({c})", i + 1))
    }
}

/// Recovers `(λ, μ)` from `σ` with `v′₁` the canonical representative of `σ⟨e₁⟩`.
pub fn reconstruct_semilinear<C: Collineation + ?Sized>(sigma: &C, n: usize, samples: &[TropScalar]) -> Result<Reconstruction> {
    reconstruct_semilinear_scaled(sigma, n, samples, &Rational::zero())
}

/// As [`reconstruct_semilinear`], choosing `v′₁` = canonical rep `⊙ shift`.
pub fn reconstruct_semilinear_scaled<C: Collineation + ?Sized>(
    sigma: &C,
    n: usize,
    samples: &[TropScalar],
    shift: &Rational,
) -> Result<Reconstruction> {
    if n < 3 {
        return Err(Error::PreconditionViolated(format!("dimension {n} is below 3")));
    }
    ensure_dim(n, sigma.dim())?;
    if let Some(c) = samples.iter().find(|c| matches!(c, TropScalar::PosInf)) {
        return Err(Error::PreconditionViolated(format!("sample {c} is not a max-plus scalar")));
    }
    let mut pr = Prober { sigma, n, queries: 0 };

    let v1 = pr.query(TropVector::unit(n, 0))?.scaled(&TropScalar::Finite(shift.clone()));
    let mut gammas = vec![TropScalar::int(0)];
    let mut basis_images = vec![v1.clone()];
    for i in 1..n {
        let w = pr.query(TropVector::unit(n, i))?;
        let y = pr.query(pr.probe(i, &TropScalar::int(0)))?;
        let gamma = pr.match_pencil(&y, &v1, &w, &format!("γ_{}", i + 1))?;
        if !gamma.is_finite() {
            return Err(Error::NoSolution(format!("γ_{} is −∞", i + 1)));
        }
        basis_images.push(w.scaled(&gamma));
        gammas.push(gamma);
    }

    let mut values: Vec<TropScalar> = vec![TropScalar::NegInf, TropScalar::int(0)];
    for c in samples {
        if !values.contains(c) {
            values.push(c.clone());
        }
    }

    // μ tabulated through the second basis direction; the others must agree.
    let mut table: Vec<MuSample> = Vec::new();
    let mut cross = LemmaCheck { lemma: "mu_i_equals_mu_j", passed: true, checked: 0 };
    for c in &values {
        let mu = pr.mu(1, &v1, &basis_images[1], c)?;
        for (i, vi) in basis_images.iter().enumerate().skip(2) {
            cross.checked += 1;
            if pr.mu(i, &v1, vi, c)? != mu {
                cross.passed = false;
            }
        }
        table.push(MuSample { c: c.clone(), mu });
    }
    let lookup = |table: &[MuSample], c: &TropScalar| table.iter().find(|m| m.c == *c).map(|m| m.mu.clone());

    let mut ledger = vec![
        LemmaCheck { lemma: "mu_zero", passed: lookup(&table, &TropScalar::NegInf) == Some(TropScalar::NegInf), checked: 1 },
        LemmaCheck { lemma: "mu_one", passed: lookup(&table, &TropScalar::int(0)) == Some(TropScalar::int(0)), checked: 1 },
    ];
    let mut additive = LemmaCheck { lemma: "mu_additive", passed: true, checked: 0 };
    let mut multiplicative = LemmaCheck { lemma: "mu_multiplicative", passed: true, checked: 0 };
    for (k, c) in values.iter().enumerate() {
        for d in &values[k..] {
            let (mc, md) = (lookup(&table, c).expect("tabulated"), lookup(&table, d).expect("tabulated"));
            additive.checked += 1;
            if lookup(&table, &c.oplus(d)).expect("sum of samples is a sample") != mc.oplus(&md) {
                additive.passed = false;
            }
            let prod = c.otimes(d);
            let mprod = match lookup(&table, &prod) {
                Some(m) => m,
                None => pr.mu(1, &v1, &basis_images[1], &prod)?,
            };
            multiplicative.checked += 1;
            if mprod != mc.otimes(&md) {
                multiplicative.passed = false;
            }
        }
    }
    ledger.extend([additive, multiplicative, cross]);

    let mu_scale = fit_scale(&table);
    ledger.push(LemmaCheck { lemma: "mu_is_scaling", passed: mu_scale.is_some(), checked: table.len() });

    Ok(Reconstruction { v1, gammas, basis_images, mu_table: table, mu_scale, ledger, queries: pr.queries })
}

fn fit_scale(table: &[MuSample]) -> Option<Rational> {
    let mut s: Option<Rational> = None;
    for MuSample { c, mu } in table {
        match (c, mu) {
            (TropScalar::NegInf, TropScalar::NegInf) => {}
            (TropScalar::Finite(c), TropScalar::Finite(m)) if c.is_zero() => {
                if !m.is_zero() {
                    return None;
                }
            }
            (TropScalar::Finite(c), TropScalar::Finite(m)) => {
                let ratio = m / c;
                if !ratio.is_positive() || s.as_ref().is_some_and(|s| *s != ratio) {
                    return None;
                }
                s = Some(ratio);
            }
            _ => return None,
        }
    }
    Some(s.unwrap_or_else(Rational::one))
}

/// Integer scalars in `[−8, 8]` plus `−∞`, as used for `μ` tables.
pub fn default_mu_samples() -> Vec<TropScalar> {
    (-8..=8).map(TropScalar::int).collect()
}

/// Seeded nonzero probe classes with integer coordinates in `[−8, 8]`;
/// roughly one coordinate in eight is `−∞`.
pub fn random_probe_classes(n: usize, count: usize, seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = TropVector::new(
            (0..n)
                .map(|_| if rng.gen_ratio(1, 8) { TropScalar::NegInf } else { TropScalar::int(rng.gen_range(-8..=8)) })
                .collect(),
        );
        if let Ok(p) = canonicalize(&v) {
            out.push(p);
        }
    }
    out
}

/// Seeded monomial semilinear map: random permutation, finite entries in
/// `[−5, 5]`, `μ` scaling drawn from `{1, 2, 3, 1/2}`.
pub fn random_monomial_map(n: usize, seed: u64) -> SemilinearMap {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut rows = vec![vec![TropScalar::NegInf; n]; n];
    for (j, &i) in perm.iter().enumerate() {
        rows[i][j] = TropScalar::int(rng.gen_range(-5..=5));
    }
    let scales = [rat(1), rat(2), rat(3), crate::scalar::ratio(1, 2)];
    let s = scales[rng.gen_range(0..scales.len())].clone();
    SemilinearMap::new(TropMatrix::new(rows).expect("square"), ScalingAutomorphism::new(s).expect("positive"))
        .expect("square")
}

/// Result for one permutation in [`tp2_automorphism_suite`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationReport {
    pub permutation: Vec<usize>,
    pub bijective_on_grid: bool,
    pub coaxial_triples: usize,
    pub preserves_coaxiality: bool,
    pub reconstructed: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tp2Report {
    pub grid_classes: usize,
    pub permutations: Vec<PermutationReport>,
    pub all_pass: bool,
}

/// Classes of `TP²` with a representative in `{−2,…,2}³`.
pub fn tp2_grid() -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                let p = canonicalize(&TropVector::from_ints(&[a, b, c])).expect("finite");
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Ordered triples `(L₁, L₂, L₃)` of distinct grid classes with
/// `L₁ ∈ span{L₂, L₃}`, taking `L₂ < L₃` by grid index.
pub fn coaxial_triples(grid: &[ProjPoint]) -> Result<Vec<[ProjPoint; 3]>> {
    let mut out = Vec::new();
    for (j, l2) in grid.iter().enumerate() {
        for l3 in &grid[j + 1..] {
            for l1 in grid {
                if l1 != l2 && l1 != l3 && in_span(l1, l2, l3)? {
                    out.push([l1.clone(), l2.clone(), l3.clone()]);
                }
            }
        }
    }
    Ok(out)
}

/// Checks every coordinate permutation of `TP²` on the exhaustive grid and
/// decomposes each through [`reconstruct_semilinear`].
pub fn tp2_automorphism_suite() -> Result<Tp2Report> {
    let grid = tp2_grid();
    let triples = coaxial_triples(&grid)?;
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let mut reports = Vec::new();
    for perm in perms {
        let sigma = coordinate_permutation(&perm)?;
        let images: Vec<ProjPoint> = grid.iter().map(|p| sigma.image(p)).collect::<Result<_>>()?;
        let bijective_on_grid = images.iter().all(|p| grid.contains(p))
            && images.iter().enumerate().all(|(k, p)| !images[..k].contains(p));
        let preserves = preserves_coaxiality(&sigma, &triples)?;
        let reconstructed = match reconstruct_semilinear(&sigma, 3, &default_mu_samples()) {
            Ok(r) => {
                r.all_lemmas_pass()
                    && r.mu_scale == Some(Rational::one())
                    && r.to_semilinear_map().is_ok_and(|m| m.matrix == permutation_matrix(&perm).expect("permutation"))
            }
            Err(_) => false,
        };
        let pass = bijective_on_grid && preserves && reconstructed;
        reports.push(PermutationReport {
            permutation: perm.to_vec(),
            bijective_on_grid,
            coaxial_triples: triples.len(),
            preserves_coaxiality: preserves,
            reconstructed,
            pass,
        });
    }
    let all_pass = reports.iter().all(|r| r.pass);
    Ok(Tp2Report { grid_classes: grid.len(), permutations: reports, all_pass })
}
