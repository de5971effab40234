//! Brackets and the tropical cross-ratio on `T²`.
//!
//! `(a,b;c,d) = [a,c] ⊙ [b,d] ⊘ ([a,d] ⊙ [b,c])` with `[a,b] = a₁b₂ ⊕ a₂b₁`.
//! The value survives rescaling each vector but not a general matrix action;
//! [`find_noninvariance_witness`] searches for a concrete counterexample.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ensure_dim, is_tropically_singular, TropMatrix, TropVector};
use crate::scalar::TropScalar;

/// The 2×2 tropical determinant of two column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    pub value: TropScalar,
}

pub fn bracket2(a: &TropVector, b: &TropVector) -> Result<Bracket> {
    ensure_dim(2, a.dim())?;
    ensure_dim(2, b.dim())?;
    let (a, b) = (a.coords(), b.coords());
    Ok(Bracket { value: a[0].otimes(&b[1]).oplus(&a[1].otimes(&b[0])) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossRatioResult {
    pub value: TropScalar,
    pub numer: TropScalar,
    pub denom: TropScalar,
}

pub fn cross_ratio(a: &TropVector, b: &TropVector, c: &TropVector, d: &TropVector) -> Result<CrossRatioResult> {
    let ac = bracket2(a, c)?.value;
    let bd = bracket2(b, d)?.value;
    let ad = bracket2(a, d)?.value;
    let bc = bracket2(b, c)?.value;
    if ad.is_neg_inf() || bc.is_neg_inf() {
        return Err(Error::ZeroDenominator);
    }
    let numer = ac.otimes(&bd);
    let denom = ad.otimes(&bc);
    let value = match (&numer, &denom) {
        (TropScalar::Finite(n), TropScalar::Finite(d)) => TropScalar::Finite(n - d),
        _ => TropScalar::NegInf,
    };
    Ok(CrossRatioResult { value, numer, denom })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarInvariance {
    pub invariant: bool,
    pub original: TropScalar,
    pub scaled: TropScalar,
}

/// Compares `(a,b;c,d)` with `(λa⊙a, λb⊙b; λc⊙c, λd⊙d)`.
pub fn check_scalar_invariance(quad: [&TropVector; 4], lambdas: [&TropScalar; 4]) -> Result<ScalarInvariance> {
    if let Some(l) = lambdas.iter().find(|l| !l.is_finite()) {
        return Err(Error::PreconditionViolated(format!("scaling {l} is not finite")));
    }
    let [a, b, c, d] = quad;
    let original = cross_ratio(a, b, c, d)?.value;
    let s: Vec<TropVector> = quad.iter().zip(lambdas).map(|(v, l)| v.scaled(l)).collect();
    let scaled = cross_ratio(&s[0], &s[1], &s[2], &s[3])?.value;
    Ok(ScalarInvariance { invariant: original == scaled, original, scaled })
}

/// `M ⊙ v` for a tropically nonsingular 2×2 matrix.
pub fn matrix_transform(m: &TropMatrix, v: &TropVector) -> Result<TropVector> {
    if m.nrows() != 2 || m.ncols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: m.nrows().max(m.ncols()) });
    }
    if is_tropically_singular(m)? {
        return Err(Error::SingularMatrix);
    }
    m.apply(v)
}

/// A matrix and a quadruple whose cross-ratio changes under the matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub matrix: TropMatrix,
    pub a: TropVector,
    pub b: TropVector,
    pub c: TropVector,
    pub d: TropVector,
    pub value_before: TropScalar,
    pub value_after: TropScalar,
    /// Cases drawn before this one, including rejected ones.
    pub cases_examined: u64,
}

impl Witness {
    /// Recomputes both values from scratch.
    pub fn verify(&self) -> Result<bool> {
        let before = cross_ratio(&self.a, &self.b, &self.c, &self.d)?.value;
        let t = |v: &TropVector| matrix_transform(&self.matrix, v);
        let after = cross_ratio(&t(&self.a)?, &t(&self.b)?, &t(&self.c)?, &t(&self.d)?)?.value;
        Ok(before == self.value_before && after == self.value_after && before != after)
    }
}

/// Cross-ratio before and after applying `m`, if both are defined.
pub fn cross_ratio_under(m: &TropMatrix, quad: [&TropVector; 4]) -> Result<(TropScalar, TropScalar)> {
    let [a, b, c, d] = quad;
    let before = cross_ratio(a, b, c, d)?.value;
    let t: Vec<TropVector> = quad.iter().map(|v| matrix_transform(m, v)).collect::<Result<_>>()?;
    let after = cross_ratio(&t[0], &t[1], &t[2], &t[3])?.value;
    Ok((before, after))
}

/// Seeded random search over matrices with entries in `{−∞,0,1,2}` and
/// quadruples with entries in `{0,1,2}`. Each draw counts against `budget`,
/// singular matrices and undefined cross-ratios included.
pub fn find_noninvariance_witness(seed: u64, budget: u64) -> Result<Witness> {
    if budget == 0 {
        return Err(Error::PreconditionViolated("budget must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = [TropScalar::NegInf, TropScalar::int(0), TropScalar::int(1), TropScalar::int(2)];
    let coords = [0i64, 1, 2];
    for drawn in 0..budget {
        let rows = (0..2).map(|_| (0..2).map(|_| entries.choose(&mut rng).expect("nonempty").clone()).collect()).collect();
        let quad: Vec<TropVector> = (0..4)
            .map(|_| TropVector::from_ints(&[*coords.choose(&mut rng).expect("nonempty"), *coords.choose(&mut rng).expect("nonempty")]))
            .collect();
        let matrix = TropMatrix::new(rows)?;
        let Ok((before, after)) = cross_ratio_under(&matrix, [&quad[0], &quad[1], &quad[2], &quad[3]]) else {
            continue;
        };
        if before != after {
            let [a, b, c, d]: [TropVector; 4] = quad.try_into().expect("four vectors");
            return Ok(Witness { matrix, a, b, c, d, value_before: before, value_after: after, cases_examined: drawn + 1 });
        }
    }
    Err(Error::BudgetExhausted(budget))
}
