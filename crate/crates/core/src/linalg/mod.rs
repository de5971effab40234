//! Tropical vectors and matrices over the max-plus semiring.
//!
//! Everything here computes in max-plus. Min-plus data goes through the
//! order duality (`x ↦ −x`) at the entry points suffixed `_in`.

mod assignment;
mod det;
mod span;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Convention, TropScalar};

pub use det::{
    is_tropically_singular, is_tropically_singular_in, optimal_permutation_count, tdet, tdet_by_assignment,
    tdet_by_enumeration, tdet_in, ENUMERATION_LIMIT,
};
pub use span::{
    is_linearly_independent, minimal_generating_set, span_membership, span_membership_in, span_solution_is_unique,
    spans_equal, Independence, SpanCertificate,
};

/// An element of `T^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TropVector(pub Vec<TropScalar>);

impl TropVector {
    pub fn new(coords: Vec<TropScalar>) -> Self {
        TropVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        TropVector(coords.iter().map(|&c| TropScalar::int(c)).collect())
    }

    /// The semimodule zero `θ` of dimension `d`.
    pub fn zero(d: usize) -> Self {
        TropVector(vec![TropScalar::NegInf; d])
    }

    /// The `i`-th tropical unit vector: `0` at `i`, `−∞` elsewhere.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zero(d);
        v.0[i] = TropScalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[TropScalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(TropScalar::is_neg_inf)
    }

    /// Indices of the finite coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, c)| c.is_finite()).map(|(i, _)| i).collect()
    }

    /// `λ ⊙ v`.
    pub fn scaled(&self, lambda: &TropScalar) -> Self {
        TropVector(self.0.iter().map(|c| c.otimes(lambda)).collect())
    }

    /// Coordinatewise `⊕`.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(TropVector(self.0.iter().zip(&other.0).map(|(a, b)| a.oplus(b)).collect()))
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.dim());
        for (i, c) in self.0.iter().enumerate() {
            out.0[perm[i]] = c.clone();
        }
        out
    }

    pub(crate) fn check_max_plus(&self) -> Result<()> {
        self.0.iter().try_for_each(|c| Convention::MaxPlus.check(c))
    }

    pub(crate) fn dualized(&self, conv: Convention) -> Self {
        TropVector(self.0.iter().map(|c| conv.to_max_plus(c)).collect())
    }
}

impl fmt::Display for TropVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<TropScalar>> for TropVector {
    fn from(v: Vec<TropScalar>) -> Self {
        TropVector(v)
    }
}

/// A rectangular grid of scalars, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<TropScalar>>", into = "Vec<Vec<TropScalar>>")]
pub struct TropMatrix {
    rows: Vec<Vec<TropScalar>>,
}

impl TropMatrix {
    pub fn new(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let ncols = rows.first().map(Vec::len).ok_or(Error::EmptyInput("matrix has no rows"))?;
        if ncols == 0 {
            return Err(Error::EmptyInput("matrix has no columns"));
        }
        for row in &rows {
            ensure_dim(ncols, row.len())?;
        }
        Ok(TropMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&c| TropScalar::int(c)).collect()).collect())
    }

    /// The tropical identity: `0` on the diagonal, `−∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| TropVector::unit(n, i).0).collect();
        TropMatrix { rows }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[TropVector]) -> Result<Self> {
        let nrows = cols.first().map(TropVector::dim).ok_or(Error::EmptyInput("no columns"))?;
        for c in cols {
            ensure_dim(nrows, c.dim())?;
        }
        Self::new((0..nrows).map(|i| cols.iter().map(|c| c.0[i].clone()).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> &TropScalar {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<TropScalar>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> TropVector {
        TropVector(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<TropVector> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    /// Max-plus product `M ⊙ v`.
    pub fn apply(&self, v: &TropVector) -> Result<TropVector> {
        ensure_dim(self.ncols(), v.dim())?;
        Ok(TropVector(
            self.rows
                .iter()
                .map(|row| {
                    row.iter().zip(&v.0).fold(TropScalar::NegInf, |acc, (m, x)| acc.oplus(&m.otimes(x)))
                })
                .collect(),
        ))
    }

    /// True for generalized permutation matrices: exactly one finite
    /// entry in every row and every column.
    pub fn is_monomial(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.nrows();
        let row_ok = self.rows.iter().all(|r| r.iter().filter(|c| c.is_finite()).count() == 1);
        let col_ok = (0..n).all(|j| self.rows.iter().filter(|r| r[j].is_finite()).count() == 1);
        row_ok && col_ok
    }

    pub(crate) fn check_max_plus(&self) -> Result<()> {
        self.rows.iter().flatten().try_for_each(|c| Convention::MaxPlus.check(c))
    }

    pub(crate) fn dualized(&self, conv: Convention) -> Self {
        TropMatrix { rows: self.rows.iter().map(|r| r.iter().map(|c| conv.to_max_plus(c)).collect()).collect() }
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows())
        } else {
            Err(Error::NotSquare { rows: self.nrows(), cols: self.ncols() })
        }
    }
}

impl TryFrom<Vec<Vec<TropScalar>>> for TropMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        TropMatrix::new(rows)
    }
}

impl From<TropMatrix> for Vec<Vec<TropScalar>> {
    fn from(m: TropMatrix) -> Self {
        m.rows
    }
}

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
