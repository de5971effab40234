//! Points of tropical projective space `TP^{d−1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ensure_dim, TropVector};
use crate::scalar::{Convention, TropScalar};

/// A tropical-scaling class of nonzero vectors, kept in canonical form.
///
/// Under max-plus the largest finite coordinate is `0`; under min-plus the
/// smallest finite coordinate is `0` (the dual of the same rule).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjPoint {
    rep: TropVector,
    #[serde(skip_serializing_if = "is_max_plus")]
    convention: Convention,
}

fn is_max_plus(c: &Convention) -> bool {
    *c == Convention::MaxPlus
}

impl ProjPoint {
    pub fn rep(&self) -> &TropVector {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn into_rep(self) -> TropVector {
        self.rep
    }

    /// Indices of finite coordinates; invariant under scaling.
    pub fn support(&self) -> Vec<usize> {
        self.rep.support()
    }
}

/// Canonical max-plus representative of `[v]`.
pub fn canonicalize(v: &TropVector) -> Result<ProjPoint> {
    canonicalize_in(Convention::MaxPlus, v)
}

pub fn canonicalize_in(conv: Convention, v: &TropVector) -> Result<ProjPoint> {
    v.coords().iter().try_for_each(|c| conv.check(c))?;
    let dual = v.dualized(conv);
    let top = dual.coords().iter().filter_map(TropScalar::as_finite).max().ok_or(Error::ZeroVector)?.clone();
    let shifted = dual.scaled(&TropScalar::Finite(-top));
    Ok(ProjPoint { rep: shifted.dualized(conv), convention: conv })
}

/// Exact equality of classes.
pub fn proj_eq(p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
    ensure_dim(p.dim(), q.dim())?;
    if p.convention != q.convention {
        return Err(Error::ConventionMismatch(format!("{} vs {}", p.convention.name(), q.convention.name())));
    }
    Ok(p.rep == q.rep)
}

impl<'de> Deserialize<'de> for ProjPoint {
    /// Points are read as plain max-plus vectors and canonicalized on ingest.
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = TropVector::deserialize(deserializer)?;
        canonicalize(&v).map_err(serde::de::Error::custom)
    }
}
