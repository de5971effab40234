use serde::Serialize;

use super::{ensure_dim, TropVector};
use crate::error::{Error, Result};
use crate::scalar::{Convention, TropScalar};

/// Outcome of a span membership query.
///
/// `coefficients` is always the principal (coordinatewise greatest)
/// sub-solution; when `member` is set it reproduces the queried vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanCertificate {
    pub member: bool,
    pub coefficients: Vec<TropScalar>,
}

impl SpanCertificate {
    /// Evaluates `⊕ λ_i ⊙ g_i`.
    pub fn combine(&self, gens: &[TropVector]) -> Result<TropVector> {
        combine(&self.coefficients, gens)
    }
}

fn combine(coefficients: &[TropScalar], gens: &[TropVector]) -> Result<TropVector> {
    let d = gens.first().map(TropVector::dim).ok_or(Error::EmptyInput("no generators"))?;
    let mut acc = TropVector::zero(d);
    for (lambda, g) in coefficients.iter().zip(gens) {
        acc = acc.oplus(&g.scaled(lambda))?;
    }
    Ok(acc)
}

fn check_inputs(x: &TropVector, gens: &[TropVector]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::EmptyInput("no generators"));
    }
    x.check_max_plus()?;
    for g in gens {
        ensure_dim(x.dim(), g.dim())?;
        g.check_max_plus()?;
    }
    Ok(())
}

/// Residuation: `λ_i = min_j (x_j − g_ij)` over the finite coordinates of `g_i`.
///
/// A generator with no finite coordinate contributes nothing; its
/// coefficient is reported as the tropical one.
fn principal_solution(x: &TropVector, gens: &[TropVector]) -> Vec<TropScalar> {
    gens.iter()
        .map(|g| {
            let mut best: Option<TropScalar> = None;
            for (xj, gj) in x.0.iter().zip(&g.0) {
                let Some(gq) = gj.as_finite() else { continue };
                let cand = match xj {
                    TropScalar::Finite(xq) => TropScalar::Finite(xq - gq),
                    _ => TropScalar::NegInf,
                };
                best = Some(match best {
                    Some(b) if b <= cand => b,
                    _ => cand,
                });
            }
            best.unwrap_or_else(TropScalar::one)
        })
        .collect()
}

/// Decides whether `x` lies in the tropical span of `gens`.
pub fn span_membership(x: &TropVector, gens: &[TropVector]) -> Result<SpanCertificate> {
    check_inputs(x, gens)?;
    let coefficients = principal_solution(x, gens);
    let member = combine(&coefficients, gens)? == *x;
    Ok(SpanCertificate { member, coefficients })
}

/// [`span_membership`] for data in either convention.
pub fn span_membership_in(conv: Convention, x: &TropVector, gens: &[TropVector]) -> Result<SpanCertificate> {
    for c in x.0.iter().chain(gens.iter().flat_map(|g| g.0.iter())) {
        conv.check(c)?;
    }
    let dual_gens: Vec<_> = gens.iter().map(|g| g.dualized(conv)).collect();
    let cert = span_membership(&x.dualized(conv), &dual_gens)?;
    Ok(SpanCertificate {
        member: cert.member,
        coefficients: cert.coefficients.iter().map(|c| conv.from_max_plus(c)).collect(),
    })
}

/// True when `cert` is the only coefficient vector reproducing `x`.
///
/// Every solution lies below the principal one, and lowering `λ_i` is
/// possible exactly when the other generators already attain every
/// finite coordinate of `x`.
pub fn span_solution_is_unique(x: &TropVector, gens: &[TropVector], cert: &SpanCertificate) -> Result<bool> {
    check_inputs(x, gens)?;
    if !cert.member {
        return Ok(false);
    }
    let target = x.support();
    let attained: Vec<Vec<usize>> = gens
        .iter()
        .zip(&cert.coefficients)
        .map(|(g, lambda)| {
            target.iter().copied().filter(|&j| g.0[j].otimes(lambda) == x.0[j]).collect()
        })
        .collect();
    for (i, lambda) in cert.coefficients.iter().enumerate() {
        if lambda.is_neg_inf() {
            continue;
        }
        let others_cover = target.iter().all(|j| attained.iter().enumerate().any(|(k, s)| k != i && s.contains(j)));
        if others_cover {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of an independence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Independence {
    Independent,
    /// `set[index]` lies in the span of `set[others]`.
    Dependent { index: usize, others: Vec<usize>, certificate: SpanCertificate },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// No element may lie in the span of the remaining ones.
pub fn is_linearly_independent(set: &[TropVector]) -> Result<Independence> {
    let first = set.first().ok_or(Error::EmptyInput("empty vector set"))?;
    for v in set {
        ensure_dim(first.dim(), v.dim())?;
    }
    for i in 0..set.len() {
        let others: Vec<usize> = (0..set.len()).filter(|&k| k != i).collect();
        if others.is_empty() {
            break;
        }
        let gens: Vec<TropVector> = others.iter().map(|&k| set[k].clone()).collect();
        let certificate = span_membership(&set[i], &gens)?;
        if certificate.member {
            return Ok(Independence::Dependent { index: i, others, certificate });
        }
    }
    Ok(Independence::Independent)
}

/// Drops every generator that the others already span.
///
/// The span is unchanged by each removal, so a single pass suffices. The
/// result is the set of extremal generators, unique up to scaling and order.
pub fn minimal_generating_set(gens: &[TropVector]) -> Result<Vec<TropVector>> {
    let first = gens.first().ok_or(Error::EmptyInput("no generators"))?;
    for g in gens {
        ensure_dim(first.dim(), g.dim())?;
    }
    let mut kept: Vec<TropVector> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let others: Vec<TropVector> = kept.iter().chain(&gens[i + 1..]).cloned().collect();
        if others.is_empty() || !span_membership(g, &others)?.member {
            kept.push(g.clone());
        }
    }
    Ok(kept)
}

/// Mutual span inclusion.
pub fn spans_equal(a: &[TropVector], b: &[TropVector]) -> Result<bool> {
    for x in a {
        if !span_membership(x, b)?.member {
            return Ok(false);
        }
    }
    for x in b {
        if !span_membership(x, a)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}
