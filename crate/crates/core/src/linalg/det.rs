use super::assignment::max_weight_assignment;
use super::TropMatrix;
use crate::error::Result;
use crate::scalar::{Convention, Rational, TropScalar};

/// Largest order for which permutations are enumerated.
pub const ENUMERATION_LIMIT: usize = 8;

/// Walks every permutation, returning the optimum and how many
/// permutations attain it (zero when all of them hit `−∞`).
fn enumerate(m: &TropMatrix) -> (TropScalar, usize) {
    struct Walk<'a> {
        rows: &'a [Vec<TropScalar>],
        used: Vec<bool>,
        best: Option<Rational>,
        count: usize,
    }

    impl Walk<'_> {
        fn go(&mut self, row: usize, partial: Rational) {
            if row == self.rows.len() {
                match &self.best {
                    Some(b) if partial < *b => {}
                    Some(b) if partial == *b => self.count += 1,
                    _ => {
                        self.best = Some(partial);
                        self.count = 1;
                    }
                }
                return;
            }
            for col in 0..self.rows.len() {
                if self.used[col] {
                    continue;
                }
                let TropScalar::Finite(q) = &self.rows[row][col] else { continue };
                self.used[col] = true;
                self.go(row + 1, &partial + q);
                self.used[col] = false;
            }
        }
    }

    let mut walk = Walk { rows: m.rows(), used: vec![false; m.nrows()], best: None, count: 0 };
    walk.go(0, Rational::default());
    match walk.best {
        Some(b) => (TropScalar::Finite(b), walk.count),
        None => (TropScalar::NegInf, 0),
    }
}

/// `max_σ Σ_i x_{iσ(i)}` by brute force over all `n!` permutations.
pub fn tdet_by_enumeration(m: &TropMatrix) -> Result<TropScalar> {
    m.require_square()?;
    m.check_max_plus()?;
    Ok(enumerate(m).0)
}

/// The same optimum via the assignment problem, in `O(n³)`.
pub fn tdet_by_assignment(m: &TropMatrix) -> Result<TropScalar> {
    m.require_square()?;
    m.check_max_plus()?;
    Ok(max_weight_assignment(m.rows()).map_or(TropScalar::NegInf, |(v, _)| TropScalar::Finite(v)))
}

/// Tropical determinant.
pub fn tdet(m: &TropMatrix) -> Result<TropScalar> {
    tdet_by_assignment(m)
}

pub fn tdet_in(conv: Convention, m: &TropMatrix) -> Result<TropScalar> {
    m.rows().iter().flatten().try_for_each(|c| conv.check(c))?;
    Ok(conv.from_max_plus(&tdet(&m.dualized(conv))?))
}

/// Number of optimal permutations. Only defined up to [`ENUMERATION_LIMIT`];
/// larger matrices return `None`.
pub fn optimal_permutation_count(m: &TropMatrix) -> Result<Option<usize>> {
    let n = m.require_square()?;
    m.check_max_plus()?;
    Ok((n <= ENUMERATION_LIMIT).then(|| enumerate(m).1))
}

/// True when `tdet` is `−∞` or its maximum is attained at least twice.
///
/// Small matrices count optimal permutations directly. Larger ones forbid
/// each edge of one optimal assignment in turn: a second optimum differs
/// from the first somewhere, so it survives one of those re-solves.
pub fn is_tropically_singular(m: &TropMatrix) -> Result<bool> {
    let n = m.require_square()?;
    m.check_max_plus()?;
    if n <= ENUMERATION_LIMIT {
        let (value, count) = enumerate(m);
        return Ok(value.is_neg_inf() || count >= 2);
    }
    let Some((best, perm)) = max_weight_assignment(m.rows()) else {
        return Ok(true);
    };
    let mut rows = m.rows().to_vec();
    for (i, &j) in perm.iter().enumerate() {
        let saved = std::mem::replace(&mut rows[i][j], TropScalar::NegInf);
        let tie = max_weight_assignment(&rows).is_some_and(|(v, _)| v == best);
        rows[i][j] = saved;
        if tie {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn is_tropically_singular_in(conv: Convention, m: &TropMatrix) -> Result<bool> {
    m.rows().iter().flatten().try_for_each(|c| conv.check(c))?;
    is_tropically_singular(&m.dualized(conv))
}
