//! Maximum-weight perfect matching via the Hungarian method with potentials.

use num_traits::{Signed, Zero};

use crate::scalar::{rat, Rational, TropScalar};

/// Optimal assignment on a square max-plus weight matrix.
///
/// Returns the optimum and the row→column permutation, or `None` when every
/// permutation hits a `−∞` entry.
pub(crate) fn max_weight_assignment(weights: &[Vec<TropScalar>]) -> Option<(Rational, Vec<usize>)> {
    // Forbidden entries get a finite penalty large enough that any
    // permutation using one loses against every fully finite permutation.
    let bound = weights
        .iter()
        .flatten()
        .filter_map(TropScalar::as_finite)
        .fold(rat(1), |acc, q| acc + q.abs());
    let penalty = bound * rat(2);
    let cost: Vec<Vec<Rational>> = weights
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| match w {
                    TropScalar::Finite(q) => -q,
                    _ => penalty.clone(),
                })
                .collect()
        })
        .collect();

    let assignment = hungarian_min(&cost);
    let mut value = Rational::zero();
    for (i, &j) in assignment.iter().enumerate() {
        match &weights[i][j] {
            TropScalar::Finite(q) => value += q,
            _ => return None,
        }
    }
    Some((value, assignment))
}

/// Classic O(n³) Hungarian algorithm for minimum-cost assignment.
fn hungarian_min(cost: &[Vec<Rational>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based indexing; column 0 is the virtual start.
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = &cost[i0 - 1][j - 1] - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("at least one free column remains");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[p[j] - 1] = j - 1;
    }
    assignment
}
