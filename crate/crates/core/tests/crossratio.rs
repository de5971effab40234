mod common;

use common::{as_opt, bracket_oracle, rand_rational, scalar_to_opt};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropgeom::crossratio::{bracket2, check_scalar_invariance, cross_ratio, cross_ratio_under, find_noninvariance_witness};
use tropgeom::linalg::{is_tropically_singular, tdet};
use tropgeom::{Error, Rational, TropMatrix, TropScalar, TropVector};

fn draw(rng: &mut ChaCha8Rng, neg_inf: u32) -> TropScalar {
    if neg_inf > 0 && rng.gen_ratio(1, neg_inf) {
        TropScalar::NegInf
    } else {
        TropScalar::Finite(rand_rational(rng, 30))
    }
}

fn vec2(rng: &mut ChaCha8Rng, neg_inf: u32) -> TropVector {
    TropVector::new(vec![draw(rng, neg_inf), draw(rng, neg_inf)])
}

fn opt_max(xs: impl IntoIterator<Item = Option<Rational>>) -> Option<Rational> {
    xs.into_iter().flatten().max()
}

fn opt_sum(xs: &[&Option<Rational>]) -> Option<Rational> {
    xs.iter().try_fold(Rational::from_integer(0.into()), |acc, x| x.as_ref().map(|v| acc + v))
}

/// `(a,b;c,d)` for finite integer vectors.
fn cross_ratio_oracle(q: [[i64; 2]; 4]) -> i64 {
    let br = |x: [i64; 2], y: [i64; 2]| (x[0] + y[1]).max(x[1] + y[0]);
    let [a, b, c, d] = q;
    br(a, c) + br(b, d) - br(a, d) - br(b, c)
}

fn apply_oracle(m: &[[Option<i64>; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    let row = |r: &[Option<i64>; 2]| (0..2).filter_map(|j| r[j].map(|x| x + v[j])).max().expect("nonsingular rows are nonempty");
    [row(&m[0]), row(&m[1])]
}

fn int_quads() -> impl Iterator<Item = [[i64; 2]; 4]> {
    (0..6561usize).map(|mut k| {
        let mut c = [0i64; 8];
        for x in &mut c {
            *x = (k % 3) as i64;
            k /= 3;
        }
        [[c[0], c[1]], [c[2], c[3]], [c[4], c[5]], [c[6], c[7]]]
    })
}

fn to_tvec(v: [i64; 2]) -> TropVector {
    TropVector::from_ints(&v)
}

#[test]
fn brackets_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for _ in 0..10_000 {
        let (a, b) = (vec2(&mut rng, 5), vec2(&mut rng, 5));
        assert_eq!(scalar_to_opt(&bracket2(&a, &b).unwrap().value), bracket_oracle(&as_opt(&a), &as_opt(&b)));
    }
}

#[test]
fn scalar_invariance_on_random_quadruples() {
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    let mut checked = 0;
    while checked < 10_000 {
        let quad: Vec<TropVector> = (0..4).map(|_| vec2(&mut rng, 12)).collect();
        let lambdas: Vec<TropScalar> = (0..4).map(|_| draw(&mut rng, 0)).collect();
        let q = [&quad[0], &quad[1], &quad[2], &quad[3]];
        match check_scalar_invariance(q, [&lambdas[0], &lambdas[1], &lambdas[2], &lambdas[3]]) {
            Ok(r) => {
                assert!(r.invariant, "{quad:?} {lambdas:?}");
                assert_eq!(r.original, r.scaled);
                checked += 1;
            }
            Err(e) => assert_eq!(e, Error::ZeroDenominator),
        }
    }
}

/// `[Ma, Mb] = tdet(M) ⊙ [a,b] ⊕ m₁m₃a₁b₁ ⊕ m₂m₄a₂b₂` with `M = (m₁ m₂; m₃ m₄)`.
#[test]
fn bracket_expansion_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    for _ in 0..10_000 {
        let m = TropMatrix::new(vec![vec![draw(&mut rng, 6), draw(&mut rng, 6)], vec![draw(&mut rng, 6), draw(&mut rng, 6)]]).unwrap();
        let (a, b) = (vec2(&mut rng, 8), vec2(&mut rng, 8));
        let (ma, mb) = (m.apply(&a).unwrap(), m.apply(&b).unwrap());
        let lhs = scalar_to_opt(&bracket2(&ma, &mb).unwrap().value);

        let e: Vec<Option<Rational>> = m.rows().iter().flat_map(|r| r.iter().map(scalar_to_opt)).collect();
        let (av, bv) = (as_opt(&a), as_opt(&b));
        let det = opt_max([opt_sum(&[&e[0], &e[3]]), opt_sum(&[&e[1], &e[2]])]);
        assert_eq!(det, scalar_to_opt(&tdet(&m).unwrap()));
        let rhs = opt_max([
            opt_sum(&[&det, &bracket_oracle(&av, &bv)]),
            opt_sum(&[&e[0], &e[2], &av[0], &bv[0]]),
            opt_sum(&[&e[1], &e[3], &av[1], &bv[1]]),
        ]);
        assert_eq!(lhs, rhs, "{m:?} {a:?} {b:?}");
    }
}

/// Every diagonal matrix adds the same constant to each bracket.
#[test]
fn diagonal_matrices_preserve_the_cross_ratio() {
    let ninf = TropScalar::NegInf;
    for (s, t) in [(0, 0), (3, 3), (-2, -2), (1, 4), (-5, 2)] {
        let m = TropMatrix::new(vec![vec![TropScalar::int(s), ninf.clone()], vec![ninf.clone(), TropScalar::int(t)]]).unwrap();
        for q in int_quads().step_by(7) {
            let quad = q.map(to_tvec);
            if let Ok((before, after)) = cross_ratio_under(&m, [&quad[0], &quad[1], &quad[2], &quad[3]]) {
                assert_eq!(before, after);
            }
        }
    }
    let id = TropMatrix::identity(2);
    for q in int_quads() {
        let quad = q.map(to_tvec);
        let (before, after) = cross_ratio_under(&id, [&quad[0], &quad[1], &quad[2], &quad[3]]).unwrap();
        assert_eq!(before, after);
    }
}

/// The search result is confirmed by an integer recomputation, and the
/// exhaustive grid over the same matrix contains it.
#[test]
fn witness_agrees_with_exhaustive_grid() {
    let w = find_noninvariance_witness(1, 100_000).unwrap();
    assert!(w.verify().unwrap());
    assert!(w.cases_examined <= 100_000);

    let entry = |s: &TropScalar| s.as_finite().map(|r| r.to_integer().try_into().unwrap());
    let rows = w.matrix.rows();
    let m = [[entry(&rows[0][0]), entry(&rows[0][1])], [entry(&rows[1][0]), entry(&rows[1][1])]];
    let int = |v: &TropVector| -> [i64; 2] { [0, 1].map(|i| v.coords()[i].as_finite().unwrap().to_integer().try_into().unwrap()) };
    let q = [int(&w.a), int(&w.b), int(&w.c), int(&w.d)];
    let before = cross_ratio_oracle(q);
    let after = cross_ratio_oracle(q.map(|v| apply_oracle(&m, v)));
    assert_ne!(before, after);
    assert_eq!(w.value_before, TropScalar::int(before));
    assert_eq!(w.value_after, TropScalar::int(after));

    let moved: Vec<_> = int_quads()
        .filter(|&q| cross_ratio_oracle(q) != cross_ratio_oracle(q.map(|v| apply_oracle(&m, v))))
        .collect();
    assert!(moved.contains(&q));
    // The library agrees with the oracle on every quadruple of the grid.
    for q in int_quads().step_by(5) {
        let quad = q.map(to_tvec);
        let (b, a) = cross_ratio_under(&w.matrix, [&quad[0], &quad[1], &quad[2], &quad[3]]).unwrap();
        assert_eq!(b != a, moved.contains(&q));
    }
}

#[test]
fn witness_search_errors() {
    assert!(matches!(find_noninvariance_witness(1, 0), Err(Error::PreconditionViolated(_))));
    match find_noninvariance_witness(1, 1) {
        Ok(w) => assert!(w.verify().unwrap()),
        Err(e) => assert_eq!(e, Error::BudgetExhausted(1)),
    }
    let a = find_noninvariance_witness(9, 100_000).unwrap();
    assert_eq!(a, find_noninvariance_witness(9, 100_000).unwrap());
    assert!(!is_tropically_singular(&a.matrix).unwrap());
}

proptest! {
    #[test]
    fn global_scaling_keeps_value(
        c in prop::collection::vec(-20i64..20, 8),
        t in -20i64..20,
    ) {
        let quad: Vec<TropVector> = c.chunks(2).map(TropVector::from_ints).collect();
        let r = cross_ratio(&quad[0], &quad[1], &quad[2], &quad[3]).unwrap();
        let s: Vec<TropVector> = quad.iter().map(|v| v.scaled(&TropScalar::int(t))).collect();
        prop_assert_eq!(cross_ratio(&s[0], &s[1], &s[2], &s[3]).unwrap().value, r.value.clone());
        let q = [[c[0], c[1]], [c[2], c[3]], [c[4], c[5]], [c[6], c[7]]];
        prop_assert_eq!(r.value, TropScalar::int(cross_ratio_oracle(q)));
    }
}
