mod common;

use common::{rand_finite_vector, rand_rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropgeom::collineation::{
    collineations_agree, coaxial_triples, coordinate_permutation, default_mu_samples, induced_collineation, is_semilinear,
    permutation_matrix, preserves_coaxiality, random_monomial_map, random_probe_classes, reconstruct_semilinear,
    reconstruct_semilinear_scaled, tp2_automorphism_suite, tp2_grid, Collineation, FnCollineation, ScalingAutomorphism,
    SemilinearMap, VectorMap,
};
use tropgeom::linalg::span_membership;
use tropgeom::projective::canonicalize;
use tropgeom::scalar::{rat, ratio};
use tropgeom::{Error, ProjPoint, Rational, TropMatrix, TropScalar, TropVector};

fn cls(c: &[i64]) -> ProjPoint {
    canonicalize(&TropVector::from_ints(c)).unwrap()
}

/// Coordinatewise difference of two finite vectors, if constant.
fn common_shift(a: &TropVector, b: &TropVector) -> Option<Option<Rational>> {
    let mut shift: Option<Rational> = None;
    for (x, y) in a.coords().iter().zip(b.coords()) {
        match (x, y) {
            (TropScalar::NegInf, TropScalar::NegInf) => {}
            (TropScalar::Finite(x), TropScalar::Finite(y)) => {
                let d = x - y;
                if shift.as_ref().is_some_and(|s| *s != d) {
                    return None;
                }
                shift = Some(d);
            }
            _ => return None,
        }
    }
    Some(shift)
}

/// Seeded probes for the semilinear axioms.
fn probes(n: usize, seed: u64, count: usize) -> Vec<(TropVector, TropVector, TropScalar)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut x = rand_finite_vector(&mut rng, n, 10);
            if rng.gen_ratio(1, 4) {
                let mut c = x.coords().to_vec();
                c[rng.gen_range(0..n)] = TropScalar::NegInf;
                x = TropVector::new(c);
            }
            (x, rand_finite_vector(&mut rng, n, 10), TropScalar::Finite(rand_rational(&mut rng, 10)))
        })
        .collect()
}

#[test]
fn monomial_maps_are_semilinear() {
    for seed in 0..10 {
        let f = random_monomial_map(3, seed);
        assert!(is_semilinear(&f, &f.mu, &probes(3, seed, 1000)).unwrap());
        let linear = SemilinearMap::linear(f.matrix.clone()).unwrap();
        assert!(is_semilinear(&linear, &ScalingAutomorphism::identity(), &probes(3, seed, 100)).unwrap());
    }
    let m = TropMatrix::new(vec![vec![TropScalar::int(0), TropScalar::int(0)], vec![TropScalar::NegInf, TropScalar::int(0)]]).unwrap();
    assert!(is_semilinear(&m, &ScalingAutomorphism::identity(), &probes(2, 5, 200)).unwrap());
    let doubled = ScalingAutomorphism::new(rat(2)).unwrap();
    let one = [(TropVector::from_ints(&[0, 0]), TropVector::from_ints(&[0, 0]), TropScalar::int(1))];
    assert!(!is_semilinear(&m, &doubled, &one).unwrap());
    assert!(matches!(is_semilinear(&m, &doubled, &probes(3, 1, 1)), Err(Error::DimensionMismatch { .. })));
    assert!(ScalingAutomorphism::new(rat(0)).is_err());
    assert!(ScalingAutomorphism::new(rat(-1)).is_err());
}

/// The induced map is well defined on classes.
#[test]
fn induced_collineation_respects_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(89);
    for seed in 0..10 {
        let f = random_monomial_map(4, seed);
        let sigma = induced_collineation(&f).unwrap();
        for _ in 0..100 {
            let x = rand_finite_vector(&mut rng, 4, 10);
            let alpha = TropScalar::Finite(rand_rational(&mut rng, 20));
            let direct = canonicalize(&f.map(&x).unwrap()).unwrap();
            assert_eq!(canonicalize(&f.map(&x.scaled(&alpha)).unwrap()).unwrap(), direct);
            assert_eq!(sigma.image(&canonicalize(&x).unwrap()).unwrap(), direct);
        }
    }
    let full = TropMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[2, 0, 0]]).unwrap();
    assert!(matches!(induced_collineation(&SemilinearMap::linear(full).unwrap()), Err(Error::NotInvertible(_))));
    let sigma = coordinate_permutation(&[1, 2, 0]).unwrap();
    for i in 0..3 {
        let e = canonicalize(&TropVector::unit(3, i)).unwrap();
        assert_eq!(sigma.image(&e).unwrap(), canonicalize(&TropVector::unit(3, (i + 1) % 3)).unwrap());
    }
}

/// Reconstruction reproduces the map up to a single global scalar.
#[test]
fn reconstruction_round_trip() {
    for n in [3, 4] {
        for seed in 0..20u64 {
            let f = random_monomial_map(n, 1000 * n as u64 + seed);
            let sigma = induced_collineation(&f).unwrap();
            let rec = reconstruct_semilinear(&sigma, n, &default_mu_samples()).unwrap();
            assert!(rec.all_lemmas_pass(), "{:?}", rec.ledger);
            assert_eq!(rec.mu_scale.as_ref(), Some(f.mu.factor()));
            let g = rec.to_semilinear_map().unwrap();
            let shifts: Vec<_> = (0..n).map(|j| common_shift(&g.matrix.column(j), &f.matrix.column(j)).unwrap()).collect();
            assert!(shifts.windows(2).all(|w| w[0] == w[1]), "{shifts:?}");
            let rebuilt = induced_collineation(&g).unwrap();
            let probe = random_probe_classes(n, 1000, seed);
            assert!(collineations_agree(&sigma, &rebuilt, &probe).unwrap());
        }
    }
}

/// Choosing another representative of `σ⟨e₁⟩` shifts every basis image by
/// the same amount, and the induced collineation does not change.
#[test]
fn reconstruction_ambiguity_is_one_scalar() {
    for seed in 0..10 {
        let f = random_monomial_map(3, seed);
        let sigma = induced_collineation(&f).unwrap();
        let base = reconstruct_semilinear(&sigma, 3, &default_mu_samples()).unwrap();
        for shift in [rat(3), ratio(-7, 2)] {
            let moved = reconstruct_semilinear_scaled(&sigma, 3, &default_mu_samples(), &shift).unwrap();
            for (a, b) in moved.basis_images.iter().zip(&base.basis_images) {
                assert_eq!(a, &b.scaled(&TropScalar::Finite(shift.clone())));
            }
            assert_eq!(moved.mu_table, base.mu_table);
            let (g, h) = (moved.to_semilinear_map().unwrap(), base.to_semilinear_map().unwrap());
            let probes = random_probe_classes(3, 300, seed + 50);
            assert!(collineations_agree(&induced_collineation(&g).unwrap(), &induced_collineation(&h).unwrap(), &probes).unwrap());
        }
    }
}

#[test]
fn mu_table_is_additive_and_multiplicative() {
    for seed in 0..20 {
        let f = random_monomial_map(3, 300 + seed);
        let rec = reconstruct_semilinear(&induced_collineation(&f).unwrap(), 3, &default_mu_samples()).unwrap();
        for lemma in &rec.ledger {
            assert!(lemma.passed && lemma.checked > 0, "{lemma:?}");
        }
        // Direct check of the table against the scaling it should encode.
        for s in &rec.mu_table {
            assert_eq!(s.mu, f.mu.apply(&s.c));
        }
        for a in &rec.mu_table {
            for b in &rec.mu_table {
                if let Some(sum) = rec.mu_table.iter().find(|m| m.c == a.c.oplus(&b.c)) {
                    assert_eq!(sum.mu, a.mu.oplus(&b.mu));
                }
                if let Some(prod) = rec.mu_table.iter().find(|m| m.c == a.c.otimes(&b.c)) {
                    assert_eq!(prod.mu, a.mu.otimes(&b.mu));
                }
            }
        }
    }
}

#[test]
fn reconstruction_examples() {
    let id = induced_collineation(&SemilinearMap::linear(TropMatrix::identity(3)).unwrap()).unwrap();
    let rec = reconstruct_semilinear(&id, 3, &default_mu_samples()).unwrap();
    assert_eq!(rec.to_semilinear_map().unwrap().matrix, TropMatrix::identity(3));
    assert!(rec.mu_table.iter().all(|m| m.mu == m.c));

    let rot = coordinate_permutation(&[1, 2, 0]).unwrap();
    let rec = reconstruct_semilinear(&rot, 3, &default_mu_samples()).unwrap();
    assert_eq!(rec.to_semilinear_map().unwrap().matrix, permutation_matrix(&[1, 2, 0]).unwrap());

    assert!(matches!(reconstruct_semilinear(&id, 2, &[]), Err(Error::PreconditionViolated(_))));
    assert!(matches!(reconstruct_semilinear(&id, 4, &[]), Err(Error::DimensionMismatch { .. })));
}

/// A map that doubles one coordinate of the canonical representative is
/// not induced by any semilinear map; reconstruction refutes it.
#[test]
fn reconstruction_refutes_non_semilinear_maps() {
    let warp = FnCollineation::new(3, |p: &ProjPoint| {
        let c = p.rep().coords();
        canonicalize(&TropVector::new(vec![c[0].clone(), ScalingAutomorphism::new(rat(2)).unwrap().apply(&c[1]), c[2].clone()]))
    });
    match reconstruct_semilinear(&warp, 3, &default_mu_samples()) {
        Ok(rec) => assert!(!rec.all_lemmas_pass(), "{:?}", rec.ledger),
        Err(e) => assert!(matches!(e, Error::NoSolution(_) | Error::AmbiguousSolution(_)), "{e}"),
    }
}

#[test]
fn semilinear_maps_preserve_coaxiality() {
    let grid = tp2_grid();
    let triples = coaxial_triples(&grid).unwrap();
    assert!(!triples.is_empty());
    for seed in 0..5 {
        let sigma = induced_collineation(&random_monomial_map(3, 500 + seed)).unwrap();
        assert!(preserves_coaxiality(&sigma, &triples).unwrap());
    }
    // Every triple really is coaxial, checked against the raw span test.
    for [l1, l2, l3] in triples.iter().step_by(97) {
        assert!(span_membership(l1.rep(), &[l2.rep().clone(), l3.rep().clone()]).unwrap().member);
    }
}

/// Swapping `[0,0,0]` with `[0,1,2]` breaks `[0,0,0] ∈ span{e₁, (−∞,0,0)}`.
#[test]
fn swapping_two_classes_breaks_coaxiality() {
    let (p, q) = (cls(&[0, 0, 0]), cls(&[0, 1, 2]));
    let swap = FnCollineation::new(3, move |x: &ProjPoint| {
        Ok(if *x == p {
            q.clone()
        } else if *x == q {
            p.clone()
        } else {
            x.clone()
        })
    });
    let e1 = canonicalize(&TropVector::unit(3, 0)).unwrap();
    let rest = canonicalize(&TropVector::new(vec![TropScalar::NegInf, TropScalar::int(0), TropScalar::int(0)])).unwrap();
    let triple = [cls(&[0, 0, 0]), e1.clone(), rest];
    assert!(!preserves_coaxiality(&swap, &[triple]).unwrap());
    let bad = [cls(&[0, 1, 2]), e1, cls(&[0, 0, 0])];
    assert!(matches!(preserves_coaxiality(&swap, &[bad]), Err(Error::PreconditionViolated(_))));
}

#[test]
fn tp2_permutations_are_automorphisms() {
    let report = tp2_automorphism_suite().unwrap();
    let mut diffs = std::collections::BTreeSet::new();
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                diffs.insert((b - a, c - a));
            }
        }
    }
    assert_eq!(report.grid_classes, diffs.len());
    assert_eq!(report.permutations.len(), 6);
    assert!(report.all_pass, "{report:?}");
    for r in &report.permutations {
        assert!(r.bijective_on_grid && r.preserves_coaxiality && r.reconstructed);
    }
}
