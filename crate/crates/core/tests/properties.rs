mod common;

use common::*;
use dlpencil::eigenstructure::{full_eigenstructure, invariant_factors, minimal_basis};
use dlpencil::exactalg::{rat, Mat, Rat};
use dlpencil::genstruct::{generate, instance_seed, random_spec, SeededRng};
use dlpencil::mobius::{change_basis, mobius_transform, Mobius};
use dlpencil::pencil::{build_dl, transpose_law_holds, Ansatz, DLPencil};
use dlpencil::polymat::PolyMat;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn polymat(m: usize, n: usize, g: usize, vals: &[i64]) -> PolyMat {
    let mut it = vals.iter().cycle();
    let coeffs = (0..=g)
        .map(|_| Mat::from_fn(m, n, |_, _| rat(*it.next().unwrap())))
        .collect();
    PolyMat::new(coeffs).unwrap()
}

fn arb_poly() -> impl Strategy<Value = PolyMat> {
    (
        1usize..=3,
        1usize..=3,
        2usize..=3,
        prop::collection::vec(-3i64..=3, 36),
    )
        .prop_map(|(m, n, g, vals)| polymat(m, n, g, &vals))
}

fn arb_ansatz(k: usize) -> impl Strategy<Value = Ansatz> {
    prop::collection::vec(-3i64..=3, k)
        .prop_filter("nonzero", |w| w.iter().any(|x| *x != 0))
        .prop_map(|w| Ansatz::new(w.into_iter().map(rat).collect()).unwrap())
}

fn arb_pair() -> impl Strategy<Value = (PolyMat, Ansatz)> {
    arb_poly().prop_flat_map(|p| {
        let k = p.grade();
        (Just(p), arb_ansatz(k))
    })
}

fn arb_mobius() -> impl Strategy<Value = Mobius> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3).prop_filter_map("singular", |(a, b, c, d)| {
        Mobius::from_ints(a, b, c, d).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mobius_round_trip_scales_by_det_power(p in arb_poly(), r in arb_mobius()) {
        let g = p.grade();
        let there = mobius_transform(&p, g, &r).unwrap();
        let back = mobius_transform(&there, g, &r.inverse()).unwrap();
        let mut s = Rat::one();
        for _ in 0..g {
            s *= r.det();
        }
        prop_assert_eq!(back, p.scale(&s));
    }

    #[test]
    fn mobius_composition_is_contravariant(p in arb_poly(), r in arb_mobius(), s in arb_mobius()) {
        let g = p.grade();
        let lhs = mobius_transform(&p, g, &r.compose(&s)).unwrap();
        let rhs = mobius_transform(&mobius_transform(&p, g, &r).unwrap(), g, &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn change_basis_maps_vandermonde(r in arb_mobius(), k in 1usize..=5) {
        let b = change_basis(&r, k);
        for z in points(4) {
            let d = &r.c * &z + &r.d;
            if d.is_zero() {
                continue;
            }
            let w = (&r.a * &z + &r.b) / &d;
            let mut dk = Rat::one();
            for _ in 0..k - 1 {
                dk *= &d;
            }
            let lhs = b.mul_vec(&vandermonde_at(k, &z));
            let rhs: Vec<Rat> = vandermonde_at(k, &w).iter().map(|x| x * &dk).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn transpose_law((p, v) in arb_pair()) {
        prop_assert!(transpose_law_holds(&p, &v).unwrap());
    }

    #[test]
    fn contractions_and_round_trip((p, v) in arb_pair()) {
        let dl = build_dl(&p, &v).unwrap();
        dl.check_contractions(&p).unwrap();
        let again = DLPencil::from_pencil(dl.pencil.clone(), v.clone()).unwrap();
        prop_assert_eq!(again.recover_polynomial().unwrap(), p);
    }

    #[test]
    fn dl_is_linear_in_p((p, v) in arb_pair(), vals in prop::collection::vec(-2i64..=2, 36)) {
        let q = polymat(p.rows(), p.cols(), p.grade(), &vals);
        let sum = build_dl(&p.add(&q), &v).unwrap().pencil;
        let parts = build_dl(&p, &v).unwrap().pencil.add(&build_dl(&q, &v).unwrap().pencil);
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn dl_is_linear_in_v(p in arb_poly(), a in -3i64..=3, b in -3i64..=3) {
        let k = p.grade();
        let e = |i: usize| Ansatz::new((0..k).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).unwrap();
        prop_assume!(a != 0 || b != 0);
        let v = Ansatz::new((0..k).map(|j| rat(if j == 0 { a } else if j == 1 { b } else { 0 })).collect()).unwrap();
        let want = build_dl(&p, &e(0)).unwrap().pencil.scale(&rat(a)).add(&build_dl(&p, &e(1)).unwrap().pencil.scale(&rat(b)));
        prop_assert_eq!(build_dl(&p, &v).unwrap().pencil, want);
    }

    #[test]
    fn index_sum_and_oracles_on_arbitrary_polynomials(p in arb_poly()) {
        let e = full_eigenstructure(&p, &[rat(0), rat(1), rat(-1)]).unwrap();
        prop_assert_eq!(e.index_sum(), e.grade * e.rank);
        prop_assert_eq!(e.rank, normal_rank(&p));
        prop_assert_eq!(sorted(e.right.clone()), right_indices_by_nullity(&p));
        prop_assert_eq!(sorted(e.left.clone()), left_indices_by_nullity(&p));
        let fast: Vec<Coeffs> = invariant_factors(&p).unwrap().iter().map(spoly_coeffs).collect();
        prop_assert_eq!(fast, invariant_factors_by_minors(&p));
        prop_assert_eq!(sorted(e.infinite.clone()), infinite_mults_by_rank_profile(&p));
    }

    #[test]
    fn minimal_basis_passes_forney(p in arb_poly()) {
        let mb = minimal_basis(&p).unwrap();
        if mb.dim() > 0 {
            prop_assert!(forney_holds(&mb.basis));
            for z in points(3) {
                prop_assert!(eval_at(&p, &z).mul(&eval_at(&mb.basis, &z)).is_zero());
            }
        }
    }

    #[test]
    fn generator_is_reproducible(seed in any::<u64>()) {
        let s1 = random_spec(&mut SeededRng::new(seed), 3, 3, 3, seed);
        let s2 = random_spec(&mut SeededRng::new(seed), 3, 3, 3, seed);
        prop_assert_eq!(&s1, &s2);
        prop_assert_eq!(generate(&s1).unwrap(), generate(&s2).unwrap());
        prop_assert_eq!(s1.index_sum(), s1.grade * s1.rank);
        prop_assert_eq!(instance_seed(seed, 3), instance_seed(seed, 3));
        prop_assert_ne!(instance_seed(seed, 3), instance_seed(seed, 4));
    }
}
