mod common;

use common::*;
use fqdioph::cfrac::{cf_rational, cf_series, evaluate, CfStatus};
use fqdioph::linforms::{general_linear_forms, general_target, series_det, solve_gamma};
use fqdioph::oracle::{best_simultaneous, Element};
use fqdioph::poly::{enumerate_exact_degree, enumerate_points};
use fqdioph::quadform::{automorph, reduce_with_representation};
use fqdioph::transference::transfer;
use fqdioph::{Certainty, GammaInstance, LaurentSeries, Poly, Valuation};
use proptest::prelude::*;
use rand::Rng;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn divmod_reassembles(p in prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(p);
        let a = poly(&mut r, f, 6);
        let b = nonzero_poly(&mut r, f, 3);
        let (q, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &rem, a);
        prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn series_inverse_round_trip(p in prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(p);
        let s = series(&mut r, f, 20);
        let one = s.mul(&s.inv().unwrap());
        let n = one.prec().as_i64();
        prop_assert!(n >= 20 - 2 * 2 - 2);
        prop_assert!(one.agrees_below(&LaurentSeries::one(f), n));
    }

    #[test]
    fn product_valuation_adds(p in prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(p);
        let a = series(&mut r, f, 20);
        let b = series(&mut r, f, 20);
        prop_assert_eq!(a.mul(&b).valuation(), a.valuation().add(&b.valuation()));
    }

    #[test]
    fn surd_series_satisfies_its_equation(p in prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(p);
        let a = surd(&mut r, f, 1 + (seed % 2) as usize);
        let s = a.to_series(30).unwrap();
        // (Q x - P)^2 = D
        let lhs = s.mul_poly(a.q()).sub(&LaurentSeries::from_poly(a.p()));
        let sq = lhs.mul(&lhs);
        prop_assert!(sq.agrees_below(&LaurentSeries::from_poly(a.d()), sq.prec().as_i64()));
    }

    #[test]
    fn rational_expansion_reconstructs(p in prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(p);
        let x = rational(&mut r, f);
        let exp = cf_rational(&x);
        prop_assert_eq!(exp.status, CfStatus::CompleteRational);
        prop_assert_eq!(evaluate(&exp.quotients).unwrap(), x);
    }

    #[test]
    fn certified_series_quotients_match_exact(p in prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(p);
        let a = surd(&mut r, f, 1);
        let exact = fqdioph::cfrac::cf_surd(&a).unwrap();
        let approx = cf_series(&a.to_series(40).unwrap(), 12);
        prop_assert!(!approx.quotients.is_empty());
        for (k, q) in approx.quotients.iter().enumerate() {
            prop_assert_eq!(Some(q.clone()), exact.quotient(k));
        }
    }

    #[test]
    fn below_threshold_always_solvable(p in prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(p);
        let n = r.gen_range(1..=3usize);
        let a: Vec<Vec<LaurentSeries>> = (0..n).map(|_| (0..n).map(|_| series(&mut r, f, 50)).collect()).collect();
        let Some(vdet) = series_det(&a).valuation().exact() else { return Ok(()) };
        let mut t: Vec<i64> = (0..n).map(|_| r.gen_range(-1..=2)).collect();
        let rest: i64 = t[..n - 1].iter().sum();
        t[n - 1] = vdet + n as i64 - 1 - rest;
        let inst = GammaInstance::from_square(a, t).unwrap();
        let x = solve_gamma(&inst).unwrap();
        prop_assert!(x.is_some_and(|x| !x.is_zero() && inst.satisfies(&x)));
    }

    #[test]
    fn transfer_follows_general_solutions(p in prop::sample::select(vec![3u64, 5]), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(p);
        let n = r.gen_range(1..=2usize);
        let m = r.gen_range(1..=2usize);
        let h = r.gen_range(0..=2i64);
        let theta: Vec<Vec<LaurentSeries>> =
            (0..n).map(|_| (0..m).map(|_| surd(&mut r, f, 1).to_series(50).unwrap()).collect()).collect();
        let sol = general_linear_forms(&theta, h).unwrap();
        let cert = transfer(&theta, &sol.x, general_target(n, m, h), h).unwrap();
        prop_assert!(!cert.y.is_zero());
        for v in &cert.achieved {
            prop_assert_eq!(v.at_least(cert.d_exp), Certainty::Yes);
        }
    }

    #[test]
    fn reduction_invariants(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fp(5);
        let g = form(&mut r, f, 1, &[2]);
        let (a0, b0) = loop {
            let a0 = nonzero_poly(&mut r, f, 2);
            let b0 = poly(&mut r, f, 2);
            if a0.gcd(&b0).unwrap().is_one() {
                break (a0, b0);
            }
        };
        let red = reduce_with_representation(&g, &a0, &b0).unwrap();
        let [p0, q0, r0, s0] = &red.matrix;
        prop_assert!((&(p0 * s0) - &(q0 * r0)).is_one());
        prop_assert_eq!(red.form.discriminant(), g.discriminant());
        prop_assert_eq!(red.form.a(), &g.eval(&a0, &b0));
        prop_assert!(red.form.b().degree().is_none_or(|d| d < red.form.a().degree().unwrap()));
    }

    #[test]
    fn automorphs_fix_forms(p in prop::sample::select(vec![3u64, 5]), seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = form(&mut r, fp(p), 1, &[2]);
        let s = automorph(&g).unwrap();
        prop_assert!(s.det().is_one());
        prop_assert!(s.eta_exp >= 1);
        prop_assert_eq!(g.substitute(&s.a, &s.b, &s.c, &s.d).unwrap(), g);
    }
}

#[test]
fn degree_class_counts() {
    for p in [3u64, 5] {
        let f = fp(p);
        for d in 0..4usize {
            let expected = (p as usize - 1) * (p as usize).pow(d as u32);
            assert_eq!(enumerate_exact_degree(f, d).count(), expected);
        }
        // nonzero pairs of degree <= 1 up to scalars
        let q = p.pow(2) as usize;
        assert_eq!(enumerate_points(f, 2, 1).count(), (q * q - 1) / (p as usize - 1));
    }
}

#[test]
fn oracle_cells_recompute() {
    let mut r = rng(99);
    let f = fp(5);
    let theta = vec![
        Element::Series(surd(&mut r, f, 1).to_series(30).unwrap()),
        Element::Series(series(&mut r, f, 30)),
    ];
    let table = best_simultaneous(&theta, 3).unwrap();
    for row in &table {
        for w in &row.witnesses {
            let worst = theta
                .iter()
                .map(|t| t.norm(w).unwrap())
                .fold(Valuation::Infinite, |a, b| Valuation::min_bound([a, b]));
            let fqdioph::QExp::Finite(e) = row.best else { panic!() };
            assert_eq!(worst, Valuation::Exact(e));
        }
    }
    // same table regardless of thread count
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    assert_eq!(single.install(|| best_simultaneous(&theta, 3).unwrap()), table);
}

#[test]
fn poly_parse_round_trip() {
    let f = fp(7);
    let mut r = rng(5);
    for _ in 0..50 {
        let a = poly(&mut r, f, 5);
        assert_eq!(Poly::parse(f, &a.to_string()).unwrap(), a);
    }
}
