use jonescope_core::{ev_n, qbinom, qfact, qfalling, qint, QLaurent};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::f64::consts::PI;

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-24i64..24, -5i64..6), 0..8).prop_map(QLaurent::from_terms)
}

fn nonzero() -> impl Strategy<Value = QLaurent> {
    laurent().prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn norm_is_submultiplicative(f in laurent(), g in laurent()) {
        prop_assert!((&f * &g).l1() <= f.l1() * g.l1());
        prop_assert!((&f + &g).l1() <= f.l1() + g.l1());
    }

    #[test]
    fn degrees_add(f in nonzero(), g in nonzero()) {
        let h = &f * &g;
        prop_assert_eq!(h.deg_plus().unwrap(), f.deg_plus().unwrap() + g.deg_plus().unwrap());
        prop_assert_eq!(h.deg_minus().unwrap(), f.deg_minus().unwrap() + g.deg_minus().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_round_trip(f in laurent(), g in nonzero()) {
        prop_assert_eq!((&f * &g).exact_div(&g).unwrap(), f);
    }

    #[test]
    fn series_is_multiplicative(f in laurent(), g in laurent()) {
        let lhs = (&f * &g).to_series(8);
        let rhs = f.to_series(8).mul(&g.to_series(8)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_constant_term_is_value_at_one(f in laurent()) {
        prop_assert_eq!(f.to_series(3).coeff(0), num_rational::BigRational::from_integer(f.at_one()));
    }

    #[test]
    fn json_round_trip(f in laurent()) {
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<QLaurent>(&s).unwrap(), f);
    }

    #[test]
    fn mirror_is_involution(f in laurent(), g in laurent()) {
        prop_assert_eq!(f.mirror().mirror(), f.clone());
        prop_assert_eq!((&f * &g).mirror(), &f.mirror() * &g.mirror());
    }
}

#[test]
fn quantum_integers() {
    let f = qint(5);
    let m = f.measures().unwrap();
    assert_eq!(m.l1, BigInt::from(2));
    assert_eq!((m.deg_plus, m.deg_minus), (10, -10));
    assert!(qint(0).is_zero());
    let sq = &qint(1) * &qint(1);
    assert_eq!(sq, QLaurent::from_terms([(4, 1i64), (0, -2), (-4, 1)]));
}

#[test]
fn binomials_and_factorials() {
    assert_eq!(qbinom(4, 2).unwrap().l1(), BigInt::from(6));
    for a in 0..=20 {
        for k in 0..=a {
            assert!(qfalling(a, k).unwrap().l1() <= BigInt::from(1) << k, "a={a} k={k}");
        }
    }
    assert_eq!(qfact(5).unwrap().exact_div(&qfact(3).unwrap()).unwrap(), qfalling(5, 2).unwrap());
    assert!(qint(1).exact_div(&qint(2)).is_err());
}

#[test]
fn roots_of_unity() {
    assert!((ev_n(&qfact(6).unwrap(), 7).norm() - 7.0).abs() < 1e-9);
    for n in 1..=100u64 {
        assert_eq!(ev_n(&QLaurent::one(), n), num_complex::Complex64::new(1.0, 0.0));
        for j in 0..=n as i64 {
            let want = 2.0 * (j as f64 * PI / n as f64).sin();
            assert!((ev_n(&qint(j), n).norm() - want.abs()).abs() < 1e-12, "n={n} j={j}");
        }
    }
}
