use jonescope_core::asymptotics::{
    check_upper_bound, compare_loop_cyclotomic, f_eval, f_eval_knot, finite_type_table, interpolate,
    loop_p, mmr_check, near1_scan, near2_scan, reconstruct_p,
};
use jonescope_core::corpus;
use jonescope_core::cyclotomic::habiro_h;
use jonescope_core::statesum::{alexander_poly, colored_jones};
use jonescope_core::{ev_n, QLaurent, QSeries};
use num_complex::Complex64;
use num_rational::BigRational;
use std::f64::consts::PI;

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Taylor coefficients of `1/(Σ_m c_m e^{mx})` computed directly from
/// the factorial recurrence, independent of the `QSeries` inverse.
fn inverse_exp_sum(terms: &[(i64, i64)], d: usize) -> Vec<BigRational> {
    let mut f = vec![rat(0, 1); d + 1];
    let mut fact = rat(1, 1);
    for (i, slot) in f.iter_mut().enumerate() {
        if i > 0 {
            fact = fact * rat(i as i64, 1);
        }
        let s: i64 = terms.iter().map(|(m, c)| c * m.pow(i as u32)).sum();
        *slot = rat(s, 1) / &fact;
    }
    let mut g = vec![rat(0, 1); d + 1];
    g[0] = rat(1, 1) / &f[0];
    for k in 1..=d {
        let mut s = rat(0, 1);
        for j in 1..=k {
            s += &f[j] * &g[k - j];
        }
        g[k] = -s / &f[0];
    }
    g
}

#[test]
fn f_eval_basics() {
    for name in corpus::KNOTS {
        let t = corpus::knot(name).unwrap();
        for n in 1..=5 {
            let v = f_eval_knot(&t, n, Complex64::new(0.0, 0.0)).unwrap().value;
            assert!((v - 1.0).norm() < 1e-9, "{name} n={n}");
        }
    }
    let u = corpus::knot("unknot").unwrap();
    let v = f_eval_knot(&u, 7, Complex64::new(0.3, 2.0)).unwrap().value;
    assert!((v - 1.0).norm() < 1e-12);
}

#[test]
fn f_eval_matches_root_of_unity_path() {
    let t = corpus::knot("5_2").unwrap();
    for n in 1..=8 {
        let j = colored_jones(&t, n).unwrap();
        let a = f_eval(&j, n, Complex64::new(0.0, 2.0 * PI));
        let b = ev_n(&j, n as u64);
        assert!((a.value - b).norm() <= a.error_bound + 1e-9 * j.l1_f64(), "n={n}");
    }
}

#[test]
fn trefoil_near_mmr_limit() {
    let t = corpus::knot("3_1").unwrap();
    let delta = alexander_poly(&corpus::pd("3_1").unwrap()).unwrap();
    let v = f_eval_knot(&t, 50, Complex64::new(0.1, 0.0)).unwrap().value;
    let e = 0.1f64.exp();
    let limit = 1.0 / (e - 1.0 + 1.0 / e);
    assert!((v.re - limit).abs() <= 0.1 * limit && v.im.abs() < 1e-9, "{v} vs {limit}");
    let _ = delta;
}

#[test]
fn loop_table_invariants() {
    let t = corpus::knot("3_1").unwrap();
    let table = finite_type_table("3_1", &t, 6).unwrap();
    assert_eq!(table.a[0][0], rat(1, 1));
    for i in 1..=6 {
        let at_one: BigRational = table.a[i].iter().cloned().sum();
        assert_eq!(at_one, rat(0, 1), "a_{i}(1)");
    }
    let xs: Vec<BigRational> = (1..=10).map(|n| rat(n, 1)).collect();
    for i in 0..=6 {
        let ys: Vec<BigRational> = (1..=10)
            .map(|n| colored_jones(&t, n as usize).unwrap().to_series(6).coeff(i))
            .collect();
        let p = interpolate(&xs, &ys);
        assert!(p[i + 1..].iter().all(|c| c == &rat(0, 1)), "i={i}");
    }
    let wider = finite_type_table("3_1", &t, 8).unwrap();
    assert_eq!(wider.r[0].truncate(6).unwrap(), table.r[0]);
}

#[test]
fn mmr_exact() {
    let cases: [(&str, &[(i64, i64)]); 3] = [
        ("3_1", &[(1, 1), (0, -1), (-1, 1)]),
        ("4_1", &[(1, -1), (0, 3), (-1, -1)]),
        ("5_2", &[(1, 2), (0, -3), (-1, 2)]),
    ];
    for (name, delta_terms) in cases {
        let t = corpus::knot(name).unwrap();
        let table = finite_type_table(name, &t, 8).unwrap();
        let delta = alexander_poly(&corpus::pd(name).unwrap()).unwrap();
        let report = mmr_check(&table, &delta).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.mismatches);
        let want = QSeries::from_coeffs(inverse_exp_sum(delta_terms, 8));
        assert_eq!(table.r[0], want, "{name}");
    }
}

#[test]
fn rozansky_numerators() {
    for name in ["3_1", "4_1"] {
        let t = corpus::knot(name).unwrap();
        let delta = alexander_poly(&corpus::pd(name).unwrap()).unwrap();
        let table = finite_type_table(name, &t, 8).unwrap();
        let p0 = reconstruct_p(&table, &delta, 0).unwrap();
        assert_eq!(p0.to_qlaurent(), Some(QLaurent::one()), "{name}");
    }
    let t = corpus::knot("3_1").unwrap();
    let delta = alexander_poly(&corpus::pd("3_1").unwrap()).unwrap();
    let p6 = reconstruct_p(&finite_type_table("3_1", &t, 6).unwrap(), &delta, 1).unwrap();
    let p8 = reconstruct_p(&finite_type_table("3_1", &t, 8).unwrap(), &delta, 1).unwrap();
    assert_eq!(p6, p8);
    let u = corpus::knot("unknot").unwrap();
    let table = finite_type_table("0_1", &u, 6).unwrap();
    assert!(loop_p(&table, 1).unwrap().is_zero());
    assert!(loop_p(&table, 2).unwrap().is_zero());
}

#[test]
fn loop_matches_cyclotomic() {
    let cases = [("0_1", 0, 4), ("4_1", 0, 6), ("3_1", 1, 5), ("3_1", 0, 6), ("5_2", 1, 4)];
    for (name, p, d) in cases {
        let t = corpus::knot(name).unwrap();
        let table = finite_type_table(name, &t, d + p).unwrap();
        let exp = habiro_h(name, &t, (d + p) / 2).unwrap();
        let r = compare_loop_cyclotomic(&table, &exp, p, d).unwrap();
        assert!(r.passed(), "{name} p={p}: {:?}", r.mismatches);
    }
}

#[test]
fn upper_bound_scans() {
    let t = corpus::knot("3_1").unwrap();
    let r = check_upper_bound(&t, Complex64::new(1.0, 0.0), 30).unwrap();
    assert!(r.passed(), "{:?}", r.rows.iter().find(|x| x.rate > x.bound));
    let t = corpus::knot("4_1").unwrap();
    let r = check_upper_bound(&t, Complex64::new(0.0, 2.0 * PI), 20).unwrap();
    assert!(r.passed());
    let r = check_upper_bound(&t, Complex64::new(1.0, 1.0), 12).unwrap();
    assert!(r.passed());
}

#[test]
fn near1_m1_is_one() {
    for name in ["3_1", "4_1"] {
        let t = corpus::knot(name).unwrap();
        let r = near1_scan(&t, 1, 15).unwrap();
        for row in &r.rows {
            assert!((row.value - 1.0).norm() < 1e-9, "{name} n={}", row.n);
        }
        assert!(r.trends_to_zero());
    }
}

#[test]
fn near1_trefoil_m2() {
    let t = corpus::knot("3_1").unwrap();
    let r = near1_scan(&t, 2, 40).unwrap();
    assert!(r.trends_to_zero());
    let j2 = colored_jones(&t, 2).unwrap();
    for row in &r.rows {
        let want = ev_n(&j2, row.n as u64);
        assert!((row.value - want).norm() < 1e-8, "n={}", row.n);
    }
}

#[test]
fn near2_trefoil() {
    let t = corpus::knot("3_1").unwrap();
    let delta = alexander_poly(&corpus::pd("3_1").unwrap()).unwrap();
    let r = near2_scan(&t, &delta, 9, 10, 12, 27).unwrap();
    assert!(r.symmetry_holds());
    assert!(r.rows.iter().filter(|x| x.exact == Some(true)).count() >= 3);
    assert!(r.bounded(), "{r:?}");
    let e = Complex64::new(0.0, PI / 5.0).exp();
    let want = 1.0 / (e - 1.0 + 1.0 / e);
    assert!((r.limit - want).norm() < 1e-12);
    assert!(near2_scan(&t, &delta, 3, 10, 4, 0).is_err());
    assert!(near2_scan(&t, &delta, 2, 4, 4, 0).is_err());
}
