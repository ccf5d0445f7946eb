use std::f64::consts::PI;

use jonescope_core::borromean::*;
use jonescope_core::hypervol::{log_qfact_table, v8};
use jonescope_core::statesum::r_plus;
use jonescope_core::{ev_n, eval::eval_auto, EvalPoint, QLaurent};

#[test]
fn jones_polynomial_at_two() {
    // V(t) = -t³ + 3t² - 2t + 4 - 2t⁻¹ + 3t⁻² - t⁻³
    let v = QLaurent::from_terms([(12, -1i64), (8, 3), (4, -2), (0, 4), (-4, -2), (-8, 3), (-12, -1)]);
    assert_eq!(habiro_borromean(2).unwrap(), v);
}

#[test]
fn amphichiral() {
    for n in 1..=8 {
        let j = habiro_borromean(n).unwrap();
        assert_eq!(j.mirror(), j, "n={n}");
        assert!(j.is_whole(), "n={n}");
    }
}

#[test]
fn exact_matches_reduced() {
    for n in 2..=EXACT_MAX {
        let j = habiro_borromean(n).unwrap();
        let e = eval_auto(&j, &EvalPoint::root_of_unity(n as u64), 1e-12, 0.0);
        let r = reduced_eval(n).unwrap();
        assert!(e.value.im.abs() <= 1e-8 * e.value.re.abs() + e.error_bound, "n={n}");
        assert!(e.value.re > 0.0);
        let rel = (e.value.re.ln() - r).abs();
        assert!(rel <= 1e-8, "n={n}: {} vs {}", e.value.re.ln(), r);
    }
}

#[test]
fn z_products() {
    for n in 2..=200usize {
        let t = log_qfact_table(n);
        for k in 1..n - 1 {
            let prod = (t[k] + t[n - 1 - k]).exp();
            assert!((prod - n as f64).abs() < 1e-9 * n as f64, "n={n} k={k}");
        }
    }
}

#[test]
fn gamma_is_a_crossing_weight() {
    for n in 2..=14usize {
        let t = log_qfact_table(n);
        let lo = if n == 2 { 1 } else { n / 2 };
        for l in lo..n {
            let w = r_plus(n, l, n - 1 - l, 2 * l + 1 - n).unwrap();
            let want = ev_n(&w, n as u64).norm().ln();
            assert!((log_gamma(&t, n, l) - want).abs() < 1e-9, "n={n} l={l}");
        }
    }
}

#[test]
fn reduced_values_are_finite() {
    for n in (2..=5000).step_by(37) {
        let r = reduced_eval(n).unwrap();
        assert!(r.is_finite() && r > 0.0, "n={n}");
    }
}

#[test]
fn sandwich_bounds() {
    for n in [5usize, 8, 13, 40, 101, 256] {
        let s = sandwich(n).unwrap();
        assert!(s.holds(), "{s:?}");
        assert!(s.value <= s.upper_printed, "{s:?}");
    }
}

#[test]
fn volume_convergence() {
    assert!((2.0 * v8() - 7.3277247534177521).abs() < 1e-11);
    let rows = volume_scan(&[250, 500, 1000, 2000]).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].residual.abs() < w[0].residual.abs(), "{rows:?}");
    }
    let last = rows.last().unwrap();
    assert!(last.relative().abs() <= 0.05, "{last:?}");
    let e = borromean_eval(100, false).unwrap();
    assert!((e.normalized - 2.0 * PI * e.reduced / 100.0).abs() < 1e-15);
}
