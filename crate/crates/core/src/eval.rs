//! Numeric evaluation of [`QLaurent`] values with error bounds.
//!
//! Root-of-unity points are reduced exactly first: with `q^{1/4} = ζ`,
//! `ζ^{2n} = -1`, so the exponents fold into `2n` integer residues before any
//! rounding happens. Precision above 53 bits switches to fixed-point big
//! integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::mpfix;
use crate::qlaurent::QLaurent;

/// Where to evaluate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EvalKind {
    /// `q^{1/4} = e^{iπ/(2n)}`, i.e. `q = e^{2πi/n}`.
    RootOfUnity { n: u64 },
    /// `q = e^{α/n}` with the principal branch `q^{1/4} = e^{α/(4n)}`.
    General { alpha: Complex64, n: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    pub kind: EvalKind,
    /// Working precision in binary digits.
    pub precision: u32,
}

pub const DEFAULT_PRECISION: u32 = 53;

impl EvalPoint {
    pub fn root_of_unity(n: u64) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        EvalPoint { kind: EvalKind::RootOfUnity { n }, precision: DEFAULT_PRECISION }
    }

    pub fn general(alpha: Complex64, n: u64) -> Self {
        assert!(n >= 1, "denominator must be positive");
        EvalPoint { kind: EvalKind::General { alpha, n }, precision: DEFAULT_PRECISION }
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision = bits.max(DEFAULT_PRECISION);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    /// Bound on `|computed - exact|`.
    pub error_bound: f64,
    pub precision: u32,
}

const EPS: f64 = f64::EPSILON / 2.0;

/// Folds exponents modulo `4n` with `ζ^{2n} = -1`; entry `r` is the exact
/// coefficient of `ζ^r`, `0 ≤ r < 2n`.
pub fn fold_root_of_unity(f: &QLaurent, n: u64) -> Vec<BigInt> {
    let half = 2 * n as i64;
    let mut c = vec![BigInt::zero(); half as usize];
    for (e, coeff) in f.terms() {
        let r = e.rem_euclid(2 * half);
        if r >= half {
            c[(r - half) as usize] -= coeff;
        } else {
            c[r as usize] += coeff;
        }
    }
    c
}

/// `f` at `q^{1/4} = e^{iπ/(2n)}` in double precision.
pub fn ev_n(f: &QLaurent, n: u64) -> Complex64 {
    eval_complex(f, &EvalPoint::root_of_unity(n)).value
}

pub fn eval_complex(f: &QLaurent, p: &EvalPoint) -> Evaluation {
    match p.kind {
        EvalKind::RootOfUnity { n } => eval_root(f, n, p.precision),
        EvalKind::General { alpha, n } => eval_general(f, alpha, n, p.precision),
    }
}

/// Evaluates with increasing precision until the error bound is below
/// `rel · |value|` or `abs`.
pub fn eval_auto(f: &QLaurent, p: &EvalPoint, rel: f64, abs: f64) -> Evaluation {
    let mut bits = p.precision;
    loop {
        let e = eval_complex(f, &EvalPoint { kind: p.kind, precision: bits });
        if e.error_bound <= rel * e.value.norm() || e.error_bound <= abs || bits >= 1 << 16 {
            return e;
        }
        bits = (bits * 2).max(128);
    }
}

/// Integer coefficients of the cyclotomic polynomial `Φ_m`, lowest degree first.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic index must be positive");
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::from(1);
    for d in (1..m).filter(|d| m % d == 0) {
        let q = cyclotomic_poly(d);
        p = div_monic(&p, &q).0;
    }
    p
}

/// Quotient and remainder by a monic divisor.
fn div_monic(f: &[BigInt], g: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for i in (dg..r.len()).rev() {
        let c = core::mem::take(&mut r[i]);
        if c.is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate().take(dg) {
            r[i - dg + j] -= &c * gj;
        }
        q[i - dg] = c;
    }
    r.truncate(dg);
    (q, r)
}

/// Whether `f` and `g` agree exactly at `q^{1/4} = e^{iπ/(2n)}`, decided in
/// `Z[ζ]` modulo the minimal polynomial of `ζ`.
pub fn equal_at_root(f: &QLaurent, g: &QLaurent, n: u64) -> bool {
    let d = &(f - g);
    if d.is_zero() {
        return true;
    }
    let folded = fold_root_of_unity(d, n);
    let (_, r) = div_monic(&folded, &cyclotomic_poly(4 * n));
    r.iter().all(Zero::is_zero)
}

fn eval_root(f: &QLaurent, n: u64, precision: u32) -> Evaluation {
    let folded = fold_root_of_unity(f, n);
    let terms = folded.iter().filter(|c| !c.is_zero()).count() as f64;
    let l1: f64 = folded.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum();
    if precision <= DEFAULT_PRECISION {
        let step = core::f64::consts::PI / (2 * n) as f64;
        let mut v = Complex64::new(0.0, 0.0);
        for (r, c) in folded.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let (s, co) = libm::sincos(step * r as f64);
            v += Complex64::new(co, s) * cf;
        }
        return Evaluation { value: v, error_bound: l1 * EPS * (terms + 4.0), precision };
    }
    let bits = precision + 32;
    let angle = mpfix::pi(bits) / BigInt::from(2 * n);
    let (c1, s1) = mpfix::cos_sin(&angle, bits);
    let (mut cr, mut sr) = (mpfix::one(bits), BigInt::zero());
    let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
    for c in folded.iter() {
        if !c.is_zero() {
            re += c * &cr;
            im += c * &sr;
        }
        let nc = mpfix::mul(&cr, &c1, bits) - mpfix::mul(&sr, &s1, bits);
        let ns = mpfix::mul(&cr, &s1, bits) + mpfix::mul(&sr, &c1, bits);
        cr = nc;
        sr = ns;
    }
    let value = Complex64::new(mpfix::to_f64(&re, bits), mpfix::to_f64(&im, bits));
    // each power carries at most ~4 units of 2^-bits per multiplication step
    let err = l1 * libm::exp2(-(bits as f64)) * (8.0 * (2 * n) as f64 + 8.0) + value.norm() * EPS * 2.0;
    Evaluation { value, error_bound: err, precision }
}

fn eval_general(f: &QLaurent, alpha: Complex64, n: u64, precision: u32) -> Evaluation {
    let w = alpha / (4 * n) as f64;
    if f.is_zero() {
        return Evaluation { value: Complex64::new(0.0, 0.0), error_bound: 0.0, precision };
    }
    let terms = f.len() as f64;
    if precision <= DEFAULT_PRECISION {
        let mut v = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (e, c) in f.terms() {
            let z = (w * *e as f64).exp();
            let cf = c.to_f64().unwrap_or(f64::NAN);
            v += z * cf;
            mag += cf.abs() * z.norm() * (1.0 + (*e as f64 * w).norm());
        }
        return Evaluation { value: v, error_bound: mag * EPS * (terms + 4.0), precision };
    }
    let bits = precision + 32;
    let wr = mpfix::from_f64(w.re, bits);
    let wi = mpfix::from_f64(w.im, bits);
    let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
    let mut mag = 0.0;
    for (e, c) in f.terms() {
        let eb = BigInt::from(*e);
        let x = &wr * &eb;
        let y = &wi * &eb;
        let m = mpfix::exp(&x, bits);
        let (co, si) = mpfix::cos_sin(&y, bits);
        re += c * mpfix::mul(&m, &co, bits);
        im += c * mpfix::mul(&m, &si, bits);
        mag += c.abs().to_f64().unwrap_or(f64::INFINITY) * (mpfix::to_f64(&m, bits) + 1.0);
    }
    let value = Complex64::new(mpfix::to_f64(&re, bits), mpfix::to_f64(&im, bits));
    let err = mag * libm::exp2(-(bits as f64)) * 64.0 + value.norm() * EPS * 2.0;
    Evaluation { value, error_bound: err, precision }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::{qfact, qint};

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| cyclotomic_poly(m).iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), [-1, 1]);
        assert_eq!(as_i64(4), [1, 0, 1]);
        assert_eq!(as_i64(12), [1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len(), 49);
        assert!(cyclotomic_poly(105).iter().any(|c| c == &BigInt::from(-2)));
    }

    #[test]
    fn exact_root_comparison() {
        // {n} vanishes at q = e^{2πi/n}; {j} and {n-j} agree there
        for n in 1..=12u64 {
            assert!(equal_at_root(&qint(n as i64), &QLaurent::zero(), n));
            for j in 1..n as i64 {
                assert!(equal_at_root(&qint(j), &qint(n as i64 - j), n));
                assert!(!equal_at_root(&qint(j), &QLaurent::zero(), n));
            }
        }
        assert!(!equal_at_root(&QLaurent::one(), &QLaurent::monomial(4, 1), 3));
    }

    #[test]
    fn unit_and_qint_at_roots() {
        for n in 1..=100u64 {
            assert_eq!(ev_n(&QLaurent::one(), n), Complex64::new(1.0, 0.0));
            for j in 0..=n as i64 {
                let v = ev_n(&qint(j), n).norm();
                let want = 2.0 * libm::sin(j as f64 * core::f64::consts::PI / n as f64);
                assert!((v - want.abs()).abs() < 1e-12, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn factorial_at_seventh_root() {
        let v = ev_n(&qfact(6).unwrap(), 7).norm();
        assert!((v - 7.0).abs() < 1e-9);
    }

    #[test]
    fn high_precision_agrees() {
        let f = &qfact(9).unwrap() * &qint(3);
        for n in [5u64, 11, 20] {
            let lo = eval_complex(&f, &EvalPoint::root_of_unity(n));
            let hi = eval_complex(&f, &EvalPoint::root_of_unity(n).with_precision(256));
            assert!((lo.value - hi.value).norm() <= lo.error_bound + hi.error_bound);
            assert!(hi.error_bound <= 4.0 * EPS * hi.value.norm() + 1e-60 * f.l1_f64());
        }
        let a = Complex64::new(0.7, -1.3);
        let lo = eval_complex(&f, &EvalPoint::general(a, 4));
        let hi = eval_complex(&f, &EvalPoint::general(a, 4).with_precision(200));
        assert!((lo.value - hi.value).norm() <= lo.error_bound + hi.error_bound);
    }
}
