//! Fixed-point arbitrary-precision helpers: a value `x` is carried as the
//! integer `round(x · 2^bits)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn one(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// `a · b` rescaled.
pub fn mul(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a * b) >> bits
}

/// `a / b` rescaled.
pub fn div(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a << bits).div_floor(b)
}

/// Exact conversion of a finite double.
pub fn from_f64(x: f64, bits: u32) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let raw = x.to_bits();
    let sign = if raw >> 63 == 1 { -1 } else { 1 };
    let exp = ((raw >> 52) & 0x7ff) as i64;
    let frac = raw & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    let m = BigInt::from(mant) * sign;
    let shift = e + bits as i64;
    if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    }
}

pub fn to_f64(x: &BigInt, bits: u32) -> f64 {
    let keep = (x.bits() as i64 - 64).max(0);
    let top = (x >> keep as usize).to_f64().unwrap_or(0.0);
    top * libm::exp2((keep - bits as i64) as f64)
}

/// `atan(1/m)` by its alternating series.
fn atan_inv(m: u64, bits: u32) -> BigInt {
    let mm = BigInt::from(m * m);
    let mut power = one(bits) / BigInt::from(m);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &mm;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// π via Machin's formula.
pub fn pi(bits: u32) -> BigInt {
    let g = bits + 16;
    let v = atan_inv(5, g) * 16 - atan_inv(239, g) * 4;
    v >> 16
}

/// `ln 2 = Σ 1/(k 2^k)`.
pub fn ln2(bits: u32) -> BigInt {
    let g = bits + 16;
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    loop {
        let term = (one(g) >> k as usize) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    sum >> 16
}

/// `(cos θ, sin θ)` for a fixed-point angle.
pub fn cos_sin(theta: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let g = bits + 24;
    let t = theta << 24usize;
    let two_pi = pi(g) << 1usize;
    // reduce to [-π, π]
    let mut r = t.mod_floor(&two_pi);
    if r > (&two_pi >> 1usize) {
        r -= &two_pi;
    }
    // halve 8 times, Taylor, then double back
    let halvings = 8u32;
    let r = r >> halvings as usize;
    let r2 = mul(&r, &r, g);
    let mut c = one(g);
    let mut s = r.clone();
    let mut tc = one(g);
    let mut ts = r.clone();
    let mut k: u64 = 1;
    loop {
        tc = -mul(&tc, &r2, g) / BigInt::from((2 * k - 1) * (2 * k));
        ts = -mul(&ts, &r2, g) / BigInt::from((2 * k) * (2 * k + 1));
        if tc.is_zero() && ts.is_zero() {
            break;
        }
        c += &tc;
        s += &ts;
        k += 1;
    }
    for _ in 0..halvings {
        let s2 = mul(&s, &c, g) << 1usize;
        let c2 = mul(&c, &c, g) - mul(&s, &s, g);
        s = s2;
        c = c2;
    }
    (c >> 24usize, s >> 24usize)
}

/// `exp(x)` for a fixed-point real `x`. Large negative arguments underflow to
/// zero in absolute precision.
pub fn exp(x: &BigInt, bits: u32) -> BigInt {
    let g = bits + 24;
    let t = x << 24usize;
    let l2 = ln2(g);
    // x = m ln2 + r, |r| <= ln2
    let m = t.div_floor(&l2);
    let r = &t - &m * &l2;
    let r = r >> 8usize;
    let mut sum = one(g);
    let mut term = one(g);
    let mut k: u64 = 1;
    loop {
        term = mul(&term, &r, g) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..8 {
        sum = mul(&sum, &sum, g);
    }
    let m = m.to_i64().expect("exponent range");
    let v = if m >= 0 { sum << m as usize } else { sum >> (-m) as usize };
    v >> 24usize
}

pub fn abs_f64(x: &BigInt, bits: u32) -> f64 {
    to_f64(&x.abs(), bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let b = 200;
        assert!((to_f64(&pi(b), b) - core::f64::consts::PI).abs() < 1e-15);
        assert!((to_f64(&ln2(b), b) - core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn trig_and_exp() {
        let b = 160;
        for &x in &[0.3, -2.9, 7.5, 100.25] {
            let (c, s) = cos_sin(&from_f64(x, b), b);
            assert!((to_f64(&c, b) - libm::cos(x)).abs() < 1e-14, "{x}");
            assert!((to_f64(&s, b) - libm::sin(x)).abs() < 1e-14, "{x}");
        }
        for &x in &[0.0, 1.0, -3.5, 20.0] {
            let e = to_f64(&exp(&from_f64(x, b), b), b);
            assert!((e / libm::exp(x) - 1.0).abs() < 1e-14, "{x}");
        }
        // identity cos² + sin² = 1 to high precision
        let (c, s) = cos_sin(&from_f64(1.234, b), b);
        let r = mul(&c, &c, b) + mul(&s, &s, b) - one(b);
        assert!(r.abs() < (BigInt::one() << 10usize));
    }
}
