//! Colored Jones polynomials of the Borromean rings from Habiro's formula,
//! and their growth at `q = e^{2πi/n}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypervol::{discrete_rmax, log_qfact_table, log_r_plus, predicted_argmax, v8};
use crate::qlaurent::{qbinom, qint, QLaurent};

/// Largest `n` accepted by [`habiro_borromean`].
pub const EXACT_MAX: usize = 40;

/// `J_{B,n}(q)` normalized by `[n]`.
///
/// Term `l` of the sum equals `(-1)^l {n+l choose 2l+1}³ {2l+1}! {l}!² / {n}`;
/// the numerators are generated by their ratio recurrence, added, and
/// divided by `{n}` once.
pub fn habiro_borromean(n: usize) -> Result<QLaurent> {
    if n == 0 || n > EXACT_MAX {
        return Err(Error::OutOfRange(alloc::format!("habiro_borromean needs 1 ≤ n ≤ {EXACT_MAX}, got {n}")));
    }
    let n = n as i64;
    let mut t = &qbinom(n, 1)?.pow(3) * &qint(1);
    let mut sum = t.clone();
    for l in 0..n - 1 {
        // t_{l+1} = t_l ({n+l+1}{n-l-1})³ {l+1}² / ({2l+2}{2l+3})²
        for j in [n + l + 1, n - l - 1] {
            for _ in 0..3 {
                t = times_qint(&t, j);
            }
        }
        t = times_qint(&times_qint(&t, l + 1), l + 1);
        for j in [2 * l + 2, 2 * l + 3] {
            for _ in 0..2 {
                t = t.exact_div(&qint(j))?;
            }
        }
        if l % 2 == 0 {
            sum -= &t;
        } else {
            sum += &t;
        }
    }
    sum.exact_div(&qint(n)).map_err(|_| Error::Inconsistent(alloc::format!("Borromean sum at n = {n} is not divisible by {{n}}")))
}

fn times_qint(f: &QLaurent, j: i64) -> QLaurent {
    &f.shift(2 * j) - &f.shift(-2 * j)
}

/// `log γ_l` with `γ_l = z_l² / (z_{n-1-l}² z_{2l+1-n})`, `z_k = ∏_{j≤k} 2 sin(jπ/n)`.
pub fn log_gamma(table: &[f64], n: usize, l: usize) -> f64 {
    2.0 * table[l] - 2.0 * table[n - 1 - l] - table[2 * l + 1 - n]
}

/// Summation range `n > l > n/2 - 1`.
fn l_range(n: usize) -> core::ops::Range<usize> {
    n / 2..n
}

/// `log J_{B,n}(e^{2πi/n})` as `log Σ n²γ_l²`, evaluated with log-sum-exp.
pub fn reduced_eval(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::OutOfRange(alloc::format!("reduced_eval needs n ≥ 2, got {n}")));
    }
    let table = log_qfact_table(n);
    Ok(reduced_from_table(&table, n))
}

fn reduced_from_table(table: &[f64], n: usize) -> f64 {
    let logs: Vec<f64> = l_range(n).map(|l| 2.0 * log_gamma(table, n, l)).collect();
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = logs.iter().map(|x| libm::exp(x - m)).sum();
    2.0 * libm::log(n as f64) + m + libm::log(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BorromeanEval {
    pub n: usize,
    /// Present for `n ≤ EXACT_MAX` when requested.
    pub exact: Option<QLaurent>,
    /// `log J_{B,n}(e^{2πi/n})`.
    pub reduced: f64,
    /// `(2π/n)·reduced`.
    pub normalized: f64,
}

pub fn borromean_eval(n: usize, with_exact: bool) -> Result<BorromeanEval> {
    let reduced = reduced_eval(n)?;
    let exact = if with_exact { Some(habiro_borromean(n)?) } else { None };
    Ok(BorromeanEval { n, exact, reduced, normalized: 2.0 * core::f64::consts::PI * reduced / n as f64 })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeRow {
    pub n: usize,
    pub normalized: f64,
    /// `normalized - 2v₈`.
    pub residual: f64,
}

impl VolumeRow {
    pub fn relative(&self) -> f64 {
        self.residual / (2.0 * v8())
    }
}

pub fn volume_scan(ns: &[usize]) -> Result<Vec<VolumeRow>> {
    ns.iter()
        .map(|&n| {
            let e = borromean_eval(n, false)?;
            Ok(VolumeRow { n, normalized: e.normalized, residual: e.normalized - 2.0 * v8() })
        })
        .collect()
}

/// The two sides of `n²γ²_{l*} < J_{B,n} < n³·max²` in the log domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sandwich {
    pub n: usize,
    pub lower: f64,
    pub value: f64,
    /// With the exhaustive maximum of `|ev_n R_+|`.
    pub upper: f64,
    /// With `|ev_n R_+|` at the printed argmax.
    pub upper_printed: f64,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower <= self.value && self.value <= self.upper
    }
}

/// `l* = ⌊(3n-3)/4⌋`.
pub fn sandwich(n: usize) -> Result<Sandwich> {
    let d = discrete_rmax(n)?;
    let table = log_qfact_table(n);
    let ln = libm::log(n as f64);
    let l = (3 * n - 3) / 4;
    let p = predicted_argmax(n);
    Ok(Sandwich {
        n,
        lower: 2.0 * ln + 2.0 * log_gamma(&table, n, l),
        value: reduced_from_table(&table, n),
        upper: 3.0 * ln + 2.0 * d.logmax,
        upper_printed: 3.0 * ln + 2.0 * log_r_plus(&table, p.0, p.1, p.2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn small_cases() {
        assert!(habiro_borromean(1).unwrap().is_one());
        for n in 1..=6 {
            assert_eq!(habiro_borromean(n).unwrap().at_one(), BigInt::from(n * n));
        }
        assert!(habiro_borromean(0).is_err());
        assert!(reduced_eval(1).is_err());
    }

    #[test]
    fn range_covers_nonvanishing_terms() {
        for n in 2..30 {
            let r = l_range(n);
            assert!(2 * r.start + 1 >= n && (r.start == 0 || 2 * (r.start - 1) + 1 < n));
        }
    }
}
