//! Truncated power series with exact rational coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Power series `c₀ + c₁h + … + c_D h^D` known modulo `h^{D+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the constant term");
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series of `h` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// `exp(a·h)` for rational `a`.
    pub fn exp_linear(a: &BigRational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        for i in 0..=order {
            if i > 0 {
                term = term * a / BigRational::from_integer(BigInt::from(i));
            }
            coeffs.push(term.clone());
        }
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops terms above `order` (which must not exceed the current order).
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch(order, self.order()));
        }
        Ok(QSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check(&self, other: &QSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &QSeries) -> Result<Self> {
        self.check(other)?;
        Ok(QSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &QSeries) -> Result<Self> {
        self.check(other)?;
        Ok(QSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &QSeries) -> Result<Self> {
        self.check(other)?;
        let d = self.order();
        let mut out = vec![BigRational::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(QSeries { coeffs: out })
    }

    pub fn neg(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.order();
        let mut inv = vec![BigRational::zero(); d + 1];
        inv[0] = c0.recip();
        for k in 1..=d {
            let mut s = BigRational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -s / c0;
        }
        Ok(QSeries { coeffs: inv })
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("QSeries[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "; O(h^{})]", self.order() + 1)
    }
}

/// Bivariate series `Σ c_{ij} x^i y^j` known for total degree `i + j ≤ D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    order: usize,
    // coeffs[i][j] for i + j <= order
    coeffs: Vec<Vec<BigRational>>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        let coeffs = (0..=order).map(|i| vec![BigRational::zero(); order - i + 1]).collect();
        BiSeries { order, coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0][0] = BigRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        if i + j > self.order {
            return BigRational::zero();
        }
        self.coeffs[i][j].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, c: BigRational) {
        assert!(i + j <= self.order);
        self.coeffs[i][j] = c;
    }

    /// Embeds a univariate series in `x` (`in_x = true`) or `y`.
    pub fn from_univariate(s: &QSeries, in_x: bool, order: usize) -> Self {
        let mut b = Self::zero(order);
        for k in 0..=order.min(s.order()) {
            let c = s.coeff(k);
            if in_x {
                b.coeffs[k][0] = c;
            } else {
                b.coeffs[0][k] = c;
            }
        }
        b
    }

    fn check(&self, other: &BiSeries) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &BiSeries) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiSeries) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &BiSeries) -> Result<Self> {
        self.check(other)?;
        let d = self.order;
        let mut out = Self::zero(d);
        for i1 in 0..=d {
            for j1 in 0..=d - i1 {
                let a = &self.coeffs[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=d - i1 - j1 {
                    for j2 in 0..=d - i1 - j1 - i2 {
                        let b = &other.coeffs[i2][j2];
                        if !b.is_zero() {
                            out.coeffs[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `y^p` as a series in `x`, through `x^{D-p}`.
    pub fn y_coefficient(&self, p: usize) -> Result<QSeries> {
        if p > self.order {
            return Err(Error::OrderMismatch(p, self.order));
        }
        Ok(QSeries::from_coeffs((0..=self.order - p).map(|i| self.coeffs[i][p].clone()).collect()))
    }

    /// Lowest total degree carrying a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        (0..=self.order).find(|&t| (0..=t).any(|i| !self.coeffs[i][t - i].is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn exp_inverse_roundtrip() {
        let e = QSeries::exp_linear(&r(1, 1), 6);
        let einv = QSeries::exp_linear(&r(-1, 1), 6);
        assert_eq!(e.inverse().unwrap(), einv);
        assert_eq!(e.mul(&einv).unwrap(), QSeries::one(6));
    }

    #[test]
    fn order_mixing_is_an_error() {
        let a = QSeries::one(3);
        let b = QSeries::one(4);
        assert_eq!(a.add(&b), Err(Error::OrderMismatch(3, 4)));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn bivariate_product() {
        let x = BiSeries::from_univariate(&QSeries::variable(4), true, 4);
        let y = BiSeries::from_univariate(&QSeries::variable(4), false, 4);
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.coeff(1, 1), r(1, 1));
        assert_eq!(xy.valuation(), Some(2));
        assert_eq!(xy.y_coefficient(1).unwrap().coeff(1), r(1, 1));
    }
}
