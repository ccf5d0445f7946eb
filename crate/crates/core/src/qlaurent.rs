//! Exact Laurent polynomials in `q^{1/4}` with arbitrary-precision integer
//! coefficients.
//!
//! Exponents are stored as integers counting quarter powers of `q`, so the
//! monomial `q^{3/2}` has exponent `6`. Values are kept in canonical form:
//! terms sorted by exponent, no zero coefficients. The empty term list is the
//! zero polynomial.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::QSeries;

/// Quarter-exponent of `q`: the value `e` stands for `q^{e/4}`.
pub type QExp = i64;

/// Exponent of `q^1` in quarter units.
pub const Q1: QExp = 4;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    terms: Vec<(QExp, BigInt)>,
}

/// Summary measures of a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measures {
    pub l1: BigInt,
    pub deg_plus: QExp,
    pub deg_minus: QExp,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coeff · q^{exp/4}`.
    pub fn monomial(exp: QExp, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        if c.is_zero() {
            Self::zero()
        } else {
            QLaurent { terms: vec![(exp, c)] }
        }
    }

    /// `q^{exp/4}`.
    pub fn q_quarter(exp: QExp) -> Self {
        Self::monomial(exp, 1)
    }

    /// Builds a canonical value from arbitrary (possibly repeated, possibly
    /// zero) terms.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (QExp, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<QExp, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        QLaurent { terms }
    }

    /// Builds from a dense coefficient vector whose entry `i` is the
    /// coefficient of `q^{(lo + i·step)/4}`.
    pub fn from_dense(lo: QExp, step: QExp, coeffs: Vec<BigInt>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + step * i as QExp, c))
            .collect();
        QLaurent { terms }
    }

    pub fn terms(&self) -> &[(QExp, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: QExp) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }

    /// `‖f‖₁` as a float (may be `inf` for astronomically large norms).
    pub fn l1_f64(&self) -> f64 {
        self.l1().to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn deg_plus(&self) -> Result<QExp> {
        self.terms.last().map(|t| t.0).ok_or(Error::ZeroPolynomial)
    }

    pub fn deg_minus(&self) -> Result<QExp> {
        self.terms.first().map(|t| t.0).ok_or(Error::ZeroPolynomial)
    }

    pub fn measures(&self) -> Result<Measures> {
        Ok(Measures {
            l1: self.l1(),
            deg_plus: self.deg_plus()?,
            deg_minus: self.deg_minus()?,
        })
    }

    /// True when every exponent is a whole power of `q`.
    pub fn is_whole(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.rem_euclid(Q1) == 0)
    }

    /// True when every exponent lies in `step · Z`.
    pub fn exponents_divisible_by(&self, step: QExp) -> bool {
        self.terms.iter().all(|(e, _)| e.rem_euclid(step) == 0)
    }

    /// Multiplies by `q^{shift/4}`.
    pub fn shift(&self, shift: QExp) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Multiplies by `± q^{shift/4}`.
    pub fn scale_unit(&self, shift: QExp, negate: bool) -> Self {
        QLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, if negate { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Substitutes `q ↦ q^{-1}`.
    pub fn mirror(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitutes `q^{1/4} ↦ q^{k/4}` (`k ≠ 0`), i.e. multiplies all
    /// exponents by `k`.
    pub fn scale_exponents(&self, k: QExp) -> Self {
        assert!(k != 0, "exponent scale must be nonzero");
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    /// Exact quotient `self / g`. Fails with [`Error::InexactDivision`] when
    /// `g` does not divide `self` in `Z[q^{±1/4}]`.
    pub fn exact_div(&self, g: &QLaurent) -> Result<QLaurent> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if g.len() == 1 {
            let (ge, gc) = &g.terms[0];
            let mut out = Vec::with_capacity(self.len());
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(gc);
                if !r.is_zero() {
                    return Err(Error::InexactDivision);
                }
                out.push((e - ge, q));
            }
            return Ok(QLaurent { terms: out });
        }
        let (f_lo, f_hi) = (self.terms[0].0, self.terms[self.len() - 1].0);
        let (g_lo, g_hi) = (g.terms[0].0, g.terms[g.len() - 1].0);
        let q_lo = f_lo - g_lo;
        let q_hi = f_hi - g_hi;
        if q_hi < q_lo {
            return Err(Error::InexactDivision);
        }
        // Dense long division from the top; all work happens on the exponent
        // lattice spanned by the two operands.
        let step = lattice_step(&[self, g]);
        let f_base = f_lo;
        let f_len = ((f_hi - f_lo) / step + 1) as usize;
        let mut rem: Vec<BigInt> = vec![BigInt::zero(); f_len];
        for (e, c) in &self.terms {
            if (e - f_base) % step != 0 {
                return Err(Error::InexactDivision);
            }
            rem[((e - f_base) / step) as usize] = c.clone();
        }
        let g_len = ((g_hi - g_lo) / step + 1) as usize;
        let mut gd: Vec<BigInt> = vec![BigInt::zero(); g_len];
        for (e, c) in &g.terms {
            if (e - g_lo) % step != 0 {
                return Err(Error::InexactDivision);
            }
            gd[((e - g_lo) / step) as usize] = c.clone();
        }
        let lead = gd[g_len - 1].clone();
        if f_len < g_len {
            return Err(Error::InexactDivision);
        }
        let q_len = f_len - g_len + 1;
        let mut quot: Vec<BigInt> = vec![BigInt::zero(); q_len];
        for qi in (0..q_len).rev() {
            let top = qi + g_len - 1;
            if rem[top].is_zero() {
                continue;
            }
            let (qc, r) = rem[top].div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (gi, gc) in gd.iter().enumerate() {
                if !gc.is_zero() {
                    rem[qi + gi] -= &qc * gc;
                }
            }
            quot[qi] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(QLaurent::from_dense(q_lo, step, quot))
    }

    /// Exact rational Taylor coefficients of `f(e^h)` through `h^order`.
    pub fn to_series(&self, order: usize) -> QSeries {
        // coefficient of h^i is Σ_e c_e (e/4)^i / i!
        let mut sums: Vec<BigInt> = vec![BigInt::zero(); order + 1];
        for (e, c) in &self.terms {
            let eb = BigInt::from(*e);
            let mut p = c.clone();
            for s in sums.iter_mut() {
                *s += &p;
                p *= &eb;
            }
        }
        let mut denom = BigInt::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for (i, s) in sums.into_iter().enumerate() {
            if i > 0 {
                denom *= BigInt::from(4 * i as i64);
            }
            coeffs.push(BigRational::new(s, denom.clone()));
        }
        QSeries::from_coeffs(coeffs)
    }

    /// Evaluation at `q^{1/4} = w` for a complex `w` in double precision.
    pub fn eval_at_quarter(&self, w: num_complex::Complex64) -> num_complex::Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let cf = c.to_f64().unwrap_or(f64::NAN);
                w.powi(*e as i32) * cf
            })
            .sum()
    }

    /// Renders with the variable name `var` and whole/quarter exponents.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let exp = fmt_quarter(*e);
            if *e == 0 {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                out.push_str(var);
                if exp != "1" {
                    out.push('^');
                    out.push_str(&exp);
                }
            }
        }
        out
    }
}

fn fmt_quarter(e: QExp) -> String {
    let g = e.gcd(&4);
    let (num, den) = (e / g, 4 / g);
    if den == 1 {
        if num < 0 {
            alloc::format!("({})", num)
        } else {
            alloc::format!("{}", num)
        }
    } else {
        alloc::format!("({}/{})", num, den)
    }
}

/// gcd of all exponent differences within each operand (at least 1).
fn lattice_step(ps: &[&QLaurent]) -> QExp {
    let mut g: QExp = 0;
    for p in ps {
        if let Some((e0, _)) = p.terms.first() {
            for (e, _) in &p.terms {
                g = g.gcd(&(e - e0));
            }
        }
    }
    if g == 0 {
        1
    } else {
        g
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("q"))
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({})", self)
    }
}

fn merge(a: &[(QExp, BigInt)], b: &[(QExp, BigInt)], negate_b: bool) -> Vec<(QExp, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Greater
        } else if j == b.len() {
            Ordering::Less
        } else {
            a[i].0.cmp(&b[j].0)
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn max_bits(p: &QLaurent) -> u64 {
    p.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
}

fn mul_impl(a: &QLaurent, b: &QLaurent) -> QLaurent {
    if a.is_zero() || b.is_zero() {
        return QLaurent::zero();
    }
    if a.len() == 1 {
        let (e, c) = &a.terms[0];
        return QLaurent { terms: b.terms.iter().map(|(f, d)| (e + f, c * d)).collect() };
    }
    if b.len() == 1 {
        return mul_impl(b, a);
    }
    let lo = a.terms[0].0 + b.terms[0].0;
    let hi = a.terms[a.len() - 1].0 + b.terms[b.len() - 1].0;
    let span = (hi - lo + 1) as usize;
    let dense_ok = span <= 8 * a.len() * b.len() + 64;
    let small = max_bits(a) + max_bits(b) + (64 - (a.len().min(b.len()) as u64).leading_zeros()) as u64;
    if dense_ok && small < 126 {
        let mut acc = vec![0i128; span];
        let b0 = b.terms[0].0;
        for (e, c) in &a.terms {
            let c = c.to_i128().expect("fits");
            let base = (e - a.terms[0].0) as usize;
            for (f, d) in &b.terms {
                acc[base + (f - b0) as usize] += c * d.to_i128().expect("fits");
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (lo + i as QExp, BigInt::from(c)))
            .collect();
        return QLaurent { terms };
    }
    if dense_ok {
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); span];
        let b0 = b.terms[0].0;
        for (e, c) in &a.terms {
            let base = (e - a.terms[0].0) as usize;
            for (f, d) in &b.terms {
                acc[base + (f - b0) as usize] += c * d;
            }
        }
        return QLaurent::from_dense(lo, 1, acc);
    }
    let mut map: BTreeMap<QExp, BigInt> = BTreeMap::new();
    for (e, c) in &a.terms {
        for (f, d) in &b.terms {
            *map.entry(e + f).or_default() += c * d;
        }
    }
    QLaurent { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

impl<'a> Add<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        QLaurent { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl<'a> Sub<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        QLaurent { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl<'a> Mul<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        mul_impl(self, rhs)
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: QLaurent) -> QLaurent {
        &self + &rhs
    }
}

impl Sub for QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: QLaurent) -> QLaurent {
        &self - &rhs
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: QLaurent) -> QLaurent {
        &self * &rhs
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(mut self) -> QLaurent {
        for t in self.terms.iter_mut() {
            t.1 = -core::mem::take(&mut t.1);
        }
        self
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -self.clone()
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl SubAssign<&QLaurent> for QLaurent {
    fn sub_assign(&mut self, rhs: &QLaurent) {
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

impl core::iter::Sum for QLaurent {
    fn sum<I: Iterator<Item = QLaurent>>(iter: I) -> QLaurent {
        let mut map: BTreeMap<QExp, BigInt> = BTreeMap::new();
        for p in iter {
            for (e, c) in p.terms {
                *map.entry(e).or_default() += c;
            }
        }
        QLaurent { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl From<i64> for QLaurent {
    fn from(c: i64) -> Self {
        QLaurent::monomial(0, c)
    }
}

// --- quantum combinatorics ---------------------------------------------------

/// Quantum integer `{n} = q^{n/2} - q^{-n/2}`.
pub fn qint(n: i64) -> QLaurent {
    if n == 0 {
        return QLaurent::zero();
    }
    QLaurent::from_terms([(2 * n, 1i64), (-2 * n, -1i64)])
}

/// Balanced quantum integer `[n] = {n}/{1}`.
pub fn qint_balanced(n: i64) -> QLaurent {
    if n == 0 {
        return QLaurent::zero();
    }
    let m = n.abs();
    let p = QLaurent::from_terms((0..m).map(|j| (2 * (m - 1) - 4 * j, 1i64)));
    if n < 0 {
        -p
    } else {
        p
    }
}

/// Quantum factorial `{n}! = {1}{2}…{n}`.
pub fn qfact(n: i64) -> Result<QLaurent> {
    if n < 0 {
        return Err(Error::OutOfRange(alloc::format!("qfact({n})")));
    }
    Ok((1..=n).fold(QLaurent::one(), |acc, j| &acc * &qint(j)))
}

/// Falling quantum factorial `{a}_b = {a}{a-1}…{a-b+1}`.
pub fn qfalling(a: i64, b: i64) -> Result<QLaurent> {
    if b < 0 || b > a {
        return Err(Error::OutOfRange(alloc::format!("qfalling({a}, {b})")));
    }
    Ok((a - b + 1..=a).fold(QLaurent::one(), |acc, j| &acc * &qint(j)))
}

/// Quantum binomial `{a}!/({b}!{a-b}!)`, a Laurent polynomial in `q^{1/2}`
/// with nonnegative coefficients.
pub fn qbinom(a: i64, b: i64) -> Result<QLaurent> {
    if a < 0 || b < 0 || b > a {
        return Err(Error::OutOfRange(alloc::format!("qbinom({a}, {b})")));
    }
    let b = b.min(a - b);
    // Pascal rule for balanced binomials:
    // [a, b] = q^{b/2} [a-1, b] + q^{-(a-b)/2} [a-1, b-1]
    let mut row: Vec<QLaurent> = vec![QLaurent::one()];
    for m in 1..=a {
        let width = (m.min(b) + 1) as usize;
        let mut next = Vec::with_capacity(width);
        for k in 0..width as i64 {
            let mut v = QLaurent::zero();
            if k < m && (k as usize) < row.len() {
                v += &row[k as usize].shift(2 * k);
            }
            if k >= 1 {
                v += &row[(k - 1) as usize].shift(-2 * (m - k));
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row[b as usize].clone())
}

// --- JSON schema ---------------------------------------------------------------

impl serde::Serialize for QLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<(QExp, String)> = self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        let mut st = s.serialize_struct("QLaurent", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for QLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            terms: Vec<(QExp, String)>,
        }
        let raw = Raw::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (e, c) in raw.terms {
            let v: BigInt = c
                .parse()
                .map_err(|_| serde::de::Error::custom(alloc::format!("bad coefficient {c:?}")))?;
            terms.push((e, v));
        }
        Ok(QLaurent::from_terms(terms))
    }
}

/// `|c|` as an unsigned big integer.
pub fn abs_uint(c: &BigInt) -> BigUint {
    match c.sign() {
        Sign::Minus => (-c).to_biguint().expect("nonneg"),
        _ => c.to_biguint().expect("nonneg"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> QLaurent {
        QLaurent::from_terms(terms.iter().copied())
    }

    #[test]
    fn zero_annihilates() {
        let f = p(&[(3, 2), (-5, -7)]);
        assert!((&QLaurent::zero() * &f).is_zero());
    }

    #[test]
    fn qint_one_squared() {
        let s = &qint(1) * &qint(1);
        assert_eq!(s, p(&[(4, 1), (0, -2), (-4, 1)]));
        assert_eq!(s.len(), 3);
        assert!(s.l1() <= BigInt::from(4));
    }

    #[test]
    fn qint_zero_and_measures() {
        assert!(qint(0).is_zero());
        let m = qint(5).measures().unwrap();
        assert_eq!(m.l1, BigInt::from(2));
        assert_eq!(m.deg_plus, 10);
        assert_eq!(m.deg_minus, -10);
        assert_eq!(QLaurent::zero().deg_plus(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn qbinom_values() {
        assert_eq!(qbinom(4, 2).unwrap().l1(), BigInt::from(6));
        for a in 0..12 {
            for b in 0..=a {
                let qb = qbinom(a, b).unwrap();
                let direct = qfact(a)
                    .unwrap()
                    .exact_div(&(&qfact(b).unwrap() * &qfact(a - b).unwrap()))
                    .unwrap();
                assert_eq!(qb, direct, "a={a} b={b}");
                assert!(qb.terms().iter().all(|(_, c)| c.is_positive()));
            }
        }
        assert!(qbinom(2, 3).is_err());
        assert!(qfact(-1).is_err());
        assert!(qfalling(2, 3).is_err());
    }

    #[test]
    fn falling_factorial_norm() {
        for a in 0..=20 {
            for k in 0..=a {
                let n = qfalling(a, k).unwrap().l1();
                assert!(n <= BigInt::from(1u64 << k));
            }
        }
    }

    #[test]
    fn exact_division_cases() {
        let f5 = qfact(5).unwrap();
        let f3 = qfact(3).unwrap();
        assert_eq!(f5.exact_div(&f3).unwrap(), qfalling(5, 2).unwrap());
        assert_eq!(qint(1).exact_div(&qint(2)), Err(Error::InexactDivision));
        assert_eq!(qint(2).exact_div(&qint(1)).unwrap(), qint_balanced(2));
        assert_eq!(qint(1).exact_div(&QLaurent::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn series_of_qint() {
        let s = qint(1).to_series(3);
        assert_eq!(s.coeff(0), BigRational::zero());
        assert_eq!(s.coeff(1), BigRational::one());
        assert_eq!(s.coeff(2), BigRational::zero());
        assert_eq!(s.coeff(3), BigRational::new(1.into(), 24.into()));
    }

    #[test]
    fn json_shape() {
        let f = p(&[(4, -3), (0, 1)]);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"terms":[[0,"1"],[4,"-3"]]}"#);
        let g: QLaurent = serde_json::from_str(&j).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(4, 1), (0, -2), (-4, 1)]).to_string(), "q - 2 + q^(-1)");
        assert_eq!(qint(1).to_string(), "q^(1/2) - q^(-1/2)");
    }
}
