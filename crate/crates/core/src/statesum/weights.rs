//! Crossing and extremum weights of the state sum.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::diagram::Sign;
use crate::error::{Error, Result};
use crate::qlaurent::{qbinom, qfalling, QExp, QLaurent};

/// Sign of the pivotal twist at extrema: a cap whose left strand points up
/// carries `q^{TURN·(n-1-2i)/2}` for arc color `i`.
pub const TURN: i64 = 1;

/// Sign of the framing correction: the unframed invariant is the state sum
/// times `q^{-FRAME·ω(n²-1)/4}`.
pub const FRAME: i64 = 1;

fn check(n: usize, ok: bool, what: &str, a: usize, b: usize, k: usize) -> Result<()> {
    if n == 0 || !ok {
        return Err(Error::OutOfRange(format!("{what}(n={n}, a={a}, b={b}, k={k})")));
    }
    Ok(())
}

/// Weight of a positive crossing whose lower-left strand has color `a`, the
/// lower-right strand color `b`; the outgoing colors are `b + k` (upper
/// left) and `a - k` (upper right).
pub fn r_plus(n: usize, a: usize, b: usize, k: usize) -> Result<QLaurent> {
    check(n, k <= a && b + k < n, "r_plus", a, b, k)?;
    let (ni, ai, bi, ki) = (n as i64, a as i64, b as i64, k as i64);
    let unit = ki * (ki - 1) + (ni - 1 - 2 * ai + 2 * ki) * (ni - 1 - 2 * bi - 2 * ki);
    let w = &qbinom(bi + ki, ki)? * &qfalling(ni - 1 + ki - ai, ki)?;
    Ok(w.shift(unit))
}

/// Weight of a negative crossing; the outgoing colors are `b - k` (upper
/// left) and `a + k` (upper right).
pub fn r_minus(n: usize, a: usize, b: usize, k: usize) -> Result<QLaurent> {
    check(n, k <= b && a + k < n, "r_minus", a, b, k)?;
    let (ni, ai, bi, ki) = (n as i64, a as i64, b as i64, k as i64);
    let unit = -ki * (ki - 1) - (ni - 1 - 2 * ai) * (ni - 1 - 2 * bi);
    let w = &qbinom(ai + ki, ki)? * &qfalling(ni - 1 + ki - bi, ki)?;
    Ok(w.scale_unit(unit, k % 2 == 1))
}

pub fn crossing_weight(sign: Sign, n: usize, a: usize, b: usize, k: usize) -> Result<QLaurent> {
    match sign {
        Sign::Pos => r_plus(n, a, b, k),
        Sign::Neg => r_minus(n, a, b, k),
    }
}

/// Quarter exponent of a weighted extremum for arc color `i`; `twist` as in
/// [`crate::diagram::Step::Turn`].
pub fn turn_exponent(n: usize, i: usize, twist: i8) -> QExp {
    2 * TURN * twist as i64 * (n as i64 - 1 - 2 * i as i64)
}

/// Quarter exponent of the framing correction for writhe `w`.
pub fn framing_exponent(n: usize, writhe: i64) -> QExp {
    let n = n as i64;
    -FRAME * writhe * (n * n - 1)
}

/// Coefficient ring used by the enumeration engines.
pub trait Coef: Clone + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    /// `acc += a·b`; `false` on overflow.
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> bool;
    /// `acc += a`; `false` on overflow.
    fn add(acc: &mut Self, a: &Self) -> bool;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| acc.checked_add(p)) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
    #[inline]
    fn add(acc: &mut Self, a: &Self) -> bool {
        match acc.checked_add(*a) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> bool {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *acc += a * b;
        }
        true
    }
    fn add(acc: &mut Self, a: &Self) -> bool {
        *acc += a;
        true
    }
}

/// Dense polynomial on a lattice of step 2: entry `i` is the coefficient of
/// `q^{(lo + 2i)/4}`.
#[derive(Clone, Debug)]
pub struct DPoly<C> {
    pub lo: QExp,
    pub c: Vec<C>,
}

impl<C: Coef> DPoly<C> {
    pub fn one() -> Self {
        DPoly { lo: 0, c: alloc::vec![C::from_big(&BigInt::one()).expect("one fits")] }
    }

    pub fn from_qlaurent(f: &QLaurent) -> Option<Self> {
        let terms = f.terms();
        let lo = terms.first()?.0;
        let hi = terms.last()?.0;
        if terms.iter().any(|(e, _)| (e - lo) % 2 != 0) {
            return None;
        }
        let mut c = alloc::vec![C::zero(); ((hi - lo) / 2 + 1) as usize];
        for (e, v) in terms {
            c[((e - lo) / 2) as usize] = C::from_big(v)?;
        }
        Some(DPoly { lo, c })
    }

    /// `out = self · w`; `false` on overflow.
    pub fn mul_into(&self, w: &DPoly<C>, out: &mut DPoly<C>) -> bool {
        out.lo = self.lo + w.lo;
        out.c.clear();
        out.c.resize(self.c.len() + w.c.len() - 1, C::zero());
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = &mut out.c[i..i + w.c.len()];
            for (o, b) in row.iter_mut().zip(&w.c) {
                if !C::mul_add(o, a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Growable dense accumulator on a step-2 lattice.
#[derive(Clone, Debug)]
pub struct Acc<C> {
    lo: QExp,
    c: Vec<C>,
}

impl<C: Coef> Default for Acc<C> {
    fn default() -> Self {
        Acc { lo: 0, c: Vec::new() }
    }
}

impl<C: Coef> Acc<C> {
    /// Adds `p · q^{shift/4}`; `false` on overflow.
    pub fn add(&mut self, p: &DPoly<C>, shift: QExp) -> bool {
        let lo = p.lo + shift;
        if self.c.is_empty() {
            self.lo = lo;
        }
        debug_assert!((lo - self.lo) % 2 == 0);
        if lo < self.lo {
            let pad = ((self.lo - lo) / 2) as usize;
            let mut c = alloc::vec![C::zero(); pad];
            c.append(&mut self.c);
            self.c = c;
            self.lo = lo;
        }
        let start = ((lo - self.lo) / 2) as usize;
        if start + p.c.len() > self.c.len() {
            self.c.resize(start + p.c.len(), C::zero());
        }
        for (o, v) in self.c[start..].iter_mut().zip(&p.c) {
            if !C::add(o, v) {
                return false;
            }
        }
        true
    }

    pub fn to_qlaurent(&self) -> QLaurent {
        QLaurent::from_dense(self.lo, 2, self.c.iter().map(C::to_big).collect())
    }
}

/// Crossing weights for one color dimension, indexed by `(sign, a, b, k)`
/// and built on first use from tables of binomials and falling factorials.
pub struct WeightTable<C> {
    n: usize,
    binom: Vec<Vec<QLaurent>>,
    fall: Vec<Vec<QLaurent>>,
    table: Vec<Option<Option<DPoly<C>>>>,
}

impl<C: Coef> WeightTable<C> {
    pub fn new(n: usize) -> Self {
        // binom[m][k] = qbinom(m, k), fall[t][k] = {t}_k for m, t < n
        let mut binom: Vec<Vec<QLaurent>> = Vec::with_capacity(n);
        for m in 0..n {
            let mut row = Vec::with_capacity(m + 1);
            for k in 0..=m {
                if k == 0 || k == m {
                    row.push(QLaurent::one());
                } else {
                    let prev: &Vec<QLaurent> = &binom[m - 1];
                    let v = &prev[k].shift(2 * k as QExp) + &prev[k - 1].shift(-2 * (m - k) as QExp);
                    row.push(v);
                }
            }
            binom.push(row);
        }
        let fall = (0..n)
            .map(|t| {
                let mut row = alloc::vec![QLaurent::one()];
                for k in 1..=t {
                    let v = &row[k - 1] * &crate::qlaurent::qint((t - k + 1) as i64);
                    row.push(v);
                }
                row
            })
            .collect();
        WeightTable { n, binom, fall, table: alloc::vec![None; 2 * n * n * n] }
    }

    fn compute(&self, sign: Sign, a: usize, b: usize, k: usize) -> Option<QLaurent> {
        let n = self.n as i64;
        let (ai, bi, ki) = (a as i64, b as i64, k as i64);
        match sign {
            Sign::Pos => {
                if k > a || b + k >= self.n {
                    return None;
                }
                let unit = ki * (ki - 1) + (n - 1 - 2 * ai + 2 * ki) * (n - 1 - 2 * bi - 2 * ki);
                let w = &self.binom[b + k][k] * &self.fall[self.n - 1 + k - a][k];
                Some(w.shift(unit))
            }
            Sign::Neg => {
                if k > b || a + k >= self.n {
                    return None;
                }
                let unit = -ki * (ki - 1) - (n - 1 - 2 * ai) * (n - 1 - 2 * bi);
                let w = &self.binom[a + k][k] * &self.fall[self.n - 1 + k - b][k];
                Some(w.scale_unit(unit, k % 2 == 1))
            }
        }
    }

    /// The weight, or `Err(())` when it does not fit the coefficient type.
    /// Panics on colors outside the valid range.
    pub fn get(&mut self, sign: Sign, a: usize, b: usize, k: usize) -> core::result::Result<&DPoly<C>, ()> {
        let n = self.n;
        let s = if sign == Sign::Pos { 0 } else { 1 };
        let idx = ((s * n + a) * n + b) * n + k;
        if self.table[idx].is_none() {
            let w = self.compute(sign, a, b, k).expect("colors in range have weights");
            self.table[idx] = Some(DPoly::from_qlaurent(&w));
        }
        self.table[idx].as_ref().and_then(Option::as_ref).ok_or(())
    }
}
