//! Sequences defined by linear q-difference equations
//! `Σ_j a_j(qⁿ, q) f_{n+j}(q) = 0`, and a priori bounds on their degrees and
//! l¹ norms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, ParseErrorKind, Result};
use crate::qlaurent::{QLaurent, Q1};

/// Integer polynomial in `(u, v)`, stored as `(u_exp, v_exp, coeff)` terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    pub terms: Vec<(i64, i64, BigInt)>,
}

impl BiPoly {
    pub fn new<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, i64, C)>) -> Self {
        let mut t: Vec<(i64, i64, BigInt)> = Vec::new();
        for (u, v, c) in terms {
            let c = c.into();
            match t.iter_mut().find(|x| x.0 == u && x.1 == v) {
                Some(x) => x.2 += c,
                None => t.push((u, v, c)),
            }
        }
        t.retain(|x| !x.2.is_zero());
        t.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        BiPoly { terms: t }
    }

    pub fn one() -> Self {
        BiPoly::new([(0, 0, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == 0 && self.terms[0].2.is_one()
    }

    /// `a(qⁿ, q)`.
    pub fn substitute(&self, n: i64) -> QLaurent {
        QLaurent::from_terms(self.terms.iter().map(|(u, v, c)| (Q1 * (u * n + v), c.clone())))
    }

    /// Sum of absolute coefficients.
    pub fn l1(&self) -> BigInt {
        self.terms.iter().map(|t| t.2.abs()).sum()
    }

    /// `max |u| + |v|` over the terms, so `|deg_± a(qⁿ, q)| ≤ slope·n` for `n ≥ 1`.
    pub fn slope(&self) -> u64 {
        self.terms.iter().map(|t| t.0.unsigned_abs() + t.1.unsigned_abs()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDiffEq {
    /// `a_0, …, a_d`.
    pub a: Vec<BiPoly>,
}

impl QDiffEq {
    pub fn new(a: Vec<BiPoly>) -> Result<Self> {
        match a.last() {
            None => Err(Error::Degenerate("empty recurrence".into())),
            Some(l) if l.is_zero() => Err(Error::Degenerate("leading coefficient a_d is zero".into())),
            Some(_) if a.len() < 2 => Err(Error::Degenerate("recurrence of order 0".into())),
            Some(_) => Ok(QDiffEq { a }),
        }
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn is_integral(&self) -> bool {
        self.a[self.order()].is_one()
    }

    /// `f_{n+1} = (1 + q^{n+1}) f_n`.
    pub fn sharpness() -> Self {
        QDiffEq { a: alloc::vec![BiPoly::new([(0, 0, -1), (1, 1, -1)]), BiPoly::one()] }
    }

    /// Parses the text form: the order `d` on the first line, then one line
    /// per `a_j` holding whitespace-separated `u,v,c` triples (`0` for the
    /// zero polynomial). `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, column: usize, message: String| Error::Parse {
            kind: ParseErrorKind::MalformedToken,
            line,
            column,
            message,
        };
        let (ln, first) = lines.next().ok_or_else(|| bad(1, 1, "missing order".into()))?;
        let d: usize = first.parse().map_err(|_| bad(ln, 1, format!("order `{first}` is not a natural number")))?;
        let mut a = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let (ln, line) = lines.next().ok_or_else(|| bad(ln + 1, 1, format!("missing a_{j}")))?;
            if line == "0" {
                a.push(BiPoly::default());
                continue;
            }
            let mut terms = Vec::new();
            let mut col = 1;
            for tok in line.split_whitespace() {
                let column = line[col - 1..].find(tok).map(|p| p + col).unwrap_or(col);
                col = column + tok.len();
                let parts: Vec<&str> = tok.split(',').collect();
                if parts.len() != 3 {
                    return Err(bad(ln, column, format!("expected u,v,c but found `{tok}`")));
                }
                let u: i64 = parts[0].parse().map_err(|_| bad(ln, column, format!("bad u exponent `{}`", parts[0])))?;
                let v: i64 = parts[1].parse().map_err(|_| bad(ln, column, format!("bad v exponent `{}`", parts[1])))?;
                let c: BigInt = parts[2].parse().map_err(|_| bad(ln, column, format!("bad coefficient `{}`", parts[2])))?;
                terms.push((u, v, c));
            }
            a.push(BiPoly::new(terms));
        }
        if let Some((ln, l)) = lines.next() {
            return Err(bad(ln, 1, format!("trailing line `{l}`")));
        }
        QDiffEq::new(a)
    }
}

impl fmt::Display for QDiffEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order())?;
        for a in &self.a {
            if a.is_zero() {
                writeln!(f, "0")?;
                continue;
            }
            let toks: Vec<String> = a.terms.iter().map(|(u, v, c)| format!("{u},{v},{c}")).collect();
            writeln!(f, "{}", toks.join(" "))?;
        }
        Ok(())
    }
}

/// `f_0, …, f_N` from the `d` initial values.
pub fn generate(eq: &QDiffEq, initials: &[QLaurent], n_max: usize) -> Result<Vec<QLaurent>> {
    let d = eq.order();
    if initials.len() != d {
        return Err(Error::Precondition(format!("order {d} recurrence needs {d} initial values, got {}", initials.len())));
    }
    let mut f: Vec<QLaurent> = initials.to_vec();
    let integral = eq.is_integral();
    while f.len() <= n_max {
        let n = f.len() - d;
        let mut rhs = QLaurent::zero();
        for j in 0..d {
            rhs -= &(&eq.a[j].substitute(n as i64) * &f[n + j]);
        }
        let next = if integral {
            rhs
        } else {
            let lead = eq.a[d].substitute(n as i64);
            if lead.is_zero() {
                return Err(Error::Inconsistent(format!("a_d(q^{n}, q) vanishes")));
            }
            rhs.exact_div(&lead)
                .map_err(|_| Error::Inconsistent(format!("f_{} is not a Laurent polynomial", n + d)))?
        };
        f.push(next);
    }
    f.truncate(n_max + 1);
    Ok(f)
}

/// Residuals `Σ_j a_j(qⁿ, q) f_{n+j}` for every `n` the data covers.
pub fn residuals(eq: &QDiffEq, f: &[QLaurent]) -> Vec<QLaurent> {
    let d = eq.order();
    (0..f.len().saturating_sub(d))
        .map(|n| (0..=d).map(|j| &eq.a[j].substitute(n as i64) * &f[n + j]).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundConstants {
    /// `|deg_±(f_n)| ≤ C′·max(n,1)²`, degrees in powers of `q`.
    pub c_prime: u64,
    /// `‖f_n‖₁ ≤ K·Cⁿ`; present for integral equations.
    pub c: Option<BigRational>,
    /// `max(1, ‖f_0‖₁, …)`; equals 1 when the initial norms are at most `Cⁿ`.
    pub k: Option<BigRational>,
}

impl BoundConstants {
    pub fn c_f64(&self) -> Option<f64> {
        self.c.as_ref().and_then(|c| c.to_f64())
    }
}

const DYADIC: u32 = 16;

fn dyadic_up(x: f64) -> BigRational {
    let den = BigInt::one() << DYADIC;
    let num = BigInt::from(libm::ceil(x * (1u64 << DYADIC) as f64) as i64);
    BigRational::new(num, den)
}

fn bump(c: &BigRational) -> BigRational {
    c + BigRational::new(BigInt::one(), BigInt::one() << DYADIC)
}

fn degree_q_ceil(quarters: i64) -> u64 {
    (quarters.unsigned_abs() + Q1 as u64 - 1) / Q1 as u64
}

/// Constants from the inductive proof of the bounds: `C′` dominates the
/// degree slopes of every `a_j(qⁿ, q)` and the initial degrees; `C` is the
/// positive root of `C^d = Σ_{j<d} c_j C^j` with `c_j = ‖a_j‖₁`, rounded up to
/// a multiple of `2^-16`, and at least `‖f_m‖₁^{1/m}` for `1 ≤ m < d`.
pub fn bound_constants(eq: &QDiffEq, initials: &[QLaurent]) -> Result<BoundConstants> {
    let d = eq.order();
    let base = generate(eq, initials, d)?;
    let mut c_prime = eq.a.iter().map(BiPoly::slope).max().unwrap_or(0);
    for (m, f) in base.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let w = (m.max(1) * m.max(1)) as u64;
        for deg in [f.deg_plus()?, f.deg_minus()?] {
            c_prime = c_prime.max(degree_q_ceil(deg).div_ceil(w));
        }
    }
    if !eq.is_integral() {
        return Ok(BoundConstants { c_prime, c: None, k: None });
    }
    let cs: Vec<BigRational> = eq.a[..d].iter().map(|a| BigRational::from_integer(a.l1())).collect();
    let excess = |c: &BigRational| -> BigRational {
        let mut rhs = BigRational::zero();
        let mut p = BigRational::one();
        for cj in &cs {
            rhs += cj * &p;
            p = &p * c;
        }
        p - rhs
    };
    // unique positive root of C^d - Σ c_j C^j by bisection in f64
    let cf: Vec<f64> = cs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    let g = |x: f64| -> f64 { libm::pow(x, d as f64) - cf.iter().enumerate().map(|(j, c)| c * libm::pow(x, j as f64)).sum::<f64>() };
    let mut hi = 1.0f64;
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut c = dyadic_up(hi.max(1.0));
    while excess(&c) < BigRational::zero() {
        c = bump(&c);
    }
    for (m, f) in base.iter().enumerate().take(d).skip(1) {
        let norm = BigRational::from_integer(f.l1());
        let mut cand = dyadic_up(libm::pow(f.l1_f64(), 1.0 / m as f64));
        while num_traits::pow(cand.clone(), m) < norm {
            cand = bump(&cand);
        }
        if cand > c {
            c = cand;
        }
    }
    let mut k = BigRational::one();
    let mut p = BigRational::one();
    for f in base.iter().take(d) {
        let r = BigRational::from_integer(f.l1()) / &p;
        if r > k {
            k = r;
        }
        p = &p * &c;
    }
    Ok(BoundConstants { c_prime, c: Some(c), k: Some(k) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub n: usize,
    /// In powers of `q`; `None` for the zero polynomial.
    pub deg_plus: Option<f64>,
    pub deg_minus: Option<f64>,
    pub l1: BigInt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub constants: BoundConstants,
    pub rows: Vec<BoundRow>,
}

/// Generates `f_0..f_N` and checks both bounds; a violation is an error.
pub fn verify_bounds(eq: &QDiffEq, initials: &[QLaurent], n_max: usize) -> Result<BoundReport> {
    let constants = bound_constants(eq, initials)?;
    let f = generate(eq, initials, n_max.max(eq.order().saturating_sub(1)))?;
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut cn = BigRational::one();
    for (n, fn_) in f.iter().enumerate().take(n_max + 1) {
        let mut row = BoundRow { n, deg_plus: None, deg_minus: None, l1: fn_.l1() };
        if !fn_.is_zero() {
            let cap = (Q1 as u64) * constants.c_prime * (n.max(1) * n.max(1)) as u64;
            let (dp, dm) = (fn_.deg_plus()?, fn_.deg_minus()?);
            if dp.unsigned_abs() > cap || dm.unsigned_abs() > cap {
                return Err(Error::Inconsistent(format!(
                    "degree bound fails at n = {n}: deg± = ({}, {}) > C′n² = {}",
                    dp as f64 / Q1 as f64,
                    dm as f64 / Q1 as f64,
                    cap / Q1 as u64
                )));
            }
            row.deg_plus = Some(dp as f64 / Q1 as f64);
            row.deg_minus = Some(dm as f64 / Q1 as f64);
        }
        if let (Some(c), Some(k)) = (&constants.c, &constants.k) {
            if BigRational::from_integer(row.l1.clone()) > k * &cn {
                return Err(Error::Inconsistent(format!("l¹ bound fails at n = {n}: ‖f_n‖₁ = {}", row.l1)));
            }
            cn = &cn * c;
        }
        rows.push(row);
    }
    Ok(BoundReport { constants, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution() {
        let a = BiPoly::new([(1, 1, 1), (0, 0, 1), (1, 1, 2)]);
        assert_eq!(a.substitute(3), QLaurent::from_terms([(0, 1i64), (16, 3)]));
        assert_eq!(a.l1(), BigInt::from(4));
        assert_eq!(a.slope(), 2);
        assert!(BiPoly::new([(2, 0, 1), (2, 0, -1)]).is_zero());
    }

    #[test]
    fn text_round_trip() {
        let e = QDiffEq::sharpness();
        let s = alloc::format!("{e}");
        assert_eq!(s, "1\n0,0,-1 1,1,-1\n0,0,1\n");
        assert_eq!(QDiffEq::parse(&s).unwrap(), e);
        let e2 = QDiffEq::parse("# comment\n2\n0\n1,0,3 0,-2,1  # a_1\n0,0,1\n").unwrap();
        assert_eq!(e2.order(), 2);
        assert!(e2.a[0].is_zero() && e2.is_integral());
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x", "1\n0,0,1\n", "1\n0,0\n0,0,1", "1\n0,0,1\n0,0,1\n7", "1\n0,0,1\n0"] {
            assert!(QDiffEq::parse(bad).is_err(), "{bad:?}");
        }
        match QDiffEq::parse("1\n0,0,1 0,z,1\n0,0,1") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 7)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dyadic_rounding() {
        let c = dyadic_up(2.0);
        assert_eq!(c, BigRational::from_integer(2.into()));
        assert!(dyadic_up(1.00001) > BigRational::one());
    }
}
