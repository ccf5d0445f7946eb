//! The functions `f_{K,n}(α) = J_{K,n}(e^{α/n})`: the loop expansion, its
//! comparison with the cyclotomic expansion, and finite-n growth checks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::CyclotomicExpansion;
use crate::diagram::MorseTangle;
use crate::error::{Error, Result};
use crate::eval::{equal_at_root, eval_auto, eval_complex, EvalPoint, Evaluation};
use crate::qlaurent::{QLaurent, Q1};
use crate::series::{BiSeries, QSeries};
use crate::statesum::colored_jones;

/// Largest loop-expansion order accepted by [`finite_type_table`].
pub const MAX_LOOP_ORDER: usize = 10;
/// Interpolation nodes beyond the `D + 1` a degree-`D` fit needs.
pub const EXTRA_NODES: usize = 3;

/// `f(e^{α/n})` for a given `f = J_{K,n}`, raising precision until the error
/// bound is below `1e-9·|value|` or `1e-12`.
pub fn f_eval(j: &QLaurent, n: usize, alpha: Complex64) -> Evaluation {
    eval_auto(j, &EvalPoint::general(alpha, n as u64), 1e-9, 1e-12)
}

/// `f_{K,n}(α)` from a diagram.
pub fn f_eval_knot(t: &MorseTangle, n: usize, alpha: Complex64) -> Result<Evaluation> {
    Ok(f_eval(&colored_jones(t, n)?, n, alpha))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopTable {
    pub knot: String,
    pub order: usize,
    /// `a[i][j] = a_{K,i,j}`, `0 ≤ j ≤ i ≤ order`.
    pub a: Vec<Vec<BigRational>>,
    /// `r[p] = R_{K,p}` through `x^{order-p}`.
    pub r: Vec<QSeries>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Coefficients in the monomial basis of the polynomial through
/// `(xs[i], ys[i])`, by Newton divided differences.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let m = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form
    let mut poly = vec![BigRational::zero(); m];
    for i in (0..m).rev() {
        let mut next = vec![BigRational::zero(); m];
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[d + 1] += c;
            next[d] -= c * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// The loop expansion to order `d`, from `J_{K,n}` at `n = 1..=d+1+EXTRA_NODES`.
/// Every `a_{K,i}(n)` must come out of degree at most `i`.
pub fn finite_type_table(knot: &str, t: &MorseTangle, d: usize) -> Result<LoopTable> {
    if d > MAX_LOOP_ORDER {
        return Err(Error::SizeCap(format!("loop order {d} above {MAX_LOOP_ORDER}")));
    }
    let nodes = d + 1 + EXTRA_NODES;
    let mut series = Vec::with_capacity(nodes);
    for n in 1..=nodes {
        series.push(colored_jones(t, n)?.to_series(d));
    }
    let xs: Vec<BigRational> = (1..=nodes as i64).map(rat).collect();
    let mut a = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let ys: Vec<BigRational> = series.iter().map(|s| s.coeff(i)).collect();
        let poly = interpolate(&xs, &ys);
        if let Some(j) = (i + 1..poly.len()).find(|&j| !poly[j].is_zero()) {
            return Err(Error::Inconsistent(format!(
                "a_{i}(n) has a nonzero n^{j} coefficient {}",
                poly[j]
            )));
        }
        a.push(poly[..=i].to_vec());
    }
    let r = (0..=d)
        .map(|p| QSeries::from_coeffs((0..=d - p).map(|j| a[j + p][j].clone()).collect()))
        .collect();
    Ok(LoopTable { knot: knot.into(), order: d, a, r })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    pub expected: QSeries,
    pub actual: QSeries,
    /// Orders where the coefficients differ.
    pub mismatches: Vec<usize>,
}

impl SeriesComparison {
    fn new(expected: QSeries, actual: QSeries) -> Self {
        let d = expected.order().min(actual.order());
        let mismatches = (0..=d).filter(|&i| expected.coeff(i) != actual.coeff(i)).collect();
        SeriesComparison { expected, actual, mismatches }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `R_{K,0}(x)` against the Taylor series of `1/Δ_K(e^x)`; `delta` is the
/// Alexander polynomial with `t = q`.
pub fn mmr_check(table: &LoopTable, delta: &QLaurent) -> Result<SeriesComparison> {
    let inv = delta.to_series(table.order).inverse()?;
    Ok(SeriesComparison::new(inv, table.r[0].clone()))
}

pub fn loop_p(table: &LoopTable, p: usize) -> Result<QSeries> {
    table.r.get(p).cloned().ok_or(Error::OrderMismatch(p, table.order))
}

/// A Laurent polynomial in `t` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLaurent {
    /// `(exponent of t, coefficient)`, nonzero coefficients only.
    pub terms: Vec<(i64, BigRational)>,
}

impl RationalLaurent {
    /// As a [`QLaurent`] in `q = t`, when every coefficient is an integer.
    pub fn to_qlaurent(&self) -> Option<QLaurent> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.push((Q1 * e, c.to_integer()));
        }
        Some(QLaurent::from_terms(out))
    }
}

/// Solves `A x = b` over the rationals; `None` when singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Recovers `P_{K,p}` from `R_{K,p}(x)·Δ_K(e^x)^{2p+1}` for `p ≤ 1`, trying
/// windows `t^{-w}..t^{w}` with at least one equation left over as a check.
/// Returns the first window with a consistent solution.
pub fn reconstruct_p(table: &LoopTable, delta: &QLaurent, p: usize) -> Result<RationalLaurent> {
    if p > 1 {
        return Err(Error::SizeCap(format!("P_(K,{p}) reconstruction is limited to p ≤ 1")));
    }
    let d = table.order - p;
    let dser = delta.to_series(d);
    let mut s = table.r[p].clone();
    for _ in 0..2 * p + 1 {
        s = s.mul(&dser)?;
    }
    // Σ_m c_m e^{mx}: coefficient of x^i times i! is Σ_m c_m m^i
    let mut moments = Vec::with_capacity(d + 1);
    let mut fact = BigRational::one();
    for i in 0..=d {
        if i > 0 {
            fact *= rat(i as i64);
        }
        moments.push(s.coeff(i) * &fact);
    }
    let mut w = 0usize;
    while 2 * w < d {
        let exps: Vec<i64> = (-(w as i64)..=w as i64).collect();
        let k = exps.len();
        let row = |i: usize| -> Vec<BigRational> {
            exps.iter().map(|&m| BigRational::from_integer(BigInt::from(m).pow(i as u32))).collect()
        };
        let a: Vec<Vec<BigRational>> = (0..k).map(row).collect();
        if let Some(c) = solve(a, moments[..k].to_vec()) {
            let ok = (k..=d).all(|i| {
                let lhs: BigRational = row(i).iter().zip(&c).map(|(x, y)| x * y).sum();
                lhs == moments[i]
            });
            if ok {
                let terms = exps.iter().zip(c).filter(|(_, c)| !c.is_zero()).map(|(e, c)| (*e, c)).collect();
                return Ok(RationalLaurent { terms });
            }
        }
        w += 1;
    }
    Err(Error::Inconsistent(format!(
        "no Laurent polynomial of span ≤ {} fits R_(K,{p})·Δ^{} to order {d}",
        2 * w.saturating_sub(1),
        2 * p + 1
    )))
}

/// Taylor series of `e^{mz}` as a bivariate series in `x` or `y`.
fn exp_bi(m: i64, in_x: bool, order: usize) -> BiSeries {
    BiSeries::from_univariate(&QSeries::exp_linear(&rat(m), order), in_x, order)
}

/// `c_k(x, y) = Π_{j=1}^{k} (e^x + e^{-x} - e^{jy} - e^{-jy})`.
pub fn c_k(k: usize, order: usize) -> Result<BiSeries> {
    let gx = exp_bi(1, true, order).add(&exp_bi(-1, true, order))?;
    let mut acc = BiSeries::one(order);
    for j in 1..=k as i64 {
        let gy = exp_bi(j, false, order).add(&exp_bi(-j, false, order))?;
        acc = acc.mul(&gx.sub(&gy)?)?;
    }
    Ok(acc)
}

/// Checks `R_{K,p}(x) = Σ_k d_{k,p}(x)` through `x^d`, where `d_{k,p}` is the
/// `y^p` coefficient of `c_k(x,y)·H_{K,k}(e^y)`. Needs `table.order ≥ d + p`
/// and `H_{K,k}` for `2k ≤ d + p`.
pub fn compare_loop_cyclotomic(
    table: &LoopTable,
    exp: &CyclotomicExpansion,
    p: usize,
    d: usize,
) -> Result<SeriesComparison> {
    let total = d + p;
    if table.order < total {
        return Err(Error::OrderMismatch(total, table.order));
    }
    let kmax = total / 2;
    if exp.h.len() <= kmax {
        return Err(Error::Precondition(format!("need H_0..H_{kmax}, have {}", exp.h.len())));
    }
    let mut sum = BiSeries::zero(total);
    for k in 0..=kmax {
        let h = BiSeries::from_univariate(&exp.h[k].to_series(total), false, total);
        sum = sum.add(&c_k(k, total)?.mul(&h)?)?;
    }
    let actual = sum.y_coefficient(p)?.truncate(d)?;
    let expected = table.r[p].truncate(d)?;
    Ok(SeriesComparison::new(expected, actual))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    pub value: Complex64,
    /// `(1/n) log|f_{K,n}(α)|`; `-∞` when the value vanishes.
    pub rate: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UpperBoundReport {
    pub alpha: Complex64,
    /// Constant added to the bound, fitted at `n = 2`.
    pub margin: f64,
    pub rows: Vec<GrowthRow>,
}

impl UpperBoundReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.rate <= r.bound + 1e-12)
    }
}

/// `(1/n) log|f_{K,n}(α)| ≤ c·log 4 + ((c+2+|ω|)/4)|Re α| + c·log(n)/n + margin`
/// for `1 ≤ n ≤ n_max`.
pub fn check_upper_bound(t: &MorseTangle, alpha: Complex64, n_max: usize) -> Result<UpperBoundReport> {
    if n_max > 30 {
        return Err(Error::SizeCap(format!("upper bound scan limited to n ≤ 30, got {n_max}")));
    }
    let s = t.stats();
    let c = s.c as f64;
    let base = |n: usize| {
        let nf = n as f64;
        c * libm::log(4.0)
            + (c + 2.0 + s.writhe.unsigned_abs() as f64) / 4.0 * alpha.re.abs()
            + c * libm::log(nf) / nf
    };
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let v = f_eval_knot(t, n, alpha)?.value;
        let rate = libm::log(v.norm()) / n as f64;
        rows.push(GrowthRow { n, value: v, rate, bound: base(n) });
    }
    let margin = rows.iter().find(|r| r.n == 2).map_or(0.0, |r| (r.rate - r.bound).max(0.0));
    for r in &mut rows {
        r.bound += margin;
    }
    Ok(UpperBoundReport { alpha, margin, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub value: Complex64,
    pub envelope: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Near1Report {
    pub m: usize,
    /// `value = J_{K,n+m}(e^{2πi/n})`; `envelope = log‖J_{K,m}‖₁ / n`.
    pub rows: Vec<ScanRow>,
    pub errors: Vec<f64>,
}

impl Near1Report {
    /// `(1/n) log|J_{K,n+m}(e^{2πi/n})|`.
    pub fn rates(&self) -> Vec<f64> {
        self.rows.iter().map(|r| libm::log(r.value.norm()) / r.n as f64).collect()
    }

    /// Every rate lies below its envelope, which decreases to 0.
    pub fn trends_to_zero(&self) -> bool {
        self.rows
            .iter()
            .zip(self.rates())
            .zip(&self.errors)
            .all(|((r, rate), err)| rate <= r.envelope + err / r.value.norm().max(1e-300) / r.n as f64 + 1e-12)
    }
}

/// `J_{K,n+m}` evaluated exactly at `e^{2πi/n}` for `1 ≤ n ≤ n_max`.
pub fn near1_scan(t: &MorseTangle, m: usize, n_max: usize) -> Result<Near1Report> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let l1 = colored_jones(t, m)?.l1_f64().max(1.0);
    let mut rows = Vec::with_capacity(n_max);
    let mut errors = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let j = colored_jones(t, n + m)?;
        let e = eval_auto(&j, &EvalPoint::root_of_unity(n as u64), 1e-12, 1e-14);
        rows.push(ScanRow { n, value: e.value, envelope: libm::log(l1) / n as f64 });
        errors.push(e.error_bound);
    }
    Ok(Near1Report { m, rows, errors })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Near2Row {
    pub n: usize,
    /// `f_{K,np}(2πi·p/m)` via `J_{K,n|p-m|}(e^{2πi/(nm)})`.
    pub value: Complex64,
    /// The same value from `J_{K,np}` itself, when `np ≤ direct_cap`.
    pub direct: Option<Complex64>,
    /// Whether `J_{K,np}` and `J_{K,n|p-m|}` agree exactly at the root.
    pub exact: Option<bool>,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Near2Report {
    pub p: usize,
    pub m: usize,
    /// `1/Δ_K(e^{2πi|p/m-1|})`.
    pub limit: Complex64,
    pub rows: Vec<Near2Row>,
}

impl Near2Report {
    /// Every direct value matches its reduced form, exactly and numerically.
    pub fn symmetry_holds(&self) -> bool {
        self.rows.iter().all(|r| {
            r.exact != Some(false)
                && r.direct.is_none_or(|d| (d - r.value).norm() <= 1e-8 * (1.0 + r.value.norm()))
        })
    }

    /// `sup |f|` over the second half of the scan is at most that over the
    /// first half plus `|limit|`, and the last value is closer to the limit
    /// than the first.
    pub fn bounded(&self) -> bool {
        let half = self.rows.len() / 2;
        if half == 0 {
            return true;
        }
        let sup = |rs: &[Near2Row]| rs.iter().map(|r| r.value.norm()).fold(0.0, f64::max);
        let (a, b) = self.rows.split_at(half);
        sup(b) <= sup(a) + self.limit.norm()
            && self.rows.last().map(|r| r.distance) <= self.rows.first().map(|r| r.distance)
    }
}

/// Scans `f_{K,np}(2πi·p/m)` for `1 ≤ n ≤ n_max`; `delta` is the Alexander
/// polynomial with `t = q`.
pub fn near2_scan(
    t: &MorseTangle,
    delta: &QLaurent,
    p: usize,
    m: usize,
    n_max: usize,
    direct_cap: usize,
) -> Result<Near2Report> {
    if p == 0 || m == 0 || p == m || p.gcd(&m) != 1 {
        return Err(Error::Precondition(format!("p = {p}, m = {m} must be unequal coprime positive integers")));
    }
    let gap = p.abs_diff(m);
    if 5 * gap > m {
        return Err(Error::Precondition(format!("|p/m - 1| = {gap}/{m} exceeds 1/5")));
    }
    let theta = 2.0 * core::f64::consts::PI * gap as f64 / m as f64;
    let limit = Complex64::new(1.0, 0.0)
        / eval_complex(delta, &EvalPoint::general(Complex64::new(0.0, theta), 1)).value;
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let point = EvalPoint::root_of_unity((n * m) as u64);
        let reduced = colored_jones(t, n * gap)?;
        let value = eval_auto(&reduced, &point, 1e-12, 1e-14).value;
        let (mut direct, mut exact) = (None, None);
        if n * p <= direct_cap {
            let j = colored_jones(t, n * p)?;
            direct = Some(eval_auto(&j, &point, 1e-12, 1e-14).value);
            exact = Some(equal_at_root(&j, &reduced, (n * m) as u64));
        }
        rows.push(Near2Row { n, value, direct, exact, distance: (value - limit).norm() });
    }
    Ok(Near2Report { p, m, limit, rows })
}

/// Rational numbers as `f64` for reports.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            let shift = (d.bits() as i64 - 60).max(0) as usize;
            let nn = (n.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
            let dd = (d >> shift).to_f64().unwrap_or(f64::INFINITY);
            if n.is_negative() {
                -nn / dd
            } else {
                nn / dd
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_cubic() {
        let xs: Vec<BigRational> = (1..=6).map(rat).collect();
        let ys: Vec<BigRational> = (1..=6i64).map(|x| rat(2 * x * x * x - x + 7)).collect();
        let p = interpolate(&xs, &ys);
        assert_eq!(p, vec![rat(7), rat(-1), rat(0), rat(2), rat(0), rat(0)]);
    }

    #[test]
    fn unknot_loop_table() {
        let t = MorseTangle::unknot();
        let table = finite_type_table("0_1", &t, 4).unwrap();
        assert_eq!(table.r[0], QSeries::one(4));
        assert!(table.r[1..].iter().all(QSeries::is_zero));
        assert!(mmr_check(&table, &QLaurent::one()).unwrap().passed());
    }

    #[test]
    fn c_k_valuation() {
        for k in 0..4 {
            assert_eq!(c_k(k, 8).unwrap().valuation(), Some(2 * k));
        }
    }
}
