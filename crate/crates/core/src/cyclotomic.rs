//! Habiro's cyclotomic expansion `J_{K,n} = Σ_k C_{n,k} H_{K,k}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::diagram::MorseTangle;
use crate::error::{Error, Result};
use crate::eval::{eval_complex, EvalPoint};
use crate::qlaurent::{qbinom, qfact, qint, QLaurent, Q1};
use crate::statesum::colored_jones;

/// `C_{n,k} = Π_{j=1}^{k} (q^n + q^{-n} - q^j - q^{-j})`.
pub fn kernel_c(n: i64, k: usize) -> QLaurent {
    let mut acc = QLaurent::one();
    for j in 1..=k as i64 {
        let f = QLaurent::from_terms([(Q1 * n, 1i64), (-Q1 * n, 1), (Q1 * j, -1), (-Q1 * j, -1)]);
        acc = &acc * &f;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicExpansion {
    pub knot: String,
    /// `H_{K,0..=m}`.
    pub h: Vec<QLaurent>,
    /// `J_{K,1..=m+1}` used to derive `h`.
    pub source_j: Vec<QLaurent>,
}

/// True when `f ∈ Z[q^{±1}]`.
pub fn is_integral(f: &QLaurent) -> bool {
    f.is_whole()
}

/// `H_{K,n}` from `J_{K,1..=n+1}` (`js[k-1] = J_{K,k}`), dividing by
/// `{2n+2}!` once at the end.
pub fn habiro_h_single(js: &[QLaurent], n: usize) -> Result<QLaurent> {
    if js.len() < n + 1 {
        return Err(Error::Precondition(format!("H_{n} needs J_1..J_{}", n + 1)));
    }
    let ni = n as i64;
    let mut sum = QLaurent::zero();
    for k in 1..=ni + 1 {
        let coeff = &(&qint(2 * k) * &qint(k)) * &qbinom(2 * ni + 2, ni + 1 - k)?;
        let term = &coeff * &js[(k - 1) as usize];
        if (ni + 1 - k) % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
    }
    let h = sum.exact_div(&qfact(2 * ni + 2)?).map_err(|e| match e {
        Error::InexactDivision => {
            Error::Inconsistent(format!("H_{n}: Σ is not divisible by {{2n+2}}!"))
        }
        other => other,
    })?;
    if !is_integral(&h) {
        return Err(Error::Inconsistent(format!("H_{n} has fractional powers of q")));
    }
    Ok(h)
}

/// `H_{K,0..=m}` from given values `J_{K,1..=m+1}`.
pub fn habiro_h_from_j(knot: &str, js: Vec<QLaurent>, m: usize) -> Result<CyclotomicExpansion> {
    let h = (0..=m).map(|n| habiro_h_single(&js, n)).collect::<Result<Vec<_>>>()?;
    Ok(CyclotomicExpansion { knot: knot.into(), h, source_j: js })
}

/// `H_{K,0..=m}` with the colored Jones values from the state sum.
pub fn habiro_h(knot: &str, t: &MorseTangle, m: usize) -> Result<CyclotomicExpansion> {
    let js = (1..=m + 1).map(|n| colored_jones(t, n)).collect::<Result<Vec<_>>>()?;
    habiro_h_from_j(knot, js, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructReport {
    pub n: usize,
    pub sum: QLaurent,
    /// `Σ C_{n,k} H_k − J_{K,n}`; zero on success.
    pub difference: QLaurent,
}

impl ReconstructReport {
    pub fn passed(&self) -> bool {
        self.difference.is_zero()
    }
}

/// Compares `Σ_{k<n} C_{n,k} H_{K,k}` with `j_n`.
pub fn reconstruct(exp: &CyclotomicExpansion, n: usize, j_n: &QLaurent) -> Result<ReconstructReport> {
    if n == 0 || exp.h.len() < n {
        return Err(Error::Precondition(format!(
            "reconstruction at n = {n} needs H_0..H_{}",
            n.saturating_sub(1)
        )));
    }
    let mut sum = QLaurent::zero();
    for (k, h) in exp.h.iter().enumerate().take(n) {
        sum += &(&kernel_c(n as i64, k) * h);
    }
    let difference = &sum - j_n;
    Ok(ReconstructReport { n, sum, difference })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCRow {
    pub n: usize,
    /// Degrees in whole powers of `q`.
    pub deg_plus: f64,
    pub deg_minus: f64,
    pub l1: f64,
}

/// Fitted constants of `|deg_± H_{K,n}| ≤ A₀ n²` and `‖H_{K,n}‖₁ ≤ A₁ⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCReport {
    pub a0: f64,
    pub a1: f64,
    pub rows: Vec<BoundCRow>,
}

/// Minimal constants over `1 ≤ n ≤ m` (the `n = 0` term is 1 for every knot).
pub fn check_bound_c(exp: &CyclotomicExpansion) -> Result<BoundCReport> {
    let mut rows = Vec::new();
    let (mut a0, mut a1) = (0.0f64, 1.0f64);
    for (n, h) in exp.h.iter().enumerate() {
        let m = h.measures()?;
        let row = BoundCRow {
            n,
            deg_plus: m.deg_plus as f64 / Q1 as f64,
            deg_minus: m.deg_minus as f64 / Q1 as f64,
            l1: m.l1.to_f64().unwrap_or(f64::INFINITY),
        };
        if n >= 1 {
            let nf = n as f64;
            a0 = a0.max(row.deg_plus.abs() / (nf * nf)).max(row.deg_minus.abs() / (nf * nf));
            a1 = a1.max(libm::pow(row.l1, 1.0 / nf));
        }
        rows.push(row);
    }
    Ok(BoundCReport { a0, a1, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub n: usize,
    pub m: usize,
    pub m_prime: usize,
    pub lhs: num_complex::Complex64,
    pub rhs: num_complex::Complex64,
    pub delta: f64,
    pub tolerance: f64,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.delta <= self.tolerance
    }
}

fn eval_root(f: &QLaurent, n: usize) -> crate::eval::Evaluation {
    let mut p = EvalPoint::root_of_unity(n as u64);
    if f.l1_f64() > 1e12 {
        p = p.with_precision(665);
    }
    eval_complex(f, &p)
}

/// `J_{K,m}` and `J_{K,m'}` at `q = e^{2πi/n}` for `m ≡ ±m' (mod n)`.
pub fn symmetry_eval(t: &MorseTangle, n: usize, m: usize, m_prime: usize) -> Result<SymmetryReport> {
    if n == 0 || m == 0 || m_prime == 0 {
        return Err(Error::Precondition("n, m, m' must be positive".into()));
    }
    if (m + n - m_prime % n) % n != 0 && (m + m_prime) % n != 0 {
        return Err(Error::Precondition(format!("{m} ≢ ±{m_prime} (mod {n})")));
    }
    let jm = colored_jones(t, m)?;
    let jp = if m == m_prime { jm.clone() } else { colored_jones(t, m_prime)? };
    Ok(compare_at_root(&jm, &jp, n, m, m_prime))
}

fn compare_at_root(jm: &QLaurent, jp: &QLaurent, n: usize, m: usize, m_prime: usize) -> SymmetryReport {
    let (l, r) = (eval_root(jm, n), eval_root(jp, n));
    let delta = if m == m_prime { 0.0 } else { (l.value - r.value).norm() };
    let tolerance = 1e-9 * jm.l1_f64().max(jp.l1_f64()).max(1.0);
    SymmetryReport { n, m, m_prime, lhs: l.value, rhs: r.value, delta, tolerance }
}

/// [`symmetry_eval`] for every `1 ≤ n ≤ n_max` and every pair
/// `1 ≤ m < m' ≤ m_max` with `m ≡ ±m' (mod n)`, computing each `J_{K,m}` once.
pub fn symmetry_scan(t: &MorseTangle, n_max: usize, m_max: usize) -> Result<Vec<SymmetryReport>> {
    let js = (1..=m_max).map(|m| colored_jones(t, m)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=m_max {
            for mp in m + 1..=m_max {
                if (mp - m) % n == 0 || (m + mp) % n == 0 {
                    out.push(compare_at_root(&js[m - 1], &js[mp - 1], n, m, mp));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_values() {
        assert!(kernel_c(4, 0).is_one());
        assert!(kernel_c(5, 5).is_zero());
        assert!(kernel_c(5, 7).is_zero());
        assert_eq!(kernel_c(3, 2).at_one(), 0.into());
        assert!(!kernel_c(3, 2).is_zero());
    }

    #[test]
    fn unknot_expansion() {
        let js = alloc::vec![QLaurent::one(); 5];
        let e = habiro_h_from_j("0_1", js, 4).unwrap();
        assert!(e.h[0].is_one());
        assert!(e.h[1..].iter().all(QLaurent::is_zero));
    }

    #[test]
    fn symmetry_precondition() {
        let t = MorseTangle::unknot();
        assert!(symmetry_eval(&t, 5, 2, 4).is_err());
        assert!(symmetry_eval(&t, 5, 2, 3).unwrap().passed());
    }
}
