//! Colored Jones polynomials by the R-matrix state sum, with independent
//! oracles and the degree and norm bounds.

mod engine;
mod oracle;
mod weights;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Pow;

pub use engine::{partial_sum, split_point, transfer_sum, PartialSum};
pub use oracle::{
    alexander_poly, bracket_oracle, cabling_oracle, determinant, BRACKET_MAX_CROSSINGS,
    CABLING_MAX_CROSSINGS,
};
pub use weights::{crossing_weight, framing_exponent, r_minus, r_plus, turn_exponent, FRAME, TURN};

use crate::diagram::{DiagramStats, MorseTangle};
use crate::error::{Error, Result};
use crate::qlaurent::{QExp, QLaurent};

/// Outcome of one state-sum evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSumRun {
    pub color_dim: usize,
    pub stats: DiagramStats,
    pub result: QLaurent,
    pub states_visited: u64,
    pub pruned: u64,
}

/// Combines partial sums over a split of the state space into the unframed
/// invariant.
pub fn combine(t: &MorseTangle, n: usize, parts: &[PartialSum]) -> Result<StateSumRun> {
    let mut raw = QLaurent::zero();
    let (mut visited, mut pruned) = (0, 0);
    for p in parts {
        raw += &p.raw;
        visited += p.states_visited;
        pruned += p.pruned;
    }
    let result = raw.shift(framing_exponent(n, t.writhe()));
    if !result.is_whole() {
        return Err(Error::Inconsistent(format!(
            "state sum for n = {n} left fractional powers of q"
        )));
    }
    Ok(StateSumRun { color_dim: n, stats: t.stats(), result, states_visited: visited, pruned })
}

pub fn colored_jones_run(t: &MorseTangle, n: usize) -> Result<StateSumRun> {
    let part = partial_sum(t, n, None)?;
    combine(t, n, &[part])
}

/// `J_{K,n}(q)`, normalized to 1 on the unknot.
pub fn colored_jones(t: &MorseTangle, n: usize) -> Result<QLaurent> {
    Ok(colored_jones_run(t, n)?.result)
}

/// The same invariant by slice-by-slice transfer; exponential in the
/// diagram width, meant for cross-checking small cases.
pub fn colored_jones_transfer(t: &MorseTangle, n: usize) -> Result<QLaurent> {
    Ok(transfer_sum(t, n)?.shift(framing_exponent(n, t.writhe())))
}

/// One row of a bounds report.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub n: usize,
    pub l1: BigInt,
    pub l1_bound: BigInt,
    /// `deg_+` and `deg_-` in quarter units.
    pub deg_plus: QExp,
    pub deg_minus: QExp,
    /// Quadratic parts of the degree envelopes, in quarter units:
    /// `(c+2)(n-1)² ∓ ω(n²-1)`.
    pub env_plus: QExp,
    pub env_minus: QExp,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub stats: DiagramStats,
    pub rows: Vec<BoundRow>,
    /// Linear slack constants fitted on the first half of the range.
    pub s_plus: f64,
    pub s_minus: f64,
    pub failures: Vec<String>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `‖J_{K,n}‖₁ ≤ n^c 4^{cn}` and the quadratic degree envelopes for
/// `1 ≤ n ≤ n_max`. The linear slack constants `s_±` are fitted on
/// `n ≤ n_max/2` and must then hold on the whole range.
pub fn check_bounds(t: &MorseTangle, n_max: usize) -> Result<BoundsReport> {
    let stats = t.stats();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let c = stats.c as u32;
    let omega = stats.writhe;
    for n in 1..=n_max {
        let j = colored_jones(t, n)?;
        let m = j.measures()?;
        let l1_bound = BigInt::from(n).pow(c) * BigInt::from(4).pow(c * n as u32);
        let ni = n as i64;
        let quad = (stats.crossing_count as i64) * (ni - 1) * (ni - 1);
        let row = BoundRow {
            n,
            l1: m.l1.clone(),
            l1_bound: l1_bound.clone(),
            deg_plus: m.deg_plus,
            deg_minus: m.deg_minus,
            env_plus: quad - omega * (ni * ni - 1),
            env_minus: -(quad + omega * (ni * ni - 1)),
        };
        if stats.crossing_count >= 2 && m.l1 > l1_bound {
            failures.push(format!("n = {n}: l1 norm {} exceeds {}", m.l1, l1_bound));
        }
        rows.push(row);
    }
    // 4·deg_+ ≤ env_+ + 2(n-1)(s_+ - 1) in quarter units: s_+ ≥ 1 + (deg_+ - env_+)/(2(n-1))
    let slack = |r: &BoundRow, plus: bool| -> f64 {
        let gap = if plus { r.deg_plus - r.env_plus } else { r.env_minus - r.deg_minus };
        1.0 + gap as f64 / (2.0 * (r.n as f64 - 1.0))
    };
    let fit_range = |r: &&BoundRow| r.n >= 2 && r.n <= n_max.div_ceil(2).max(2);
    let s_plus = rows.iter().filter(fit_range).map(|r| slack(r, true)).fold(f64::MIN, f64::max);
    let s_minus = rows.iter().filter(fit_range).map(|r| slack(r, false)).fold(f64::MIN, f64::max);
    for r in rows.iter().filter(|r| r.n >= 2) {
        let lin = 2.0 * (r.n as f64 - 1.0);
        if r.deg_plus as f64 > r.env_plus as f64 + lin * (s_plus - 1.0) + 1e-9 {
            failures.push(format!("n = {}: deg+ {} above envelope", r.n, r.deg_plus));
        }
        if (r.deg_minus as f64) < r.env_minus as f64 - lin * (s_minus - 1.0) - 1e-9 {
            failures.push(format!("n = {}: deg- {} below envelope", r.n, r.deg_minus));
        }
    }
    Ok(BoundsReport { stats, rows, s_plus, s_minus, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_morse, parse_pd, Sign};
    use alloc::collections::BTreeMap;
    use alloc::vec;

    type Vec3 = BTreeMap<[usize; 3], QLaurent>;

    fn apply(n: usize, v: &Vec3, pos: usize, sign: Sign) -> Vec3 {
        let mut out = Vec3::new();
        for (idx, c) in v {
            let (a, b) = (idx[pos], idx[pos + 1]);
            for k in 0..n {
                let Ok(w) = crossing_weight(sign, n, a, b, k) else { continue };
                let (l, r) = match sign {
                    Sign::Pos => (b + k, a - k),
                    Sign::Neg => (b - k, a + k),
                };
                let mut key = *idx;
                key[pos] = l;
                key[pos + 1] = r;
                *out.entry(key).or_insert_with(QLaurent::zero) += &(c * &w);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    #[test]
    fn braid_relations() {
        for n in 1..=4 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let mut v = Vec3::new();
                        v.insert([a, b, c], QLaurent::one());
                        let l = apply(n, &apply(n, &apply(n, &v, 0, Sign::Pos), 1, Sign::Pos), 0, Sign::Pos);
                        let r = apply(n, &apply(n, &apply(n, &v, 1, Sign::Pos), 0, Sign::Pos), 1, Sign::Pos);
                        assert_eq!(l, r, "YBE n={n} ({a},{b},{c})");
                        let id = apply(n, &apply(n, &v, 0, Sign::Pos), 0, Sign::Neg);
                        assert_eq!(id, v, "inverse n={n} ({a},{b},{c})");
                        let id = apply(n, &apply(n, &v, 1, Sign::Neg), 1, Sign::Pos);
                        assert_eq!(id, v, "inverse n={n} ({a},{b},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn kinks_are_trivial() {
        let words = [
            "cup 1\nx+ 0\ncap 1",
            "cup 1\nx- 0\ncap 1",
            "cup 0\nx+ 1\ncap 0",
            "cup 0\nx- 1\ncap 0",
        ];
        for w in words {
            let t = parse_morse(w).unwrap();
            for n in 1..=6 {
                let raw = transfer_sum(&t, n).unwrap();
                assert_eq!(colored_jones(&t, n).unwrap(), QLaurent::one(), "{w:?} n={n} raw={raw}");
            }
        }
    }

    #[test]
    fn trefoil_n2_matches_bracket() {
        let pd = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let b = bracket_oracle(&pd).unwrap();
        let t = crate::diagram::pd_to_morse(&pd).unwrap();
        let j = colored_jones(&t, 2).unwrap();
        assert_eq!(j, b, "state sum {j} vs bracket {b}");
        let _ = vec![0];
    }
}

