//! Independent invariants computed without R-matrices: the Kauffman bracket
//! (colors 2 and 3 via cabling) and the Alexander polynomial.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{PdCode, Sign};
use crate::error::{Error, Result};
use crate::qlaurent::{QExp, QLaurent};

/// Largest crossing count accepted by [`bracket_oracle`].
pub const BRACKET_MAX_CROSSINGS: usize = 12;
/// Largest crossing count accepted by [`cabling_oracle`].
pub const CABLING_MAX_CROSSINGS: usize = 4;

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra as usize] = rb;
    }
}

/// `A = q^{1/4}`; `δ = -A² - A^{-2}`.
fn delta() -> QLaurent {
    QLaurent::from_terms([(2, -1i64), (-2, -1i64)])
}

/// `Σ_states A^{#A - #B} δ^{loops}` for a 4-valent diagram whose vertices
/// list their edge labels counterclockwise starting at an under-strand edge.
/// `joins` are extra edges glued without crossings. Labels run over
/// `1..=labels`; labels not used by any vertex or join are ignored.
fn bracket_sum(vertices: &[[u32; 4]], labels: usize, joins: &[(u32, u32)]) -> QLaurent {
    let m = vertices.len();
    let mut used = vec![false; labels + 1];
    for v in vertices {
        for &l in v {
            used[l as usize] = true;
        }
    }
    for &(a, b) in joins {
        used[a as usize] = true;
        used[b as usize] = true;
    }
    // counts[a_minus_b + m][loops]
    let mut counts = vec![vec![0i64; 2 * m + 2]; 2 * m + 1];
    let mut parent: Vec<u32> = (0..=labels as u32).collect();
    for state in 0u64..(1u64 << m) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        for &(a, b) in joins {
            union(&mut parent, a, b);
        }
        let mut na = 0usize;
        for (i, v) in vertices.iter().enumerate() {
            let [a, b, c, d] = *v;
            if state >> i & 1 == 0 {
                na += 1;
                union(&mut parent, a, b);
                union(&mut parent, c, d);
            } else {
                union(&mut parent, a, d);
                union(&mut parent, b, c);
            }
        }
        let mut loops = 0usize;
        for l in 1..=labels as u32 {
            if used[l as usize] && find(&mut parent, l) == l {
                loops += 1;
            }
        }
        let diff = 2 * na; // (#A - #B) + m
        counts[diff][loops] += 1;
    }
    let d = delta();
    let mut dpow = vec![QLaurent::one()];
    for i in 1..2 * m + 2 {
        let next = &dpow[i - 1] * &d;
        dpow.push(next);
    }
    let mut total = QLaurent::zero();
    for (diff, row) in counts.iter().enumerate() {
        let e = diff as QExp - m as QExp;
        for (loops, &cnt) in row.iter().enumerate() {
            if cnt != 0 {
                total += &dpow[loops].scale_unit(e, false).scale(&cnt.into());
            }
        }
    }
    total
}

/// The Jones polynomial from the Kauffman bracket, in the variable of the
/// colored Jones function at `n = 2`.
pub fn bracket_oracle(pd: &PdCode) -> Result<QLaurent> {
    if pd.len() > BRACKET_MAX_CROSSINGS {
        return Err(Error::SizeCap(format!(
            "bracket oracle takes at most {BRACKET_MAX_CROSSINGS} crossings, got {}",
            pd.len()
        )));
    }
    if pd.is_empty() {
        return Ok(QLaurent::one());
    }
    let vertices: Vec<[u32; 4]> = pd.crossings().iter().map(|c| c.arcs).collect();
    let b = bracket_sum(&vertices, pd.arc_count(), &[]).exact_div(&delta())?;
    let w = pd.writhe();
    // (-A^3)^{-w}
    Ok(b.scale_unit(-3 * w, w.rem_euclid(2) == 1))
}

/// `J_{K,3}` from the bracket of the 2-cable with a Jones–Wenzl projector.
pub fn cabling_oracle(pd: &PdCode, n: usize) -> Result<QLaurent> {
    if n != 3 {
        return Err(Error::SizeCap(format!("cabling oracle supports n = 3 only, got {n}")));
    }
    if pd.len() > CABLING_MAX_CROSSINGS {
        return Err(Error::SizeCap(format!(
            "cabling oracle takes at most {CABLING_MAX_CROSSINGS} crossings, got {}",
            pd.len()
        )));
    }
    if pd.is_empty() {
        return Ok(QLaurent::one());
    }
    let xs = pd.crossings();
    let m = xs.len();
    let arcs = pd.arc_count() as u32;
    let cut = xs[0].arcs[0];
    // labels: arc l has copies 2l-1 (left) and 2l (right) at its tail; the
    // head end of the cut arc gets two extra labels
    let head_l = 2 * arcs + 1;
    let head_r = 2 * arcs + 2;
    let internal = 2 * arcs + 2;
    let is_out = |x: usize, s: usize| match s {
        0 => false,
        2 => true,
        1 => xs[x].sign == Sign::Pos,
        _ => xs[x].sign == Sign::Neg,
    };
    let copy = |x: usize, s: usize, left: bool| -> u32 {
        let l = xs[x].arcs[s];
        if l == cut && !is_out(x, s) {
            return if left { head_l } else { head_r };
        }
        if left {
            2 * l - 1
        } else {
            2 * l
        }
    };
    let mut vertices = Vec::with_capacity(4 * m);
    for x in 0..m {
        let base = internal + 4 * x as u32;
        let v = |px: i32| if px < 0 { base + 1 } else { base + 2 };
        let h = |py: i32| if py < 0 { base + 3 } else { base + 4 };
        let side_y = |py: i32| match xs[x].sign {
            Sign::Pos => py > 0,
            Sign::Neg => py < 0,
        };
        for px in [-1, 1] {
            for py in [-1, 1] {
                let s = if py < 0 { copy(x, 0, px < 0) } else { v(px) };
                let nn = if py > 0 { copy(x, 2, px < 0) } else { v(px) };
                let w = if px < 0 { copy(x, 3, side_y(py)) } else { h(py) };
                let e = if px > 0 { copy(x, 1, side_y(py)) } else { h(py) };
                vertices.push([s, e, nn, w]);
            }
        }
    }
    let labels = (internal + 4 * m as u32) as usize;
    let (tl, tr) = (2 * cut - 1, 2 * cut);
    let ident = bracket_sum(&vertices, labels, &[(tl, head_l), (tr, head_r)]);
    let turn = bracket_sum(&vertices, labels, &[(tl, tr), (head_l, head_r)]);
    let d = delta();
    let num = &(&d * &ident) - &turn;
    let den = &d * &(&(&d * &d) - &QLaurent::one());
    let j = num.exact_div(&den)?;
    Ok(j.shift(-8 * pd.writhe()))
}

/// Determinant over `Z[q^{±1/4}]` by fraction-free elimination.
pub fn determinant(mut m: Vec<Vec<QLaurent>>) -> Result<QLaurent> {
    let n = m.len();
    if n == 0 {
        return Ok(QLaurent::one());
    }
    let mut sign = false;
    let mut prev = QLaurent::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(QLaurent::zero());
            };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Alexander polynomial in `t` (stored with `t = q`, i.e. quarter exponents
/// multiples of 4), normalized so that `Δ(t) = Δ(1/t)` and `Δ(1) = 1`.
pub fn alexander_poly(pd: &PdCode) -> Result<QLaurent> {
    if pd.is_empty() {
        return Ok(QLaurent::one());
    }
    let xs = pd.crossings();
    let labels = pd.arc_count();
    let mut parent: Vec<u32> = (0..=labels as u32).collect();
    for c in xs {
        union(&mut parent, c.arcs[1], c.arcs[3]);
    }
    let mut index = vec![usize::MAX; labels + 1];
    let mut count = 0usize;
    for l in 1..=labels as u32 {
        let r = find(&mut parent, l) as usize;
        if index[r] == usize::MAX {
            index[r] = count;
            count += 1;
        }
    }
    if count != xs.len() {
        return Err(Error::Degenerate(format!(
            "{} Wirtinger arcs for {} crossings",
            count,
            xs.len()
        )));
    }
    let t = QLaurent::q_quarter(4);
    let one = QLaurent::one();
    let mut mat = vec![vec![QLaurent::zero(); count]; xs.len()];
    for (r, c) in xs.iter().enumerate() {
        let mut arc = |l: u32| index[find(&mut parent, l) as usize];
        let (k, i, j) = (arc(c.arcs[1]), arc(c.arcs[0]), arc(c.arcs[2]));
        let (wk, wi, wj) = match c.sign {
            Sign::Pos => (&one - &t, t.clone(), -one.clone()),
            Sign::Neg => (&t - &one, one.clone(), -t.clone()),
        };
        mat[r][k] += &wk;
        mat[r][i] += &wi;
        mat[r][j] += &wj;
    }
    let minor: Vec<Vec<QLaurent>> =
        mat[..count - 1].iter().map(|row| row[..count - 1].to_vec()).collect();
    let d = determinant(minor)?;
    if d.is_zero() {
        return Err(Error::Degenerate("Alexander matrix minor vanishes".into()));
    }
    let (hi, lo) = (d.deg_plus()?, d.deg_minus()?);
    if (hi + lo) % 8 != 0 {
        return Err(Error::Degenerate("Alexander polynomial has odd span".into()));
    }
    let d = d.shift(-(hi + lo) / 2);
    let at1 = d.at_one();
    if at1 == 1.into() {
        Ok(d)
    } else if at1 == (-1).into() {
        Ok(-d)
    } else {
        Err(Error::Degenerate(format!("Δ(1) = {at1}")))
    }
}
