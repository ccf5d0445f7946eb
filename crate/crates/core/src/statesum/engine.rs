//! State enumeration: a depth-first walk in knot order, and an independent
//! slice-by-slice transfer computation used as a cross-check.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::weights::{crossing_weight, turn_exponent, Acc, Coef, DPoly, WeightTable};
use crate::diagram::{Dir, Event, MorseTangle, Sign, Step};
use crate::error::{Error, Result};
use crate::qlaurent::QLaurent;

/// Raw (framed) partial sum over a slice of the state space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSum {
    pub raw: QLaurent,
    pub states_visited: u64,
    pub pruned: u64,
}

/// Where the state space splits for parallel evaluation: the first crossing
/// in walk order whose color is free.
pub fn split_point(t: &MorseTangle) -> Option<usize> {
    t.steps().iter().position(|s| match *s {
        Step::Cross { crossing, first: true, .. } => !t.boundary_zero()[crossing],
        _ => false,
    })
}

struct Dfs<'a, C> {
    table: WeightTable<C>,
    n: usize,
    steps: &'a [Step],
    zero: &'a [bool],
    signs: Vec<Sign>,
    kc: Vec<usize>,
    inc: Vec<usize>,
    bufs: Vec<DPoly<C>>,
    acc: Acc<C>,
    visited: u64,
    pruned: u64,
    part: Option<(usize, usize)>,
    overflow: bool,
}

impl<C: Coef> Dfs<'_, C> {
    fn go(&mut self, i: usize, color: usize, shift: i64, depth: usize) {
        if self.overflow {
            return;
        }
        let Some(step) = self.steps.get(i).copied() else {
            if color == 0 {
                self.visited += 1;
                if !self.acc.add(&self.bufs[depth], shift) {
                    self.overflow = true;
                }
            } else {
                self.pruned += 1;
            }
            return;
        };
        match step {
            Step::Turn { twist, .. } => {
                self.go(i + 1, color, shift + turn_exponent(self.n, color, twist), depth)
            }
            Step::Cross { crossing: x, over, first: true, .. } => {
                self.inc[x] = color;
                let kmax = if self.zero[x] {
                    0
                } else if over {
                    color
                } else {
                    self.n - 1 - color
                };
                let range = match self.part {
                    Some((at, k)) if at == i => {
                        if k > kmax {
                            return;
                        }
                        k..=k
                    }
                    _ => 0..=kmax,
                };
                for k in range {
                    self.kc[x] = k;
                    let next = if over { color - k } else { color + k };
                    self.go(i + 1, next, shift, depth);
                }
            }
            Step::Cross { crossing: x, over, from_left, first: false, .. } => {
                let k = self.kc[x];
                let next = if over { color.checked_sub(k) } else { Some(color + k) };
                let Some(next) = next.filter(|&c| c < self.n) else {
                    self.pruned += 1;
                    return;
                };
                let (a, b) = if from_left { (color, self.inc[x]) } else { (self.inc[x], color) };
                let Ok(w) = self.table.get(self.signs[x], a, b, k) else {
                    self.overflow = true;
                    return;
                };
                let (lower, upper) = self.bufs.split_at_mut(depth + 1);
                if !lower[depth].mul_into(w, &mut upper[0]) {
                    self.overflow = true;
                    return;
                }
                self.go(i + 1, next, shift, depth + 1);
            }
        }
    }
}

fn run_dfs<C: Coef>(t: &MorseTangle, n: usize, part: Option<(usize, usize)>) -> Option<PartialSum> {
    let m = t.crossing_count();
    let mut dfs: Dfs<C> = Dfs {
        n,
        steps: t.steps(),
        zero: t.boundary_zero(),
        signs: (0..m).map(|i| t.crossing_sign(i)).collect(),
        table: WeightTable::<C>::new(n),
        kc: vec![0; m],
        inc: vec![0; m],
        bufs: (0..=m).map(|_| DPoly::one()).collect(),
        acc: Acc::default(),
        visited: 0,
        pruned: 0,
        part,
        overflow: false,
    };
    dfs.go(0, 0, 0, 0);
    if dfs.overflow {
        return None;
    }
    Some(PartialSum { raw: dfs.acc.to_qlaurent(), states_visited: dfs.visited, pruned: dfs.pruned })
}

/// Sums the states whose free split crossing (see [`split_point`]) has color
/// `k`; with `k = None` sums every state.
pub fn partial_sum(t: &MorseTangle, n: usize, k: Option<usize>) -> Result<PartialSum> {
    if n == 0 {
        return Err(Error::OutOfRange("color dimension must be at least 1".into()));
    }
    let part = match (k, split_point(t)) {
        (Some(k), Some(at)) => Some((at, k)),
        (Some(k), None) if k > 0 => {
            return Ok(PartialSum { raw: QLaurent::zero(), states_visited: 0, pruned: 0 })
        }
        _ => None,
    };
    if let Some(s) = run_dfs::<i128>(t, n, part) {
        return Ok(s);
    }
    run_dfs::<BigInt>(t, n, part).ok_or_else(|| Error::Inconsistent("weight table".into()))
}

/// The framed state sum by propagating color vectors slice by slice.
pub fn transfer_sum(t: &MorseTangle, n: usize) -> Result<QLaurent> {
    if n == 0 {
        return Err(Error::OutOfRange("color dimension must be at least 1".into()));
    }
    let mut states: BTreeMap<Vec<u8>, QLaurent> = BTreeMap::new();
    states.insert(vec![0u8], QLaurent::one());
    for (s, ev) in t.events().iter().enumerate() {
        let mut next: BTreeMap<Vec<u8>, QLaurent> = BTreeMap::new();
        let mut put = |key: Vec<u8>, v: QLaurent| {
            let e = next.entry(key).or_insert_with(QLaurent::zero);
            *e += &v;
        };
        for (colors, val) in &states {
            match *ev {
                Event::Cup(c) => {
                    let above = t.orientation(s + 1);
                    let twist = if above[c] == Dir::Down { -1 } else { 0 };
                    for i in 0..n {
                        let mut key = colors.clone();
                        key.splice(c..c, [i as u8, i as u8]);
                        put(key, val.shift(turn_exponent(n, i, twist)));
                    }
                }
                Event::Cap(c) => {
                    if colors[c] != colors[c + 1] {
                        continue;
                    }
                    let below = t.orientation(s);
                    let twist = if below[c] == Dir::Up { 1 } else { 0 };
                    let i = colors[c] as usize;
                    let mut key = colors.clone();
                    key.drain(c..c + 2);
                    put(key, val.shift(turn_exponent(n, i, twist)));
                }
                Event::Cross(c, sign) => {
                    let (a, b) = (colors[c] as usize, colors[c + 1] as usize);
                    for k in 0..n {
                        let Ok(w) = crossing_weight(sign, n, a, b, k) else { continue };
                        let (l, r) = match sign {
                            Sign::Pos => (b + k, a - k),
                            Sign::Neg => (b - k, a + k),
                        };
                        let mut key = colors.clone();
                        key[c] = l as u8;
                        key[c + 1] = r as u8;
                        put(key, val * &w);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    Ok(states.remove(&vec![0u8]).unwrap_or_else(QLaurent::zero))
}
