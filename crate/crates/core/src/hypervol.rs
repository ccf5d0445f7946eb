//! The Lobachevsky function, ideal tetrahedra and octahedra, and growth
//! rates of R-matrix entries at roots of unity.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2k}/(2k)!` for `k = 0..=30`.
const BERNOULLI_EVEN: [f64; 31] = [
    1.0,
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.247076741820743e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569557e-46,
    -2.5718041582418717e-48,
];

/// `v₈ = 8Λ(π/4)`, the volume of the regular ideal octahedron.
pub fn v8() -> f64 {
    8.0 * lobachevsky(PI / 4.0)
}

/// Clausen's function `Cl₂(x) = Σ sin(kx)/k²`.
pub fn clausen2(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = libm::fmod(x, two_pi);
    if y < 0.0 {
        y += two_pi;
    }
    if y > PI {
        y -= two_pi;
    }
    if y == 0.0 {
        return 0.0;
    }
    let ay = y.abs();
    let mut s = ay - ay * libm::log(ay);
    let y2 = ay * ay;
    let mut p = ay;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().skip(1) {
        p *= y2;
        let k2 = 2.0 * k as f64;
        let t = b.abs() * p / (k2 * (k2 + 1.0));
        s += t;
        if t < 1e-18 * s.abs() {
            break;
        }
    }
    if y < 0.0 {
        -s
    } else {
        s
    }
}

/// `Λ(θ) = -∫₀^θ log|2 sin x| dx = ½·Cl₂(2θ)`.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen2(2.0 * theta)
}

/// `Li₂(z)` for `|z| ≤ 1`, `Re z ≤ 1/2`, via the Bernoulli series in
/// `-log(1-z)`.
fn li2_core(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    let mut s = u - u2 / 4.0;
    let mut p = u;
    for (m, b) in BERNOULLI_EVEN.iter().enumerate().skip(1) {
        p *= u2;
        let t = p * (b / (2.0 * m as f64 + 1.0));
        s += t;
        if t.norm() < 1e-18 * s.norm().max(1e-300) {
            break;
        }
    }
    s
}

/// The Bloch–Wigner dilogarithm `D(z) = Im Li₂(z) + arg(1-z) log|z|`.
pub fn bloch_wigner(z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    if z.im == 0.0 || z == one {
        return 0.0;
    }
    let (mut w, mut sign) = (z, 1.0);
    if w.norm_sqr() > 1.0 {
        w = one / w;
        sign = -sign;
    }
    if w.re > 0.5 {
        w = one - w;
        sign = -sign;
    }
    let d = li2_core(w).im + (one - w).arg() * libm::log(w.norm());
    sign * d
}

/// A tetrahedron shape, `z ∉ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeParam(Complex64);

impl ShapeParam {
    pub fn new(z: Complex64) -> Result<Self> {
        if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) || !z.is_finite() {
            return Err(Error::Degenerate(format!("shape parameter {z} is 0, 1 or infinite")));
        }
        Ok(ShapeParam(z))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }
}

/// Signed volume of the ideal tetrahedron with vertices `0, 1, ∞, z`.
pub fn tetra_volume(z: ShapeParam) -> f64 {
    bloch_wigner(z.0)
}

/// A point of `C ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

/// `[z₀:z₁:z₂:z₃] = (z₀-z₃)(z₁-z₂) / ((z₀-z₂)(z₁-z₃))`, factors containing
/// `∞` cancelling in pairs.
pub fn cross_ratio(z: [Point; 4]) -> Result<Complex64> {
    for i in 0..4 {
        for j in i + 1..4 {
            if z[i] == z[j] {
                return Err(Error::Degenerate(format!("cross-ratio of coincident points {i} and {j}")));
            }
        }
    }
    let diff = |a: usize, b: usize| match (z[a], z[b]) {
        (Point::Finite(x), Point::Finite(y)) => Some(x - y),
        _ => None,
    };
    let num = [diff(0, 3), diff(1, 2)];
    let den = [diff(0, 2), diff(1, 3)];
    let prod = |fs: [Option<Complex64>; 2]| fs.iter().flatten().product::<Complex64>();
    Ok(prod(num) / prod(den))
}

/// Angles `(α, β, κ)` in units of `π` for the `+` growth rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleTriple {
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
}

const SLACK: f64 = 1e-12;

impl AngleTriple {
    pub fn new(alpha: f64, beta: f64, kappa: f64) -> Self {
        AngleTriple { alpha, beta, kappa }
    }

    fn in_unit(&self) -> bool {
        [self.alpha, self.beta, self.kappa].iter().all(|v| (-SLACK..=1.0 + SLACK).contains(v))
    }

    /// `0 ≤ β+κ ≤ 1` and `0 ≤ α-κ ≤ 1`.
    pub fn plus_admissible(&self) -> bool {
        let (a, b, k) = (self.alpha, self.beta, self.kappa);
        self.in_unit() && b + k <= 1.0 + SLACK && a - k >= -SLACK && a - k <= 1.0 + SLACK
    }

    /// `0 ≤ α+κ ≤ 1` and `0 ≤ β-κ ≤ 1`.
    pub fn minus_admissible(&self) -> bool {
        AngleTriple::new(self.beta, self.alpha, self.kappa).plus_admissible()
    }
}

/// `[-Λ(π(β+κ)) + Λ(πβ) + Λ(πκ) - Λ(πα) + Λ(π(α-κ))] / π`.
pub fn r_plus(t: AngleTriple) -> Result<f64> {
    if !t.plus_admissible() {
        return Err(Error::OutOfRange(format!("{t:?} is not plus-admissible")));
    }
    let (a, b, k) = (t.alpha, t.beta, t.kappa);
    let l = |x: f64| lobachevsky(PI * x);
    Ok((-l(b + k) + l(b) + l(k) - l(a) + l(a - k)) / PI)
}

/// `r_-(α, β, κ) = r_+(β, α, κ)`.
pub fn r_minus(t: AngleTriple) -> Result<f64> {
    if !t.minus_admissible() {
        return Err(Error::OutOfRange(format!("{t:?} is not minus-admissible")));
    }
    r_plus(AngleTriple::new(t.beta, t.alpha, t.kappa))
}

/// Orientation of each tetrahedron of the octahedron decomposition, in the
/// order `ABDE, BDCE, ABCD, ABCF, ACDF`.
const OCTA_ORIENTATION: [f64; 5] = [1.0, -1.0, 1.0, -1.0, -1.0];

/// The five ordered tetrahedra of the octahedron with vertices
/// `A, B, C, D, E, F = 0, 1, ∞, z_κ, (z_β z_κ - 1)/(z_β - 1), z_α`.
pub fn octahedron_tetrahedra(t: AngleTriple) -> Result<[[Point; 4]; 5]> {
    let e = |x: f64| Complex64::from_polar(1.0, 2.0 * PI * x);
    let (za, zb, zk) = (e(t.alpha), e(t.beta), e(t.kappa));
    let one = Complex64::new(1.0, 0.0);
    if (zb - one).norm() < 1e-300 {
        return Err(Error::Degenerate("z_β = 1 puts E at infinity".into()));
    }
    let a = Point::Finite(Complex64::new(0.0, 0.0));
    let b = Point::Finite(one);
    let c = Point::Infinity;
    let d = Point::Finite(zk);
    let ee = Point::Finite((zb * zk - one) / (zb - one));
    let f = Point::Finite(za);
    Ok([[a, b, d, ee], [b, d, c, ee], [a, b, c, d], [a, b, c, f], [a, c, d, f]])
}

/// Volume of an ideal tetrahedron with the given cross-ratio (vertex
/// ordering convention of [`cross_ratio`]).
fn ordered_volume(cr: Complex64) -> f64 {
    // [0:1:∞:z] = z/(z-1), and D(z/(z-1)) = -D(z)
    -bloch_wigner(cr)
}

/// Sum of the signed volumes of the five tetrahedra.
pub fn octahedron_volume(t: AngleTriple) -> Result<f64> {
    if !t.plus_admissible() {
        return Err(Error::OutOfRange(format!("{t:?} is not plus-admissible")));
    }
    let tets = octahedron_tetrahedra(t)?;
    let mut v = 0.0;
    for (tet, s) in tets.iter().zip(OCTA_ORIENTATION) {
        // coincident vertices give a flat tetrahedron
        if let Ok(cr) = cross_ratio(*tet) {
            v += s * ordered_volume(cr);
        }
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub argmax: AngleTriple,
    pub value: f64,
}

fn clamp_plus(a: f64, b: f64, k: f64) -> Option<AngleTriple> {
    let t = AngleTriple::new(a, b, k);
    t.plus_admissible().then_some(t)
}

/// Maximizes `r_+` over the admissible region: a grid of step 1/64, then a
/// compass search from the best grid point.
pub fn maximize_r() -> Maximum {
    let steps = 64;
    let h = 1.0 / steps as f64;
    let mut best = Maximum { argmax: AngleTriple::new(0.0, 0.0, 0.0), value: f64::MIN };
    for i in 0..=steps {
        for j in 0..=steps {
            for k in 0..=steps {
                let Some(t) = clamp_plus(i as f64 * h, j as f64 * h, k as f64 * h) else { continue };
                let v = r_plus(t).unwrap_or(f64::MIN);
                if v > best.value {
                    best = Maximum { argmax: t, value: v };
                }
            }
        }
    }
    let mut step = h;
    while step > 1e-12 {
        let mut moved = false;
        let p = best.argmax;
        for (da, db, dk) in [
            (1.0, 0.0, 0.0),
            (-1.0, 0.0, 0.0),
            (0.0, 1.0, 0.0),
            (0.0, -1.0, 0.0),
            (0.0, 0.0, 1.0),
            (0.0, 0.0, -1.0),
        ] {
            let Some(t) = clamp_plus(p.alpha + da * step, p.beta + db * step, p.kappa + dk * step) else {
                continue;
            };
            let v = r_plus(t).unwrap_or(f64::MIN);
            if v > best.value {
                best = Maximum { argmax: t, value: v };
                moved = true;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    best
}

/// `log(2 sin(jπ/n))` prefix sums: entry `j` is `log|ev_n({j}!)|`.
pub fn log_qfact_table(n: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(0.0);
    let mut s = 0.0;
    for j in 1..=n {
        let x = 2.0 * libm::sin(j as f64 * PI / n as f64);
        s += libm::log(x.abs());
        t.push(s);
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QFactAsym {
    /// `log|ev_n({⌊αn⌋+d}!)|`.
    pub value: f64,
    /// `value + (n/π)Λ(πα)`.
    pub residual: f64,
}

/// Log-magnitude of `{⌊αn⌋ + d}!` at `q = e^{2πi/n}` and its residual
/// against `-(n/π)Λ(πα)`.
pub fn qfact_asym(alpha: f64, n: usize, d: i64) -> Result<QFactAsym> {
    if n < 2 || !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::OutOfRange(format!("qfact_asym needs n ≥ 2 and 0 < α < 1, got n = {n}, α = {alpha}")));
    }
    let j = libm::floor(alpha * n as f64) as i64 + d;
    if j < 0 || j >= n as i64 {
        return Err(Error::OutOfRange(format!("index {j} outside 0..{n}")));
    }
    let value = log_qfact_table(n)[j as usize];
    let residual = value + n as f64 / PI * lobachevsky(PI * alpha);
    Ok(QFactAsym { value, residual })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QFactScan {
    /// Fitted `C` in `|residual| ≤ C log n`.
    pub c: f64,
    /// `(n, α, residual)` with the largest `|residual|/log n`.
    pub worst: (usize, f64, f64),
    pub samples: usize,
}

/// Fits `C` over `2 ≤ n ≤ n_max` and every `α` given.
pub fn qfact_scan(alphas: &[f64], n_max: usize) -> QFactScan {
    let mut out = QFactScan { c: 0.0, worst: (0, 0.0, 0.0), samples: 0 };
    let lams: Vec<f64> = alphas.iter().map(|a| lobachevsky(PI * a) / PI).collect();
    for n in 2..=n_max {
        let table = log_qfact_table(n);
        let ln = libm::log(n as f64);
        for (a, lam) in alphas.iter().zip(&lams) {
            let j = libm::floor(a * n as f64) as usize;
            let r = table[j] + n as f64 * lam;
            out.samples += 1;
            if r.abs() / ln > out.c {
                out.c = r.abs() / ln;
                out.worst = (n, *a, r);
            }
        }
    }
    out
}

/// `log|ev_n(R_+(n; a, b, k))|` from quantum factorial magnitudes:
/// `{b+k}!{a}! / ({b}!{k}!{a-k}!)`.
pub fn log_r_plus(table: &[f64], a: usize, b: usize, k: usize) -> f64 {
    table[b + k] + table[a] - table[b] - table[k] - table[a - k]
}

/// `log|ev_n(R_-(n; a, b, k))| = log|ev_n(R_+(n; b, a, k))|`.
pub fn log_r_minus(table: &[f64], a: usize, b: usize, k: usize) -> f64 {
    log_r_plus(table, b, a, k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMax {
    pub n: usize,
    pub argmax: (usize, usize, usize),
    pub logmax: f64,
    /// `(⌊(3n-3)/4⌋, ⌊(n-1)/4⌋, a-b)`.
    pub predicted: (usize, usize, usize),
    pub predicted_value: f64,
    /// Whether every valid triple was scanned.
    pub exhaustive: bool,
}

impl DiscreteMax {
    /// The predicted triple attains the maximum (up to rounding).
    pub fn predicted_is_max(&self) -> bool {
        self.predicted_value >= self.logmax - 1e-9 * self.logmax.abs().max(1.0)
    }
}

pub fn predicted_argmax(n: usize) -> (usize, usize, usize) {
    let a = (3 * n - 3) / 4;
    let b = (n - 1) / 4;
    (a, b, a - b)
}

/// Maximum of `|ev_n(R_+(n; a, b, k))|` over valid `(a, b, k)`: exhaustive
/// for `n ≤ 500`, otherwise over a neighborhood of radius 3 of the predicted
/// argmax.
pub fn discrete_rmax(n: usize) -> Result<DiscreteMax> {
    if n < 5 {
        return Err(Error::OutOfRange(format!("discrete_rmax needs n ≥ 5, got {n}")));
    }
    let table = log_qfact_table(n);
    let predicted = predicted_argmax(n);
    let predicted_value = log_r_plus(&table, predicted.0, predicted.1, predicted.2);
    let mut best = (predicted, predicted_value);
    let mut consider = |a: usize, b: usize, k: usize| {
        let v = log_r_plus(&table, a, b, k);
        if v > best.1 {
            best = ((a, b, k), v);
        }
    };
    let exhaustive = n <= 500;
    if exhaustive {
        for a in 0..n {
            for b in 0..n {
                for k in 0..=a.min(n - 1 - b) {
                    consider(a, b, k);
                }
            }
        }
    } else {
        let r = 3i64;
        let (pa, pb, pk) = (predicted.0 as i64, predicted.1 as i64, predicted.2 as i64);
        for a in pa - r..=pa + r {
            for b in pb - r..=pb + r {
                for k in pk - r..=pk + r {
                    if a < 0 || b < 0 || k < 0 || a >= n as i64 || k > a || b + k >= n as i64 {
                        continue;
                    }
                    consider(a as usize, b as usize, k as usize);
                }
            }
        }
    }
    Ok(DiscreteMax { n, argmax: best.0, logmax: best.1, predicted, predicted_value, exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    #[test]
    fn bernoulli_table_is_exact() {
        // B_m from Σ_{j<m} C(m+1, j) B_j = -(m+1) B_m
        let mut b: Vec<BigRational> = alloc::vec![BigRational::one()];
        for m in 1..=60usize {
            let mut s = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                s += bj * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let mut fact = BigRational::one();
        for k in 0..=30usize {
            if k > 0 {
                fact *= BigRational::from_integer(BigInt::from((2 * k - 1) * 2 * k));
            }
            let v = (&b[2 * k] / &fact).to_f64().unwrap();
            assert!((v - BERNOULLI_EVEN[k]).abs() <= 1e-15 * v.abs(), "k={k}");
        }
    }

    #[test]
    fn lobachevsky_quadrature() {
        // Simpson's rule on -log|2 sin x| away from the singularity at 0
        for &theta in &[0.3, 0.7, 1.2, 2.0, 2.9] {
            let a = 0.1;
            let m = 20000;
            let h = (theta - a) / m as f64;
            let f = |x: f64| -libm::log((2.0 * libm::sin(x)).abs());
            let mut s = f(a) + f(theta);
            for i in 1..m {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                s += w * f(a + i as f64 * h);
            }
            let integral = s * h / 3.0;
            let got = lobachevsky(theta) - lobachevsky(a);
            assert!((got - integral).abs() < 1e-10, "θ={theta}");
        }
    }

    #[test]
    fn cross_ratio_normalization() {
        let z = Complex64::new(0.3, 0.8);
        let cr = cross_ratio([
            Point::Finite(Complex64::new(0.0, 0.0)),
            Point::Finite(Complex64::new(1.0, 0.0)),
            Point::Infinity,
            Point::Finite(z),
        ])
        .unwrap();
        assert!((cr - z / (z - 1.0)).norm() < 1e-15);
    }
}
