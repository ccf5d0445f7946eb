use std::f64::consts::PI;
use std::time::Instant;

use anyhow::bail;
use jonescope_core::asymptotics::{
    check_upper_bound, compare_loop_cyclotomic, finite_type_table, mmr_check, near1_scan, near2_scan,
};
use jonescope_core::borromean::{habiro_borromean, reduced_eval, volume_scan, EXACT_MAX};
use jonescope_core::cyclotomic::{habiro_h, is_integral, reconstruct, symmetry_scan};
use jonescope_core::eval::eval_auto;
use jonescope_core::hypervol::{
    discrete_rmax, lobachevsky, maximize_r, octahedron_volume, predicted_argmax, qfact_scan, r_plus, tetra_volume,
    v8, AngleTriple, ShapeParam,
};
use jonescope_core::qholo::{generate, verify_bounds, BiPoly, QDiffEq};
use jonescope_core::statesum::{
    alexander_poly, bracket_oracle, cabling_oracle, check_bounds, colored_jones,
};
use jonescope_core::{corpus, EvalPoint, QLaurent};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::DEFAULT_ALPHAS;

/// `8Λ(π/4)` as printed in the literature, to 20 digits.
pub const V8_PRINTED: f64 = 3.6638623767088760602;

pub const NAMES: [&str; 11] = [
    "calibration",
    "cyclotomic",
    "mmr",
    "bounds",
    "lobachevsky",
    "geometry",
    "rmax",
    "qfact",
    "borromean",
    "symmetry",
    "qholo",
];

/// Failures known to be unavoidable, by suite and message prefix; see the
/// README.
pub const DOCUMENTED_FAILURES: [(&str, &str); 1] = [("rmax", CLOSED_FORM_ARGMAX)];

const CLOSED_FORM_ARGMAX: &str = "closed-form argmax";

impl SuiteResult {
    /// Failed, but only in documented ways.
    pub fn documented_failure(&self) -> bool {
        !self.passed
            && self.failures.iter().all(|f| {
                DOCUMENTED_FAILURES.iter().any(|(n, prefix)| *n == self.name && f.starts_with(prefix))
            })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub knot: Option<String>,
    pub order: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub id: u8,
    pub name: &'static str,
    pub title: &'static str,
    pub passed: bool,
    /// Failed conditions, empty on success.
    pub failures: Vec<String>,
    pub detail: String,
    /// Seconds.
    pub elapsed: f64,
    pub limit: Option<f64>,
}

impl SuiteResult {
    pub fn line(&self) -> String {
        format!(
            "{} {} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed,
            self.detail
        )
    }
}

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new(), notes: Vec::new() }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

type Body = fn(&Overrides, &mut Check) -> anyhow::Result<()>;

fn spec(name: &str) -> Option<(u8, &'static str, Option<f64>, Body)> {
    Some(match name {
        "calibration" => (1, "calibration", Some(10.0), calibration as Body),
        "cyclotomic" => (2, "cyclotomic integrity", Some(60.0), cyclotomic),
        "mmr" => (3, "loop expansion vs Alexander polynomial", None, mmr),
        "bounds" => (4, "norm, degree and growth bounds", None, bounds),
        "lobachevsky" => (5, "Lobachevsky function and v8", None, lobachevsky_suite),
        "geometry" => (6, "growth-rate geometry", None, geometry),
        "rmax" => (7, "discrete maximum", None, rmax),
        "qfact" => (8, "quantum factorial asymptotics", Some(60.0), qfact),
        "borromean" => (9, "Borromean rings", Some(30.0), borromean),
        "symmetry" => (10, "symmetry and near-2πi behavior", None, symmetry),
        "qholo" => (11, "q-holonomic bounds", None, qholo),
        _ => return None,
    })
}

pub fn run_one(name: &str, o: &Overrides) -> anyhow::Result<SuiteResult> {
    let Some((id, title, limit, body)) = spec(name) else {
        bail!("unknown suite `{name}`; expected one of {} or all", NAMES.join(", "));
    };
    let start = Instant::now();
    let mut c = Check::new();
    if let Err(e) = body(o, &mut c) {
        c.expect(false, format!("error: {e:#}"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    if let Some(l) = limit {
        c.expect(elapsed < l, format!("took {elapsed:.1}s, limit {l}s"));
    }
    let all: Vec<String> = c.failures.iter().chain(&c.notes).cloned().collect();
    let detail = if all.is_empty() { "ok".to_string() } else { all.join("; ") };
    let name = NAMES.iter().find(|n| **n == name).copied().unwrap_or("?");
    Ok(SuiteResult { id, name, title, passed: c.failures.is_empty(), failures: c.failures, detail, elapsed, limit })
}

/// A named suite, or every suite in order for `all`.
pub fn run(name: &str, o: &Overrides) -> anyhow::Result<Vec<SuiteResult>> {
    if name == "all" {
        NAMES.iter().map(|n| run_one(n, o)).collect()
    } else {
        Ok(vec![run_one(name, o)?])
    }
}

fn knots<'a>(o: &'a Overrides, default: &[&'a str]) -> Vec<&'a str> {
    match &o.knot {
        Some(k) => vec![k.as_str()],
        None => default.to_vec(),
    }
}

fn calibration(o: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    for name in corpus::UNKNOTS {
        let t = corpus::knot(name)?;
        for n in 1..=10 {
            c.expect(colored_jones(&t, n)?.is_one(), format!("J({name}, {n}) ≠ 1"));
        }
    }
    for name in knots(o, &["3_1", "4_1", "5_2"]) {
        let t = corpus::knot(name)?;
        let pd = corpus::pd(name)?;
        c.expect(colored_jones(&t, 2)? == bracket_oracle(&pd)?, format!("{name}: n = 2 differs from the bracket"));
    }
    let t = corpus::knot("3_1")?;
    c.expect(
        colored_jones(&t, 3)? == cabling_oracle(&corpus::pd("3_1")?, 3)?,
        "3_1: n = 3 differs from the cabling",
    );
    Ok(())
}

fn cyclotomic(o: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let kmax = o.order.unwrap_or(6);
    for name in knots(o, &["3_1", "4_1", "5_2"]) {
        let t = corpus::knot(name)?;
        let exp = habiro_h(name, &t, kmax)?;
        for (k, h) in exp.h.iter().enumerate() {
            c.expect(is_integral(h), format!("H_({name},{k}) is not integral"));
        }
        for n in 1..=kmax + 1 {
            let r = reconstruct(&exp, n, &colored_jones(&t, n)?)?;
            c.expect(r.passed(), format!("{name}: reconstruction fails at n = {n}"));
        }
    }
    let t = corpus::knot("4_1")?;
    let exp = habiro_h("4_1", &t, 5)?;
    c.expect(exp.h.iter().all(QLaurent::is_one), "H_(4_1,k) ≠ 1 for some k ≤ 5");
    Ok(())
}

fn mmr(o: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let order = o.order.unwrap_or(8);
    let d = 6;
    for name in knots(o, &["3_1", "4_1"]) {
        let t = corpus::knot(name)?;
        let delta = alexander_poly(&corpus::pd(name)?)?;
        let table = finite_type_table(name, &t, order.max(d + 1))?;
        let r = mmr_check(&table, &delta)?;
        c.expect(r.passed(), format!("{name}: R_0 differs at orders {:?}", r.mismatches));
        let exp = habiro_h(name, &t, (d + 1) / 2)?;
        for p in 0..=1 {
            let r = compare_loop_cyclotomic(&table, &exp, p, d)?;
            c.expect(r.passed(), format!("{name}: R_{p} vs cyclotomic differs at orders {:?}", r.mismatches));
        }
    }
    c.note(format!("orders {order} and {d}"));
    Ok(())
}

fn bounds(o: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let n_max = o.order.unwrap_or(12);
    let all: Vec<&str> = corpus::names().collect();
    let reports = knots(o, &all)
        .par_iter()
        .map(|name| Ok((*name, check_bounds(&corpus::knot(name)?, n_max)?)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    for (name, r) in reports {
        c.expect(r.passed(), format!("{name}: {}", r.failures.join(", ")));
    }
    let jobs: Vec<(&str, Complex64)> = knots(o, &["3_1", "4_1"])
        .into_iter()
        .flat_map(|k| DEFAULT_ALPHAS.iter().map(move |a| (k, *a)))
        .collect();
    let growth = jobs
        .par_iter()
        .map(|(name, a)| Ok((*name, *a, check_upper_bound(&corpus::knot(name)?, *a, 30)?.passed())))
        .collect::<anyhow::Result<Vec<_>>>()?;
    for (name, a, ok) in growth {
        c.expect(ok, format!("{name}: growth bound fails at α = {a}"));
    }
    Ok(())
}

fn lobachevsky_suite(_: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let v = 8.0 * lobachevsky(PI / 4.0);
    c.expect((v - V8_PRINTED).abs() < 1e-12, format!("8Λ(π/4) = {v}"));
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let t: f64 = r.gen_range(-10.0..10.0);
        let odd = (lobachevsky(-t) + lobachevsky(t)).abs();
        let dup = (0.5 * lobachevsky(2.0 * t) - lobachevsky(t) - lobachevsky(t + PI / 2.0)).abs();
        worst = worst.max(odd).max(dup);
    }
    c.expect(worst < 1e-12, format!("identity defect {worst:e}"));
    c.note(format!("|8Λ(π/4) - v8| = {:.1e}, identity defect {worst:.1e}", (v - V8_PRINTED).abs()));
    Ok(())
}

fn random_plus(r: &mut ChaCha8Rng) -> AngleTriple {
    loop {
        let t = AngleTriple::new(r.gen(), r.gen(), r.gen());
        if t.plus_admissible() {
            return t;
        }
    }
}

fn geometry(_: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let top = r_plus(AngleTriple::new(0.75, 0.25, 0.5))?;
    c.expect((top - V8_PRINTED / (2.0 * PI)).abs() < 1e-12, format!("r_+(3/4,1/4,1/2) = {top}"));
    let m = maximize_r().argmax;
    c.expect(
        (m.alpha - 0.75).abs() < 1e-6 && (m.beta - 0.25).abs() < 1e-6 && (m.kappa - 0.5).abs() < 1e-6,
        format!("argmax {m:?}"),
    );
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let t = random_plus(&mut r);
        worst = worst.max((octahedron_volume(t)? - 2.0 * PI * r_plus(t)?).abs());
    }
    c.expect(worst <= 1e-9, format!("octahedron defect {worst:e}"));
    let mut tetra = 0.0f64;
    for i in 1..=1000 {
        let theta = 2.0 * PI * i as f64 / 1001.0;
        let z = ShapeParam::new(Complex64::from_polar(1.0, theta))?;
        tetra = tetra.max((tetra_volume(z) - 2.0 * lobachevsky(theta / 2.0)).abs());
    }
    c.expect(tetra <= 1e-10, format!("tetrahedron defect {tetra:e}"));
    c.note(format!("octahedron defect {worst:.1e}, tetrahedron defect {tetra:.1e}"));
    Ok(())
}

fn rmax(_: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let results = (5..=60usize).into_par_iter().map(discrete_rmax).collect::<Result<Vec<_>, _>>()?;
    let wrong: Vec<usize> = results.iter().filter(|d| d.argmax != d.predicted).map(|d| d.n).collect();
    let below: Vec<usize> = results.iter().filter(|d| !d.predicted_is_max()).map(|d| d.n).collect();
    let observed = results.iter().all(|d| {
        let a = 3 * d.n / 4;
        let b = (d.n - 1) / 4;
        d.argmax == (a, b, a - b)
    });
    c.expect(
        wrong.is_empty(),
        format!(
            "{CLOSED_FORM_ARGMAX} ⌊(3n-3)/4⌋ differs from brute force for {} of 56 n (value below the maximum for n = {:?})",
            wrong.len(),
            below
        ),
    );
    c.note(format!("brute-force argmax is (⌊3n/4⌋, ⌊(n-1)/4⌋, a-b) for all 5 ≤ n ≤ 60: {observed}"));
    let target = v8() / (2.0 * PI);
    let mut last = f64::INFINITY;
    let mut res = Vec::new();
    for n in [200usize, 500, 1000, 2000] {
        let p = predicted_argmax(n);
        let table = jonescope_core::hypervol::log_qfact_table(n);
        let v = jonescope_core::hypervol::log_r_plus(&table, p.0, p.1, p.2);
        let x = (v / n as f64 - target).abs();
        c.expect(x < last, format!("residual not decreasing at n = {n}"));
        res.push(format!("{x:.2e}"));
        last = x;
    }
    c.expect(last <= 2e-2, format!("residual {last:e} at n = 2000"));
    c.note(format!("residuals {}", res.join(", ")));
    Ok(())
}

fn qfact(_: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let alphas: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let (fit, full) = rayon::join(|| qfact_scan(&alphas, 2500), || qfact_scan(&alphas, 5000));
    c.expect(fit.c.is_finite(), "fitted C is not finite");
    c.expect(
        full.c <= fit.c * (1.0 + 1e-9),
        format!("C fitted on n ≤ 2500 is {}, but n ≤ 5000 needs {} (n = {})", fit.c, full.c, full.worst.0),
    );
    c.note(format!("C = {:.4} over {} samples", full.c, full.samples));
    Ok(())
}

fn borromean(_: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let worst = (2..=EXACT_MAX)
        .into_par_iter()
        .map(|n| -> anyhow::Result<f64> {
            let j = habiro_borromean(n)?;
            let e = eval_auto(&j, &EvalPoint::root_of_unity(n as u64), 1e-12, 0.0);
            Ok((e.value.re.ln() - reduced_eval(n)?).abs())
        })
        .collect::<anyhow::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    c.expect(worst <= 1e-8, format!("exact vs reduced differ by {worst:e}"));
    let rows = volume_scan(&[250, 500, 1000, 2000])?;
    for w in rows.windows(2) {
        c.expect(w[1].residual.abs() < w[0].residual.abs(), format!("residual not decreasing at n = {}", w[1].n));
    }
    let last = rows.last().expect("four rows");
    c.expect(last.relative().abs() <= 0.05, format!("relative residual {} at n = 2000", last.relative()));
    c.note(format!(
        "exact vs reduced {worst:.1e}; relative residuals {}",
        rows.iter().map(|r| format!("{:.3}", r.relative())).collect::<Vec<_>>().join(", ")
    ));
    Ok(())
}

fn symmetry(o: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let names = knots(o, &["3_1", "4_1"]);
    let mut pairs = 0;
    for name in &names {
        let t = corpus::knot(name)?;
        for r in symmetry_scan(&t, 12, 13)? {
            pairs += 1;
            c.expect(r.passed(), format!("{name}: n = {}, m = {}, m' = {}", r.n, r.m, r.m_prime));
        }
        let near1 = near1_scan(&t, 1, 12)?;
        let worst = near1.rates().into_iter().map(f64::abs).fold(0.0, f64::max);
        c.expect(worst <= 1e-12, format!("{name}: near-1 rate {worst:e}"));
    }
    let t = corpus::knot("3_1")?;
    let delta = alexander_poly(&corpus::pd("3_1")?)?;
    let r = near2_scan(&t, &delta, 9, 10, 12, 27)?;
    let exact = r.rows.iter().filter(|x| x.exact == Some(true)).count();
    c.expect(r.symmetry_holds() && exact > 0, "near-2πi values differ from their reduced form");
    c.expect(r.bounded(), "near-2πi scan is not bounded");
    c.note(format!("{pairs} symmetric pairs; {exact} exact near-2πi comparisons"));
    Ok(())
}

/// A random recurrence with leading coefficient 1 and its initial values.
pub fn random_recurrence(seed: u64) -> (QDiffEq, Vec<QLaurent>) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let d = r.gen_range(1..=3);
    let mut a: Vec<BiPoly> = (0..d)
        .map(|_| BiPoly::new((0..3).map(|_| (r.gen_range(0..3i64), r.gen_range(-2..3i64), r.gen_range(-3..4i64)))))
        .collect();
    a.push(BiPoly::one());
    let init = (0..d)
        .map(|_| QLaurent::from_terms((0..r.gen_range(1..4)).map(|_| (4 * r.gen_range(-3..4i64), r.gen_range(-2..3i64)))))
        .collect();
    (QDiffEq::new(a).expect("leading coefficient is 1"), init)
}

fn qholo(_: &Overrides, c: &mut Check) -> anyhow::Result<()> {
    let eq = QDiffEq::sharpness();
    let one = [QLaurent::one()];
    let f = generate(&eq, &one, 40)?;
    for (n, x) in f.iter().enumerate() {
        c.expect(x.deg_plus()? == 4 * (n * (n + 1) / 2) as i64, format!("deg f_{n}"));
        c.expect(x.l1() == BigInt::from(1) << n, format!("‖f_{n}‖₁"));
    }
    match verify_bounds(&eq, &one, 40) {
        Ok(r) => c.note(format!("sharpness C = {}", r.constants.c_f64().unwrap_or(f64::NAN))),
        Err(e) => c.expect(false, format!("sharpness family: {e}")),
    }
    for seed in 0..20 {
        let (eq, init) = random_recurrence(seed);
        if let Err(e) = verify_bounds(&eq, &init, 30) {
            c.expect(false, format!("seed {seed}: {e}"));
        }
    }
    Ok(())
}
