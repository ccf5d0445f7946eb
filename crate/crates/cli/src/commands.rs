use std::f64::consts::PI;
use std::path::Path;

use anyhow::{bail, Context};
use jonescope_core::asymptotics::{
    check_upper_bound, compare_loop_cyclotomic, finite_type_table, loop_p, mmr_check, near1_scan, near2_scan,
    reconstruct_p, SeriesComparison,
};
use jonescope_core::borromean::{borromean_eval, habiro_borromean, volume_scan, EXACT_MAX};
use jonescope_core::cyclotomic::{check_bound_c, habiro_h, is_integral, reconstruct};
use jonescope_core::diagram::{parse_morse, parse_pd, pd_to_morse, MorseTangle, PdCode};
use jonescope_core::eval::eval_auto;
use jonescope_core::hypervol::{
    discrete_rmax, log_qfact_table, log_r_plus, lobachevsky, octahedron_volume, predicted_argmax, r_plus, v8,
    AngleTriple,
};
use jonescope_core::qholo::{generate, residuals, verify_bounds, QDiffEq};
use jonescope_core::statesum::{alexander_poly, check_bounds, colored_jones, colored_jones_transfer};
use jonescope_core::{corpus, eval_complex, EvalPoint, QLaurent, QSeries};
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli::{Command, KnotArgs};
use crate::config::RunConfig;
use crate::output::{fmt_float, Outcome, Table};
use crate::parallel::colored_jones_parallel;
use crate::suites;

/// A knot given on the command line.
pub struct Knot {
    pub name: String,
    pub tangle: MorseTangle,
    pub pd: Option<PdCode>,
}

impl Knot {
    fn pd(&self, what: &str) -> anyhow::Result<&PdCode> {
        self.pd
            .as_ref()
            .with_context(|| format!("`{what}` needs a PD code; `{}` has none", self.name))
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_knot(args: &KnotArgs) -> anyhow::Result<Knot> {
    if let Some(name) = &args.knot {
        let tangle = corpus::knot(name)?;
        let pd = corpus::pd(name).ok();
        return Ok(Knot { name: name.clone(), tangle, pd });
    }
    if let Some(path) = &args.morse {
        let tangle = parse_morse(&read(path)?)?;
        return Ok(Knot { name: path.display().to_string(), tangle, pd: None });
    }
    if let Some(path) = &args.pd {
        let pd = parse_pd(&read(path)?)?;
        let tangle = pd_to_morse(&pd)?;
        return Ok(Knot { name: path.display().to_string(), tangle, pd: Some(pd) });
    }
    bail!("one of --knot, --morse, --pd is required")
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn rational(r: &BigRational) -> String {
    r.to_string()
}

fn series(s: &QSeries) -> Vec<String> {
    s.coeffs().iter().map(rational).collect()
}

fn stats_json(t: &MorseTangle) -> Value {
    let s = t.stats();
    json!({"crossings": s.crossing_count, "writhe": s.writhe, "c": s.c, "max_width": t.max_width()})
}

fn comparison_table(c: &SeriesComparison) -> Table {
    let mut table = Table::new(vec!["order", "expected", "actual", "equal"]);
    let d = c.expected.order().min(c.actual.order());
    for i in 0..=d {
        let (e, a) = (c.expected.coeff(i), c.actual.coeff(i));
        table.push(vec![i.into(), rational(&e).into(), rational(&a).into(), (e == a).into()]);
    }
    table
}

fn laurent_table(f: &QLaurent) -> Table {
    let mut table = Table::new(vec!["exponent", "coefficient"]);
    for (e, c) in f.terms() {
        table.push(vec![(*e).into(), c.to_string().into()]);
    }
    table
}

/// Parses `re,im` or a bare real part.
pub fn parse_alpha(s: &str) -> anyhow::Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().with_context(|| format!("bad α component {x:?}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => bail!("α must be `re,im`, got {s:?}"),
    }
}

/// Runs one subcommand. `replay` is handled by the caller.
pub fn run(cmd: &Command, config: &RunConfig) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Jones { knot, n, root, check } => jones(&load_knot(knot)?, *n, *root, *check, config),
        Command::Cyclotomic { knot, max_k, verify } => cyclotomic(&load_knot(knot)?, *max_k, *verify),
        Command::Mmr { knot, order } => mmr(&load_knot(knot)?, *order),
        Command::Loop { knot, p, order } => loop_expansion(&load_knot(knot)?, *p, *order),
        Command::ScanNear1 { knot, m, n_max } => scan_near1(&load_knot(knot)?, *m, *n_max),
        Command::ScanNear2 { knot, p, m, n_max, direct_cap } => {
            scan_near2(&load_knot(knot)?, *p, *m, *n_max, *direct_cap)
        }
        Command::BoundCheck { knot, n_max, alpha, alpha_n_max } => {
            bound_check(&load_knot(knot)?, *n_max, alpha, *alpha_n_max)
        }
        Command::Lob { theta } => lob(theta),
        Command::Rmax { n, brute } => rmax(n, *brute),
        Command::Octa { alpha, beta, kappa } => octa(*alpha, *beta, *kappa),
        Command::Borromean { scan, exact } => borromean(scan, *exact),
        Command::Qholo { eq, init, n_max, verify, knot } => {
            qholo(eq.as_deref(), init.as_deref(), *n_max, *verify, knot.as_deref())
        }
        Command::Verify { suite, knot, order } => verify(suite, knot.as_deref(), *order),
        Command::Corpus => corpus_list(),
        Command::Replay { .. } => bail!("replay must be dispatched before run"),
    }
}

fn jones(k: &Knot, n: usize, root: Option<u64>, check: bool, config: &RunConfig) -> anyhow::Result<Outcome> {
    if n == 0 {
        bail!("--n must be positive");
    }
    let run = colored_jones_parallel(&k.tangle, n)?;
    let mut out = Outcome::new(serde_json::to_value(&run.result)?)
        .with("knot", json!(k.name))
        .with("n", json!(n))
        .with("stats", stats_json(&k.tangle))
        .with("states_visited", json!(run.states_visited))
        .with("pruned", json!(run.pruned));
    if let Some(m) = root {
        if m == 0 {
            bail!("--root must be positive");
        }
        let e = eval_complex(&run.result, &EvalPoint::root_of_unity(m).with_precision(config.precision_bits()));
        out = out.with("root", json!({"m": m, "value": complex(e.value), "error_bound": e.error_bound}));
    }
    let mut passed = true;
    if check {
        passed = colored_jones_transfer(&k.tangle, n)? == run.result;
        out = out.with("transfer_agrees", json!(passed));
    }
    Ok(out.table(laurent_table(&run.result)).passed(passed))
}

fn cyclotomic(k: &Knot, max_k: usize, verify: bool) -> anyhow::Result<Outcome> {
    let exp = habiro_h(&k.name, &k.tangle, max_k)?;
    let integral = exp.h.iter().all(is_integral);
    let bounds = check_bound_c(&exp)?;
    let mut table = Table::new(vec!["k", "deg_plus", "deg_minus", "l1", "h"]);
    for (row, h) in bounds.rows.iter().zip(&exp.h) {
        table.push(vec![
            row.n.into(),
            row.deg_plus.into(),
            row.deg_minus.into(),
            h.l1().to_string().into(),
            serde_json::to_string(h)?.into(),
        ]);
    }
    let mut out = Outcome::new(serde_json::to_value(&exp.h)?)
        .with("knot", json!(k.name))
        .with("integral", json!(integral))
        .with("a0", json!(bounds.a0))
        .with("a1", json!(bounds.a1));
    let mut passed = integral;
    if verify {
        let mut rows = Vec::new();
        for n in 1..=max_k + 1 {
            let j = colored_jones(&k.tangle, n)?;
            let ok = reconstruct(&exp, n, &j)?.passed();
            passed &= ok;
            rows.push(json!({"n": n, "exact": ok}));
        }
        out = out.with("reconstruction", Value::Array(rows));
    }
    Ok(out.table(table).passed(passed))
}

fn mmr(k: &Knot, order: usize) -> anyhow::Result<Outcome> {
    let delta = alexander_poly(k.pd("mmr")?)?;
    let table = finite_type_table(&k.name, &k.tangle, order)?;
    let c = mmr_check(&table, &delta)?;
    Ok(Outcome::new(json!(series(&c.actual)))
        .with("knot", json!(k.name))
        .with("alexander", serde_json::to_value(&delta)?)
        .with("expected", json!(series(&c.expected)))
        .with("mismatches", json!(c.mismatches))
        .table(comparison_table(&c))
        .passed(c.passed()))
}

fn loop_expansion(k: &Knot, p: usize, order: usize) -> anyhow::Result<Outcome> {
    let table = finite_type_table(&k.name, &k.tangle, order + p)?;
    let r = loop_p(&table, p)?.truncate(order)?;
    let exp = habiro_h(&k.name, &k.tangle, (order + p) / 2)?;
    let c = compare_loop_cyclotomic(&table, &exp, p, order)?;
    let mut out = Outcome::new(json!(series(&r))).with("knot", json!(k.name)).with("p", json!(p));
    if p <= 1 {
        if let Some(pd) = &k.pd {
            let delta = alexander_poly(pd)?;
            let num = reconstruct_p(&table, &delta, p)?;
            let terms: Vec<Value> = num.terms.iter().map(|(e, c)| json!([e, rational(c)])).collect();
            out = out.with("numerator", json!({"terms": terms}));
        }
    }
    Ok(out
        .with("cyclotomic_mismatches", json!(c.mismatches))
        .table(comparison_table(&c))
        .passed(c.passed()))
}

fn scan_near1(k: &Knot, m: usize, n_max: usize) -> anyhow::Result<Outcome> {
    let r = near1_scan(&k.tangle, m, n_max)?;
    let mut table = Table::new(vec!["n", "value_re", "value_im", "envelope", "rate"]);
    let mut rows = Vec::new();
    for (row, rate) in r.rows.iter().zip(r.rates()) {
        table.push(vec![row.n.into(), row.value.re.into(), row.value.im.into(), row.envelope.into(), rate.into()]);
        rows.push(json!({"n": row.n, "value": complex(row.value), "envelope": row.envelope, "rate": rate}));
    }
    Ok(Outcome::new(Value::Array(rows))
        .with("knot", json!(k.name))
        .with("m", json!(m))
        .table(table)
        .passed(r.trends_to_zero()))
}

fn scan_near2(k: &Knot, p: usize, m: usize, n_max: usize, direct_cap: usize) -> anyhow::Result<Outcome> {
    let delta = alexander_poly(k.pd("scan-near2")?)?;
    let r = near2_scan(&k.tangle, &delta, p, m, n_max, direct_cap)?;
    let mut table =
        Table::new(vec!["n", "value_re", "value_im", "direct_re", "direct_im", "exact", "distance"]);
    let mut rows = Vec::new();
    for row in &r.rows {
        let text = |x: Option<f64>| x.map_or_else(String::new, fmt_float);
        table.push(vec![
            row.n.into(),
            row.value.re.into(),
            row.value.im.into(),
            text(row.direct.map(|d| d.re)).into(),
            text(row.direct.map(|d| d.im)).into(),
            row.exact.map_or_else(String::new, |b| b.to_string()).into(),
            row.distance.into(),
        ]);
        rows.push(json!({
            "n": row.n,
            "value": complex(row.value),
            "direct": row.direct.map(complex),
            "exact": row.exact,
            "distance": row.distance,
        }));
    }
    let (sym, bounded) = (r.symmetry_holds(), r.bounded());
    Ok(Outcome::new(Value::Array(rows))
        .with("knot", json!(k.name))
        .with("limit", complex(r.limit))
        .with("symmetry_holds", json!(sym))
        .with("bounded", json!(bounded))
        .table(table)
        .passed(sym && bounded))
}

pub const DEFAULT_ALPHAS: [Complex64; 3] =
    [Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0 * PI)];

fn bound_check(k: &Knot, n_max: usize, alpha: &[String], alpha_n_max: usize) -> anyhow::Result<Outcome> {
    let report = check_bounds(&k.tangle, n_max)?;
    let mut table = Table::new(vec!["n", "l1", "l1_bound", "deg_plus", "deg_minus", "env_plus", "env_minus"]);
    for r in &report.rows {
        table.push(vec![
            r.n.into(),
            r.l1.to_string().into(),
            r.l1_bound.to_string().into(),
            r.deg_plus.into(),
            r.deg_minus.into(),
            r.env_plus.into(),
            r.env_minus.into(),
        ]);
    }
    let alphas = if alpha.is_empty() {
        DEFAULT_ALPHAS.to_vec()
    } else {
        alpha.iter().map(|a| parse_alpha(a)).collect::<anyhow::Result<_>>()?
    };
    let mut passed = report.passed();
    let mut growth = Vec::new();
    for a in alphas {
        let g = check_upper_bound(&k.tangle, a, alpha_n_max)?;
        passed &= g.passed();
        let worst = g.rows.iter().map(|r| r.rate - r.bound).fold(f64::NEG_INFINITY, f64::max);
        growth.push(json!({"alpha": complex(a), "margin": g.margin, "worst_slack": worst, "passed": g.passed()}));
    }
    Ok(Outcome::new(json!({
        "s_plus": report.s_plus,
        "s_minus": report.s_minus,
        "failures": report.failures,
        "growth": growth,
    }))
    .with("knot", json!(k.name))
    .with("stats", stats_json(&k.tangle))
    .table(table)
    .passed(passed))
}

fn lob(theta: &[f64]) -> anyhow::Result<Outcome> {
    if theta.is_empty() {
        bail!("give at least one --theta");
    }
    let mut table = Table::new(vec!["theta", "value"]);
    let mut rows = Vec::new();
    for &t in theta {
        let v = lobachevsky(t);
        table.push(vec![t.into(), v.into()]);
        rows.push(json!({"theta": t, "value": v}));
    }
    Ok(Outcome::new(Value::Array(rows)).with("v8", json!(v8())).table(table))
}

fn rmax(ns: &[usize], brute: bool) -> anyhow::Result<Outcome> {
    if ns.is_empty() {
        bail!("give at least one --n");
    }
    let target = v8() / (2.0 * PI);
    let rows: Vec<Value> = ns
        .par_iter()
        .map(|&n| -> anyhow::Result<Value> {
            if n < 5 {
                bail!("rmax needs n ≥ 5, got {n}");
            }
            let predicted = predicted_argmax(n);
            if brute {
                let d = discrete_rmax(n)?;
                Ok(json!({
                    "n": n,
                    "argmax": [d.argmax.0, d.argmax.1, d.argmax.2],
                    "logmax": d.logmax,
                    "rate": d.logmax / n as f64,
                    "residual": d.logmax / n as f64 - target,
                    "predicted": [predicted.0, predicted.1, predicted.2],
                    "predicted_value": d.predicted_value,
                    "predicted_is_max": d.predicted_is_max(),
                    "exhaustive": d.exhaustive,
                }))
            } else {
                let v = log_r_plus(&log_qfact_table(n), predicted.0, predicted.1, predicted.2);
                Ok(json!({
                    "n": n,
                    "predicted": [predicted.0, predicted.1, predicted.2],
                    "predicted_value": v,
                    "rate": v / n as f64,
                    "residual": v / n as f64 - target,
                }))
            }
        })
        .collect::<anyhow::Result<_>>()?;
    let mut table = Table::new(vec!["n", "a", "b", "k", "log_value", "rate", "residual"]);
    for r in &rows {
        let t = if brute { &r["argmax"] } else { &r["predicted"] };
        let v = if brute { &r["logmax"] } else { &r["predicted_value"] };
        table.push(vec![
            r["n"].as_u64().unwrap_or(0).into(),
            t[0].as_u64().unwrap_or(0).into(),
            t[1].as_u64().unwrap_or(0).into(),
            t[2].as_u64().unwrap_or(0).into(),
            v.as_f64().unwrap_or(f64::NAN).into(),
            r["rate"].as_f64().unwrap_or(f64::NAN).into(),
            r["residual"].as_f64().unwrap_or(f64::NAN).into(),
        ]);
    }
    Ok(Outcome::new(Value::Array(rows)).with("target", json!(target)).table(table))
}

fn octa(alpha: f64, beta: f64, kappa: f64) -> anyhow::Result<Outcome> {
    let t = AngleTriple::new(alpha, beta, kappa);
    let vol = octahedron_volume(t)?;
    let r = r_plus(t)?;
    let diff = (vol - 2.0 * PI * r).abs();
    Ok(Outcome::new(json!({"volume": vol, "r_plus": r, "two_pi_r_plus": 2.0 * PI * r, "difference": diff}))
        .passed(diff <= 1e-9))
}

fn borromean(scan: &[usize], exact: Option<usize>) -> anyhow::Result<Outcome> {
    match (scan.is_empty(), exact) {
        (false, None) => {
            let mut rows = scan
                .par_iter()
                .map(|&n| volume_scan(&[n]).map(|mut v| v.remove(0)))
                .collect::<jonescope_core::Result<Vec<_>>>()?;
            rows.sort_by_key(|r| r.n);
            let monotone = rows.windows(2).all(|w| w[1].residual.abs() < w[0].residual.abs());
            let mut table = Table::new(vec!["n", "normalized", "residual", "relative"]);
            let mut out = Vec::new();
            for r in &rows {
                table.push(vec![r.n.into(), r.normalized.into(), r.residual.into(), r.relative().into()]);
                out.push(json!({"n": r.n, "normalized": r.normalized, "residual": r.residual, "relative": r.relative()}));
            }
            Ok(Outcome::new(Value::Array(out))
                .with("target", json!(2.0 * v8()))
                .with("monotone", json!(monotone))
                .table(table)
                .passed(monotone))
        }
        (true, Some(n)) => {
            if n == 0 || n > EXACT_MAX {
                bail!("--exact needs 1 ≤ n ≤ {EXACT_MAX}");
            }
            let j = habiro_borromean(n)?;
            let mut out = Outcome::new(serde_json::to_value(&j)?).with("n", json!(n)).with("at_one", json!(j.at_one().to_string()));
            let mut passed = true;
            if n >= 2 {
                let e = borromean_eval(n, false)?;
                let direct = eval_auto(&j, &EvalPoint::root_of_unity(n as u64), 1e-12, 0.0);
                let rel = (direct.value.re.ln() - e.reduced).abs();
                passed = rel <= 1e-8;
                out = out
                    .with("log_exact", json!(direct.value.re.ln()))
                    .with("log_reduced", json!(e.reduced))
                    .with("difference", json!(rel));
            }
            Ok(out.table(laurent_table(&j)).passed(passed))
        }
        _ => bail!("give exactly one of --scan or --exact"),
    }
}

fn qholo(
    eq_path: Option<&Path>,
    init_path: Option<&Path>,
    n_max: usize,
    verify: bool,
    knot: Option<&str>,
) -> anyhow::Result<Outcome> {
    let eq = match eq_path {
        Some(p) => QDiffEq::parse(&read(p)?)?,
        None => QDiffEq::sharpness(),
    };
    if let Some(name) = knot {
        let t = corpus::knot(name)?;
        let f = (0..=n_max).map(|n| colored_jones(&t, n + 1)).collect::<jonescope_core::Result<Vec<_>>>()?;
        let res = residuals(&eq, &f);
        let nonzero: Vec<usize> = res.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, _)| i).collect();
        let mut table = Table::new(vec!["n", "residual_l1"]);
        for (i, r) in res.iter().enumerate() {
            table.push(vec![i.into(), r.l1().to_string().into()]);
        }
        return Ok(Outcome::new(json!({"knot": name, "nonzero_residuals": nonzero}))
            .with("equation", json!(eq.to_string()))
            .table(table));
    }
    let init: Vec<QLaurent> = match init_path {
        Some(p) => serde_json::from_str(&read(p)?).with_context(|| format!("bad initial values in {}", p.display()))?,
        None => vec![QLaurent::one(); eq.order()],
    };
    let f = generate(&eq, &init, n_max)?;
    let mut out = Outcome::new(serde_json::to_value(&f)?).with("equation", json!(eq.to_string()));
    let mut table = Table::new(vec!["n", "deg_plus", "deg_minus", "l1"]);
    for (n, x) in f.iter().enumerate() {
        let (p, m) = match x.measures() {
            Ok(ms) => (ms.deg_plus.to_string(), ms.deg_minus.to_string()),
            Err(_) => (String::new(), String::new()),
        };
        table.push(vec![n.into(), p.into(), m.into(), x.l1().to_string().into()]);
    }
    let mut passed = true;
    if verify {
        match verify_bounds(&eq, &init, n_max) {
            Ok(r) => {
                let c = &r.constants;
                out = out.with(
                    "bounds",
                    json!({
                        "c_prime": c.c_prime,
                        "c": c.c.as_ref().map(rational),
                        "k": c.k.as_ref().map(rational),
                        "holds": true,
                    }),
                );
            }
            Err(e) => {
                passed = false;
                out = out.with("bounds", json!({"holds": false, "error": e.to_string()}));
            }
        }
    }
    Ok(out.table(table).passed(passed))
}

fn verify(suite: &str, knot: Option<&str>, order: Option<usize>) -> anyhow::Result<Outcome> {
    let results = suites::run(suite, &suites::Overrides { knot: knot.map(str::to_string), order })?;
    let mut table = Table::new(vec!["id", "name", "passed", "elapsed", "limit", "detail"]);
    for r in &results {
        table.push(vec![
            (r.id as usize).into(),
            r.name.to_string().into(),
            r.passed.into(),
            r.elapsed.into(),
            r.limit.map_or_else(String::new, fmt_float).into(),
            r.detail.clone().into(),
        ]);
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(Outcome::new(serde_json::to_value(&results)?).table(table).passed(passed))
}

fn corpus_list() -> anyhow::Result<Outcome> {
    let mut table = Table::new(vec!["name", "crossings", "writhe", "c", "max_width", "has_pd"]);
    let mut rows = Vec::new();
    for name in corpus::names() {
        let t = corpus::knot(name)?;
        let s = t.stats();
        let has_pd = corpus::pd(name).is_ok();
        table.push(vec![
            name.to_string().into(),
            s.crossing_count.into(),
            s.writhe.into(),
            s.c.into(),
            t.max_width().into(),
            has_pd.into(),
        ]);
        rows.push(json!({
            "name": name,
            "crossings": s.crossing_count,
            "writhe": s.writhe,
            "c": s.c,
            "max_width": t.max_width(),
            "has_pd": has_pd,
        }));
    }
    Ok(Outcome::new(Value::Array(rows)).table(table))
}
