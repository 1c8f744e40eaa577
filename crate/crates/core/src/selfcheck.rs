//! The acceptance suite as a library: each criterion runs independently and
//! reports pass/fail with a short detail line.

use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::hyperdist::{density_scaled_closed, moment_mixture, sample, Family, MixtureDensity, MixtureSpec, WeightBound};
use crate::oracle::{eta_reference, eta_split};
use crate::params::ZetaParams;
use crate::series::series;
use crate::special::ComplexValue;
use crate::zeta::{eta_shift, hurwitz, poles_S, residue_check, EvalConfig, Evaluator};

pub const CRITERIA: [(u32, &str); 8] = [
    (1, "classical Hurwitz values"),
    (2, "eta identities"),
    (3, "even/odd split identity"),
    (4, "series/integral agreement"),
    (5, "pole residues"),
    (6, "trivial zeros"),
    (7, "density suite"),
    (8, "entirety smoke"),
];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SelfcheckOptions {
    /// Smaller sample sizes and grids.
    pub fast: bool,
    /// Optional tolerance; only ever tightens the built-in thresholds.
    pub tol: Option<f64>,
}

impl SelfcheckOptions {
    fn threshold(&self, default: f64) -> f64 {
        match self.tol {
            Some(t) if t > 0.0 && t < default => t,
            _ => default,
        }
    }

    fn eval_cfg(&self) -> EvalConfig {
        match self.tol {
            Some(t) if t > 0.0 && t < 1e-6 => EvalConfig::with_tol((t * 1e-3).clamp(1e-14, 1e-10)),
            _ => EvalConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {:<28} {}  {:>7.2}s  {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn c(re: f64, im: f64) -> ComplexValue {
    Complex64::new(re, im)
}

// Accumulates the worst deviation and the first failure message.
struct Tally {
    worst: f64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self { worst: 0.0, failure: None }
    }

    fn check(&mut self, ok: bool, deviation: f64, what: impl FnOnce() -> String) {
        if deviation.is_finite() {
            self.worst = self.worst.max(deviation);
        }
        if (!ok || !deviation.is_finite()) && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn fail(&mut self, what: String) {
        if self.failure.is_none() {
            self.failure = Some(what);
        }
    }

    fn finish(self, summary: String) -> (bool, String) {
        match self.failure {
            Some(f) => (false, f),
            None => (true, format!("{summary}, worst deviation {:.2e}", self.worst)),
        }
    }
}

fn criterion_1(opts: &SelfcheckOptions) -> (bool, String) {
    let tol = opts.threshold(1e-6);
    let cfg = opts.eval_cfg();
    let mut t = Tally::new();
    let cases = [(2.0, 1.0, std::f64::consts::PI.powi(2) / 6.0), (0.0, 1.0, -0.5), (-1.0, 1.0, -1.0 / 12.0), (0.0, 0.3, 0.2)];
    for (s, b, want) in cases {
        let start = Instant::now();
        match hurwitz(c(s, 0.0), b, &cfg) {
            Ok(v) => {
                let secs = start.elapsed().as_secs_f64();
                let dev = (v.value - c(want, 0.0)).norm();
                t.check(dev <= tol, dev, || format!("hurwitz({s}, {b}) = {} deviates by {dev:.2e}", v.value));
                t.check(secs < 1.0, 0.0, || format!("hurwitz({s}, {b}) took {secs:.2}s"));
            }
            Err(e) => t.fail(format!("hurwitz({s}, {b}): {e}")),
        }
    }
    t.finish(format!("4 values within {tol:.0e}, each under 1s"))
}

fn criterion_2(opts: &SelfcheckOptions) -> (bool, String) {
    let tol = opts.threshold(1e-6);
    let cfg = opts.eval_cfg();
    let mut t = Tally::new();
    let points = [c(-2.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(2.0, 3.0)];
    for s in points {
        match (eta_shift(s, 1.0, &cfg), eta_reference(s)) {
            (Ok(v), Ok(o)) => {
                let dev = (v.value - o.value).norm();
                t.check(dev <= tol, dev, || format!("eta_shift({s}, 1) = {} vs {} ({dev:.2e})", v.value, o.value));
            }
            (Err(e), _) | (_, Err(e)) => t.fail(format!("s = {s}: {e}")),
        }
    }
    t.finish(format!("{} points within {tol:.0e}", points.len()))
}

fn criterion_3(opts: &SelfcheckOptions) -> (bool, String) {
    let tol = opts.threshold(1e-6);
    let cfg = opts.eval_cfg();
    let mut t = Tally::new();
    for b in [1.0, 2.5] {
        for s in [c(-1.5, 0.0), c(0.5, 0.0), c(2.0, 0.0), c(1.0, 2.0)] {
            match (eta_shift(s, b, &cfg), eta_split(s, b)) {
                (Ok(v), Ok(o)) => {
                    let dev = (v.value - o.value).norm();
                    t.check(dev <= tol, dev, || format!("b = {b}, s = {s}: {} vs {} ({dev:.2e})", v.value, o.value));
                }
                (Err(e), _) | (_, Err(e)) => t.fail(format!("b = {b}, s = {s}: {e}")),
            }
        }
    }
    t.finish(format!("8 points within {tol:.0e}"))
}

/// The randomized parameter sets of the region-agreement sweep.
pub fn region_parameter_sets(count: usize, seed: u64) -> Vec<ZetaParams> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let family = [Family::Sinh, Family::Cosh, Family::Tanh][rng.gen_range(0..3)];
        let r = rng.gen_range(1..=2);
        let orders: &[f64] = if family == Family::Sinh { &[1.0, 2.0, 0.5] } else { &[1.0, 2.0] };
        let alpha: Vec<f64> = (0..r).map(|_| orders[rng.gen_range(0..orders.len())]).collect();
        let a: Vec<f64> = (0..r).map(|_| rng.gen_range(0.5..2.0)).collect();
        let b = rng.gen_range(0.6..3.0);
        let Ok(p) = ZetaParams::new(family, alpha, a, b) else { continue };
        if p.c().abs() < 0.1 {
            continue;
        }
        out.push(p);
    }
    out
}

fn criterion_4(opts: &SelfcheckOptions) -> (bool, String) {
    let count = if opts.fast { 5 } else { 20 };
    let cfg = opts.eval_cfg();
    let sets = region_parameter_sets(count, 0x5eed_2024);
    let results: Vec<std::result::Result<(f64, f64), String>> = sets
        .par_iter()
        .map(|p| {
            let ev = Evaluator::new(p, &cfg).map_err(|e| format!("{p:?}: {e}"))?;
            let mut worst = (0.0f64, 0.0f64);
            for im in [0.0, 1.0] {
                let s = c(p.beta() + 1.5, im);
                let ser = series(p, s, &cfg.series).map_err(|e| format!("series {p:?} at {s}: {e}"))?;
                let int = ev.integral(s).map_err(|e| format!("integral {p:?} at {s}: {e}"))?;
                let dev = (ser.value - int.value).norm();
                let allowed = 10.0 * (ser.err_estimate + int.err_estimate);
                if !(dev <= allowed) {
                    return Err(format!("{} {:?} a={:?} b={} s={s}: discrepancy {dev:.2e} > {allowed:.2e}", p.family.name(), p.alpha, p.a, p.b));
                }
                if dev > worst.0 {
                    worst = (dev, allowed);
                }
            }
            Ok(worst)
        })
        .collect();
    let mut t = Tally::new();
    for r in results {
        match r {
            Ok((dev, _)) => t.check(true, dev, String::new),
            Err(e) => t.fail(e),
        }
    }
    t.finish(format!("{count} parameter sets x 2 points within 10x combined estimates"))
}

fn criterion_5(opts: &SelfcheckOptions) -> (bool, String) {
    let mut t = Tally::new();
    let cases: [(Vec<f64>, Vec<f64>, f64); 3] = [(vec![1.0], vec![1.0], 1.0), (vec![1.0, 1.0], vec![1.0, 1.0], 3.0), (vec![0.5], vec![1.0], 1.0)];
    for (alpha, a, b) in cases {
        let p = match ZetaParams::new(Family::Sinh, alpha.clone(), a.clone(), b) {
            Ok(p) => p,
            Err(e) => {
                t.fail(e.to_string());
                continue;
            }
        };
        let report = match poles_S(&p, 1) {
            Ok(r) => r,
            Err(e) => {
                t.fail(format!("poles {alpha:?}: {e}"));
                continue;
            }
        };
        for entry in &report.entries {
            let tol = opts.threshold(1e-6_f64.max(1e-3 * entry.residue.abs()));
            match residue_check(&p, entry.location, 1e-3) {
                Ok(r) => {
                    let dev = (r - entry.residue).abs();
                    t.check(dev <= tol, dev, || format!("alpha {alpha:?} b {b} pole {}: limit {r} vs residue {}", entry.location, entry.residue));
                }
                Err(e) => t.fail(format!("alpha {alpha:?} pole {}: {e}", entry.location)),
            }
        }
    }
    t.finish("Hurwitz, Barnes r=2 and beta=1/2 residues".to_string())
}

fn criterion_6(opts: &SelfcheckOptions) -> (bool, String) {
    let tol = opts.threshold(1e-8);
    let cfg = opts.eval_cfg();
    let mut t = Tally::new();
    let p = ZetaParams::new(Family::Sinh, vec![0.5], vec![1.0], 1.0).expect("fixed parameters are valid");
    match Evaluator::new(&p, &cfg) {
        Ok(ev) => {
            for s in [0.0, -1.0, -2.0] {
                match ev.integral(c(s, 0.0)) {
                    Ok(v) => {
                        let dev = v.value.norm();
                        t.check(dev <= tol, dev, || format!("|S({s})| = {dev:.2e}"));
                    }
                    Err(e) => t.fail(format!("s = {s}: {e}")),
                }
            }
        }
        Err(e) => t.fail(e.to_string()),
    }
    t.finish(format!("zeros at 0, -1, -2 within {tol:.0e}"))
}

fn criterion_7(opts: &SelfcheckOptions) -> (bool, String) {
    let tol = opts.threshold(1e-8);
    let quad = opts.eval_cfg().quad;
    let mut t = Tally::new();
    let spec = |family, comps: &[(f64, f64)]| MixtureSpec::new(family, comps.to_vec()).expect("fixed specs are valid");

    for (family, comps) in [
        (Family::Sinh, vec![(1.0, 1.0)]),
        (Family::Cosh, vec![(1.0, 1.0)]),
        (Family::Tanh, vec![(1.0, 1.0)]),
        (Family::Sinh, vec![(0.7, 0.5), (1.3, 1.5)]),
    ] {
        let s = spec(family, &comps);
        let norm = MixtureDensity::new(&s, &quad).and_then(|d| d.expectation(|_| Complex64::new(1.0, 0.0), WeightBound::monomial(0), &quad));
        match norm {
            Ok(n) => {
                let dev = (n.value.re - 1.0).abs();
                t.check(dev <= tol, dev, || format!("{} {comps:?} normalization {}", family.name(), n.value.re));
            }
            Err(e) => t.fail(format!("normalization {}: {e}", family.name())),
        }
    }

    let closed: [(Family, u32, Vec<(f64, f64)>); 6] = [
        (Family::Sinh, 1, vec![(1.0, 1.0)]),
        (Family::Sinh, 2, vec![(1.0, 2.0)]),
        (Family::Cosh, 1, vec![(1.0, 1.0)]),
        (Family::Cosh, 2, vec![(1.0, 2.0)]),
        (Family::Tanh, 1, vec![(1.0, 1.0)]),
        (Family::Tanh, 2, vec![(1.0, 2.0)]),
    ];
    for (family, order, comps) in closed {
        let dens = match MixtureDensity::new(&spec(family, &comps), &quad) {
            Ok(d) => d,
            Err(e) => {
                t.fail(format!("{} t={order}: {e}", family.name()));
                continue;
            }
        };
        for i in -20..=20 {
            let x = 0.25 * i as f64;
            if family == Family::Tanh && order == 1 && i == 0 {
                continue;
            }
            match (dens.density(x), density_scaled_closed(family, order, x)) {
                (Ok(got), Ok(want)) => {
                    let dev = (got - want).abs();
                    t.check(dev <= tol, dev, || format!("{} t={order} x={x}: {got} vs {want}", family.name()));
                }
                (Err(e), _) | (_, Err(e)) => t.fail(format!("{} t={order} x={x}: {e}", family.name())),
            }
        }
    }

    for family in [Family::Sinh, Family::Cosh, Family::Tanh] {
        match moment_mixture(&spec(family, &[(1.0, 1.0)]), 2, &quad) {
            Ok(v) => {
                let dev = (v - family.unit_variance()).abs();
                t.check(dev <= tol, dev, || format!("{} variance {v}", family.name()));
            }
            Err(e) => t.fail(format!("{} variance: {e}", family.name())),
        }
    }

    let draws = if opts.fast { 200_000 } else { 1_000_000 };
    for (family, seed) in [(Family::Sinh, 7), (Family::Cosh, 8)] {
        match sample(&spec(family, &[(1.0, 1.0)]), draws, seed) {
            Ok(xs) => {
                let n = xs.len() as f64;
                let mean = xs.iter().sum::<f64>() / n;
                let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
                let rel = (var / family.unit_variance() - 1.0).abs();
                t.check(rel <= 0.05, 0.0, || format!("{} MC variance {var} off by {:.1}%", family.name(), 100.0 * rel));
            }
            Err(e) => t.fail(format!("{} sampler: {e}", family.name())),
        }
    }
    t.finish(format!("normalization, six closed forms on |x| <= 5, variances within {tol:.0e}; MC at {draws} draws"))
}

/// One grid of values for the entirety smoke check.
fn entire_grid(p: &ZetaParams, cfg: &EvalConfig, res: &[f64], ims: &[f64]) -> Result<Vec<Vec<ComplexValue>>> {
    let ev = Evaluator::new(p, cfg)?;
    ims.par_iter()
        .map(|&im| res.iter().map(|&re| ev.integral(c(re, im)).map(|v| v.value)).collect::<Result<Vec<_>>>())
        .collect()
}

fn criterion_8(opts: &SelfcheckOptions) -> (bool, String) {
    let agree = opts.threshold(1e-6);
    let (re_step, im_step) = if opts.fast { (1.0, 2.5) } else { (0.5, 1.0) };
    let res: Vec<f64> = (0..).map(|k| -5.0 + re_step * k as f64).take_while(|&x| x <= 5.0 + 1e-12).collect();
    let ims: Vec<f64> = (0..).map(|k| -5.0 + im_step * k as f64).take_while(|&x| x <= 5.0 + 1e-12).collect();
    let mut t = Tally::new();
    let params = [
        ZetaParams::new(Family::Cosh, vec![1.0], vec![1.0], 1.0),
        ZetaParams::new(Family::Cosh, vec![1.0, 2.0], vec![0.5, 1.5], 2.7),
        ZetaParams::new(Family::Tanh, vec![1.0], vec![1.0], 1.0),
        ZetaParams::new(Family::Tanh, vec![2.0], vec![1.0], 0.7),
    ];
    let (loose, tight) = (EvalConfig::with_tol(1e-8), EvalConfig::with_tol(1e-11));
    for p in params.into_iter().map(|p| p.expect("fixed parameters are valid")) {
        let tag = format!("{} {:?} {:?} b={}", p.family.name(), p.alpha, p.a, p.b);
        let (g1, g2) = match (entire_grid(&p, &loose, &res, &ims), entire_grid(&p, &tight, &res, &ims)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                t.fail(format!("{tag}: {e}"));
                continue;
            }
        };
        for (j, (row1, row2)) in g1.iter().zip(&g2).enumerate() {
            for (i, (v1, v2)) in row1.iter().zip(row2).enumerate() {
                let ok_finite = v1.re.is_finite() && v1.im.is_finite() && v2.re.is_finite() && v2.im.is_finite();
                let dev = (v1 - v2).norm() / v2.norm().max(1.0);
                t.check(ok_finite && dev <= agree, dev, || format!("{tag} at {}+{}i: {v1} vs {v2}", res[i], ims[j]));
                if i == 0 || i + 1 == row2.len() {
                    continue;
                }
                // Cauchy estimate |f''| ≤ 2M/R² on a circle of radius R = 1
                let local = (j.saturating_sub(2)..(j + 3).min(g2.len()))
                    .flat_map(|jj| g2[jj][i.saturating_sub(3)..(i + 4).min(row2.len())].iter())
                    .fold(0.0f64, |m, v| m.max(v.norm()));
                let second = (row2[i - 1] - 2.0 * row2[i] + row2[i + 1]).norm();
                t.check(second <= 4.0 * re_step * re_step * local, 0.0, || format!("{tag}: second difference {second:.3e} at {}+{}i", res[i], ims[j]));
            }
        }
    }
    t.finish(format!("{}x{} grid, C and T, configs 1e-8/1e-11 agree within {agree:.0e}", res.len(), ims.len()))
}

/// Run one criterion (1 through 8).
pub fn run_criterion(id: u32, opts: &SelfcheckOptions) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match id {
        1 => criterion_1(opts),
        2 => criterion_2(opts),
        3 => criterion_3(opts),
        4 => criterion_4(opts),
        5 => criterion_5(opts),
        6 => criterion_6(opts),
        7 => criterion_7(opts),
        8 => criterion_8(opts),
        _ => (false, format!("no criterion {id}")),
    };
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, n)| n);
    CheckOutcome { id, name, passed, detail, elapsed: start.elapsed() }
}

pub fn run_all(opts: &SelfcheckOptions) -> Vec<CheckOutcome> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_override_only_tightens() {
        let loose = SelfcheckOptions { fast: true, tol: Some(1e-2) };
        assert_eq!(loose.threshold(1e-6), 1e-6);
        assert_eq!(loose.eval_cfg(), EvalConfig::default());
        let tight = SelfcheckOptions { fast: true, tol: Some(1e-9) };
        assert_eq!(tight.threshold(1e-6), 1e-9);
    }

    #[test]
    fn region_sets_are_reproducible_and_valid() {
        let a = region_parameter_sets(20, 1);
        assert_eq!(a, region_parameter_sets(20, 1));
        for p in &a {
            assert!(p.c().abs() >= 0.1 && p.r() <= 2);
            assert!(p.family == Family::Sinh || p.alpha.iter().all(|&x| x == 1.0 || x == 2.0));
        }
    }

    #[test]
    fn quick_criteria_pass() {
        let opts = SelfcheckOptions { fast: true, tol: None };
        for id in [1, 2, 3, 6] {
            let out = run_criterion(id, &opts);
            assert!(out.passed, "{out}");
        }
    }
}
