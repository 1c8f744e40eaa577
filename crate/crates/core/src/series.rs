//! Direct summation of the defining multiple series in the half-plane
//! Re(s) > β + 1/2, with a rigorous bound on the neglected terms.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperdist::Family;
use crate::quadrature::{integrate_halfline_mellin, tolerate_max_depth, QuadConfig};
use crate::special::{as_integer, gamma, ln_gamma_pos, ComplexValue};

pub use crate::params::{EvalResult, Method, ZetaParams};

/// Distance beyond Re(s) = β required for direct summation.
pub const REGION_MARGIN: f64 = 0.5;
pub const MAX_SERIES_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Largest index per dimension; `None` picks 200000 / 700 / 150 for r = 1 / 2 / 3.
    pub dim_cutoff: Option<usize>,
    /// Fail when the tail bound at the largest cutoff exceeds `tail_tol · max(1, |sum|)`.
    pub tail_tol: f64,
    /// Stop growing the cutoff once the tail bound drops below this.
    pub target: f64,
    pub expectation_cfg: QuadConfig,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self { dim_cutoff: None, tail_tol: 1e-2, target: 1e-12, expectation_cfg: QuadConfig::default() }
    }
}

impl SeriesConfig {
    pub fn cutoff_for(&self, r: usize) -> usize {
        self.dim_cutoff.unwrap_or(match r {
            1 => 200_000,
            2 => 700,
            _ => 150,
        })
    }
}

/// S via Σ ∏ C(n_j+α_j−1, n_j) / (a·n + b)^s.
#[allow(non_snake_case)]
pub fn series_S(params: &ZetaParams, s: ComplexValue, cfg: &SeriesConfig) -> Result<EvalResult> {
    expect_family(params, Family::Sinh)?;
    series(params, s, cfg)
}

/// C via Σ ∏ C(−α_j, n_j) / (a·n + b)^s.
#[allow(non_snake_case)]
pub fn series_C(params: &ZetaParams, s: ComplexValue, cfg: &SeriesConfig) -> Result<EvalResult> {
    expect_family(params, Family::Cosh)?;
    series(params, s, cfg)
}

/// T via Σ ∏ C(−α_j, n_j) E[(a·(n+V) + b)^{−s}].
#[allow(non_snake_case)]
pub fn series_T(params: &ZetaParams, s: ComplexValue, cfg: &SeriesConfig) -> Result<EvalResult> {
    expect_family(params, Family::Tanh)?;
    series(params, s, cfg)
}

fn expect_family(params: &ZetaParams, family: Family) -> Result<()> {
    if params.family != family {
        return Err(Error::Parameter(format!("expected {} parameters, got {}", family.name(), params.family.name())));
    }
    Ok(())
}

/// Series for whichever family `params` carries.
pub fn series(params: &ZetaParams, s: ComplexValue, cfg: &SeriesConfig) -> Result<EvalResult> {
    params.validate()?;
    let r = params.r();
    let beta = params.beta();
    if s.re <= beta + REGION_MARGIN {
        return Err(Error::ConvergenceRegion { re_s: s.re, bound: beta + REGION_MARGIN });
    }
    if r > MAX_SERIES_DIM {
        return Err(Error::Parameter(format!("direct summation supports r <= {MAX_SERIES_DIM}, got {r}")));
    }
    let cap = cfg.cutoff_for(r).max(1);
    let mut n = 32.min(cap);
    let mut bound = tail_bound(params, s.re, n)?;
    while bound > cfg.target && n < cap {
        n = (2 * n).min(cap);
        bound = tail_bound(params, s.re, n)?;
    }
    let (value, abs_sum, term_err) = sum_box(params, s, n, &cfg.expectation_cfg)?;
    let err = bound + term_err + 8.0 * f64::EPSILON * abs_sum;
    let tol = cfg.tail_tol * value.norm().max(1.0);
    if bound > tol {
        return Err(Error::TailTolerance { bound, tol, cutoff: n });
    }
    let mut warnings = Vec::new();
    if bound > cfg.target {
        warnings.push(format!("series tail bound {bound:.3e} at cutoff {n}"));
    }
    Ok(EvalResult { value, err_estimate: err, method: Method::Series, warnings })
}

/// C(n+α−1, n) for n = 0..=cutoff, signed by (−1)^n when `alternate`.
fn coefficients(alpha: f64, cutoff: usize, alternate: bool) -> Vec<f64> {
    let mut out = Vec::with_capacity(cutoff + 1);
    let mut w = 1.0;
    for n in 0..=cutoff {
        out.push(if alternate && n % 2 == 1 { -w } else { w });
        w *= (n as f64 + alpha) / (n as f64 + 1.0);
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: Complex64,
    comp: Complex64,
}

impl Neumaier {
    fn add(&mut self, x: Complex64) {
        let t = self.sum + x;
        let fix = |s: f64, x: f64, t: f64| if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        self.comp += Complex64::new(fix(self.sum.re, x.re, t.re), fix(self.sum.im, x.im, t.im));
        self.sum = t;
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// Row-major sum over [0, n]^r; returns (sum, Σ|terms|, accumulated term error).
fn sum_box(params: &ZetaParams, s: ComplexValue, n: usize, qcfg: &QuadConfig) -> Result<(Complex64, f64, f64)> {
    let r = params.r();
    let alternate = params.family != Family::Sinh;
    let coefs: Vec<Vec<f64>> = params.alpha.iter().map(|&al| coefficients(al, n, alternate)).collect();
    let tanh = if params.family == Family::Tanh { Some(TanhTerms::new(params, s, qcfg)) } else { None };
    let kernel = |x: f64| -> Result<(Complex64, f64)> {
        match &tanh {
            Some(t) => t.term(x),
            None => {
                let l = x.ln();
                Ok((Complex64::from_polar((-s.re * l).exp(), -s.im * l), 0.0))
            }
        }
    };
    let row = |n1: usize| -> Result<(Neumaier, f64, f64)> {
        let mut acc = Neumaier::default();
        let (mut abs_sum, mut err) = (0.0, 0.0);
        let c1 = coefs[0][n1];
        let x1 = params.a[0] * n1 as f64 + params.b;
        let mut visit = |c: f64, x: f64| -> Result<()> {
            let (k, e) = kernel(x)?;
            let t = k * c;
            acc.add(t);
            abs_sum += t.norm();
            err += e * c.abs();
            Ok(())
        };
        match r {
            1 => visit(c1, x1)?,
            2 => {
                for n2 in 0..=n {
                    visit(c1 * coefs[1][n2], x1 + params.a[1] * n2 as f64)?;
                }
            }
            _ => {
                for n2 in 0..=n {
                    let c12 = c1 * coefs[1][n2];
                    let x12 = x1 + params.a[1] * n2 as f64;
                    for n3 in 0..=n {
                        visit(c12 * coefs[2][n3], x12 + params.a[2] * n3 as f64)?;
                    }
                }
            }
        }
        Ok((acc, abs_sum, err))
    };
    let block = if r == 1 { 4096 } else { 1 };
    let blocks: Vec<Result<(Neumaier, f64, f64)>> = (0..=n / block)
        .into_par_iter()
        .map(|bi| {
            let mut acc = Neumaier::default();
            let (mut abs_sum, mut err) = (0.0, 0.0);
            for n1 in bi * block..((bi + 1) * block).min(n + 1) {
                let (a, s_abs, e) = row(n1)?;
                acc.add(a.total());
                abs_sum += s_abs;
                err += e;
            }
            Ok((acc, abs_sum, err))
        })
        .collect();
    let mut acc = Neumaier::default();
    let (mut abs_sum, mut err) = (0.0, 0.0);
    for b in blocks {
        let (a, s_abs, e) = b?;
        acc.add(a.total());
        abs_sum += s_abs;
        err += e;
    }
    Ok((acc.total(), abs_sum, err))
}

/// Bound on Σ over the complement of [0, n]^r of |term| at Re(s) = σ.
///
/// The complement is covered by the sets {n_j > n}; each is bounded through
/// (1/Γ(σ)) ∫ x^{σ−1} e^{−bx} tail_j(x) ∏_{k≠j} (1 − e^{−a_k x})^{−α_k} dx,
/// where tail_j bounds Σ_{m>n} C(m+α_j−1, m) e^{−a_j m x}. The same bound
/// dominates the cosh and tanh series.
pub fn tail_bound(params: &ZetaParams, sigma: f64, n: usize) -> Result<f64> {
    let beta = params.beta();
    if sigma <= beta {
        return Ok(f64::INFINITY);
    }
    let cfg = QuadConfig { abs_tol: 1e-300, rel_tol: 1e-4, ..QuadConfig::default() };
    let ln_gamma_sigma = ln_gamma_pos(sigma);
    let mut total = 0.0;
    for j in 0..params.r() {
        let (aj, alj) = (params.a[j], params.alpha[j]);
        let nf = n as f64;
        let ln_w = ln_gamma_pos(nf + 1.0 + alj) - ln_gamma_pos(alj) - ln_gamma_pos(nf + 2.0);
        let g = |x: f64| -> f64 {
            let one_minus_q = -(-aj * x).exp_m1();
            let full = one_minus_q.powf(-alj);
            let q = 1.0 - one_minus_q;
            let geo = {
                let t = (ln_w - aj * x * (nf + 1.0)).exp();
                let one_minus_rho = if alj <= 1.0 { one_minus_q } else { 1.0 - q * (nf + 1.0 + alj) / (nf + 2.0) };
                if one_minus_rho > 0.0 {
                    t / one_minus_rho
                } else {
                    f64::INFINITY
                }
            };
            let mut v = full.min(geo);
            for k in 0..params.r() {
                if k != j {
                    v *= (-(-params.a[k] * x).exp_m1()).powf(-params.alpha[k]);
                }
            }
            v
        };
        let q = tolerate_max_depth(integrate_halfline_mellin(Complex64::new(sigma, 0.0), g, params.b, &cfg))?.0;
        total += (q.value.re.abs() + q.err_estimate) * (-ln_gamma_sigma).exp();
    }
    Ok(total * 1.01)
}

/// E[(a·(n + V) + b)^{−s}] for one index vector, by the Mellin integral
/// (1/Γ(s)) ∫ x^{s−1} e^{−(a·n+b)x} ∏ ((1 − e^{−a_j x})/(a_j x))^{α_j} dx.
#[allow(non_snake_case)]
pub fn term_T_expectation(params: &ZetaParams, n: &[usize], s: ComplexValue, qcfg: &QuadConfig) -> Result<ComplexValue> {
    if n.len() != params.r() {
        return Err(Error::Parameter(format!("index vector has length {}, expected {}", n.len(), params.r())));
    }
    let shift: f64 = params.a.iter().zip(n).map(|(a, &k)| a * k as f64).sum::<f64>() + params.b;
    Ok(uniform_shift_expectation(params, shift, s, qcfg)?.0)
}

// E[(x + Σ a_j V_j)^{−s}] and its error estimate
fn uniform_shift_expectation(params: &ZetaParams, x0: f64, s: ComplexValue, qcfg: &QuadConfig) -> Result<(ComplexValue, f64)> {
    if s == Complex64::new(0.0, 0.0) {
        return Ok((Complex64::new(1.0, 0.0), 0.0));
    }
    if s.re <= 0.0 {
        return Err(Error::Parameter(format!("the Mellin form of the tanh term needs Re(s) > 0, got {}", s.re)));
    }
    let g = |x: f64| -> f64 {
        params
            .a
            .iter()
            .zip(&params.alpha)
            .map(|(&a, &al)| {
                let ax = a * x;
                let v = if ax < 1e-8 { 1.0 - 0.5 * ax } else { -(-ax).exp_m1() / ax };
                v.powf(al)
            })
            .product()
    };
    let gs = gamma(s)?;
    let scale = gs.norm() * x0.powf(-s.re);
    let cfg = qcfg.with_abs((qcfg.abs_tol * 1e-2 * scale).max(1e-300));
    let q = tolerate_max_depth(integrate_halfline_mellin(s, g, x0, &cfg))?.0;
    Ok((q.value / gs, q.err_estimate / gs.norm()))
}

/// Fast evaluation of the tanh terms: a centred moment expansion far from
/// the origin, the Mellin integral near it.
struct TanhTerms<'a> {
    params: &'a ZetaParams,
    s: ComplexValue,
    qcfg: QuadConfig,
    mu: f64,
    /// Centred moments of Σ a_j V_j (index k ↦ E[Z^k]).
    moments: Vec<f64>,
}

const EXPANSION_ORDER: usize = 96;

impl<'a> TanhTerms<'a> {
    fn new(params: &'a ZetaParams, s: ComplexValue, qcfg: &QuadConfig) -> Self {
        let mu = params.lambda();
        let mut m = vec![0.0; EXPANSION_ORDER + 1];
        m[0] = 1.0;
        for (&a, &al) in params.a.iter().zip(&params.alpha) {
            // a(U − 1/2): even moments (a/2)^k/(k+1)
            let u: Vec<f64> = (0..=EXPANSION_ORDER).map(|k| if k % 2 == 0 { (0.5 * a).powi(k as i32) / (k as f64 + 1.0) } else { 0.0 }).collect();
            for _ in 0..as_integer(al).unwrap_or(1) {
                let mut next = vec![0.0; EXPANSION_ORDER + 1];
                for (k, slot) in next.iter_mut().enumerate() {
                    let mut binom = 1.0;
                    let mut acc = 0.0;
                    for i in 0..=k {
                        if i > 0 {
                            binom *= (k - i + 1) as f64 / i as f64;
                        }
                        acc += binom * m[i] * u[k - i];
                    }
                    *slot = acc;
                }
                m = next;
            }
        }
        Self { params, s, qcfg: *qcfg, mu, moments: m }
    }

    fn term(&self, x: f64) -> Result<(Complex64, f64)> {
        let centre = x + self.mu;
        let ratio = self.mu / centre;
        if ratio > 0.25 {
            return uniform_shift_expectation(self.params, x, self.s, &self.qcfg);
        }
        // (B + Z)^{−s} = B^{−s} Σ_k C(−s, k) Z^k B^{−k}
        let mut c = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(1.0, 0.0);
        let inv = 1.0 / centre;
        let mut pw = 1.0;
        let mut last = f64::INFINITY;
        for k in 1..=EXPANSION_ORDER {
            c *= (-self.s - (k - 1) as f64) / k as f64;
            pw *= inv;
            if k % 2 == 1 {
                continue;
            }
            let t = c * self.moments[k] * pw;
            sum += t;
            let size = t.norm();
            if size < 1e-17 * sum.norm() && last < 1e-17 * sum.norm() {
                break;
            }
            last = size;
        }
        let l = centre.ln();
        let lead = Complex64::from_polar((-self.s.re * l).exp(), -self.s.im * l);
        Ok((lead * sum, 0.0))
    }
}

/// Density of the sum of `order` independent Uniform(0, 1) variables.
pub fn irwin_hall_pdf(order: u32, v: f64) -> f64 {
    let n = order as f64;
    if order == 0 || v < 0.0 || v > n {
        return 0.0;
    }
    if order == 1 {
        return if v < 1.0 { 1.0 } else { 0.0 };
    }
    let mut sum = 0.0;
    let mut binom = 1.0;
    for k in 0..=(v.floor() as u32).min(order) {
        if k > 0 {
            binom *= (n - k as f64 + 1.0) / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * (v - k as f64).powi(order as i32 - 1);
    }
    let fact: f64 = (1..order).map(|k| k as f64).product();
    (sum / fact).max(0.0)
}
