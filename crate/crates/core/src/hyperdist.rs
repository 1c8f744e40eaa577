//! The hyperbolic laws Ŝ_t, Ĉ_t, T̂_t and the mixtures Σ a_j X_j with
//! X_j = ½·(hyperbolic variable of order α_j).
//!
//! Mixture densities come from Fourier cosine inversion of the product
//! characteristic function. Expectations E[w(Y)] are folded onto [0, ∞)
//! and truncated with a rigorous exponential envelope of the density.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_graded, integrate_halfline, integrate_interval, tolerate_max_depth, QuadConfig, QuadResult};
use crate::special::{as_integer, ci_si, ComplexValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sinh,
    Cosh,
    Tanh,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sinh => "sinh",
            Family::Cosh => "cosh",
            Family::Tanh => "tanh",
        }
    }

    /// Variance of the halved order-1 variable.
    pub fn unit_variance(self) -> f64 {
        match self {
            Family::Sinh => 1.0 / 12.0,
            Family::Cosh => 0.25,
            Family::Tanh => 1.0 / 6.0,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sinh" => Ok(Family::Sinh),
            "cosh" => Ok(Family::Cosh),
            "tanh" => Ok(Family::Tanh),
            other => Err(Error::Parameter(format!("unknown family '{other}'"))),
        }
    }
}

/// Law of Σ_j a_j X_j, X_j independent halved hyperbolic variables of order α_j.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    pub family: Family,
    /// `(a_j, alpha_j)` pairs.
    pub components: Vec<(f64, f64)>,
}

impl MixtureSpec {
    pub fn new(family: Family, components: Vec<(f64, f64)>) -> Result<Self> {
        let spec = Self { family, components };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::Parameter("mixture needs at least one component".into()));
        }
        for &(a, alpha) in &self.components {
            if !(a > 0.0 && a.is_finite() && alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::Parameter(format!("weights and orders must be positive (a = {a}, alpha = {alpha})")));
            }
            if self.family == Family::Tanh && as_integer(alpha).is_none() {
                return Err(Error::NonIntegerOrder(alpha));
            }
        }
        Ok(())
    }

    pub fn beta(&self) -> f64 {
        self.components.iter().map(|c| c.1).sum()
    }

    /// ½ Σ a_j α_j, the exponential decay rate of the Sinh/Cosh CF.
    pub fn lambda(&self) -> f64 {
        0.5 * self.components.iter().map(|&(a, al)| a * al).sum::<f64>()
    }

    pub fn variance(&self) -> f64 {
        self.components.iter().map(|&(a, al)| a * a * al).sum::<f64>() * self.family.unit_variance()
    }

    fn a_max(&self) -> f64 {
        self.components.iter().map(|c| c.0).fold(0.0, f64::max)
    }

    fn a_min(&self) -> f64 {
        self.components.iter().map(|c| c.0).fold(f64::INFINITY, f64::min)
    }
}

/// E[exp(iθH_t)] for the unscaled hyperbolic variable of order t.
pub fn cf_component(family: Family, t: f64, theta: f64) -> f64 {
    let x = theta.abs();
    if x < 1e-4 {
        let x2 = x * x;
        let base = match family {
            Family::Sinh => 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0 - 31.0 * x2 * x2 * x2 / 15120.0,
            Family::Cosh => 1.0 - x2 / 2.0 + 5.0 * x2 * x2 / 24.0 - 61.0 * x2 * x2 * x2 / 720.0,
            Family::Tanh => 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0 - 17.0 * x2 * x2 * x2 / 315.0,
        };
        return base.powf(t);
    }
    (t * ln_cf_base(family, x)).exp()
}

// ln of θ/sinhθ, sechθ or tanhθ/θ for θ > 0
fn ln_cf_base(family: Family, x: f64) -> f64 {
    if x <= 1.0 {
        let v = match family {
            Family::Sinh => x / x.sinh(),
            Family::Cosh => 1.0 / x.cosh(),
            Family::Tanh => x.tanh() / x,
        };
        return v.ln();
    }
    let e = (-2.0 * x).exp();
    match family {
        Family::Sinh => (2.0 * x).ln() - x - (-e).ln_1p(),
        Family::Cosh => LN_2 - x - e.ln_1p(),
        Family::Tanh => (-e).ln_1p() - e.ln_1p() - x.ln(),
    }
}

// Re ln of the same bases at a complex point off the real axis
fn ln_abs_cf_base(family: Family, z: Complex64) -> f64 {
    if z.re.abs() > 1.0 {
        let z = if z.re < 0.0 { -z } else { z };
        let e = (-2.0 * z).exp();
        let v = match family {
            Family::Sinh => (2.0 * z).ln() - z - (1.0 - e).ln(),
            Family::Cosh => Complex64::new(LN_2, 0.0) - z - (1.0 + e).ln(),
            Family::Tanh => (1.0 - e).ln() - (1.0 + e).ln() - z.ln(),
        };
        return v.re;
    }
    let v = match family {
        Family::Sinh => z / z.sinh(),
        Family::Cosh => z.cosh().inv(),
        Family::Tanh => z.tanh() / z,
    };
    v.norm().ln()
}

/// Characteristic function of the mixture: ∏ cf_component(family, α_j, a_j θ/2).
pub fn cf_mixture(spec: &MixtureSpec, theta: f64) -> f64 {
    spec.components.iter().map(|&(a, alpha)| cf_component(spec.family, alpha, 0.5 * a * theta)).product()
}

// ln of the same bases continued analytically to Re z ≥ 0 inside the strip
fn ln_cf_base_complex(family: Family, z: Complex64) -> Complex64 {
    if z.norm() <= 1.0 {
        let v = match family {
            Family::Sinh if z.norm() < 1e-8 => Complex64::new(1.0, 0.0),
            Family::Tanh if z.norm() < 1e-8 => Complex64::new(1.0, 0.0),
            Family::Sinh => z / z.sinh(),
            Family::Cosh => z.cosh().inv(),
            Family::Tanh => z.tanh() / z,
        };
        return v.ln();
    }
    let e = (-2.0 * z).exp();
    let one = Complex64::new(1.0, 0.0);
    match family {
        Family::Sinh => (2.0 * z).ln() - z - (one - e).ln(),
        Family::Cosh => Complex64::new(LN_2, 0.0) - z - (one + e).ln(),
        Family::Tanh => (one - e).ln() - (one + e).ln() - z.ln(),
    }
}

fn cf_mixture_complex(spec: &MixtureSpec, z: Complex64) -> Complex64 {
    let ln: Complex64 = spec.components.iter().map(|&(a, alpha)| alpha * ln_cf_base_complex(spec.family, 0.5 * a * z)).sum();
    ln.exp()
}

fn cf_mixture_abs_complex(spec: &MixtureSpec, z: Complex64) -> f64 {
    let ln: f64 = spec.components.iter().map(|&(a, alpha)| alpha * ln_abs_cf_base(spec.family, 0.5 * a * z)).sum();
    ln.exp()
}

fn check_closed_order(t: u32) -> Result<()> {
    if t == 1 || t == 2 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("closed-form densities exist for t = 1, 2 only (got {t})")))
    }
}

/// Density of the unscaled variable Ŝ_t, Ĉ_t or T̂_t for t ∈ {1, 2}.
pub fn density_closed(family: Family, t: u32, x: f64) -> Result<f64> {
    check_closed_order(t)?;
    let x = x.abs();
    let h = 0.5 * PI * x;
    Ok(match (family, t) {
        (Family::Sinh, 1) => PI / (4.0 * h.cosh().powi(2)),
        (Family::Sinh, _) => {
            if h < 1.0 {
                // (π/2)(h cosh h − sinh h)/sinh³ h with the numerator as a series in h
                let h2 = h * h;
                let mut term = 1.0 / 3.0;
                let mut num = 0.0;
                let mut k = 1.0;
                while term > 1e-18 * num {
                    num += term;
                    term *= h2 / (2.0 * k * (2.0 * k + 3.0));
                    k += 1.0;
                }
                let shc = if h == 0.0 { 1.0 } else { h.sinh() / h };
                0.5 * PI * num / (shc * shc * shc)
            } else {
                0.5 * PI * (h / h.tanh() - 1.0) / h.sinh().powi(2)
            }
        }
        (Family::Cosh, 1) => 0.5 / h.cosh(),
        (Family::Cosh, _) => {
            if h == 0.0 {
                1.0 / PI
            } else {
                x / (2.0 * h.sinh())
            }
        }
        (Family::Tanh, 1) => {
            if x == 0.0 {
                return Err(Error::SingularPoint(0.0));
            }
            // log coth(u) = 2 atanh(e^{-2u})
            2.0 * (-h).exp().atanh() / PI
        }
        (Family::Tanh, _) => tanh2_density(x)?,
    })
}

fn tanh2_density(x: f64) -> Result<f64> {
    let cfg = QuadConfig::default().with_tol(1e-14);
    let r = integrate_halfline(
        |y: f64| Complex64::new(y * (y - x) / (2.0 * (0.5 * PI * y).sinh()), 0.0),
        x,
        &cfg,
        &[],
        None,
    );
    Ok(tolerate_max_depth(r)?.0.value.re)
}

/// Density of the halved variable, 2·density_closed(family, t, 2x).
pub fn density_scaled_closed(family: Family, t: u32, x: f64) -> Result<f64> {
    Ok(2.0 * density_closed(family, t, 2.0 * x)?)
}

/// Bound |w(±y)| ≤ factor·(offset² + y²)^{power/2} for a weight in
/// [`MixtureDensity::expectation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightBound {
    pub power: f64,
    pub offset: f64,
    pub factor: f64,
}

impl WeightBound {
    /// Bound for w(y) = (q + iy)^{−p} on the principal branch.
    pub fn complex_power(q: f64, p: ComplexValue) -> Self {
        let arg_max = if q > 0.0 { 0.5 * PI } else { PI };
        Self { power: -p.re, offset: q, factor: (p.im.abs() * arg_max).exp() }
    }

    pub fn monomial(k: u32) -> Self {
        Self { power: k as f64, offset: 0.0, factor: 1.0 }
    }

    fn at(&self, y: f64) -> f64 {
        self.factor * (self.offset * self.offset + y * y).powf(0.5 * self.power)
    }
}

/// Memoized density values per prepared law.
const CACHE_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone)]
enum Inversion {
    /// Exponentially decaying CF integrated on [0, theta_max].
    Exponential { theta_max: f64, truncation: f64 },
    /// Tanh CF on [0, t_split] plus the K θ^{−β} tail in closed form.
    PowerTail { t_split: f64, k: f64, beta: u32, truncation: f64 },
    /// Tanh with β = 1: the scaled closed form (1/a) h_1(y/a).
    TanhUnit { a: f64 },
}

/// Inversion along Im θ = −eta for |y| ≥ from: f(y) = e^{−eta·y} (1/π) ∫_0^∞ Re[φ(u − i·eta) e^{−iuy}] du,
/// which keeps the error relative to the exponentially small tail.
#[derive(Debug, Clone)]
struct ShiftedTail {
    eta: f64,
    from: f64,
    u_max: f64,
    /// K (u − i·eta)^{−β} remainder beyond u_max for tanh laws.
    power: Option<(f64, u32)>,
    cfg: QuadConfig,
}

/// A mixture law prepared for repeated density evaluation and expectations.
#[derive(Debug, Clone)]
pub struct MixtureDensity {
    spec: MixtureSpec,
    inversion: Inversion,
    shifted: Option<ShiftedTail>,
    inner: QuadConfig,
    cache: Arc<RwLock<HashMap<u64, f64>>>,
    /// Envelope f(y) ≤ env_m · exp(−env_kappa·|y|), valid for |y| ≥ env_from.
    env_m: f64,
    env_kappa: f64,
    env_from: f64,
}

impl MixtureDensity {
    pub fn new(spec: &MixtureSpec, cfg: &QuadConfig) -> Result<Self> {
        spec.validate()?;
        cfg.validate()?;
        let inner_tol = (cfg.abs_tol * 1e-2).max(1e-15);
        let inner = cfg.with_tol(inner_tol);
        let beta = spec.beta();
        let lambda = spec.lambda();
        let (a_min, a_max) = (spec.a_min(), spec.a_max());
        let target = inner_tol * 1e-2;

        let inversion = match spec.family {
            Family::Sinh | Family::Cosh => {
                let mut theta = (2.0 * beta / lambda).max(2.2 / a_min).max(1.0);
                let tail = |th: f64| cf_mixture(spec, th) * 2.0 / lambda / PI;
                while tail(theta) > target {
                    theta *= 1.25;
                }
                Inversion::Exponential { theta_max: theta, truncation: tail(theta) }
            }
            Family::Tanh => {
                let b = as_integer(beta).unwrap_or(0) as u32;
                if b == 1 {
                    Inversion::TanhUnit { a: spec.components[0].0 }
                } else {
                    let k: f64 = spec.components.iter().map(|&(a, al)| (2.0 / a).powf(al)).product();
                    let bound = |t: f64| {
                        let one_minus_psi: f64 = spec.components.iter().map(|&(a, al)| 2.0 * al * (-a * t).exp()).sum();
                        k * one_minus_psi * t.powf(1.0 - beta) / (beta - 1.0) / PI
                    };
                    let mut t = (2.0 / a_min).max(1.0);
                    while bound(t) > target {
                        t *= 1.25;
                    }
                    Inversion::PowerTail { t_split: t, k, beta: b, truncation: bound(t) }
                }
            }
        };

        let mut this = Self { spec: spec.clone(), inversion, shifted: None, inner, cache: Arc::default(), env_m: 0.0, env_kappa: 0.0, env_from: 0.0 };
        this.build_envelope(a_max)?;
        this.build_shifted(target);
        Ok(this)
    }

    pub fn spec(&self) -> &MixtureSpec {
        &self.spec
    }

    fn build_envelope(&mut self, a_max: f64) -> Result<()> {
        if let Inversion::TanhUnit { a } = self.inversion {
            // log coth u ≤ 2.005 e^{−2u} for u ≥ π/2
            self.env_m = 4.01 / (PI * a);
            self.env_kappa = PI / a;
            self.env_from = a;
            return Ok(());
        }
        let kappa = match self.spec.family {
            Family::Sinh => 2.0 * PI / a_max,
            Family::Cosh | Family::Tanh => PI / a_max,
        };
        let kp = 0.8 * kappa;
        // shifting the inversion contour to Im θ = −κ' gives f(y) ≤ e^{−κ'|y|} (1/π) ∫_0^∞ |φ(u − iκ')| du
        let spec = self.spec.clone();
        let cfg = QuadConfig::default().with_tol(1e-6);
        let shifted = |u: f64| Complex64::new(cf_mixture_abs_complex(&spec, Complex64::new(u, -kp)), 0.0);
        let m = match self.inversion {
            Inversion::PowerTail { k, beta, .. } => {
                let u_max = 200.0 / self.spec.a_min();
                let head = tolerate_max_depth(integrate_interval(shifted, 0.0, u_max, &cfg, 64))?.0;
                // |tanh z| ≤ 1.01 for Re z ≥ 100
                let tail = 1.01f64.powf(beta as f64) * k * u_max.powf(1.0 - beta as f64) / (beta as f64 - 1.0);
                head.value.re + head.err_estimate + tail
            }
            _ => {
                let head = tolerate_max_depth(integrate_halfline(shifted, 0.0, &cfg, &[], None))?.0;
                head.value.re + head.err_estimate
            }
        };
        self.env_m = 1.1 * m / PI;
        self.env_kappa = kp;
        self.env_from = 0.0;
        Ok(())
    }

    fn build_shifted(&mut self, target: f64) {
        if matches!(self.inversion, Inversion::TanhUnit { .. }) {
            return;
        }
        let eta = self.env_kappa;
        let spec = &self.spec;
        let a_min = spec.a_min();
        let cfg = QuadConfig { abs_tol: target * 1e-4, rel_tol: self.inner.rel_tol, ..self.inner };
        let (u_max, power) = match self.inversion {
            Inversion::PowerTail { k, beta, .. } => {
                // tanh(w) = 1 − 2e^{−2w} + …: the remainder after K w^{−β} is O(e^{−a u})
                let mut u = (2.0 / a_min).max(8.0);
                let rest = |u: f64| 2.0 * spec.beta() * (-a_min * u).exp() * k * u.powf(-(beta as f64)) / a_min;
                while rest(u) > cfg.abs_tol && u < 1e4 {
                    u *= 1.25;
                }
                (u, Some((k, beta)))
            }
            _ => {
                let lambda = spec.lambda();
                let mut u = (2.0 / a_min).max(1.0);
                let tail = |u: f64| cf_mixture_abs_complex(spec, Complex64::new(u, -eta)) * 2.0 / lambda;
                while tail(u) > cfg.abs_tol && u < 1e4 {
                    u *= 1.25;
                }
                (u, None)
            }
        };
        self.shifted = Some(ShiftedTail { eta, from: 2.0 / eta, u_max, power, cfg });
    }

    fn invert_shifted(&self, sh: &ShiftedTail, y: f64) -> Result<f64> {
        let spec = &self.spec;
        let eta = sh.eta;
        let integrand = |u: f64| {
            let z = Complex64::new(u, -eta);
            Complex64::new((cf_mixture_complex(spec, z) * Complex64::new(0.0, -u * y).exp()).re, 0.0)
        };
        // the by-parts tail series needs u·y well above β
        let u_max = if sh.power.is_some() { sh.u_max.max(40.0 / y) } else { sh.u_max };
        let panels = ((u_max * y / PI).ceil() as usize).clamp(8, 4096);
        let head = tolerate_max_depth(integrate_interval(integrand, 0.0, u_max, &sh.cfg, panels))?.0.value.re;
        let tail = match sh.power {
            Some((k, beta)) => shifted_power_tail(k, beta, eta, u_max, y),
            None => 0.0,
        };
        Ok((-eta * y).exp() * (head + tail) / PI)
    }

    /// Upper bound on the density at |y| ≥ `env_from`.
    pub fn envelope(&self, y: f64) -> f64 {
        if y.abs() < self.env_from {
            return f64::INFINITY;
        }
        self.env_m * (-self.env_kappa * y.abs()).exp()
    }

    /// Raw inversion value, before clipping.
    fn invert(&self, y: f64) -> Result<f64> {
        let y = y.abs();
        if let Some(sh) = &self.shifted {
            if y >= sh.from {
                return self.invert_shifted(sh, y);
            }
        }
        match self.inversion {
            Inversion::TanhUnit { a } => {
                if y == 0.0 {
                    return Err(Error::SingularPoint(0.0));
                }
                Ok(density_scaled_closed(Family::Tanh, 1, y / a)? / a)
            }
            Inversion::Exponential { theta_max, .. } => {
                let panels = ((theta_max * y / PI).ceil() as usize).clamp(8, 4096);
                let spec = &self.spec;
                let r = integrate_interval(|th: f64| Complex64::new((th * y).cos() * cf_mixture(spec, th), 0.0), 0.0, theta_max, &self.inner, panels);
                Ok(tolerate_max_depth(r)?.0.value.re / PI)
            }
            Inversion::PowerTail { t_split, k, beta, .. } => {
                let panels = ((t_split * y / PI).ceil() as usize).clamp(8, 4096);
                let spec = &self.spec;
                let r = integrate_interval(|th: f64| Complex64::new((th * y).cos() * cf_mixture(spec, th), 0.0), 0.0, t_split, &self.inner, panels);
                let head = tolerate_max_depth(r)?.0.value.re;
                Ok((head + k * power_cos_tail(beta, t_split, y)) / PI)
            }
        }
    }

    /// Density of the mixture at y, clipped to [0, envelope].
    pub fn density(&self, y: f64) -> Result<f64> {
        let key = y.abs().to_bits();
        if let Some(&v) = self.cache.read().ok().and_then(|c| c.get(&key).copied()).as_ref() {
            return Ok(v);
        }
        let v = self.clipped(y)?;
        if let Ok(mut c) = self.cache.write() {
            if c.len() >= CACHE_LIMIT {
                c.clear();
            }
            c.insert(key, v);
        }
        Ok(v)
    }

    fn clipped(&self, y: f64) -> Result<f64> {
        let v = self.invert(y)?;
        if v < -1e-10 {
            return Err(Error::NegativeDensity { y, value: v });
        }
        Ok(v.max(0.0).min(self.envelope(y)))
    }

    /// Bound on the pointwise inversion error.
    pub fn density_error(&self) -> f64 {
        let trunc = match self.inversion {
            Inversion::Exponential { truncation, .. } | Inversion::PowerTail { truncation, .. } => truncation,
            Inversion::TanhUnit { .. } => 0.0,
        };
        self.inner.abs_tol + trunc
    }

    /// E[w(Y)] = ∫_0^∞ (w(y) + w(−y)) f(y) dy, with |w| bounded by `bound`.
    ///
    /// The range is cut where the envelope tail bound drops below the
    /// tolerance, or where the envelope reaches the inversion noise floor;
    /// the neglected part is reported in `truncation_bound`.
    pub fn expectation<W>(&self, w: W, bound: WeightBound, cfg: &QuadConfig) -> Result<QuadResult>
    where
        W: Fn(f64) -> Complex64,
    {
        let kp = self.env_kappa;
        let tail_bound = |r: f64| -> f64 {
            if r < self.env_from || (bound.power > 0.0 && r < 2.0 * bound.power / kp) {
                return f64::INFINITY;
            }
            2.0 * bound.at(r) * self.envelope(r) * 2.0 / kp
        };
        let noise_floor = 1e-250;
        let r_noise = ((self.env_m / noise_floor).ln() / kp).max(self.env_from);
        let integrand = |y: f64| -> Complex64 {
            match self.density(y) {
                Ok(f) if f > 0.0 => (w(y) + w(-y)) * f,
                Ok(_) => Complex64::new(0.0, 0.0),
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        };

        let r0 = (cfg.initial_radius * self.spec.variance().sqrt()).max(4.0 / kp).max(self.env_from).min(r_noise);
        let mut total = tolerate_max_depth(integrate_graded(integrand, 0.0, r0, true, false, cfg))?;
        let mut r = r0;
        let target = cfg.abs_tol.max(cfg.rel_tol * total.0.value.norm()) / 10.0;
        while tail_bound(r) > target && r < r_noise {
            let next = (2.0 * r).min(r_noise);
            let chunk = tolerate_max_depth(integrate_interval(integrand, r, next, cfg, 4))?;
            total.0.value += chunk.0.value;
            total.0.err_estimate += chunk.0.err_estimate;
            total.0.panels_used += chunk.0.panels_used;
            total.1 &= chunk.1;
            r = next;
        }
        let mut res = total.0;
        let trunc = tail_bound(r);
        res.truncation_bound += trunc;
        res.err_estimate += trunc;
        if !res.value.re.is_finite() || !res.value.im.is_finite() {
            return Err(Error::MaxDepth { partial: Box::new(res) });
        }
        if total.1 {
            Ok(res)
        } else {
            Err(Error::MaxDepth { partial: Box::new(res) })
        }
    }
}

/// Re ∫_T^∞ K (u − iη)^{−β} e^{−iuy} du by repeated integration by parts,
/// e^{−iTy} Σ_k g^{(k)}(T)/(iy)^{k+1}; needs T·y well above β.
fn shifted_power_tail(k: f64, beta: u32, eta: f64, t: f64, y: f64) -> f64 {
    let w = Complex64::new(t, -eta);
    let iy = Complex64::new(0.0, y);
    let mut g = k * w.powi(-(beta as i32));
    let mut acc = Complex64::new(0.0, 0.0);
    let mut denom = iy;
    let mut prev = f64::INFINITY;
    for j in 0..200 {
        let term = g / denom;
        if term.norm() > prev {
            break;
        }
        prev = term.norm();
        acc += term;
        if prev < 1e-18 * acc.norm().max(1e-300) {
            break;
        }
        g *= -(beta as f64 + j as f64) / w;
        denom *= iy;
    }
    (acc * Complex64::new(0.0, -t * y).exp()).re
}

/// ∫_T^∞ cos(θy) θ^{−β} dθ for integer β ≥ 1 by upward recursion from Ci/Si.
fn power_cos_tail(beta: u32, t: f64, y: f64) -> f64 {
    if y == 0.0 {
        return t.powf(1.0 - beta as f64) / (beta as f64 - 1.0);
    }
    let (ci, si) = ci_si(t * y);
    let (c, s) = ((t * y).cos(), (t * y).sin());
    let mut i = -ci;
    let mut j = 0.5 * PI - si;
    let mut tp = 1.0 / t;
    for n in 1..beta {
        let nf = n as f64;
        let (ni, nj) = ((c * tp - y * j) / nf, (s * tp + y * i) / nf);
        i = ni;
        j = nj;
        tp /= t;
    }
    i
}

/// Mixture density by CF inversion. Tanh mixtures need β ≥ 2.
pub fn density_mixture(spec: &MixtureSpec, y: f64, cfg: &QuadConfig) -> Result<f64> {
    if spec.family == Family::Tanh && spec.beta() < 2.0 - 1e-9 {
        return Err(Error::SlowDecay(spec.beta()));
    }
    MixtureDensity::new(spec, cfg)?.density(y)
}

/// E[Y^k]; exactly 0 for odd k.
pub fn moment_mixture(spec: &MixtureSpec, k: u32, cfg: &QuadConfig) -> Result<f64> {
    if k % 2 == 1 {
        return Ok(0.0);
    }
    if k == 0 {
        return Ok(1.0);
    }
    let dens = MixtureDensity::new(spec, cfg)?;
    moment_with(&dens, k, cfg)
}

fn moment_with(dens: &MixtureDensity, k: u32, cfg: &QuadConfig) -> Result<f64> {
    let r = dens.expectation(|y| Complex64::new(y.powi(k as i32), 0.0), WeightBound::monomial(k), cfg);
    Ok(tolerate_max_depth(r)?.0.value.re)
}

/// E[(c + iY)^n] = Σ_{k even} C(n,k) c^{n−k} (−1)^{k/2} E[Y^k].
pub fn complex_moment(spec: &MixtureSpec, c: f64, n: u32, cfg: &QuadConfig) -> Result<ComplexValue> {
    let dens = if n >= 2 { Some(MixtureDensity::new(spec, cfg)?) } else { None };
    complex_moment_with(dens.as_ref(), c, n, cfg)
}

pub(crate) fn complex_moment_with(dens: Option<&MixtureDensity>, c: f64, n: u32, cfg: &QuadConfig) -> Result<ComplexValue> {
    let mut total = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        if k > 0 {
            binom *= (n - k + 1) as f64 / k as f64;
        }
        if k % 2 == 1 {
            continue;
        }
        let m = if k == 0 {
            1.0
        } else {
            moment_with(dens.expect("moments above order 1 need a density"), k, cfg)?
        };
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        total += binom * c.powi((n - k) as i32) * sign * m;
    }
    Ok(Complex64::new(total, 0.0))
}

/// Draws of Σ a_j X_j for Sinh/Cosh mixtures with integer orders.
pub fn sample(spec: &MixtureSpec, count: usize, seed: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    let draw: fn(f64) -> f64 = match spec.family {
        // inverse CDFs of the halved order-1 laws
        Family::Sinh => |u| (2.0 * u - 1.0).atanh() / PI,
        Family::Cosh => |u| (0.5 * PI * u).tan().ln() / PI,
        Family::Tanh => return Err(Error::UnsupportedFamily("tanh")),
    };
    let mut orders = Vec::with_capacity(spec.components.len());
    for &(a, alpha) in &spec.components {
        let n = as_integer(alpha).filter(|&n| n >= 1).ok_or(Error::NonIntegerOrder(alpha))?;
        orders.push((a, n as usize));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut y = 0.0;
        for &(a, n) in &orders {
            for _ in 0..n {
                let u: f64 = rng.sample(rand::distributions::Open01);
                y += a * draw(u);
            }
        }
        out.push(y);
    }
    Ok(out)
}
