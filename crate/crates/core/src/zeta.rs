//! S, C and T everywhere in the complex plane through their integral
//! representations, pole reports for S, and the classical special cases.
//!
//! S(s) = c_r Γ(s−β)/Γ(s) E[(c + iY)^{β−s}],
//! C(s) = 2^{−β} E[(c + iZ)^{−s}],
//! T(s) = 2^{−β} E[(b + iW)^{−s}].

use std::fmt;

use num_complex::Complex64;

use crate::continuation::continued_mellin;
use crate::error::{Error, Result};
use crate::hyperdist::{complex_moment_with, Family, MixtureDensity, WeightBound};
use crate::params::{EvalResult, Method, ZetaParams};
use crate::quadrature::{integrate_halfline_mellin, tolerate_max_depth, QuadConfig};
use crate::series::{series, SeriesConfig, MAX_SERIES_DIM, REGION_MARGIN};
use crate::special::{as_integer, d_factor, gamma, gamma_ratio, ln_gamma_pos, ComplexValue, POLE_TOL};

/// Default number of poles β−n reported for non-integer β.
pub const DEFAULT_N_MAX: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvalConfig {
    pub quad: QuadConfig,
    pub series: SeriesConfig,
}

impl EvalConfig {
    /// Both engines with tolerance `tol`.
    pub fn with_tol(tol: f64) -> Self {
        let quad = QuadConfig::default().with_tol(tol);
        Self { quad, series: SeriesConfig { expectation_cfg: quad, ..SeriesConfig::default() } }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Auto,
    Series,
    Integral,
    Verify,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Mode::Auto),
            "series" => Ok(Mode::Series),
            "integral" => Ok(Mode::Integral),
            "verify" => Ok(Mode::Verify),
            other => Err(Error::Parameter(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleKind {
    IntegerCase,
    NonIntegerCaseI,
    NonIntegerCaseII,
}

impl fmt::Display for PoleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoleKind::IntegerCase => "integer-case",
            PoleKind::NonIntegerCaseI => "noninteger-case-i",
            PoleKind::NonIntegerCaseII => "noninteger-case-ii",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleEntry {
    pub location: f64,
    pub residue: f64,
    pub kind: PoleKind,
}

/// Poles of S in strictly decreasing order of location.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PoleReport {
    pub entries: Vec<PoleEntry>,
}

/// Integral-representation evaluator for one parameter set; the prepared
/// density is shared across evaluation points.
#[derive(Debug, Clone)]
pub struct Evaluator {
    params: ZetaParams,
    cfg: EvalConfig,
    density: MixtureDensity,
}

impl Evaluator {
    pub fn new(params: &ZetaParams, cfg: &EvalConfig) -> Result<Self> {
        params.validate()?;
        params.require_nonzero_c()?;
        let density = MixtureDensity::new(&params.mixture(), &cfg.quad)?;
        Ok(Self { params: params.clone(), cfg: *cfg, density })
    }

    pub fn params(&self) -> &ZetaParams {
        &self.params
    }

    /// E[(q + iY)^{−p}] for the prepared law.
    fn moment_function(&self, q: f64, p: ComplexValue) -> Result<(ComplexValue, f64, Vec<String>)> {
        let w = |y: f64| (-p * Complex64::new(q, y).ln()).exp();
        let r = self.density.expectation(w, WeightBound::complex_power(q, p), &self.cfg.quad);
        let (res, converged) = tolerate_max_depth(r)?;
        let mut warnings = Vec::new();
        if !converged {
            warnings.push(format!("quadrature tolerance not reached (estimate {:.3e})", res.err_estimate));
        }
        Ok((res.value, res.err_estimate, warnings))
    }

    /// The integral representation at s.
    pub fn integral(&self, s: ComplexValue) -> Result<EvalResult> {
        let p = &self.params;
        let beta = p.beta();
        let (value, err, warnings) = match p.family {
            Family::Sinh => {
                if let Some(pole) = nearest_pole_s(p, s) {
                    let residue = self.residue_at(pole)?;
                    return Err(Error::AtPole { pole, residue });
                }
                let ratio = match gamma_ratio(s, beta) {
                    Ok(r) => r,
                    Err(Error::Pole { .. }) => {
                        let pole = s.re;
                        return Err(Error::AtPole { pole, residue: self.residue_at(pole)? });
                    }
                    Err(e) => return Err(e),
                };
                if ratio == Complex64::new(0.0, 0.0) {
                    return Ok(EvalResult { value: ratio, err_estimate: 0.0, method: Method::Integral, warnings: Vec::new() });
                }
                if p.c() < 0.0 {
                    return continued_mellin(p, s, &self.cfg.quad);
                }
                let (e, err, w) = self.moment_function(p.c(), s - beta)?;
                let scale = p.c_r() * ratio;
                (scale * e, err * scale.norm(), w)
            }
            Family::Cosh => {
                if p.c() < 0.0 {
                    return continued_mellin(p, s, &self.cfg.quad);
                }
                let (e, err, w) = self.moment_function(p.c(), s)?;
                let scale = 2f64.powf(-beta);
                (e * scale, err * scale, w)
            }
            Family::Tanh => {
                let (e, err, w) = self.moment_function(p.b, s)?;
                let scale = 2f64.powf(-beta);
                (e * scale, err * scale, w)
            }
        };
        Ok(EvalResult { value, err_estimate: err, method: Method::Integral, warnings })
    }

    /// Residue of S at the pole `location`.
    fn residue_at(&self, location: f64) -> Result<f64> {
        let p = &self.params;
        let beta = p.beta();
        let n = (beta - location).round();
        if n < 0.0 {
            return Err(Error::Parameter(format!("{location} is not a pole")));
        }
        residue_entry(p, n as u32, Some(&self.density), &self.cfg.quad).map(|e| e.residue)
    }

    /// The poles β−n of S with their residues.
    pub fn poles(&self, n_max: u32) -> Result<PoleReport> {
        poles_with(&self.params, n_max, Some(&self.density), &self.cfg.quad)
    }
}

fn nearest_pole_s(p: &ZetaParams, s: ComplexValue) -> Option<f64> {
    if s.im.abs() >= POLE_TOL {
        return None;
    }
    let beta = p.beta();
    match as_integer(beta) {
        Some(b) => {
            let k = s.re.round();
            (k >= 1.0 && k <= b as f64 && (s.re - k).abs() < POLE_TOL).then_some(k)
        }
        None => {
            let n = (beta - s.re).round();
            (n >= 0.0 && (beta - n - s.re).abs() < POLE_TOL).then_some(beta - n)
        }
    }
}

fn residue_entry(p: &ZetaParams, n: u32, density: Option<&MixtureDensity>, quad: &QuadConfig) -> Result<PoleEntry> {
    p.require_nonzero_c()?;
    let beta = p.beta();
    let owned;
    let density = match density {
        Some(d) => Some(d),
        None if n >= 2 => {
            owned = MixtureDensity::new(&p.mixture(), quad)?;
            Some(&owned)
        }
        None => None,
    };
    let moment = complex_moment_with(density, p.c(), n, quad)?.re;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let ln_nfact = ln_gamma_pos(n as f64 + 1.0);
    let (denominator, kind) = match as_integer(beta) {
        Some(b) => {
            if n as i64 >= b {
                return Err(Error::Parameter(format!("s = {} is not a pole for integer beta = {b}", beta - n as f64)));
            }
            ((ln_nfact + ln_gamma_pos((b - 1 - n as i64) as f64 + 1.0)).exp(), PoleKind::IntegerCase)
        }
        None if (n as f64) < beta => (ln_nfact.exp() * ln_gamma_pos(beta - n as f64).exp(), PoleKind::NonIntegerCaseI),
        None => (ln_nfact.exp() * d_factor(beta, n)?, PoleKind::NonIntegerCaseII),
    };
    Ok(PoleEntry { location: beta - n as f64, residue: sign * p.c_r() * moment / denominator, kind })
}

fn poles_with(p: &ZetaParams, n_max: u32, density: Option<&MixtureDensity>, quad: &QuadConfig) -> Result<PoleReport> {
    if p.family != Family::Sinh {
        return Err(Error::Parameter(format!("only the sinh family has poles, got {}", p.family.name())));
    }
    p.require_nonzero_c()?;
    let count = match as_integer(p.beta()) {
        Some(b) => b as u32,
        None => n_max + 1,
    };
    let entries = (0..count).map(|n| residue_entry(p, n, density, quad)).collect::<Result<Vec<_>>>()?;
    Ok(PoleReport { entries })
}

/// Pole locations and residues of S.
#[allow(non_snake_case)]
pub fn poles_S(params: &ZetaParams, n_max: u32) -> Result<PoleReport> {
    params.validate()?;
    params.require_nonzero_c()?;
    let quad = QuadConfig::default();
    let density = MixtureDensity::new(&params.mixture(), &quad)?;
    poles_with(params, n_max, Some(&density), &quad)
}

fn expect_family(params: &ZetaParams, family: Family) -> Result<()> {
    if params.family != family {
        return Err(Error::Parameter(format!("expected {} parameters, got {}", family.name(), params.family.name())));
    }
    Ok(())
}

#[allow(non_snake_case)]
pub fn eval_S(params: &ZetaParams, s: ComplexValue, cfg: &EvalConfig) -> Result<EvalResult> {
    expect_family(params, Family::Sinh)?;
    Evaluator::new(params, cfg)?.integral(s)
}

#[allow(non_snake_case)]
pub fn eval_C(params: &ZetaParams, s: ComplexValue, cfg: &EvalConfig) -> Result<EvalResult> {
    expect_family(params, Family::Cosh)?;
    Evaluator::new(params, cfg)?.integral(s)
}

#[allow(non_snake_case)]
pub fn eval_T(params: &ZetaParams, s: ComplexValue, cfg: &EvalConfig) -> Result<EvalResult> {
    expect_family(params, Family::Tanh)?;
    Evaluator::new(params, cfg)?.integral(s)
}

/// Smallest Re(s) for which the Mellin form converges at x = 0.
pub fn mellin_bound(params: &ZetaParams) -> f64 {
    match params.family {
        Family::Sinh => params.beta(),
        Family::Cosh | Family::Tanh => 0.0,
    }
}

/// Γ(s)·F(s) = ∫_0^∞ x^{s−1} e^{−bx} g(x) dx with g the product kernel of the family.
pub fn eval_mellin(params: &ZetaParams, s: ComplexValue, cfg: &EvalConfig) -> Result<EvalResult> {
    params.validate()?;
    let bound = mellin_bound(params);
    if s.re <= bound {
        return Err(Error::ConvergenceRegion { re_s: s.re, bound });
    }
    let family = params.family;
    let g = |x: f64| -> f64 {
        params
            .a
            .iter()
            .zip(&params.alpha)
            .map(|(&a, &al)| {
                let ax = a * x;
                match family {
                    Family::Sinh => (-(-ax).exp_m1()).powf(-al),
                    Family::Cosh => (1.0 + (-ax).exp()).powf(-al),
                    Family::Tanh => {
                        let v = if ax < 1e-6 { 0.5 - ax * ax / 24.0 } else { (0.5 * ax).tanh() / ax };
                        v.powf(al)
                    }
                }
            })
            .product()
    };
    let gs = gamma(s)?;
    let q = integrate_halfline_mellin(s, g, params.b, &cfg.quad);
    let (q, converged) = tolerate_max_depth(q)?;
    let mut warnings = Vec::new();
    if !converged {
        warnings.push(format!("quadrature tolerance not reached (estimate {:.3e})", q.err_estimate));
    }
    Ok(EvalResult { value: q.value / gs, err_estimate: q.err_estimate / gs.norm(), method: Method::Mellin, warnings })
}

/// Symmetric Richardson limit of (s − pole)·S(s) from s = pole ± h, pole ± h/2.
pub fn residue_check(params: &ZetaParams, pole: f64, h: f64) -> Result<f64> {
    residue_check_with(params, pole, h, &EvalConfig::with_tol(1e-12))
}

pub fn residue_check_with(params: &ZetaParams, pole: f64, h: f64, cfg: &EvalConfig) -> Result<f64> {
    expect_family(params, Family::Sinh)?;
    if !(h > 0.0 && h <= 0.01) {
        return Err(Error::Parameter(format!("residue step h must lie in (0, 0.01], got {h}")));
    }
    let ev = Evaluator::new(params, cfg)?;
    let sym = |h: f64| -> Result<f64> {
        let up = ev.integral(Complex64::new(pole + h, 0.0))?.value.re;
        let down = ev.integral(Complex64::new(pole - h, 0.0))?.value.re;
        Ok(0.5 * h * (up - down))
    };
    let (a1, a2) = (sym(h)?, sym(0.5 * h)?);
    Ok((4.0 * a2 - a1) / 3.0)
}

/// Barnes multiple zeta Σ (a·n + b)^{−s}.
pub fn barnes(s: ComplexValue, a: &[f64], b: f64, cfg: &EvalConfig) -> Result<EvalResult> {
    let params = ZetaParams::new(Family::Sinh, vec![1.0; a.len()], a.to_vec(), b)?;
    eval_S(&params, s, cfg)
}

/// Hurwitz ζ(s; b), b ≠ 1/2.
pub fn hurwitz(s: ComplexValue, b: f64, cfg: &EvalConfig) -> Result<EvalResult> {
    eval_S(&ZetaParams::new(Family::Sinh, vec![1.0], vec![1.0], b)?, s, cfg)
}

/// Alternating ζ_C(s; b) = Σ (−1)^n (n + b)^{−s}, b ≠ 1/2.
pub fn eta_shift(s: ComplexValue, b: f64, cfg: &EvalConfig) -> Result<EvalResult> {
    eval_C(&ZetaParams::new(Family::Cosh, vec![1.0], vec![1.0], b)?, s, cfg)
}

fn series_legal(params: &ZetaParams, s: ComplexValue) -> bool {
    params.r() <= MAX_SERIES_DIM && s.re > params.beta() + REGION_MARGIN
}

/// Evaluate with the requested engine. `Verify` runs the integral plus
/// every other legal path and fails on a discrepancy beyond ten times the
/// combined error estimates.
pub fn dispatch(params: &ZetaParams, s: ComplexValue, mode: Mode, cfg: &EvalConfig) -> Result<EvalResult> {
    params.validate()?;
    match mode {
        Mode::Series => series(params, s, &cfg.series),
        Mode::Auto if auto_uses_series(params, s) => {
            params.require_nonzero_c()?;
            series(params, s, &cfg.series)
        }
        _ => Evaluator::new(params, cfg)?.eval(s, mode),
    }
}

fn auto_uses_series(params: &ZetaParams, s: ComplexValue) -> bool {
    params.r() <= 2 && s.re > params.beta() + 1.0
}

impl Evaluator {
    /// [`dispatch`] with the prepared density.
    pub fn eval(&self, s: ComplexValue, mode: Mode) -> Result<EvalResult> {
        let (params, cfg) = (&self.params, &self.cfg);
        match mode {
            Mode::Series => series(params, s, &cfg.series),
            Mode::Integral => self.integral(s),
            Mode::Auto if auto_uses_series(params, s) => series(params, s, &cfg.series),
            Mode::Auto => self.integral(s),
            Mode::Verify => {
                let mut main = self.integral(s)?;
                let mut others = Vec::new();
                if series_legal(params, s) {
                    others.push(series(params, s, &cfg.series)?);
                }
                if s.re > mellin_bound(params) {
                    others.push(eval_mellin(params, s, cfg)?);
                }
                for other in others {
                    let discrepancy = (other.value - main.value).norm();
                    let allowed = 10.0 * (other.err_estimate + main.err_estimate);
                    main.warnings.push(format!("{}-integral discrepancy {discrepancy:.3e} (allowed {allowed:.3e})", other.method));
                    if discrepancy > allowed {
                        return Err(Error::Disagreement { discrepancy, allowed });
                    }
                }
                Ok(main)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(family: Family, alpha: &[f64], a: &[f64], b: f64) -> ZetaParams {
        ZetaParams::new(family, alpha.to_vec(), a.to_vec(), b).unwrap()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(r: &EvalResult, want: Complex64, tol: f64) {
        assert!((r.value - want).norm() < tol, "{} vs {want} (err {})", r.value, r.err_estimate);
    }

    #[test]
    fn hurwitz_classical_values() {
        let cfg = EvalConfig::default();
        close(&hurwitz(re(2.0), 1.0, &cfg).unwrap(), re(PI * PI / 6.0), 1e-9);
        close(&hurwitz(re(0.0), 1.0, &cfg).unwrap(), re(-0.5), 1e-9);
        close(&hurwitz(re(-1.0), 1.0, &cfg).unwrap(), re(-1.0 / 12.0), 1e-9);
        close(&hurwitz(re(0.0), 0.3, &cfg).unwrap(), re(0.2), 1e-9);
        // ζ(2; 0.3), c < 0
        close(&hurwitz(re(2.0), 0.3, &cfg).unwrap(), re(12.245_364_546_107_731), 1e-8);
        assert!(matches!(hurwitz(re(2.0), 0.5, &cfg), Err(Error::Parameter(_))));
    }

    #[test]
    fn negative_c_continuation() {
        let cfg = EvalConfig::default();
        let c = |x: f64, y: f64| Complex64::new(x, y);
        let cases = [
            (eta_shift(c(-2.5, 1.0), 0.3, &cfg), c(-0.039_354_148_590_698_163, -0.237_308_585_726_082_60)),
            (eta_shift(c(0.5, -3.0), 0.3, &cfg), c(-2.442_211_958_016_405_2, 0.618_666_843_713_430_07)),
            (eta_shift(c(2.0, 0.0), 0.3, &cfg), c(10.649_637_352_132_547, 0.0)),
            (barnes(c(3.0, 0.0), &[1.0, 1.0], 0.5, &cfg), c(9.142_001_361_603_259_3, 0.0)),
            (barnes(c(-1.5, 2.0), &[1.0, 1.0], 0.5, &cfg), c(-0.113_026_303_544_622_43, -0.001_304_425_281_889_975_4)),
            (barnes(c(0.5, 0.0), &[1.0, 1.0], 0.5, &cfg), c(-0.241_560_856_130_220_26, 0.0)),
            (hurwitz(c(-3.3, 4.1), 0.3, &cfg), c(0.317_056_396_156_033_73, 0.024_129_360_059_460_052)),
        ];
        for (got, want) in cases {
            close(&got.unwrap(), want, 1e-9);
        }
    }

    #[test]
    fn eta_values() {
        let cfg = EvalConfig::default();
        let ln2 = 2f64.ln();
        close(&eta_shift(re(1.0), 1.0, &cfg).unwrap(), re(ln2), 1e-9);
        close(&eta_shift(re(2.0), 1.0, &cfg).unwrap(), re(PI * PI / 12.0), 1e-9);
        close(&eta_shift(re(0.0), 1.0, &cfg).unwrap(), re(0.5), 1e-9);
        close(&eta_shift(re(-1.0), 1.0, &cfg).unwrap(), re(0.25), 1e-9);
        close(&eta_shift(re(-2.0), 1.0, &cfg).unwrap(), re(0.0), 1e-9);
        close(&eta_shift(re(2.0), 2.0, &cfg).unwrap(), re(1.0 - PI * PI / 12.0), 1e-9);
    }

    #[test]
    fn cosh_and_tanh_at_zero_are_two_to_minus_beta() {
        let cfg = EvalConfig::default();
        for params in [p(Family::Cosh, &[1.0, 2.0], &[0.5, 1.5], 2.7), p(Family::Tanh, &[1.0, 2.0], &[0.5, 1.5], 0.7)] {
            let r = Evaluator::new(&params, &cfg).unwrap().integral(re(0.0)).unwrap();
            close(&r, re(2f64.powf(-params.beta())), 1e-9);
        }
    }

    #[test]
    fn tanh_unit_values() {
        let cfg = EvalConfig::default();
        let t = p(Family::Tanh, &[1.0], &[1.0], 1.0);
        // Σ (−1)^n ln((n+2)/(n+1)) = ln(π/2) by the Wallis product
        close(&eval_T(&t, re(1.0), &cfg).unwrap(), re((PI / 2.0).ln()), 1e-9);
        let series6 = series(&t, re(6.0), &SeriesConfig::default()).unwrap();
        close(&eval_T(&t, re(6.0), &cfg).unwrap(), series6.value, 1e-9);
    }

    #[test]
    fn mellin_path() {
        let cfg = EvalConfig::default();
        let h = p(Family::Sinh, &[1.0], &[1.0], 1.0);
        close(&eval_mellin(&h, re(2.0), &cfg).unwrap(), re(PI * PI / 6.0), 1e-9);
        let c = p(Family::Cosh, &[1.0], &[1.0], 1.0);
        close(&eval_mellin(&c, re(0.5), &cfg).unwrap(), eval_C(&c, re(0.5), &cfg).unwrap().value, 1e-9);
        let t = p(Family::Tanh, &[1.0], &[1.0], 1.0);
        close(&eval_mellin(&t, re(1.0), &cfg).unwrap(), re((PI / 2.0).ln()), 1e-9);
        assert!(matches!(eval_mellin(&h, re(0.5), &cfg), Err(Error::ConvergenceRegion { .. })));
    }

    #[test]
    fn at_pole_carries_residue() {
        let cfg = EvalConfig::default();
        let h = p(Family::Sinh, &[1.0], &[1.0], 1.0);
        match hurwitz(re(1.0), 1.0, &cfg) {
            Err(Error::AtPole { pole, residue }) => {
                assert_eq!(pole, 1.0);
                assert!((residue - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let half = p(Family::Sinh, &[0.5], &[1.0], 1.0);
        assert!(matches!(eval_S(&half, re(-0.5), &cfg), Err(Error::AtPole { .. })));
        assert!(eval_S(&h, Complex64::new(1.0, 1e-6), &cfg).is_ok());
    }

    #[test]
    fn pole_reports() {
        let h = poles_S(&p(Family::Sinh, &[1.0], &[1.0], 1.7), DEFAULT_N_MAX).unwrap();
        assert_eq!(h.entries, vec![PoleEntry { location: 1.0, residue: 1.0, kind: PoleKind::IntegerCase }]);
        let b = poles_S(&p(Family::Sinh, &[1.0, 1.0], &[1.0, 1.0], 3.0), DEFAULT_N_MAX).unwrap();
        assert_eq!(b.entries.len(), 2);
        assert_eq!((b.entries[0].location, b.entries[1].location), (2.0, 1.0));
        assert!((b.entries[0].residue - 1.0).abs() < 1e-14);
        assert!((b.entries[1].residue + 2.0).abs() < 1e-14);
        let half = poles_S(&p(Family::Sinh, &[0.5], &[1.0], 1.0), 3).unwrap();
        let locs: Vec<f64> = half.entries.iter().map(|e| e.location).collect();
        assert_eq!(locs, vec![0.5, -0.5, -1.5, -2.5]);
        assert!((half.entries[0].residue - 1.0 / PI.sqrt()).abs() < 1e-14);
        assert_eq!(half.entries[0].kind, PoleKind::NonIntegerCaseI);
        assert_eq!(half.entries[1].kind, PoleKind::NonIntegerCaseII);
        // n = 1: −c/Γ(−1/2) with c = 3/4
        assert!((half.entries[1].residue - 0.75 / (2.0 * PI.sqrt())).abs() < 1e-12);
        assert!(poles_S(&p(Family::Cosh, &[1.0], &[1.0], 1.0), 3).is_err());
    }

    #[test]
    fn residue_limits() {
        let h = p(Family::Sinh, &[1.0], &[1.0], 1.0);
        assert!((residue_check(&h, 1.0, 1e-3).unwrap() - 1.0).abs() < 1e-6);
        let half = p(Family::Sinh, &[0.5], &[1.0], 1.0);
        assert!((residue_check(&half, 0.5, 1e-3).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-6);
        assert!(residue_check(&h, 1.0, 0.5).is_err());
    }

    #[test]
    fn trivial_zeros() {
        let cfg = EvalConfig::default();
        let half = p(Family::Sinh, &[0.5], &[1.0], 1.0);
        for s in [0.0, -1.0, -2.0] {
            assert!(eval_S(&half, re(s), &cfg).unwrap().value.norm() <= 1e-8);
        }
    }

    #[test]
    fn dispatch_modes() {
        let cfg = EvalConfig::default();
        let h = p(Family::Sinh, &[1.0], &[1.0], 1.0);
        let v = dispatch(&h, re(3.0), Mode::Verify, &cfg).unwrap();
        assert_eq!(v.method, Method::Integral);
        assert_eq!(v.warnings.len(), 2);
        let a = dispatch(&h, re(-1.0), Mode::Auto, &cfg).unwrap();
        assert_eq!(a.method, Method::Integral);
        let a = dispatch(&h, re(3.5), Mode::Auto, &cfg).unwrap();
        assert_eq!(a.method, Method::Series);
        assert!(matches!(dispatch(&h, re(1.2), Mode::Series, &cfg), Err(Error::ConvergenceRegion { .. })));
        let c2 = p(Family::Cosh, &[1.0, 1.0], &[1.0, 1.0], 1.5);
        dispatch(&c2, re(4.0), Mode::Verify, &cfg).unwrap();
        // c = 0: only the series is available
        let c0 = p(Family::Cosh, &[1.0, 1.0], &[1.0, 1.0], 1.0);
        assert!(matches!(dispatch(&c0, re(3.0), Mode::Auto, &cfg), Err(Error::Parameter(_))));
        let r = dispatch(&c0, re(3.0), Mode::Series, &cfg).unwrap();
        assert!((r.value.re - PI * PI / 12.0).abs() <= r.err_estimate.max(1e-9));
    }
}
