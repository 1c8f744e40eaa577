//! Analytic continuation of S and C for c < 0 through the Mellin form
//!
//! Γ(s)F(s) = Σ_k g_k x0^{s+k−β}/(s+k−β) + ∫_{x0}^∞ x^{s−1} G(x) dx,
//!
//! where G(x) = e^{−bx} ∏ (1 ∓ e^{−a_j x})^{−α_j} = Σ_k g_k x^{k−β} on
//! 0 < x < x0, with x0 inside the radius of convergence of the expansion.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyperdist::Family;
use crate::params::{EvalResult, Method, ZetaParams};
use crate::quadrature::{integrate_halfline, tolerate_max_depth, QuadConfig};
use crate::special::{as_integer, gamma, gamma_real, ComplexValue, POLE_TOL};

const MAX_TERMS: usize = 400;

/// ζ(2k) for k ≥ 1.
pub fn zeta_even(k: u32) -> f64 {
    match k {
        0 => -0.5,
        1 => PI * PI / 6.0,
        2 => PI.powi(4) / 90.0,
        _ => {
            let p = 2.0 * k as f64;
            if p > 60.0 {
                return 1.0 + 2f64.powf(-p) + 3f64.powf(-p);
            }
            let n = 200usize;
            let head: f64 = (1..n).rev().map(|j| (j as f64).powf(-p)).sum();
            let nf = n as f64;
            // Euler–Maclaurin tail from n
            head + nf.powf(1.0 - p) / (p - 1.0) + 0.5 * nf.powf(-p) + p * nf.powf(-p - 1.0) / 12.0
        }
    }
}

/// Coefficients l_1.. of L(x) = ln(x^β G(x)) − l_0, and l_0 itself.
fn log_series(params: &ZetaParams, order: usize) -> (f64, Vec<f64>) {
    let mut l = vec![0.0; order + 1];
    let mut l0 = 0.0;
    if order >= 1 {
        l[1] = -params.b;
    }
    for (&a, &al) in params.a.iter().zip(&params.alpha) {
        match params.family {
            Family::Sinh => {
                // x/(1−e^{−ax}) = a^{−1} e^{ax/2} u/sinh u, u = ax/2
                l0 -= al * a.ln();
                if order >= 1 {
                    l[1] += 0.5 * al * a;
                }
                for k in 1..=order / 2 {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    l[2 * k] += al * sign * zeta_even(k as u32) / k as f64 * (a / (2.0 * PI)).powi(2 * k as i32);
                }
            }
            Family::Cosh => {
                // 1/(1+e^{−ax}) = e^{ax/2}/(2 cosh u)
                l0 -= al * 2f64.ln();
                if order >= 1 {
                    l[1] += 0.5 * al * a;
                }
                for k in 1..=order / 2 {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    let ln_cosh = -sign * (4f64.powi(k as i32) - 1.0) * zeta_even(k as u32) / k as f64 * (a / (2.0 * PI)).powi(2 * k as i32);
                    l[2 * k] -= al * ln_cosh;
                }
            }
            Family::Tanh => unreachable!("tanh needs no continuation"),
        }
    }
    (l0, l)
}

/// Taylor coefficients of exp(l_0 + Σ l_k x^k).
fn exp_series(l0: f64, l: &[f64]) -> Vec<f64> {
    let mut h = vec![0.0; l.len()];
    h[0] = l0.exp();
    for n in 1..l.len() {
        let acc: f64 = (1..=n).map(|k| k as f64 * l[k] * h[n - k]).sum();
        h[n] = acc / n as f64;
    }
    h
}

fn rgamma(s: ComplexValue) -> Result<ComplexValue> {
    match gamma(s) {
        Ok(g) => Ok(g.inv()),
        Err(Error::Pole { .. }) => Ok(Complex64::new(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

fn exact_nonpositive_integer(s: ComplexValue) -> Option<u32> {
    if s.im != 0.0 || s.re > 0.0 {
        return None;
    }
    as_integer(s.re).map(|m| (-m) as u32)
}

/// Radius of convergence of the small-x expansion.
fn radius(params: &ZetaParams) -> f64 {
    let a_max = params.a.iter().fold(0.0f64, |m, &a| m.max(a));
    match params.family {
        Family::Sinh => 2.0 * PI / a_max,
        _ => PI / a_max,
    }
}

/// S or C at any non-pole s through the continued Mellin form.
pub fn continued_mellin(params: &ZetaParams, s: ComplexValue, cfg: &QuadConfig) -> Result<EvalResult> {
    params.validate()?;
    if params.family == Family::Tanh {
        return Err(Error::UnsupportedFamily("tanh"));
    }
    let beta = if params.family == Family::Sinh { params.beta() } else { 0.0 };
    let x0 = (radius(params) / 3.0).min(1.0);
    let (l0, l) = log_series(params, MAX_TERMS);
    let g = exp_series(l0, &l);

    let rg = rgamma(s)?;
    let m_exact = exact_nonpositive_integer(s);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut small_run = 0;
    let scale = g.iter().take(4).fold(0.0f64, |m, v| m.max(v.abs()));
    for (k, &gk) in g.iter().enumerate() {
        let t = s + k as f64 - beta;
        let mag = gk.abs() * x0.powi(k as i32);
        if t.norm() < POLE_TOL {
            match m_exact {
                // 1/(Γ(s)(s+m)) → (−1)^m m! as s → −m
                Some(m) => {
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    sum += gk * sign * gamma_real(m as f64 + 1.0)?;
                }
                None if gk == 0.0 => {}
                None => return Err(Error::Pole { re: s.re, im: s.im }),
            }
        } else {
            sum += gk * (t * x0.ln()).exp() * rg / t;
        }
        if k > 8 && mag < 1e-18 * scale.max(1e-300) {
            small_run += 1;
            if small_run >= 4 {
                break;
            }
        } else {
            small_run = 0;
        }
        last = mag;
    }
    let series_err = last * 4.0 * (rg.norm() + 1.0) * x0.powf(s.re - beta).max(1.0);

    let k_bound = match params.family {
        Family::Sinh => params.a.iter().zip(&params.alpha).map(|(&a, &al)| (-(-a * x0).exp_m1()).powf(-al)).product::<f64>(),
        _ => 1.0,
    };
    let (sigma, b) = (s.re, params.b);
    let tail = move |r: f64| -> f64 {
        if b * r < 2.0 * (sigma - 1.0).max(0.0) {
            return f64::INFINITY;
        }
        k_bound * r.powf(sigma - 1.0) * (-b * r).exp() * 2.0 / b
    };
    let family = params.family;
    let integrand = |x: f64| -> Complex64 {
        let gx: f64 = params
            .a
            .iter()
            .zip(&params.alpha)
            .map(|(&a, &al)| match family {
                Family::Sinh => (-(-a * x).exp_m1()).powf(-al),
                _ => (1.0 + (-a * x).exp()).powf(-al),
            })
            .product();
        ((s - 1.0) * x.ln() - b * x).exp() * gx
    };
    let quad_cfg = cfg.with_abs(cfg.abs_tol / (rg.norm().max(1e-300)).max(1.0));
    let (q, converged) = tolerate_max_depth(integrate_halfline(integrand, x0, &quad_cfg, &[], Some(&tail)))?;
    let value = sum + q.value * rg;
    let mut warnings = vec!["c < 0: used the continued Mellin form".to_string()];
    if !converged {
        warnings.push(format!("quadrature tolerance not reached (estimate {:.3e})", q.err_estimate));
    }
    Ok(EvalResult { value, err_estimate: q.err_estimate * rg.norm() + series_err, method: Method::Mellin, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hz(b: f64) -> ZetaParams {
        ZetaParams::new(Family::Sinh, vec![1.0], vec![1.0], b).unwrap()
    }

    #[test]
    fn even_zeta_values() {
        assert!((zeta_even(3) - PI.powi(6) / 945.0).abs() < 1e-15);
        assert!((zeta_even(4) - PI.powi(8) / 9450.0).abs() < 1e-15);
        assert!((zeta_even(20) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expansion_matches_kernel() {
        for p in [hz(0.3), ZetaParams::new(Family::Sinh, vec![0.5, 2.0], vec![1.0, 0.7], 0.2).unwrap(), ZetaParams::new(Family::Cosh, vec![1.5], vec![2.0], 0.4).unwrap()] {
            let (l0, l) = log_series(&p, 80);
            let g = exp_series(l0, &l);
            let beta = if p.family == Family::Sinh { p.beta() } else { 0.0 };
            let x: f64 = 0.3;
            let series: f64 = g.iter().enumerate().map(|(k, gk)| gk * x.powf(k as f64 - beta)).sum();
            let direct: f64 = (-p.b * x).exp()
                * p.a.iter().zip(&p.alpha).map(|(&a, &al)| if p.family == Family::Sinh { (1.0 - (-a * x).exp()).powf(-al) } else { (1.0 + (-a * x).exp()).powf(-al) }).product::<f64>();
            assert!((series - direct).abs() < 1e-13 * direct.abs(), "{series} vs {direct}");
        }
    }

    #[test]
    fn hurwitz_with_negative_c() {
        let cfg = QuadConfig::default();
        // ζ(2; 0.3), ζ(0; 0.3), ζ(−1; 0.3) = −B_2(0.3)/2
        let v = continued_mellin(&hz(0.3), Complex64::new(2.0, 0.0), &cfg).unwrap();
        assert!((v.value.re - 12.245_364_546_107_731).abs() < 1e-9, "{}", v.value);
        let v = continued_mellin(&hz(0.3), Complex64::new(0.0, 0.0), &cfg).unwrap();
        assert!((v.value.re - 0.2).abs() < 1e-12);
        let v = continued_mellin(&hz(0.3), Complex64::new(-1.0, 0.0), &cfg).unwrap();
        assert!((v.value.re + (0.09 - 0.3 + 1.0 / 6.0) / 2.0).abs() < 1e-12);
        assert!(continued_mellin(&hz(0.3), Complex64::new(1.0, 0.0), &cfg).is_err());
    }

    #[test]
    fn agrees_with_integral_form_for_positive_c() {
        use crate::zeta::{EvalConfig, Evaluator};
        let p = ZetaParams::new(Family::Cosh, vec![1.0, 2.0], vec![0.5, 1.5], 2.7).unwrap();
        let ev = Evaluator::new(&p, &EvalConfig::default()).unwrap();
        for s in [Complex64::new(-2.5, 1.0), Complex64::new(0.7, -3.0), Complex64::new(3.0, 0.0)] {
            let a = continued_mellin(&p, s, &QuadConfig::default()).unwrap().value;
            let b = ev.integral(s).unwrap().value;
            assert!((a - b).norm() < 1e-8 * b.norm().max(1.0), "{a} vs {b}");
        }
    }
}
