use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use hyperzeta::error::Error;
use hyperzeta::hyperdist::Family;
use hyperzeta::oracle::{eta_reference, hurwitz_em};
use hyperzeta::params::{Method, ZetaParams};
use hyperzeta::series::{series, SeriesConfig};
use hyperzeta::zeta::{barnes, dispatch, eval_C, eval_S, eval_T, eta_shift, hurwitz, poles_S, residue_check, EvalConfig, Mode};
use num_complex::Complex64;

const ZETA3: f64 = 1.202_056_903_159_594_3;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn p(family: Family, alpha: &[f64], a: &[f64], b: f64) -> ZetaParams {
    ZetaParams::new(family, alpha.to_vec(), a.to_vec(), b).unwrap()
}

#[test]
fn barnes_reductions() {
    let cfg = EvalConfig::default();
    assert_abs_diff_eq!(barnes(re(3.0), &[2.0], 2.0, &cfg).unwrap().value.re, ZETA3 / 8.0, epsilon = 1e-10);
    assert_abs_diff_eq!(barnes(re(4.0), &[1.0, 1.0], 2.0, &cfg).unwrap().value.re, ZETA3 - PI.powi(4) / 90.0, epsilon = 1e-10);
    let three = p(Family::Sinh, &[1.0; 3], &[1.0; 3], 2.0);
    let direct = series(&three, re(6.0), &SeriesConfig::default()).unwrap();
    let integral = barnes(re(6.0), &[1.0; 3], 2.0, &cfg).unwrap();
    assert!((direct.value - integral.value).norm() <= 10.0 * (direct.err_estimate + integral.err_estimate) + 1e-12);
}

#[test]
fn non_integer_beta_matches_series() {
    let half = p(Family::Sinh, &[0.5], &[1.0], 1.0);
    let cfg = EvalConfig::default();
    let direct = series(&half, re(3.0), &SeriesConfig::default()).unwrap();
    let integral = eval_S(&half, re(3.0), &cfg).unwrap();
    assert!((direct.value - integral.value).norm() <= 1e-9, "{} vs {}", direct.value, integral.value);
}

#[test]
fn cosh_examples() {
    let cfg = EvalConfig::default();
    // c = 0 here, so only the series applies
    let c2 = p(Family::Cosh, &[1.0, 1.0], &[1.0, 1.0], 1.0);
    let v = series(&c2, re(4.0), &SeriesConfig::default()).unwrap();
    assert_abs_diff_eq!(v.value.re, 0.75 * ZETA3, epsilon = 1e-9);
    assert!(matches!(eval_C(&c2, re(4.0), &cfg), Err(Error::Parameter(_))));
    assert_abs_diff_eq!(eta_shift(re(-2.0), 1.0, &cfg).unwrap().value.re, 0.0, epsilon = 1e-10);
    assert_abs_diff_eq!(eta_shift(re(2.0), 2.0, &cfg).unwrap().value.re, 1.0 - PI * PI / 12.0, epsilon = 1e-10);
}

#[test]
fn eta_matches_oracle_off_axis() {
    let cfg = EvalConfig::default();
    for s in [Complex64::new(2.0, 3.0), Complex64::new(-4.0, -2.5), Complex64::new(0.5, 7.0)] {
        let got = eta_shift(s, 1.0, &cfg).unwrap().value;
        let want = eta_reference(s).unwrap().value;
        assert!((got - want).norm() < 1e-9, "{s}: {got} vs {want}");
    }
}

#[test]
fn tanh_examples() {
    let cfg = EvalConfig::default();
    let t = p(Family::Tanh, &[1.0], &[1.0], 1.0);
    assert_abs_diff_eq!(eval_T(&t, re(1.0), &cfg).unwrap().value.re, (PI / 2.0).ln(), epsilon = 1e-10);
    let direct = series(&t, re(6.0), &SeriesConfig::default()).unwrap();
    assert!((eval_T(&t, re(6.0), &cfg).unwrap().value - direct.value).norm() < 1e-9);
    // tanh only needs b > 0
    let b_half = p(Family::Tanh, &[2.0], &[1.0], 0.5);
    assert!(eval_T(&b_half, re(-1.5), &cfg).unwrap().value.norm().is_finite());
}

#[test]
fn hurwitz_agrees_with_euler_maclaurin() {
    let cfg = EvalConfig::default();
    for b in [0.3, 0.8, 1.0, 2.5] {
        for s in [Complex64::new(-2.5, 0.0), Complex64::new(0.3, 2.0), Complex64::new(2.0, -1.0), Complex64::new(4.5, 0.0)] {
            let got = hurwitz(s, b, &cfg).unwrap().value;
            let want = hurwitz_em(s, b).unwrap().value;
            assert!((got - want).norm() < 1e-9 * want.norm().max(1.0), "b={b} s={s}: {got} vs {want}");
        }
    }
}

#[test]
fn residues_at_every_reported_pole() {
    for params in [p(Family::Sinh, &[1.0, 1.0], &[1.0, 1.0], 0.5), p(Family::Sinh, &[2.0, 1.0], &[0.5, 1.5], 2.0), p(Family::Sinh, &[1.5], &[1.0], 2.0)] {
        let report = poles_S(&params, 3).unwrap();
        for entry in report.entries {
            let limit = residue_check(&params, entry.location, 1e-3).unwrap();
            let tol = 1e-6f64.max(1e-3 * entry.residue.abs());
            assert!((limit - entry.residue).abs() <= tol, "{:?} pole {}: {limit} vs {}", params.alpha, entry.location, entry.residue);
        }
    }
}

#[test]
fn dispatch_examples() {
    let cfg = EvalConfig::default();
    let h = p(Family::Sinh, &[1.0], &[1.0], 1.0);
    let v = dispatch(&h, re(3.0), Mode::Verify, &cfg).unwrap();
    assert_abs_diff_eq!(v.value.re, ZETA3, epsilon = 1e-9);
    assert!(v.warnings.iter().any(|w| w.starts_with("series-integral")));
    assert_eq!(dispatch(&h, re(-1.0), Mode::Auto, &cfg).unwrap().method, Method::Integral);
    let c2 = p(Family::Cosh, &[1.0, 1.0], &[1.0, 1.0], 1.7);
    dispatch(&c2, re(4.0), Mode::Verify, &cfg).unwrap();
    let at_c0 = p(Family::Sinh, &[1.0], &[1.0], 0.5);
    assert!(matches!(dispatch(&at_c0, re(2.0), Mode::Auto, &cfg), Err(Error::Parameter(_))));
}
