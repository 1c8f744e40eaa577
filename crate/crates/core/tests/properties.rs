use hyperzeta::hyperdist::{cf_mixture, Family, MixtureDensity, MixtureSpec};
use hyperzeta::oracle::hurwitz_em;
use hyperzeta::params::ZetaParams;
use hyperzeta::quadrature::QuadConfig;
use hyperzeta::special::{gamma, gen_binomial, log_gamma};
use hyperzeta::zeta::{barnes, EvalConfig, Evaluator};
use num_complex::Complex64;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Sinh), Just(Family::Cosh), Just(Family::Tanh)]
}

fn params() -> impl Strategy<Value = ZetaParams> {
    (family(), prop::collection::vec((1u32..=2, 0.5f64..2.0), 1..=2), 0.6f64..3.0)
        .prop_filter_map("c too close to zero", |(fam, comps, b)| {
            let alpha = comps.iter().map(|c| c.0 as f64).collect();
            let a = comps.iter().map(|c| c.1).collect();
            let p = ZetaParams::new(fam, alpha, a, b).ok()?;
            (fam == Family::Tanh || p.c().abs() >= 0.1).then_some(p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugate_symmetry(p in params(), re in -3.0f64..4.0, im in 0.1f64..4.0) {
        let ev = Evaluator::new(&p, &EvalConfig::default()).unwrap();
        let s = Complex64::new(re, im);
        let (up, down) = match (ev.integral(s), ev.integral(s.conj())) {
            (Ok(u), Ok(d)) => (u.value, d.value),
            _ => return Ok(()),
        };
        prop_assert!((up - down.conj()).norm() <= 1e-10 * up.norm().max(1.0), "{} vs {}", up, down);
    }

    #[test]
    fn gamma_recurrence(re in -6.0f64..6.0, im in -6.0f64..6.0) {
        let z = Complex64::new(re, im);
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let g = gamma(z).unwrap();
        let g1 = gamma(z + 1.0).unwrap();
        prop_assert!((g1 - z * g).norm() <= 1e-12 * g1.norm().max(1e-300));
        let lg = log_gamma(z).unwrap();
        prop_assert!((lg.exp() - g).norm() <= 1e-12 * g.norm());
    }

    #[test]
    fn binomial_pascal(gamma_ in -4.0f64..4.0, n in 1u32..25) {
        // C(γ, n) = C(γ−1, n) + C(γ−1, n−1)
        let lhs = gen_binomial(gamma_, n);
        let rhs = gen_binomial(gamma_ - 1.0, n) + gen_binomial(gamma_ - 1.0, n - 1);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn cf_is_even_and_bounded(fam in family(), a in 0.3f64..3.0, alpha in 1u32..3, theta in -20.0f64..20.0) {
        let spec = MixtureSpec::new(fam, vec![(a, alpha as f64)]).unwrap();
        let v = cf_mixture(&spec, theta);
        prop_assert_eq!(v, cf_mixture(&spec, -theta));
        prop_assert!(v > 0.0 && v <= 1.0 + 1e-15);
    }

    #[test]
    fn densities_are_nonnegative(fam in family(), a in 0.5f64..2.0, alpha in 1u32..3, y in -6.0f64..6.0) {
        prop_assume!(y.abs() > 1e-6);
        let spec = MixtureSpec::new(fam, vec![(a, alpha as f64)]).unwrap();
        let d = MixtureDensity::new(&spec, &QuadConfig::default()).unwrap();
        let v = d.density(y).unwrap();
        prop_assert!(v >= 0.0 && v <= d.envelope(y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn barnes_scaling(a in prop_oneof![Just(0.5f64), Just(2.0f64)], b in 0.6f64..3.0, k in 0usize..3) {
        // ζ_B(s; a; b) = a^{−s} ζ(s; b/a)
        let s = [Complex64::new(-1.0, 0.0), Complex64::new(0.5, 1.0), Complex64::new(3.0, 0.0)][k];
        prop_assume!((b - 0.5 * a).abs() > 1e-3);
        let lhs = barnes(s, &[a], b, &EvalConfig::default()).unwrap().value;
        let rhs = (-s * a.ln()).exp() * hurwitz_em(s, b / a).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm().max(1.0), "{} vs {}", lhs, rhs);
    }
}
