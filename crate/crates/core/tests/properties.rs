use proptest::prelude::*;
use tfbm::moments::{increment_moment_y, moment_u};
use tfbm::specfun::{incomplete_beta, mittag_leffler, prabhakar, regularized_lower_gamma};
use tfbm::tfbm::{corr_z, cov_z, var_z, TfbmModel};
use tfbm::{laplace_exponent, SubordinatorSpec};

fn family() -> impl Strategy<Value = SubordinatorSpec> {
    prop_oneof![
        (0.2..0.95f64).prop_map(|alpha| SubordinatorSpec::Stable { alpha }),
        (0.2..0.95f64, 0.1..3.0f64).prop_map(|(alpha, a)| SubordinatorSpec::TemperedStable { alpha, a }),
        (0.2..0.5f64, 0.55..0.95f64, 0.1..0.9f64)
            .prop_map(|(alpha1, alpha2, c1)| SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2: 1.0 - c1 }),
        (0.2..5.0f64).prop_map(|mu| SubordinatorSpec::DeterministicDrift { mu }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laplace_exponent_is_increasing(spec in family(), l in 0.01..50.0f64) {
        let a = laplace_exponent(&spec, l).unwrap();
        let b = laplace_exponent(&spec, 1.5 * l).unwrap();
        prop_assert!(a > 0.0 && b > a);
    }

    #[test]
    fn covariance_is_symmetric_and_bounded(spec in family(), h in 0.1..0.9f64, t in 0.1..5.0f64, s in 0.1..5.0f64) {
        let m = TfbmModel::new(h, 1.3, spec).unwrap();
        let c = cov_z(&m, t, s).unwrap();
        let c2 = cov_z(&m, s, t).unwrap();
        prop_assert!((c - c2).abs() <= 1e-12 * c.abs().max(1.0));
        let bound = (var_z(&m, t).unwrap() * var_z(&m, s).unwrap()).sqrt();
        prop_assert!(c.abs() <= bound * (1.0 + 1e-9));
        let r = corr_z(&m, t, s).unwrap();
        prop_assert!(r.abs() <= 1.0 + 1e-9);
    }

    #[test]
    fn renewal_moments_grow(spec in family(), k in 0.3..2.5f64, t in 0.05..5.0f64) {
        let a = moment_u(&spec, k, t).unwrap();
        let b = moment_u(&spec, k, 1.2 * t).unwrap();
        prop_assert!(a > 0.0 && b > a);
    }

    #[test]
    fn increment_moment_below_total(spec in family(), k in 0.5..2.5f64, s in 0.1..3.0f64, gap in 0.05..3.0f64) {
        let t = s + gap;
        let inc = increment_moment_y(&spec, k, t, s).unwrap();
        let total = moment_u(&spec, k, t).unwrap();
        prop_assert!(inc > 0.0 && inc <= total * (1.0 + 1e-9));
    }

    #[test]
    fn incomplete_beta_monotone(a in 0.1..4.0f64, b in 0.1..4.0f64, z in 0.0..0.95f64) {
        let x = incomplete_beta(a, b, z).unwrap();
        let y = incomplete_beta(a, b, z + 0.05).unwrap();
        prop_assert!(y >= x);
    }

    #[test]
    fn regularized_gamma_is_a_cdf(v in 0.05..20.0f64, x in 0.0..40.0f64) {
        let p = regularized_lower_gamma(x, v).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!(regularized_lower_gamma(x + 0.5, v).unwrap() >= p);
    }

    #[test]
    fn prabhakar_gamma_one_is_mittag_leffler(a in 0.1..1.0f64, b in 0.2..2.0f64, z in -20.0..2.0f64) {
        let p = prabhakar(a, b, 1.0, z).unwrap();
        let e = mittag_leffler(a, b, z).unwrap();
        prop_assert!((p - e).abs() <= 1e-12 * e.abs().max(1e-3), "{p} vs {e}");
    }
}
