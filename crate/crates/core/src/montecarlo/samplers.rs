use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::subordinators::SubordinatorSpec;

/// Rejection attempts allowed per tempered draw.
pub const TEMPERED_MAX_ATTEMPTS: u64 = 1_000_000;

/// D(scale_t) for the standard α-stable subordinator, E e^{-λD} = e^{-scale_t λ^α}.
///
/// Kanter's representation: with U uniform on (0, π) and E standard
/// exponential, S = sin(αU)/sin(U)^{1/α} · (sin((1-α)U)/E)^{(1-α)/α}.
pub fn sample_stable_increment<R: Rng + ?Sized>(alpha: f64, scale_t: f64, rng: &mut R) -> f64 {
    debug_assert!(alpha > 0.0 && alpha < 1.0 && scale_t > 0.0);
    let u = loop {
        let u = PI * rng.random::<f64>();
        if u > 0.0 {
            break u;
        }
    };
    let e: f64 = loop {
        let e = Exp1.sample(rng);
        if e > 0.0 {
            break e;
        }
    };
    let r = (1.0 - alpha) / alpha;
    let ln_s = (alpha * u).sin().ln() - u.sin().ln() / alpha + r * (((1.0 - alpha) * u).sin().ln() - e.ln());
    (ln_s + scale_t.ln() / alpha).exp()
}

/// D(scale_t) for the tempered stable subordinator by exponential tilting:
/// a stable draw S is kept with probability e^{-aS}.
pub fn sample_tempered_increment<R: Rng + ?Sized>(alpha: f64, a: f64, scale_t: f64, rng: &mut R) -> Result<f64> {
    for _ in 0..TEMPERED_MAX_ATTEMPTS {
        let s = sample_stable_increment(alpha, scale_t, rng);
        if rng.random::<f64>() < (-a * s).exp() {
            return Ok(s);
        }
    }
    Err(Error::SamplerStall { attempts: TEMPERED_MAX_ATTEMPTS })
}

/// One increment D(u + scale) - D(u) for any samplable family.
pub fn sample_increment<R: Rng + ?Sized>(spec: &SubordinatorSpec, scale: f64, rng: &mut R) -> Result<f64> {
    match *spec {
        SubordinatorSpec::Stable { alpha } => Ok(sample_stable_increment(alpha, scale, rng)),
        SubordinatorSpec::TemperedStable { alpha, a } => sample_tempered_increment(alpha, a, scale, rng),
        SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 } => {
            // independent stable parts run at rates c1 and c2
            Ok(sample_stable_increment(alpha1, c1 * scale, rng) + sample_stable_increment(alpha2, c2 * scale, rng))
        }
        SubordinatorSpec::DeterministicDrift { mu } => Ok(mu * scale),
        SubordinatorSpec::CustomBernstein(_) => Err(Error::Unsupported("path sampling".into())),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::montecarlo::RngStream;

    /// Mean and standard error of f over n draws.
    pub(crate) fn mc<F: FnMut(&mut RngStream) -> f64>(n: usize, seed: u64, mut f: F) -> (f64, f64) {
        let mut rng = RngStream::new(seed, 0);
        let xs: Vec<f64> = (0..n).map(|_| f(&mut rng)).collect();
        let m = xs.iter().sum::<f64>() / n as f64;
        let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
        (m, (v / n as f64).sqrt())
    }

    #[test]
    fn stable_laplace_transform() {
        for &alpha in &[0.3, 0.5, 0.8] {
            for &lam in &[0.5, 1.0, 2.0] {
                let (m, se) = mc(100_000, 1, |r| (-lam * sample_stable_increment(alpha, 1.0, r)).exp());
                let exact = (-lam.powf(alpha)).exp();
                assert!((m - exact).abs() < 3.5 * se, "α={alpha} λ={lam}: {m} ± {se} vs {exact}");
            }
        }
    }

    #[test]
    fn tempered_laplace_transform() {
        let (m, se) = mc(100_000, 2, |r| (-sample_tempered_increment(0.5, 1.0, 0.1, r).unwrap()).exp());
        let exact = (-0.1 * (2f64.sqrt() - 1.0)).exp();
        assert!((m - exact).abs() < 3.5 * se, "{m} ± {se} vs {exact}");
    }

    #[test]
    fn nonnegative_and_drift_exact() {
        let mut r = RngStream::new(3, 0);
        for _ in 0..10_000 {
            assert!(sample_stable_increment(0.9, 1e-3, &mut r) >= 0.0);
            assert!(sample_tempered_increment(0.2, 5.0, 1e-3, &mut r).unwrap() >= 0.0);
        }
        let d = SubordinatorSpec::DeterministicDrift { mu: 2.0 };
        assert_eq!(sample_increment(&d, 0.25, &mut r).unwrap(), 0.5);
    }

    #[test]
    fn custom_family_cannot_be_sampled() {
        let c = SubordinatorSpec::custom("lin", |s| s).unwrap();
        let mut r = RngStream::new(3, 0);
        assert!(matches!(sample_increment(&c, 1.0, &mut r), Err(Error::Unsupported(_))));
    }

    #[test]
    fn stall_is_reported() {
        // acceptance rate e^{-scale·a^α} is zero in double precision
        let mut r = RngStream::new(5, 0);
        let res = sample_tempered_increment(0.9, 1e3, 1e3, &mut r);
        assert!(matches!(res, Err(Error::SamplerStall { attempts: TEMPERED_MAX_ATTEMPTS })));
    }
}
