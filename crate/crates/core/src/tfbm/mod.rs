//! Second-order structure of fBm, FGN and the time-changed process Z.

mod asymptotics;

pub use asymptotics::{
    mixture_asymptotics, stable_asymptotics, tempered_asymptotics, AsymptoticReport, PowerTerm, Regime,
};

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::moments::{self, MomentConfig};
use crate::specfun::{gamma_fn, incomplete_beta_with, rgamma, EvalConfig};
use crate::subordinators::SubordinatorSpec;

/// Agreement demanded between the stable closed form and the quadrature.
const DUAL_ROUTE_TOL: f64 = 1e-8;

fn check_params(func: &'static str, hurst: f64, sigma2: f64) -> Result<()> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(domain(func, format!("hurst = {hurst} must lie in (0, 1)")));
    }
    if !(sigma2 > 0.0) || sigma2.is_infinite() {
        return Err(domain(func, format!("sigma2 = {sigma2} must be finite and positive")));
    }
    Ok(())
}

fn check_time(func: &'static str, name: &str, t: f64) -> Result<()> {
    if !(t >= 0.0) || t.is_infinite() {
        return Err(domain(func, format!("{name} = {t} must be finite and >= 0")));
    }
    Ok(())
}

fn ordered(t: f64, s: f64) -> (f64, f64) {
    if t >= s {
        (t, s)
    } else {
        (s, t)
    }
}

/// Z(t) = B_H(Y(t)) with Var B_H(1) = sigma2.
#[derive(Debug, Clone, PartialEq)]
pub struct TfbmModel {
    pub hurst: f64,
    pub sigma2: f64,
    pub sub: SubordinatorSpec,
    pub numerics: MomentConfig,
}

impl TfbmModel {
    pub fn new(hurst: f64, sigma2: f64, sub: SubordinatorSpec) -> Result<Self> {
        let m = TfbmModel { hurst, sigma2, sub, numerics: MomentConfig::default() };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        check_params("TfbmModel", self.hurst, self.sigma2)?;
        self.sub.validate()?;
        self.numerics.validate()
    }

    fn u(&self, kappa: f64, t: f64) -> Result<f64> {
        moments::moment_u_with(&self.sub, kappa, t, &self.numerics)
    }
}

/// fBm covariance (σ²/2)(|t|^{2H} + |s|^{2H} - |t-s|^{2H}).
pub fn fbm_cov(hurst: f64, sigma2: f64, t: f64, s: f64) -> Result<f64> {
    check_params("fbm_cov", hurst, sigma2)?;
    let h2 = 2.0 * hurst;
    Ok(0.5 * sigma2 * (t.abs().powf(h2) + s.abs().powf(h2) - (t - s).abs().powf(h2)))
}

/// FGN autocovariance r(j).
pub fn fgn_autocov(hurst: f64, sigma0_2: f64, j: u64) -> Result<f64> {
    check_params("fgn_autocov", hurst, sigma0_2)?;
    let h2 = 2.0 * hurst;
    Ok(match j {
        0 => sigma0_2,
        1 => 0.5 * sigma0_2 * (2f64.powf(h2) - 2.0),
        _ => {
            // j^{2H}[(1+1/j)^{2H} - 2 + (1-1/j)^{2H}] without the cancellation
            let x = 1.0 / j as f64;
            let f = |y: f64| (h2 * y.ln_1p()).exp_m1();
            0.5 * sigma0_2 * (j as f64).powf(h2) * (f(x) + f(-x))
        }
    })
}

/// Var Z(t) = σ² U^{2H}(t).
pub fn var_z(model: &TfbmModel, t: f64) -> Result<f64> {
    model.validate()?;
    check_time("var_z", "t", t)?;
    Ok(model.sigma2 * model.u(2.0 * model.hurst, t)?)
}

/// Cov(Z(t), Z(s)). Stable models are computed both ways and cross-checked.
pub fn cov_z(model: &TfbmModel, t: f64, s: f64) -> Result<f64> {
    let q = cov_z_quadrature(model, t, s)?;
    if let SubordinatorSpec::Stable { alpha } = model.sub {
        let c = stable_cov_closed_form(alpha, model.hurst, model.sigma2, t, s)?;
        if (q - c).abs() > DUAL_ROUTE_TOL * c.abs() {
            return Err(Error::DualRouteMismatch { quadrature: q, closed_form: c });
        }
        return Ok(c);
    }
    Ok(q)
}

/// Cov(Z(t), Z(s)) from the general renewal-integral representation.
pub fn cov_z_quadrature(model: &TfbmModel, t: f64, s: f64) -> Result<f64> {
    model.validate()?;
    check_time("cov_z", "t", t)?;
    check_time("cov_z", "s", s)?;
    let (big, small) = ordered(t, s);
    if small == 0.0 {
        return Ok(0.0);
    }
    let h2 = 2.0 * model.hurst;
    let head = model.u(h2, small)?;
    let tail = moments::renewal_integral(&model.sub, small, big, |x| model.u(h2 - 1.0, x), &model.numerics)?;
    Ok(0.5 * model.sigma2 * (head + h2 * tail))
}

/// Stable covariance through the incomplete beta function.
pub fn stable_cov_closed_form(alpha: f64, hurst: f64, sigma2: f64, t: f64, s: f64) -> Result<f64> {
    check_params("stable_cov_closed_form", hurst, sigma2)?;
    SubordinatorSpec::Stable { alpha }.validate()?;
    check_time("stable_cov_closed_form", "t", t)?;
    check_time("stable_cov_closed_form", "s", s)?;
    let (t, s) = ordered(t, s);
    if s == 0.0 {
        return Ok(0.0);
    }
    let b2 = alpha * (2.0 * hurst - 1.0) + 1.0;
    if !(b2 > 0.0) {
        return Err(domain("stable_cov_closed_form", format!("alpha(2H-1)+1 = {b2} must be positive")));
    }
    let g = gamma_fn(2.0 * hurst + 1.0)?;
    let beta = incomplete_beta_with(alpha, b2, s / t, &EvalConfig::default())?;
    let head = g * s.powf(2.0 * alpha * hurst) * rgamma(2.0 * alpha * hurst + 1.0);
    let tail = g * t.powf(2.0 * alpha * hurst) * rgamma(alpha) * rgamma(b2) * beta;
    Ok(0.5 * sigma2 * (head + tail))
}

/// corr(Z(t), Z(s)) for t, s > 0.
pub fn corr_z(model: &TfbmModel, t: f64, s: f64) -> Result<f64> {
    model.validate()?;
    for (name, x) in [("t", t), ("s", s)] {
        if !(x > 0.0) || x.is_infinite() {
            return Err(domain("corr_z", format!("{name} = {x} must be finite and positive")));
        }
    }
    let (big, small) = ordered(t, s);
    if model.hurst == 0.5 {
        let ub = model.u(1.0, big)?;
        let us = model.u(1.0, small)?;
        if !(us > 0.0) {
            return Err(Error::DegenerateVariance { t: small });
        }
        return Ok((us / ub).sqrt());
    }
    let vb = var_z(model, big)?;
    let vs = var_z(model, small)?;
    if !(vs > 0.0) {
        return Err(Error::DegenerateVariance { t: small });
    }
    if !(vb > 0.0) {
        return Err(Error::DegenerateVariance { t: big });
    }
    if big == small {
        return Ok(1.0);
    }
    Ok(cov_z(model, big, small)? / (vb.sqrt() * vs.sqrt()))
}

/// E|Z(t) - Z(s)|^m: Gaussian absolute moment times E|Y(t)-Y(s)|^{mH}.
pub fn abs_increment_moment_z(model: &TfbmModel, m: f64, t: f64, s: f64) -> Result<f64> {
    model.validate()?;
    if !(m > 0.0) || m.is_infinite() {
        return Err(domain("abs_increment_moment_z", format!("m = {m} must be finite and positive")));
    }
    let ey = moments::increment_moment_y_with(&model.sub, m * model.hurst, t, s, &model.numerics)?;
    Ok(gaussian_abs_moment(model.sigma2, m)? * ey)
}

/// E|N(0, σ²)|^m.
pub(crate) fn gaussian_abs_moment(sigma2: f64, m: f64) -> Result<f64> {
    Ok((2.0 * sigma2).powf(0.5 * m) * gamma_fn(0.5 * (m + 1.0))? / PI.sqrt())
}

/// Cov(Z(t) - Z(0), Z(t+v) - Z(v)) for v ≥ t > 0.
pub fn increment_cov_z(model: &TfbmModel, t: f64, v: f64) -> Result<f64> {
    model.validate()?;
    if !(t > 0.0) || !v.is_finite() || v < t {
        return Err(domain("increment_cov_z", format!("need v >= t > 0, got t = {t}, v = {v}")));
    }
    if model.hurst == 0.5 {
        return Ok(0.0);
    }
    let c = 2.0 * model.hurst - 1.0;
    let sub = &model.sub;
    let integral = match *sub {
        SubordinatorSpec::Stable { alpha } => {
            // U^c(x) ∝ x^{αc}; difference taken as x^{αc}·expm1(αc·ln1p(t/x))
            let k = gamma_fn(c + 1.0)? * rgamma(alpha * c + 1.0);
            moments::renewal_integral(
                sub,
                t,
                v,
                |x| Ok(k * x.powf(alpha * c) * (alpha * c * (t / x).ln_1p()).exp_m1()),
                &model.numerics,
            )?
        }
        SubordinatorSpec::DeterministicDrift { mu } => {
            let f = |x: f64| (x / mu).powf(2.0 * model.hurst);
            return Ok(0.5 * model.sigma2 * (f(t + v) + f(v - t) - 2.0 * f(v)));
        }
        _ => moments::renewal_integral(sub, t, v, |x| Ok(model.u(c, x + t)? - model.u(c, x)?), &model.numerics)?,
    };
    Ok(model.sigma2 * model.hurst * integral)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn models(h: f64) -> Vec<TfbmModel> {
        [
            SubordinatorSpec::Stable { alpha: 0.6 },
            SubordinatorSpec::TemperedStable { alpha: 0.5, a: 1.0 },
            SubordinatorSpec::StableMixture { alpha1: 0.3, alpha2: 0.7, c1: 0.5, c2: 0.5 },
            SubordinatorSpec::DeterministicDrift { mu: 1.0 },
        ]
        .into_iter()
        .map(|s| TfbmModel::new(h, 1.0, s).unwrap())
        .collect()
    }

    #[test]
    fn fbm_examples() {
        assert!((fbm_cov(0.5, 1.0, 3.0, 2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((fbm_cov(0.3, 2.0, 1.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((fbm_cov(0.7, 1.0, 2.0, 1.0).unwrap() - 1.3195079107728942).abs() < 1e-14);
        assert!(fbm_cov(1.0, 1.0, 1.0, 1.0).is_err());
        assert_eq!(fbm_cov(0.3, 1.0, 2.0, 5.0).unwrap(), fbm_cov(0.3, 1.0, 5.0, 2.0).unwrap());
    }

    #[test]
    fn fgn_examples() {
        assert_eq!(fgn_autocov(0.8, 3.0, 0).unwrap(), 3.0);
        for j in 1..20 {
            assert!(fgn_autocov(0.5, 1.0, j).unwrap().abs() < 1e-15);
            assert!(fgn_autocov(0.8, 1.0, j).unwrap() > 0.0);
            assert!(fgn_autocov(0.2, 1.0, j).unwrap() < 0.0);
        }
        let j = 10_000u64;
        let ratio = fgn_autocov(0.8, 1.0, j).unwrap() / (0.8 * 0.6 * (j as f64).powf(-0.4));
        assert!((0.99..=1.01).contains(&ratio));
        let direct = 0.5 * (9f64.powf(1.6) - 2.0 * 8f64.powf(1.6) + 7f64.powf(1.6));
        assert!(rel(fgn_autocov(0.8, 1.0, 8).unwrap(), direct) < 1e-12);
    }

    #[test]
    fn drift_reduces_to_fbm() {
        for &h in &[0.3, 0.5, 0.8] {
            let m = TfbmModel::new(h, 1.3, SubordinatorSpec::DeterministicDrift { mu: 1.0 }).unwrap();
            for &(t, s) in &[(0.1, 10.0), (2.0, 1.0), (5.0, 4.9), (3.0, 3.0)] {
                let a = cov_z(&m, t, s).unwrap();
                let b = fbm_cov(h, 1.3, t, s).unwrap();
                assert!(rel(a, b) < 1e-10, "H={h} ({t},{s}): {a} vs {b}");
            }
            assert!((var_z(&m, 1.0).unwrap() - 1.3).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_identity() {
        for &h in &[0.3, 0.7] {
            for m in models(h) {
                for &t in &[0.1, 1.0, 10.0] {
                    let c = cov_z_quadrature(&m, t, t).unwrap();
                    let v = var_z(&m, t).unwrap();
                    assert!((c - v).abs() <= 1e-9 * v, "{} H={h} t={t}: {c} vs {v}", m.sub);
                }
            }
        }
    }

    #[test]
    fn stable_closed_form_examples() {
        let v = stable_cov_closed_form(0.5, 0.5, 1.0, 4.0, 1.0).unwrap();
        assert!((v - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-13);
        for &a in &[0.3, 0.8] {
            let m = TfbmModel::new(0.35, 1.0, SubordinatorSpec::Stable { alpha: a }).unwrap();
            let c = stable_cov_closed_form(a, 0.35, 1.0, 2.0, 2.0).unwrap();
            assert!(rel(c, var_z(&m, 2.0).unwrap()) < 1e-12);
        }
        let m = TfbmModel::new(0.7, 1.0, SubordinatorSpec::Stable { alpha: 0.7 }).unwrap();
        let q = cov_z_quadrature(&m, 2.0, 1.0).unwrap();
        let c = stable_cov_closed_form(0.7, 0.7, 1.0, 2.0, 1.0).unwrap();
        assert!(rel(q, c) < 1e-10);
        assert_eq!(cov_z(&m, 1.0, 2.0).unwrap(), c);
    }

    #[test]
    fn correlation_examples() {
        let m = TfbmModel::new(0.5, 1.0, SubordinatorSpec::Stable { alpha: 0.5 }).unwrap();
        assert!((corr_z(&m, 4.0, 1.0).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        for m in models(0.7) {
            assert_eq!(corr_z(&m, 2.0, 2.0).unwrap(), 1.0);
            let c = corr_z(&m, 3.0, 1.0).unwrap();
            assert!(c > 0.0 && c <= 1.0 + 1e-9);
        }
        assert!(corr_z(&m, 0.0, 1.0).is_err());
    }

    #[test]
    fn increment_moment_examples() {
        let d = TfbmModel::new(0.7, 1.5, SubordinatorSpec::DeterministicDrift { mu: 1.0 }).unwrap();
        let v = abs_increment_moment_z(&d, 2.0, 3.0, 1.0).unwrap();
        assert!(rel(v, 1.5 * 2f64.powf(1.4)) < 1e-13);
        // fourth moment 3σ⁴|t-s|^{4H}
        let v = abs_increment_moment_z(&d, 4.0, 3.0, 1.0).unwrap();
        assert!(rel(v, 3.0 * 1.5 * 1.5 * 2f64.powf(2.8)) < 1e-13);
        for m in models(0.7) {
            assert_eq!(abs_increment_moment_z(&m, 2.0, 1.0, 1.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn increment_covariance() {
        for m in models(0.5) {
            assert_eq!(increment_cov_z(&m, 1.0, 5.0).unwrap(), 0.0);
        }
        for m in models(0.7) {
            // drift uses fBm increments; others must agree with the subtraction route
            let x = increment_cov_z(&m, 1.0, 3.0).unwrap();
            assert!(x > 0.0, "{}", m.sub);
        }
        let m = TfbmModel::new(0.8, 1.0, SubordinatorSpec::Stable { alpha: 0.6 }).unwrap();
        let a = increment_cov_z(&m, 1.0, 1e2).unwrap();
        let b = increment_cov_z(&m, 1.0, 1e4).unwrap();
        let slope = (b / a).ln() / 100f64.ln();
        assert!((slope - (0.6 * 0.6 - 1.0)).abs() < 0.02, "slope {slope}");
        // general route agrees with the expm1 form
        let c = 0.6f64;
        let via_sub = moments::renewal_integral(
            &m.sub,
            1.0,
            3.0,
            |x| Ok(m.u(c, x + 1.0)? - m.u(c, x)?),
            &m.numerics,
        )
        .unwrap();
        assert!(rel(increment_cov_z(&m, 1.0, 3.0).unwrap(), 0.8 * via_sub) < 1e-10);
        assert!(increment_cov_z(&m, 2.0, 1.0).is_err());
    }

    #[test]
    fn cauchy_schwarz_and_psd() {
        let ts = [0.5, 1.0, 2.0, 4.0, 8.0];
        for m in models(0.3) {
            let mut mat = [[0.0; 5]; 5];
            for i in 0..5 {
                for j in 0..5 {
                    mat[i][j] = cov_z(&m, ts[i], ts[j]).unwrap();
                }
            }
            for i in 0..5 {
                for j in 0..5 {
                    assert!(mat[i][j] * mat[i][j] <= mat[i][i] * mat[j][j] * (1.0 + 1e-9));
                }
            }
            // Cholesky succeeds with a tiny jitter
            let mut l = [[0.0; 5]; 5];
            for i in 0..5 {
                for j in 0..=i {
                    let mut s = mat[i][j];
                    s -= (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
                    if i == j {
                        assert!(s > -1e-8, "{}", m.sub);
                        l[i][i] = s.max(1e-300).sqrt();
                    } else {
                        l[i][j] = s / l[j][j];
                    }
                }
            }
        }
    }
}
