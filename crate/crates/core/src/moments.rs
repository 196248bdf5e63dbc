//! Moment functions of the inverse subordinator Y.
//!
//! U^κ(t) = E[Y(t)^κ] has Laplace transform Γ(1+κ)/(λ φ(λ)^κ) for κ > -1.
//! Negative orders are needed because increment formulas go through
//! U^{κ-1}; U^0 ≡ 1.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
pub use crate::laplace::{invert_laplace_at, InversionConfig, InversionMethod};
use crate::quadrature::{integrate_unit, QuadConfig};
use crate::specfun::{
    gamma_fn, incomplete_beta_with, mittag_leffler_with, ml_exp_scaled, prabhakar_any_gamma,
    regularized_lower_gamma_with, rgamma, EvalConfig,
};
use crate::subordinators::SubordinatorSpec;

/// Numerical settings for everything above the special functions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MomentConfig {
    pub eval: EvalConfig,
    pub inversion: InversionConfig,
    pub quad: QuadConfig,
}

impl MomentConfig {
    pub fn validate(&self) -> Result<()> {
        self.eval.validate()?;
        self.inversion.validate()
    }
}

/// Cap on the number of tempered series terms.
const TEMPERED_MAX_TERMS: usize = 10_000;

fn check_kappa(func: &'static str, kappa: f64) -> Result<()> {
    if !(kappa > -1.0) || kappa.is_infinite() {
        return Err(domain(func, format!("kappa = {kappa} must be finite and > -1")));
    }
    Ok(())
}

fn check_time(func: &'static str, name: &str, t: f64) -> Result<()> {
    if !(t >= 0.0) || t.is_infinite() {
        return Err(domain(func, format!("{name} = {t} must be finite and >= 0")));
    }
    Ok(())
}

/// Ũ^γ(λ) = Γ(1+γ)/(λ φ(λ)^γ).
pub fn laplace_u_moment(spec: &SubordinatorSpec, gamma: f64, lambda: f64) -> Result<f64> {
    spec.validate()?;
    check_kappa("laplace_u_moment", gamma)?;
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(domain("laplace_u_moment", format!("lambda = {lambda} must be positive")));
    }
    let phi = spec.phi(lambda);
    if !(phi > 0.0) {
        return Err(domain("laplace_u_moment", format!("phi({lambda}) = {phi} is not positive")));
    }
    Ok(gamma_fn(1.0 + gamma)? / (lambda * phi.powf(gamma)))
}

/// The same transform at a complex argument, for contour inversion.
pub fn laplace_u_moment_complex(spec: &SubordinatorSpec, gamma: f64, s: Complex64) -> Complex64 {
    let g = crate::specfun::gamma_fn(1.0 + gamma).unwrap_or(f64::NAN);
    g / (s * spec.phi_complex(s).powf(gamma))
}

/// U^κ(t) by inverting its Laplace transform, whatever the family.
pub fn moment_u_by_inversion(spec: &SubordinatorSpec, kappa: f64, t: f64, cfg: &InversionConfig) -> Result<f64> {
    spec.validate()?;
    check_kappa("moment_u_by_inversion", kappa)?;
    if kappa == 0.0 {
        return Ok(1.0);
    }
    invert_laplace_at(|s| laplace_u_moment_complex(spec, kappa, s), t, cfg)
}

/// U^κ(t) = E[Y(t)^κ] for κ > -1.
pub fn moment_u(spec: &SubordinatorSpec, kappa: f64, t: f64) -> Result<f64> {
    moment_u_with(spec, kappa, t, &MomentConfig::default())
}

pub fn moment_u_with(spec: &SubordinatorSpec, kappa: f64, t: f64, cfg: &MomentConfig) -> Result<f64> {
    spec.validate()?;
    check_kappa("moment_u", kappa)?;
    check_time("moment_u", "t", t)?;
    if kappa == 0.0 {
        return Ok(1.0);
    }
    if t == 0.0 {
        return if kappa > 0.0 {
            Ok(0.0)
        } else {
            Err(domain("moment_u", "negative moments diverge at t = 0"))
        };
    }
    match *spec {
        SubordinatorSpec::Stable { alpha } => {
            Ok(gamma_fn(kappa + 1.0)? * rgamma(alpha * kappa + 1.0) * t.powf(alpha * kappa))
        }
        SubordinatorSpec::DeterministicDrift { mu } => Ok((t / mu).powf(kappa)),
        SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 } => {
            let z = -c1 * t.powf(alpha2 - alpha1) / c2;
            let e = prabhakar_any_gamma(alpha2 - alpha1, alpha2 * kappa + 1.0, kappa, z, &cfg.eval)?;
            Ok(gamma_fn(kappa + 1.0)? * c2.powf(-kappa) * t.powf(alpha2 * kappa) * e)
        }
        SubordinatorSpec::TemperedStable { alpha, a } => tempered_moment(alpha, a, kappa, t, &cfg.eval),
        SubordinatorSpec::CustomBernstein(_) => moment_u_by_inversion(spec, kappa, t, &cfg.inversion),
    }
}

/// Γ(κ+1) a^{-ακ} Σ_n (κ)_n/n! · P(at, α(κ+n)).
///
/// For κ < 0 the n = 0 transform λ^{-1}(a+λ)^{-ακ} grows, and is inverted
/// separately as e^{-at} t^{ακ}/Γ(1+ακ) + a^{-ακ} P(at, 1+ακ).
fn tempered_moment(alpha: f64, a: f64, kappa: f64, t: f64, cfg: &EvalConfig) -> Result<f64> {
    let x = a * t;
    let mut coef = 1.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut extra = 0.0;
    for n in 0..TEMPERED_MAX_TERMS {
        if n > 0 {
            coef *= (kappa + (n - 1) as f64) / n as f64;
        }
        let v = alpha * (kappa + n as f64);
        let p = if v > 0.0 {
            regularized_lower_gamma_with(x, v, cfg)?
        } else {
            extra = (-x).exp() * t.powf(alpha * kappa) * rgamma(1.0 + alpha * kappa);
            regularized_lower_gamma_with(x, 1.0 + v, cfg)?
        };
        let term = coef * p;
        let s = sum + term;
        if f64::abs(sum) >= f64::abs(term) {
            comp += (sum - s) + term;
        } else {
            comp += (term - s) + sum;
        }
        sum = s;
        if n > 0 && v > x && term.abs() <= 0.1 * cfg.rel_tol * (sum + comp).abs() {
            return Ok(gamma_fn(kappa + 1.0)? * (a.powf(-alpha * kappa) * (sum + comp) + extra));
        }
    }
    Err(Error::ConvergenceFailure { func: "moment_u (tempered series)", terms: TEMPERED_MAX_TERMS })
}

/// Small-time exponent a with U'(y) = y^{a-1} ρ(y), ρ bounded near 0.
pub(crate) fn small_time_exponent(spec: &SubordinatorSpec) -> f64 {
    match *spec {
        SubordinatorSpec::Stable { alpha } | SubordinatorSpec::TemperedStable { alpha, .. } => alpha,
        SubordinatorSpec::StableMixture { alpha2, .. } => alpha2,
        SubordinatorSpec::DeterministicDrift { .. } => 1.0,
        SubordinatorSpec::CustomBernstein(_) => {
            // φ(λ) ~ λ^a as λ → ∞ gives U'(y) ~ y^{a-1} as y → 0.
            let a = (spec.phi(1e8) / spec.phi(1e6)).ln() / 100f64.ln();
            if a.is_finite() {
                a.clamp(0.05, 1.0)
            } else {
                1.0
            }
        }
    }
}

/// ρ(y) = U'(y) y^{1-a}.
fn renewal_regular_part(spec: &SubordinatorSpec, y: f64, a_eff: f64, cfg: &MomentConfig) -> Result<f64> {
    match *spec {
        SubordinatorSpec::Stable { alpha } => Ok(rgamma(alpha)),
        SubordinatorSpec::DeterministicDrift { mu } => Ok(1.0 / mu),
        SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 } => {
            let z = -c1 * y.powf(alpha2 - alpha1) / c2;
            Ok(mittag_leffler_with(alpha2 - alpha1, alpha2, z, &cfg.eval)? / c2)
        }
        SubordinatorSpec::TemperedStable { alpha, a } => ml_exp_scaled(alpha, alpha, (a * y).powf(alpha), &cfg.eval),
        SubordinatorSpec::CustomBernstein(_) => {
            let d = invert_laplace_at(|s| 1.0 / spec.phi_complex(s), y, &cfg.inversion)?;
            Ok(d * y.powf(1.0 - a_eff))
        }
    }
}

/// Renewal density U'(t), t > 0.
pub fn renewal_density(spec: &SubordinatorSpec, t: f64) -> Result<f64> {
    renewal_density_with(spec, t, &MomentConfig::default())
}

pub fn renewal_density_with(spec: &SubordinatorSpec, t: f64, cfg: &MomentConfig) -> Result<f64> {
    spec.validate()?;
    if !(t > 0.0) || t.is_infinite() {
        return Err(domain("renewal_density", format!("t = {t} must be positive")));
    }
    let a = small_time_exponent(spec);
    Ok(t.powf(a - 1.0) * renewal_regular_part(spec, t, a, cfg)?)
}

/// ∫₀^m g(M - y) dU(y) for 0 ≤ m ≤ M; g receives M - y computed without
/// cancellation near y = m.
pub(crate) fn renewal_integral<G>(spec: &SubordinatorSpec, m: f64, big_m: f64, mut g: G, cfg: &MomentConfig) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    if m == 0.0 {
        return Ok(0.0);
    }
    let a = small_time_exponent(spec);
    let gap = big_m - m;
    // y = m u^{1/a}, dU(y) = (m^a / a) ρ(y) du
    let integral = integrate_unit(
        |u, c| {
            let ln_u = if u < 0.5 { u.ln() } else { (-c).ln_1p() };
            let e = ln_u / a;
            let y = m * e.exp();
            let rest = gap + m * -e.exp_m1();
            if !(y > 0.0) {
                return Ok(0.0);
            }
            Ok(g(rest)? * renewal_regular_part(spec, y, a, cfg)?)
        },
        &cfg.quad,
    )?;
    Ok(m.powf(a) / a * integral)
}

/// ∫_m^M g(M - y) dU(y), for the upper part of the range.
fn renewal_integral_upper<G>(spec: &SubordinatorSpec, m: f64, big_m: f64, mut g: G, cfg: &MomentConfig) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let a = small_time_exponent(spec);
    let width = big_m - m;
    // y = M - width·v
    let integral = integrate_unit(
        |v, c| {
            let x = width * v;
            let y = m + width * c;
            if !(x > 0.0) {
                return Ok(0.0);
            }
            Ok(g(x)? * y.powf(a - 1.0) * renewal_regular_part(spec, y, a, cfg)?)
        },
        &cfg.quad,
    )?;
    Ok(width * integral)
}

fn ordered(t: f64, s: f64) -> (f64, f64) {
    if t >= s {
        (t, s)
    } else {
        (s, t)
    }
}

/// E|Y(t) - Y(s)|^κ for κ > 0, symmetric in (t, s).
pub fn increment_moment_y(spec: &SubordinatorSpec, kappa: f64, t: f64, s: f64) -> Result<f64> {
    increment_moment_y_with(spec, kappa, t, s, &MomentConfig::default())
}

pub fn increment_moment_y_with(spec: &SubordinatorSpec, kappa: f64, t: f64, s: f64, cfg: &MomentConfig) -> Result<f64> {
    spec.validate()?;
    if !(kappa > 0.0) || kappa.is_infinite() {
        return Err(domain("increment_moment_y", format!("kappa = {kappa} must be positive")));
    }
    check_time("increment_moment_y", "t", t)?;
    check_time("increment_moment_y", "s", s)?;
    let (big, small) = ordered(t, s);
    if big == small {
        return Ok(0.0);
    }
    if let SubordinatorSpec::DeterministicDrift { mu } = *spec {
        return Ok(((big - small) / mu).powf(kappa));
    }
    if kappa == 1.0 {
        return Ok(moment_u_with(spec, 1.0, big, cfg)? - moment_u_with(spec, 1.0, small, cfg)?);
    }
    let lower = |x: f64| moment_u_with(spec, kappa - 1.0, x, cfg);
    let v = if small > 0.5 * big {
        // U^κ(M) = κ∫₀^M U^{κ-1}(M-y)dU(y), so only the upper piece survives.
        kappa * renewal_integral_upper(spec, small, big, lower, cfg)?
    } else {
        moment_u_with(spec, kappa, big, cfg)? - kappa * renewal_integral(spec, small, big, lower, cfg)?
    };
    Ok(v.max(0.0))
}

/// Stable closed form of E|Y(t)-Y(s)|^κ via the incomplete beta function.
pub fn stable_increment_moment_closed_form(alpha: f64, kappa: f64, t: f64, s: f64) -> Result<f64> {
    SubordinatorSpec::Stable { alpha }.validate()?;
    if !(kappa > 0.0) {
        return Err(domain("stable_increment_moment_closed_form", format!("kappa = {kappa} must be positive")));
    }
    let (t, s) = ordered(t, s);
    if t == 0.0 {
        return Ok(0.0);
    }
    let b2 = alpha * (kappa - 1.0) + 1.0;
    let head = gamma_fn(kappa + 1.0)? * t.powf(alpha * kappa);
    let b = incomplete_beta_with(alpha, b2, s / t, &EvalConfig::default())?;
    Ok(head * (rgamma(alpha * kappa + 1.0) - rgamma(alpha) * rgamma(b2) * b))
}

/// Cov[Y(t), Y(s)].
pub fn cov_y(spec: &SubordinatorSpec, t: f64, s: f64) -> Result<f64> {
    cov_y_with(spec, t, s, &MomentConfig::default())
}

pub fn cov_y_with(spec: &SubordinatorSpec, t: f64, s: f64, cfg: &MomentConfig) -> Result<f64> {
    spec.validate()?;
    check_time("cov_y", "t", t)?;
    check_time("cov_y", "s", s)?;
    let (big, small) = ordered(t, s);
    if small == 0.0 {
        return Ok(0.0);
    }
    if let SubordinatorSpec::DeterministicDrift { .. } = spec {
        return Ok(0.0);
    }
    let u_big = moment_u_with(spec, 1.0, big, cfg)?;
    let u_small = moment_u_with(spec, 1.0, small, cfg)?;
    let u2_small = moment_u_with(spec, 2.0, small, cfg)?;
    if big == small {
        return Ok(u2_small - u_small * u_small);
    }
    let cross = renewal_integral(spec, small, big, |x| moment_u_with(spec, 1.0, x, cfg), cfg)?;
    Ok(0.5 * u2_small + cross - u_big * u_small)
}

/// Stable closed form of Cov[Y(t), Y(s)].
pub fn stable_cov_y_closed_form(alpha: f64, t: f64, s: f64) -> Result<f64> {
    SubordinatorSpec::Stable { alpha }.validate()?;
    let (t, s) = ordered(t, s);
    if s == 0.0 {
        return Ok(0.0);
    }
    let g1 = rgamma(alpha + 1.0);
    let b = incomplete_beta_with(alpha, alpha + 1.0, s / t, &EvalConfig::default())?;
    Ok(s.powf(2.0 * alpha) * rgamma(2.0 * alpha + 1.0) + t.powf(2.0 * alpha) * rgamma(alpha) * g1 * b
        - (t * s).powf(alpha) * g1 * g1)
}

/// A moment request bundled as a value.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentQuery {
    pub spec: SubordinatorSpec,
    pub kappa: f64,
    pub t: f64,
}

impl MomentQuery {
    pub fn eval(&self) -> Result<f64> {
        moment_u(&self.spec, self.kappa, self.t)
    }
}
