//! Two- and three-parameter Mittag-Leffler functions on the real line.
//!
//! E^γ_{α,β}(z) = Σ_j (γ)_j z^j / (j! Γ(αj+β)), with E_{α,β} = E^1_{α,β}.
//!
//! Three evaluation branches, each carrying its own error estimate:
//!
//! * the defining series, summed in f64 when the terms barely cancel and in
//!   double-double otherwise;
//! * the large-|z| expansion: the algebraic part coming from the branch point
//!   at the origin of the Laplace pair s^{αγ-β}/(s^α - z)^γ, plus local
//!   expansions around each singular point s* = z^{1/α} on the principal
//!   sheet (for γ = 1 these are simple-pole residues);
//! * fixed-Talbot inversion of that Laplace pair at t = 1, available when no
//!   singular point lies on the principal sheet.
//!
//! The branch order is picked from `series_radius`; a branch whose own error
//! estimate misses `rel_tol` hands over to the next one.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{gamma_pos, ln_gamma, rgamma, GAMMA_MAX_ARG};
use super::EvalConfig;
use crate::dd::{self, Dd};
use crate::error::{domain, Error, Result};
use crate::laplace::talbot;

/// Which evaluation route produced (or should produce) a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlBranch {
    Series,
    Asymptotic,
    LaplaceInversion,
}

/// Beyond this effective scale |z|^{1/α} the alternating series cancels
/// more than double-double can absorb.
const SERIES_SCALE_MAX: f64 = 45.0;
const ASYMPTOTIC_MAX_TERMS: usize = 400;
const SINGULAR_ORDER: usize = 60;
const DD_EPS: f64 = 1.2e-32;
/// The inversion branch is a last resort and is accepted at this accuracy.
const INVERSION_REL_TOL: f64 = 1e-10;

fn check_params(func: &'static str, alpha: f64, beta: f64, z: f64) -> Result<()> {
    if !(alpha > 0.0) || alpha.is_infinite() {
        return Err(domain(func, format!("alpha = {alpha} must be positive")));
    }
    if !(beta > 0.0) || beta.is_infinite() {
        return Err(domain(func, format!("beta = {beta} must be positive")));
    }
    if !z.is_finite() {
        return Err(domain(func, format!("z = {z} must be finite")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Series

/// Ratio (γ+k-1)/k of successive (γ)_k/k! coefficients; `None` is the plain
/// Mittag-Leffler series, whose coefficients are all 1.
#[inline]
fn poch_ratio(gamma: Option<f64>, k: usize) -> f64 {
    match gamma {
        Some(g) => (g + (k - 1) as f64) / k as f64,
        None => 1.0,
    }
}

fn series_f64(alpha: f64, beta: f64, gamma: Option<f64>, z: f64, cfg: &EvalConfig) -> Option<f64> {
    let mut coef = 1.0f64; // z^k (γ)_k / k!
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut err = 0.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..cfg.max_terms {
        if k > 0 {
            coef *= z * poch_ratio(gamma, k);
            if coef == 0.0 {
                // Terminating series (γ a nonpositive integer).
                let total = sum + comp;
                return (err <= 0.1 * cfg.rel_tol * total.abs()).then_some(total);
            }
        }
        let arg = alpha * k as f64 + beta;
        if arg >= GAMMA_MAX_ARG - 1.0 || !coef.is_finite() {
            return None;
        }
        let term = coef * rgamma(arg);
        // Neumaier-compensated accumulation.
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        let kf = k as f64;
        err += term.abs() * (2e-15 + 1.2e-16 * (kf + arg * arg.max(1.0).ln()));
        let mag = term.abs();
        if k > 0 && mag <= prev && mag <= 1e-17 * (sum + comp).abs() {
            let total = sum + comp;
            return (err <= 0.1 * cfg.rel_tol * total.abs()).then_some(total);
        }
        prev = mag;
    }
    None
}

fn series_dd(alpha: f64, beta: f64, gamma: Option<f64>, z: f64, cfg: &EvalConfig) -> Option<f64> {
    let ln_x = Dd::new(z.abs()).ln();
    let negative = z < 0.0;
    let mut ln_coef = Dd::ZERO; // ln |z^k (γ)_k / k!|, or ln |z^k|
    let mut coef_sign = 1.0;
    let mut sum = Dd::ZERO;
    let mut err = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..cfg.max_terms {
        if k > 0 {
            ln_coef = ln_coef + ln_x;
            if let Some(g) = gamma {
                ln_coef = ln_coef - Dd::new(k as f64).ln();
                let p = Dd::new(g) + Dd::new((k - 1) as f64);
                if p.hi == 0.0 {
                    let total = sum.to_f64();
                    return (err <= 0.5 * cfg.rel_tol * total.abs()).then_some(total);
                }
                if p.hi < 0.0 {
                    coef_sign = -coef_sign;
                }
                ln_coef = ln_coef + p.abs().ln();
            }
            if negative {
                coef_sign = -coef_sign;
            }
        }
        let arg = Dd::prod(alpha, k as f64) + Dd::new(beta);
        let lg = dd::ln_gamma(arg);
        let ln_term = ln_coef - lg;
        if ln_term.hi > 709.0 {
            return None;
        }
        let mag = ln_term.exp();
        let term = if coef_sign < 0.0 { -mag } else { mag };
        sum = sum + term;
        // Each term is exp of a difference of two logs, each good to ~u relative.
        err += mag.to_f64() * (1.0 + ln_coef.hi.abs() + lg.hi.abs()) * DD_EPS;
        let m = mag.to_f64();
        if k > 0 && m <= prev && m <= 1e-20 * sum.to_f64().abs() {
            let total = sum.to_f64();
            return (err <= 0.5 * cfg.rel_tol * total.abs()).then_some(total);
        }
        prev = m;
    }
    None
}

fn series(alpha: f64, beta: f64, gamma: Option<f64>, z: f64, cfg: &EvalConfig) -> Option<f64> {
    if z == 0.0 {
        return Some(rgamma(beta));
    }
    let scale = z.abs().powf(1.0 / alpha);
    if z < 0.0 && scale > SERIES_SCALE_MAX {
        return None;
    }
    // Positive arguments do not cancel, but the peak term sits near k ≈ scale/α.
    if z > 0.0 && (scale / alpha > 0.5 * cfg.max_terms as f64 || scale > 700.0) {
        return None;
    }
    series_f64(alpha, beta, gamma, z, cfg).or_else(|| series_dd(alpha, beta, gamma, z, cfg))
}

// ---------------------------------------------------------------------------
// Large-argument expansion

/// Points s* = |z|^{1/α} e^{iθ} with θ = (arg z + 2πm)/α on the principal
/// sheet, with weight 1/2 for points sitting exactly on the cut.
fn singular_points(alpha: f64, z: f64) -> Vec<(Complex64, f64)> {
    let arg = if z < 0.0 { PI } else { 0.0 };
    let s = z.abs().powf(1.0 / alpha);
    let lo = ((-alpha * PI - arg) / (2.0 * PI)).ceil() as i64;
    let hi = ((alpha * PI - arg) / (2.0 * PI)).floor() as i64;
    (lo..=hi)
        .filter_map(|m| {
            let theta = (arg + 2.0 * PI * m as f64) / alpha;
            let edge = (theta.abs() - PI).abs() < 1e-13;
            if theta.abs() > PI && !edge {
                return None;
            }
            Some((Complex64::from_polar(s, theta), if edge { 0.5 } else { 1.0 }))
        })
        .collect()
}

/// Size of 1/Γ(y) with the sin(πy) factor dropped, so that terms falling
/// near a pole of Γ are not mistaken for convergence.
fn rgamma_envelope(y: f64) -> f64 {
    if y >= 0.5 {
        rgamma(y)
    } else if 1.0 - y < GAMMA_MAX_ARG {
        gamma_pos(1.0 - y) / PI
    } else {
        (ln_gamma(1.0 - y) - PI.ln()).exp()
    }
}

/// Optimally truncated sum of an asymptotic series given (term, envelope)
/// pairs; the error is the envelope where the sum stops.
fn truncated_sum(terms: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    let mut sum = 0.0;
    let mut best = f64::INFINITY;
    for (t, env) in terms {
        if env > best {
            return (sum, best);
        }
        sum += t;
        best = env;
        if env <= 1e-17 * sum.abs() {
            return (sum, env);
        }
    }
    (sum, best)
}

/// Coefficients g_n of (1+u)^{αγ-β} · [((1+u)^α - 1)/(αu)]^{-γ}.
fn local_coefficients(alpha: f64, beta: f64, gamma: f64, order: usize) -> Vec<f64> {
    let binom_series = |c: f64| {
        let mut b = vec![1.0; order];
        for n in 1..order {
            b[n] = b[n - 1] * (c - (n as f64 - 1.0)) / n as f64;
        }
        b
    };
    // h(u) = Σ binom(α, n+1)/α uⁿ
    let bin_alpha = binom_series(alpha);
    let h: Vec<f64> = (0..order)
        .map(|n| if n + 1 < order { bin_alpha[n + 1] / alpha } else { 0.0 })
        .collect();
    let h = {
        // the last coefficient needs binom(α, order)
        let mut h = h;
        let last = bin_alpha[order - 1] * (alpha - (order as f64 - 1.0)) / order as f64;
        h[order - 1] = last / alpha;
        h
    };
    // p = h^{-γ} via the J.C.P. Miller recurrence (h_0 = 1).
    let c = -gamma;
    let mut p = vec![0.0; order];
    p[0] = 1.0;
    for n in 1..order {
        let mut acc = 0.0;
        for k in 1..=n {
            acc += ((c + 1.0) * k as f64 - n as f64) * h[k] * p[n - k];
        }
        p[n] = acc / n as f64;
    }
    let b = binom_series(alpha * gamma - beta);
    (0..order).map(|n| (0..=n).map(|k| b[k] * p[n - k]).sum()).collect()
}

/// Contribution e^{s*} α^{-γ} s*^{γ-β} Σ g_n s*^{-n}/Γ(γ-n) and its error.
fn singular_contribution(
    alpha: f64,
    beta: f64,
    gamma: f64,
    g: &[f64],
    s_star: Complex64,
) -> Result<(Complex64, f64)> {
    if s_star.re > 709.0 {
        return Err(Error::Overflow { func: "prabhakar" });
    }
    let prefactor = s_star.exp() * alpha.powf(-gamma) * s_star.powf(gamma - beta);
    let inv = 1.0 / s_star;
    let mut pow = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut best = f64::INFINITY;
    let mut err = 0.0;
    let integer_order = gamma == gamma.floor() && gamma > 0.0;
    for (n, gn) in g.iter().enumerate() {
        let y = gamma - n as f64;
        if integer_order && y <= 0.0 {
            // Pole of integer order: the local expansion terminates.
            err = 0.0;
            break;
        }
        let term = pow * (gn * rgamma(y));
        let env = pow.norm() * gn.abs().max(f64::MIN_POSITIVE) * rgamma_envelope(y);
        pow *= inv;
        if env > best {
            err = best;
            break;
        }
        sum += term;
        best = env;
        err = env;
        if env <= 1e-17 * sum.norm() {
            break;
        }
    }
    Ok((prefactor * sum, err * prefactor.norm()))
}

fn prabhakar_asymptotic(alpha: f64, beta: f64, gamma: f64, z: f64, cfg: &EvalConfig) -> Result<Option<f64>> {
    if z == 0.0 {
        return Ok(None);
    }
    let x = z.abs();
    let ln_x = x.ln();
    // Algebraic part: Σ (γ)_k (-1)^k / k! · x^{-γ-k} / Γ(β - α(γ+k)); for z > 0
    // the real part of the two continuations carries a factor cos(πγ)(-1)^k.
    let sign_fix = if z > 0.0 { (PI * gamma).cos() } else { 1.0 };
    let mut coef = 1.0;
    let algebraic_terms = (0..ASYMPTOTIC_MAX_TERMS).map(|k| {
        if k > 0 {
            coef *= -(gamma + (k - 1) as f64) / k as f64;
        }
        let kf = k as f64;
        let sgn = if z > 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        let y = beta - alpha * (gamma + kf);
        let scale = coef * (-(gamma + kf) * ln_x).exp();
        (sign_fix * sgn * scale * rgamma(y), scale.abs() * rgamma_envelope(y))
    });
    let (alg, alg_err) = truncated_sum(algebraic_terms);

    let points = singular_points(alpha, z);
    let mut sing = Complex64::new(0.0, 0.0);
    let mut sing_err = 0.0;
    if !points.is_empty() {
        let g = local_coefficients(alpha, beta, gamma, SINGULAR_ORDER);
        for (s_star, w) in points {
            let (c, e) = singular_contribution(alpha, beta, gamma, &g, s_star)?;
            sing += c * w;
            sing_err += e * w;
        }
    }
    let total = alg + sing.re;
    if !total.is_finite() {
        return Err(Error::Overflow { func: "prabhakar" });
    }
    Ok((alg_err + sing_err <= 0.5 * cfg.rel_tol * total.abs()).then_some(total))
}

fn ml_asymptotic(alpha: f64, beta: f64, z: f64, cfg: &EvalConfig) -> Result<Option<f64>> {
    if z == 0.0 {
        return Ok(None);
    }
    // -Σ_{k≥1} z^{-k} / Γ(β - αk)
    let inv = 1.0 / z;
    let mut pow = 1.0;
    let algebraic_terms = (1..=ASYMPTOTIC_MAX_TERMS).map(|k| {
        pow *= inv;
        let y = beta - alpha * k as f64;
        (-pow * rgamma(y), pow.abs() * rgamma_envelope(y))
    });
    let (alg, alg_err) = truncated_sum(algebraic_terms);
    // Simple poles: residues (1/α) s*^{1-β} e^{s*}.
    let mut sing = Complex64::new(0.0, 0.0);
    for (s_star, w) in singular_points(alpha, z) {
        if s_star.re > 709.0 {
            return Err(Error::Overflow { func: "mittag_leffler" });
        }
        sing += s_star.powf(1.0 - beta) * s_star.exp() * (w / alpha);
    }
    let total = alg + sing.re;
    if !total.is_finite() {
        return Err(Error::Overflow { func: "mittag_leffler" });
    }
    Ok((alg_err <= 0.5 * cfg.rel_tol * total.abs()).then_some(total))
}

// ---------------------------------------------------------------------------
// Laplace-pair inversion

fn inversion_branch(alpha: f64, z: f64, cfg: &EvalConfig, transform: impl Fn(Complex64) -> Complex64) -> Option<f64> {
    // Only valid with no singular point to the right of the Talbot contour.
    if z >= 0.0 || alpha >= 1.0 {
        return None;
    }
    // 20 and 24 nodes balance truncation against the e^{2M/5} growth of
    // rounding errors; the pair's spread is the error estimate.
    let fine = talbot(&transform, 1.0, 24);
    let coarse = talbot(&transform, 1.0, 20);
    let tol = INVERSION_REL_TOL.max(cfg.rel_tol);
    ((fine - coarse).abs() <= tol * fine.abs() && fine.is_finite()).then_some(fine)
}

/// e^{-x^{1/α}} E_{α,β}(x) for x ≥ 0, finite even where E itself overflows.
pub(crate) fn ml_exp_scaled(alpha: f64, beta: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    check_params("mittag_leffler", alpha, beta, x)?;
    if x < 0.0 {
        return Err(domain("mittag_leffler", format!("scaled form needs x >= 0, got {x}")));
    }
    let s = x.powf(1.0 / alpha);
    if s <= 600.0 {
        return Ok(mittag_leffler_with(alpha, beta, x, cfg)? * (-s).exp());
    }
    let inv = 1.0 / x;
    let mut pow = 1.0;
    let (alg, _) = truncated_sum((1..=ASYMPTOTIC_MAX_TERMS).map(|k| {
        pow *= inv;
        let y = beta - alpha * k as f64;
        (-pow * rgamma(y), pow.abs() * rgamma_envelope(y))
    }));
    let mut sing = Complex64::new(0.0, 0.0);
    for (s_star, w) in singular_points(alpha, x) {
        sing += s_star.powf(1.0 - beta) * (s_star - s).exp() * (w / alpha);
    }
    Ok(sing.re + alg * (-s).exp())
}

// ---------------------------------------------------------------------------

fn run_branches(
    func: &'static str,
    z: f64,
    cfg: &EvalConfig,
    mut branch: impl FnMut(MlBranch) -> Result<Option<f64>>,
) -> Result<f64> {
    let order = if z.abs() <= cfg.series_radius {
        [MlBranch::Series, MlBranch::Asymptotic, MlBranch::LaplaceInversion]
    } else {
        [MlBranch::Asymptotic, MlBranch::Series, MlBranch::LaplaceInversion]
    };
    for b in order {
        if let Some(v) = branch(b)? {
            return Ok(v);
        }
    }
    Err(Error::ConvergenceFailure { func, terms: cfg.max_terms })
}

/// Evaluate one branch of E_{α,β}(z); `None` when it cannot meet `rel_tol`.
pub fn mittag_leffler_branch(alpha: f64, beta: f64, z: f64, branch: MlBranch, cfg: &EvalConfig) -> Result<Option<f64>> {
    check_params("mittag_leffler", alpha, beta, z)?;
    cfg.validate()?;
    match branch {
        MlBranch::Series => Ok(series(alpha, beta, None, z, cfg)),
        MlBranch::Asymptotic => ml_asymptotic(alpha, beta, z, cfg),
        MlBranch::LaplaceInversion => Ok(inversion_branch(alpha, z, cfg, |s| {
            s.powf(alpha - beta) / (s.powf(alpha) - z)
        })),
    }
}

/// Two-parameter Mittag-Leffler function E_{α,β}(z).
pub fn mittag_leffler(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    mittag_leffler_with(alpha, beta, z, &EvalConfig::default())
}

pub fn mittag_leffler_with(alpha: f64, beta: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    check_params("mittag_leffler", alpha, beta, z)?;
    cfg.validate()?;
    run_branches("mittag_leffler", z, cfg, |b| mittag_leffler_branch(alpha, beta, z, b, cfg))
}

/// One branch of E^γ_{α,β}(z) for any real γ.
pub fn prabhakar_branch(
    alpha: f64,
    beta: f64,
    gamma: f64,
    z: f64,
    branch: MlBranch,
    cfg: &EvalConfig,
) -> Result<Option<f64>> {
    check_params("prabhakar", alpha, beta, z)?;
    cfg.validate()?;
    if gamma == 0.0 {
        return Ok(Some(rgamma(beta)));
    }
    match branch {
        MlBranch::Series => Ok(series(alpha, beta, Some(gamma), z, cfg)),
        MlBranch::Asymptotic => prabhakar_asymptotic(alpha, beta, gamma, z, cfg),
        MlBranch::LaplaceInversion => Ok(inversion_branch(alpha, z, cfg, |s| {
            s.powf(alpha * gamma - beta) * (s.powf(alpha) - z).powf(-gamma)
        })),
    }
}

/// E^γ_{α,β}(z) for any real γ. The series and its asymptotics continue
/// analytically in γ; moment orders in (-1, 0) rely on this.
pub(crate) fn prabhakar_any_gamma(alpha: f64, beta: f64, gamma: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    check_params("prabhakar", alpha, beta, z)?;
    if !gamma.is_finite() {
        return Err(domain("prabhakar", format!("gamma = {gamma} must be finite")));
    }
    run_branches("prabhakar", z, cfg, |b| prabhakar_branch(alpha, beta, gamma, z, b, cfg))
}

/// Three-parameter (Prabhakar) Mittag-Leffler function E^γ_{α,β}(z).
pub fn prabhakar(alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<f64> {
    prabhakar_with(alpha, beta, gamma, z, &EvalConfig::default())
}

pub fn prabhakar_with(alpha: f64, beta: f64, gamma: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(gamma > 0.0) || gamma.is_infinite() {
        return Err(domain("prabhakar", format!("gamma = {gamma} must be positive")));
    }
    cfg.validate()?;
    prabhakar_any_gamma(alpha, beta, gamma, z, cfg)
}
