//! Leading-order behavior in the limits where the exact formulas simplify.

use std::fmt;

use crate::error::{domain, Result};
use crate::moments;
use crate::specfun::{beta_fn, gamma_fn, rgamma};
use crate::subordinators::SubordinatorSpec;

/// Below this weight the large-time mixture constants 1/c1^{2H} are flagged.
const MIXTURE_DEGENERATE_C1: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// t → ∞ with s fixed
    LargeT,
    /// s → 0 with t fixed
    SmallS,
    /// v → ∞ with t fixed (increments far apart)
    LargeV,
    /// t → 0
    SmallT,
}

impl Regime {
    pub fn variable(self) -> &'static str {
        match self {
            Regime::LargeT | Regime::SmallT => "t",
            Regime::SmallS => "s",
            Regime::LargeV => "v",
        }
    }

    fn to_infinity(self) -> bool {
        matches!(self, Regime::LargeT | Regime::LargeV)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::LargeT => "t->inf",
            Regime::SmallS => "s->0",
            Regime::LargeV => "v->inf",
            Regime::SmallT => "t->0",
        })
    }
}

/// coefficient · x^exponent in the regime variable x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub coefficient: f64,
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub quantity: &'static str,
    pub regime: Regime,
    pub terms: Vec<PowerTerm>,
    /// Where the regime variable was evaluated.
    pub at: f64,
    pub leading_value: f64,
    /// Exponent of the term that dominates in the limit.
    pub leading_exponent: f64,
    pub degenerate: bool,
    pub description: String,
}

impl AsymptoticReport {
    fn new(quantity: &'static str, regime: Regime, at: f64, terms: Vec<PowerTerm>, description: &str) -> Self {
        let leading_value = terms.iter().map(|p| p.coefficient * at.powf(p.exponent)).sum();
        let exps = terms.iter().filter(|p| p.coefficient != 0.0).map(|p| p.exponent);
        let leading_exponent = if regime.to_infinity() {
            exps.fold(f64::NEG_INFINITY, f64::max)
        } else {
            exps.fold(f64::INFINITY, f64::min)
        };
        AsymptoticReport {
            quantity,
            regime,
            terms,
            at,
            leading_value,
            leading_exponent,
            degenerate: false,
            description: description.to_string(),
        }
    }

    fn flagged(mut self, degenerate: bool) -> Self {
        self.degenerate = degenerate;
        self
    }
}

fn term(coefficient: f64, exponent: f64) -> PowerTerm {
    PowerTerm { coefficient, exponent }
}

fn check(func: &'static str, hurst: f64, sigma2: f64, times: &[(&str, f64)]) -> Result<()> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(domain(func, format!("hurst = {hurst} must lie in (0, 1)")));
    }
    if !(sigma2 > 0.0) || sigma2.is_infinite() {
        return Err(domain(func, format!("sigma2 = {sigma2} must be positive")));
    }
    for &(name, x) in times {
        if !(x > 0.0) || x.is_infinite() {
            return Err(domain(func, format!("{name} = {x} must be finite and positive")));
        }
    }
    Ok(())
}

/// Inverse stable time change: correlation decay, covariance at large t and
/// far-apart increment covariance.
pub fn stable_asymptotics(alpha: f64, hurst: f64, sigma2: f64, t: f64, s: f64, v: f64) -> Result<Vec<AsymptoticReport>> {
    SubordinatorSpec::Stable { alpha }.validate()?;
    check("stable_asymptotics", hurst, sigma2, &[("t", t), ("s", s), ("v", v)])?;
    let h = hurst;
    let b2 = alpha * (2.0 * h - 1.0) + 1.0;
    let k = 1.0 / (alpha * beta_fn(alpha, b2)?);
    let g = gamma_fn(2.0 * h + 1.0)?;
    let corr = AsymptoticReport::new(
        "corr",
        Regime::LargeT,
        t,
        vec![term(0.5 * s.powf(alpha * h), -alpha * h), term(0.5 * k * s.powf(alpha * (1.0 - h)), -alpha * (1.0 - h))],
        "correlation decays like a mixture of the power laws t^-aH and t^-a(1-H)",
    );
    let cov = AsymptoticReport::new(
        "cov",
        Regime::LargeT,
        t,
        vec![
            term(0.5 * sigma2 * g * s.powf(2.0 * alpha * h) * rgamma(2.0 * alpha * h + 1.0), 0.0),
            term(0.5 * sigma2 * g * s.powf(alpha) * rgamma(alpha + 1.0) * rgamma(b2), alpha * (2.0 * h - 1.0)),
        ],
        "covariance at fixed s as t grows",
    );
    let inc = AsymptoticReport::new(
        "increment-cov",
        Regime::LargeV,
        v,
        vec![term(
            0.5 * sigma2 * g * t.powf(alpha + 1.0) * rgamma(alpha + 1.0) * rgamma(alpha * (2.0 * h - 1.0)),
            alpha * (2.0 * h - 1.0) - 1.0,
        )],
        "covariance of increments a lag v apart decays like a power law",
    );
    Ok(vec![corr, cov, inc])
}

/// Two-term stable mixture: variance at both ends and covariance limits.
pub fn mixture_asymptotics(spec: &SubordinatorSpec, hurst: f64, sigma2: f64, t: f64, s: f64) -> Result<Vec<AsymptoticReport>> {
    let SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 } = *spec else {
        return Err(domain("mixture_asymptotics", format!("expected a mixture spec, got {spec}")));
    };
    spec.validate()?;
    check("mixture_asymptotics", hurst, sigma2, &[("t", t), ("s", s)])?;
    let h2 = 2.0 * hurst;
    let g = gamma_fn(h2 + 1.0)?;
    let degenerate = c1 < MIXTURE_DEGENERATE_C1;
    let var_large = AsymptoticReport::new(
        "var",
        Regime::LargeT,
        t,
        vec![term(sigma2 * g * c1.powf(-h2) * rgamma(h2 * alpha1 + 1.0), h2 * alpha1)],
        "variance at large t, governed by the smaller index alpha1",
    )
    .flagged(degenerate);
    let var_small = AsymptoticReport::new(
        "var",
        Regime::SmallT,
        t,
        vec![term(sigma2 * g * c2.powf(-h2) * rgamma(h2 * alpha2 + 1.0), h2 * alpha2)],
        "variance at small t, governed by the larger index alpha2",
    );
    let u2s = moments::moment_u(spec, h2, s)?;
    let us = moments::moment_u(spec, 1.0, s)?;
    let cov_large = AsymptoticReport::new(
        "cov",
        Regime::LargeT,
        t,
        vec![
            term(0.5 * sigma2 * u2s, 0.0),
            term(0.5 * sigma2 * g * us * c1.powf(1.0 - h2) * rgamma(alpha1 * (h2 - 1.0) + 1.0), alpha1 * (h2 - 1.0)),
        ],
        "covariance at fixed s as t grows",
    )
    .flagged(degenerate);
    // The cross term 2H U^{2H-1}(t) U(s) ~ s^{α2} is kept: it dominates once H ≥ 1/2.
    let cross = h2 * moments::moment_u(spec, h2 - 1.0, t)? / c2 * rgamma(alpha2 + 1.0);
    let cov_small = AsymptoticReport::new(
        "cov",
        Regime::SmallS,
        s,
        vec![
            term(0.5 * sigma2 * g * c2.powf(-h2) * rgamma(h2 * alpha2 + 1.0), h2 * alpha2),
            term(0.5 * sigma2 * cross, alpha2),
        ],
        "covariance at fixed t as s shrinks",
    );
    Ok(vec![var_large, var_small, cov_large, cov_small])
}

/// Tempered stable: linear growth at large times, stable behavior at small.
pub fn tempered_asymptotics(spec: &SubordinatorSpec, hurst: f64, sigma2: f64, t: f64, s: f64) -> Result<Vec<AsymptoticReport>> {
    let SubordinatorSpec::TemperedStable { alpha, a } = *spec else {
        return Err(domain("tempered_asymptotics", format!("expected a tempered spec, got {spec}")));
    };
    spec.validate()?;
    check("tempered_asymptotics", hurst, sigma2, &[("t", t), ("s", s)])?;
    let h = hurst;
    let h2 = 2.0 * h;
    // U^k(t) ~ t^k / (α^k a^{(α-1)k})
    let rate = |k: f64| alpha.powf(-k) * a.powf((1.0 - alpha) * k);
    let moment = AsymptoticReport::new(
        "moment",
        Regime::LargeT,
        t,
        vec![term(rate(h2), h2)],
        "moment of order 2H grows linearly in the tempered clock",
    );
    let var_large = AsymptoticReport::new(
        "var",
        Regime::LargeT,
        t,
        vec![term(sigma2 * rate(h2), h2)],
        "variance at large t behaves like that of fBm run at rate 1/(alpha a^(alpha-1))",
    );
    let var_small = AsymptoticReport::new(
        "var",
        Regime::SmallT,
        t,
        vec![term(sigma2 * gamma_fn(h2 + 1.0)? * rgamma(h2 * alpha + 1.0), h2 * alpha)],
        "variance at small t matches the untempered stable clock",
    );
    let u2s = moments::moment_u(spec, h2, s)?;
    let us = moments::moment_u(spec, 1.0, s)?;
    let cov_large = AsymptoticReport::new(
        "cov",
        Regime::LargeT,
        t,
        vec![term(0.5 * sigma2 * u2s, 0.0), term(0.5 * sigma2 * h2 * rate(h2 - 1.0) * us, h2 - 1.0)],
        "covariance at fixed s as t grows",
    );
    let corr_large = AsymptoticReport::new(
        "corr",
        Regime::LargeT,
        t,
        vec![
            term(0.5 * u2s.sqrt() / rate(h).max(f64::MIN_POSITIVE), -h),
            term(0.5 * h2 * us / (u2s.sqrt() * rate(1.0 - h)), -(1.0 - h)),
        ],
        "correlation decays like a mixture of the power laws t^-H and t^-(1-H)",
    );
    let mut out = vec![moment, var_large, var_small, cov_large, corr_large];
    if h == 0.5 {
        let ut = moments::moment_u(spec, 1.0, t)?;
        out.push(AsymptoticReport::new(
            "corr",
            Regime::SmallS,
            s,
            vec![term(1.0 / (gamma_fn(1.0 + alpha)? * ut).sqrt(), 0.5 * alpha)],
            "Brownian outer process: correlation as s shrinks with t fixed",
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfbm::{corr_z, cov_z, increment_cov_z, var_z, TfbmModel};

    fn find<'a>(r: &'a [AsymptoticReport], q: &str, regime: Regime) -> &'a AsymptoticReport {
        r.iter().find(|x| x.quantity == q && x.regime == regime).unwrap()
    }

    #[test]
    fn stable_brownian_case_terms_coincide() {
        let r = stable_asymptotics(0.6, 0.5, 1.0, 100.0, 1.0, 10.0).unwrap();
        let c = find(&r, "corr", Regime::LargeT);
        assert!((c.terms[0].coefficient - c.terms[1].coefficient).abs() < 1e-14);
        assert!((c.leading_value - 0.01f64.powf(0.3)).abs() < 1e-14);
        assert_eq!(find(&r, "increment-cov", Regime::LargeV).leading_value, 0.0);
    }

    #[test]
    fn stable_exponents_and_ratio() {
        let r = stable_asymptotics(0.7, 0.7, 1.0, 1e4, 1.0, 1e3).unwrap();
        let c = find(&r, "corr", Regime::LargeT);
        assert!((c.terms[0].exponent + 0.49).abs() < 1e-15);
        assert!((c.terms[1].exponent + 0.7 * 0.3).abs() < 1e-15);
        assert_eq!(c.leading_exponent, c.terms[1].exponent);
        let m = TfbmModel::new(0.7, 1.0, SubordinatorSpec::Stable { alpha: 0.7 }).unwrap();
        let ratio = corr_z(&m, 1e4, 1.0).unwrap() / c.leading_value;
        assert!((0.98..=1.02).contains(&ratio), "{ratio}");
        let cv = find(&r, "cov", Regime::LargeT);
        assert!((cov_z(&m, 1e4, 1.0).unwrap() / cv.leading_value - 1.0).abs() < 0.01);
    }

    #[test]
    fn stable_increment_constant() {
        let m = TfbmModel::new(0.8, 1.0, SubordinatorSpec::Stable { alpha: 0.6 }).unwrap();
        let r = stable_asymptotics(0.6, 0.8, 1.0, 1.0, 1.0, 1e5).unwrap();
        let inc = find(&r, "increment-cov", Regime::LargeV);
        assert!((inc.leading_exponent - (0.6 * 0.6 - 1.0)).abs() < 1e-15);
        let ratio = increment_cov_z(&m, 1.0, 1e5).unwrap() / inc.leading_value;
        assert!((ratio - 1.0).abs() < 1e-3, "{ratio}");
    }

    #[test]
    fn mixture_limits() {
        let spec = SubordinatorSpec::StableMixture { alpha1: 0.3, alpha2: 0.7, c1: 0.5, c2: 0.5 };
        let m = TfbmModel::new(0.6, 1.0, spec.clone()).unwrap();
        let r = mixture_asymptotics(&spec, 0.6, 1.0, 1e6, 1.0).unwrap();
        let ratio = var_z(&m, 1e6).unwrap() / find(&r, "var", Regime::LargeT).leading_value;
        assert!((0.95..=1.05).contains(&ratio), "{ratio}");
        let r = mixture_asymptotics(&spec, 0.6, 1.0, 1e-6, 1e-6).unwrap();
        let ratio = var_z(&m, 1e-6).unwrap() / find(&r, "var", Regime::SmallT).leading_value;
        // next correction is of relative size t^{α2-α1}
        assert!((ratio - 1.0).abs() < 10.0 * 1e-6f64.powf(0.4), "{ratio}");
        for &h in &[0.3, 0.6] {
            let m = TfbmModel::new(h, 1.0, spec.clone()).unwrap();
            let r = mixture_asymptotics(&spec, h, 1.0, 2.0, 1e-8).unwrap();
            let rep = find(&r, "cov", Regime::SmallS);
            let ratio = cov_z(&m, 2.0, 1e-8).unwrap() / rep.leading_value;
            assert!((ratio - 1.0).abs() < 0.01, "H={h}: {ratio}");
            assert_eq!(rep.leading_exponent, if h < 0.5 { 2.0 * h * 0.7 } else { 0.7 });
        }
        assert!(!r[0].degenerate);
        let tiny = SubordinatorSpec::StableMixture { alpha1: 0.3, alpha2: 0.7, c1: 1e-9, c2: 1.0 - 1e-9 };
        let r = mixture_asymptotics(&tiny, 0.6, 1.0, 1e6, 1.0).unwrap();
        assert!(find(&r, "var", Regime::LargeT).degenerate);
    }

    #[test]
    fn tempered_limits() {
        let spec = SubordinatorSpec::TemperedStable { alpha: 0.5, a: 1.0 };
        let r = tempered_asymptotics(&spec, 0.7, 1.0, 1e3, 1.0).unwrap();
        let ratio = moments::moment_u(&spec, 1.4, 1e3).unwrap() / find(&r, "moment", Regime::LargeT).leading_value;
        assert!((0.95..=1.05).contains(&ratio), "{ratio}");
        let spec = SubordinatorSpec::TemperedStable { alpha: 0.5, a: 1.0 };
        let m = TfbmModel::new(0.5, 1.0, spec.clone()).unwrap();
        let r = tempered_asymptotics(&spec, 0.5, 1.0, 1.0, 1e-4).unwrap();
        let ratio = corr_z(&m, 1.0, 1e-4).unwrap() / find(&r, "corr", Regime::SmallS).leading_value;
        assert!((0.99..=1.01).contains(&ratio), "{ratio}");
        let small = SubordinatorSpec::TemperedStable { alpha: 0.5, a: 1e-9 };
        let r = tempered_asymptotics(&small, 0.5, 1.0, 1e-3, 1e-3).unwrap();
        let v = find(&r, "var", Regime::SmallT).leading_value;
        let st = moments::moment_u(&SubordinatorSpec::Stable { alpha: 0.5 }, 1.0, 1e-3).unwrap();
        assert!((v / st - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wrong_family_is_rejected() {
        let st = SubordinatorSpec::Stable { alpha: 0.5 };
        assert!(mixture_asymptotics(&st, 0.5, 1.0, 1.0, 1.0).is_err());
        assert!(tempered_asymptotics(&st, 0.5, 1.0, 1.0, 1.0).is_err());
        assert!(stable_asymptotics(0.5, 1.5, 1.0, 1.0, 1.0, 1.0).is_err());
    }
}
