//! Subordinator families described by their Laplace exponents.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::error::{domain, Result};

/// All constraint violations found in a spec, or the reason it failed to parse.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("invalid subordinator spec: {}", .violations.join("; "))]
pub struct SpecError {
    pub violations: Vec<String>,
}

impl SpecError {
    fn one(msg: impl Into<String>) -> Self {
        SpecError { violations: vec![msg.into()] }
    }
}

type PhiFn = dyn Fn(Complex64) -> Complex64 + Send + Sync;

/// A user-supplied Bernstein function, evaluated on complex arguments so the
/// Talbot contour can reach it.
#[derive(Clone)]
pub struct CustomPhi {
    name: String,
    f: Arc<PhiFn>,
}

impl CustomPhi {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (self.f)(s)
    }
}

impl fmt::Debug for CustomPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPhi").field("name", &self.name).finish_non_exhaustive()
    }
}

impl PartialEq for CustomPhi {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.f, &other.f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SubordinatorSpec {
    /// φ(λ) = λ^α
    Stable { alpha: f64 },
    /// φ(λ) = (a + λ)^α - a^α
    TemperedStable { alpha: f64, a: f64 },
    /// φ(λ) = c1 λ^{α1} + c2 λ^{α2}
    StableMixture { alpha1: f64, alpha2: f64, c1: f64, c2: f64 },
    /// φ(λ) = μλ, so Y(t) = t/μ
    DeterministicDrift { mu: f64 },
    CustomBernstein(CustomPhi),
}

fn in_unit_open(x: f64) -> bool {
    x > 0.0 && x < 1.0
}

fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

impl SubordinatorSpec {
    pub fn stable(alpha: f64) -> std::result::Result<Self, SpecError> {
        SubordinatorSpec::Stable { alpha }.validated()
    }

    pub fn tempered(alpha: f64, a: f64) -> std::result::Result<Self, SpecError> {
        SubordinatorSpec::TemperedStable { alpha, a }.validated()
    }

    pub fn mixture(alpha1: f64, alpha2: f64, c1: f64, c2: f64) -> std::result::Result<Self, SpecError> {
        SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 }.validated()
    }

    pub fn drift(mu: f64) -> std::result::Result<Self, SpecError> {
        SubordinatorSpec::DeterministicDrift { mu }.validated()
    }

    /// Wrap a Bernstein function. Monotonicity and concavity are checked on a
    /// log-spaced grid; failures are logged, since a grid cannot prove either.
    pub fn custom<F>(name: impl Into<String>, phi: F) -> std::result::Result<Self, SpecError>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        let spec = SubordinatorSpec::CustomBernstein(CustomPhi { name: name.into(), f: Arc::new(phi) });
        let spec = spec.validated()?;
        if let SubordinatorSpec::CustomBernstein(c) = &spec {
            grid_check(c);
        }
        Ok(spec)
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            SubordinatorSpec::Stable { .. } => "stable",
            SubordinatorSpec::TemperedStable { .. } => "tempered",
            SubordinatorSpec::StableMixture { .. } => "mixture",
            SubordinatorSpec::DeterministicDrift { .. } => "drift",
            SubordinatorSpec::CustomBernstein(_) => "custom",
        }
    }

    /// Numeric parameters in canonical order (empty for custom φ).
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            SubordinatorSpec::Stable { alpha } => vec![("alpha", alpha)],
            SubordinatorSpec::TemperedStable { alpha, a } => vec![("alpha", alpha), ("a", a)],
            SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 } => {
                vec![("alpha1", alpha1), ("alpha2", alpha2), ("c1", c1), ("c2", c2)]
            }
            SubordinatorSpec::DeterministicDrift { mu } => vec![("mu", mu)],
            SubordinatorSpec::CustomBernstein(_) => Vec::new(),
        }
    }

    pub fn validate(&self) -> std::result::Result<(), SpecError> {
        let mut v = Vec::new();
        match *self {
            SubordinatorSpec::Stable { alpha } => {
                if !in_unit_open(alpha) {
                    v.push(format!("alpha = {alpha} outside (0,1)"));
                }
            }
            SubordinatorSpec::TemperedStable { alpha, a } => {
                if !in_unit_open(alpha) {
                    v.push(format!("alpha = {alpha} outside (0,1)"));
                }
                if !positive(a) {
                    v.push(format!("a = {a} must be positive"));
                }
            }
            SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 } => {
                if !in_unit_open(alpha1) {
                    v.push(format!("alpha1 = {alpha1} outside (0,1)"));
                }
                if !in_unit_open(alpha2) {
                    v.push(format!("alpha2 = {alpha2} outside (0,1)"));
                }
                if !(alpha1 < alpha2) {
                    v.push(format!("alpha1 = {alpha1} must be below alpha2 = {alpha2}"));
                }
                if !positive(c1) {
                    v.push(format!("c1 = {c1} must be positive"));
                }
                if !positive(c2) {
                    v.push(format!("c2 = {c2} must be positive"));
                }
                if !((c1 + c2 - 1.0).abs() <= 1e-12) {
                    v.push(format!("c1 + c2 = {} must equal 1", c1 + c2));
                }
            }
            SubordinatorSpec::DeterministicDrift { mu } => {
                if !positive(mu) {
                    v.push(format!("mu = {mu} must be positive"));
                }
            }
            SubordinatorSpec::CustomBernstein(ref c) => {
                let at0 = c.eval(Complex64::new(0.0, 0.0)).re;
                if !(at0.abs() <= 1e-14) {
                    v.push(format!("custom phi(0) = {at0}, expected 0"));
                }
                let at1 = c.eval(Complex64::new(1.0, 0.0)).re;
                if !positive(at1) {
                    v.push(format!("custom phi(1) = {at1} must be positive"));
                }
            }
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(SpecError { violations: v })
        }
    }

    pub fn validated(self) -> std::result::Result<Self, SpecError> {
        self.validate().map(|_| self)
    }

    /// φ(λ) for λ ≥ 0, unchecked.
    pub fn phi(&self, lambda: f64) -> f64 {
        if lambda == 0.0 {
            return 0.0;
        }
        match *self {
            SubordinatorSpec::Stable { alpha } => lambda.powf(alpha),
            // a^α (e^{α ln(1 + λ/a)} - 1) keeps full relative accuracy as λ → 0.
            SubordinatorSpec::TemperedStable { alpha, a } => a.powf(alpha) * (alpha * (lambda / a).ln_1p()).exp_m1(),
            SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 } => {
                c1 * lambda.powf(alpha1) + c2 * lambda.powf(alpha2)
            }
            SubordinatorSpec::DeterministicDrift { mu } => mu * lambda,
            SubordinatorSpec::CustomBernstein(ref c) => c.eval(Complex64::new(lambda, 0.0)).re,
        }
    }

    /// Analytic continuation of φ to Re s > 0 (principal branches).
    pub fn phi_complex(&self, s: Complex64) -> Complex64 {
        match *self {
            SubordinatorSpec::Stable { alpha } => s.powf(alpha),
            SubordinatorSpec::TemperedStable { alpha, a } => (s + a).powf(alpha) - a.powf(alpha),
            SubordinatorSpec::StableMixture { alpha1, alpha2, c1, c2 } => {
                s.powf(alpha1) * c1 + s.powf(alpha2) * c2
            }
            SubordinatorSpec::DeterministicDrift { mu } => s * mu,
            SubordinatorSpec::CustomBernstein(ref c) => c.eval(s),
        }
    }
}

/// Checked φ(λ); λ must be nonnegative.
pub fn laplace_exponent(spec: &SubordinatorSpec, lambda: f64) -> Result<f64> {
    spec.validate()?;
    if !(lambda >= 0.0) {
        return Err(domain("laplace_exponent", format!("lambda = {lambda} must be >= 0")));
    }
    Ok(spec.phi(lambda))
}

/// Accepts the spec iff every constraint holds; otherwise lists each violation.
pub fn validate_spec(spec: SubordinatorSpec) -> std::result::Result<SubordinatorSpec, SpecError> {
    spec.validated()
}

fn grid_check(c: &CustomPhi) {
    let n = 81;
    let lam: Vec<f64> = (0..n).map(|i| 10f64.powf(-4.0 + 8.0 * i as f64 / (n - 1) as f64)).collect();
    let phi: Vec<f64> = lam.iter().map(|&l| c.eval(Complex64::new(l, 0.0)).re).collect();
    if phi.iter().any(|p| !p.is_finite()) {
        log::warn!("custom phi '{}' is not finite on [1e-4, 1e4]", c.name);
        return;
    }
    if phi.windows(2).any(|w| w[1] < w[0]) {
        log::warn!("custom phi '{}' decreases somewhere on [1e-4, 1e4]", c.name);
    }
    let slopes: Vec<f64> = (0..n - 1).map(|i| (phi[i + 1] - phi[i]) / (lam[i + 1] - lam[i])).collect();
    if slopes.windows(2).any(|w| w[1] > w[0] * (1.0 + 1e-9) + 1e-300) {
        log::warn!("custom phi '{}' fails the concavity check on [1e-4, 1e4]", c.name);
    }
}

impl fmt::Display for SubordinatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={}", self.family_name())?;
        if let SubordinatorSpec::CustomBernstein(c) = self {
            return write!(f, " name={}", c.name);
        }
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Parses the flat form `family=stable alpha=0.7`; pairs may be separated by
/// whitespace, commas or semicolons.
impl FromStr for SubordinatorSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> std::result::Result<Self, SpecError> {
        let mut family: Option<&str> = None;
        let mut pairs: Vec<(&str, f64)> = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ';' || c == ',').filter(|t| !t.is_empty()) {
            let (k, v) = tok.split_once('=').ok_or_else(|| SpecError::one(format!("expected key=value, got '{tok}'")))?;
            let (k, v) = (k.trim(), v.trim());
            if k == "family" {
                if family.replace(v).is_some() {
                    return Err(SpecError::one("duplicate key 'family'"));
                }
                continue;
            }
            if pairs.iter().any(|(p, _)| *p == k) {
                return Err(SpecError::one(format!("duplicate key '{k}'")));
            }
            let x: f64 = v.parse().map_err(|_| SpecError::one(format!("{k}: '{v}' is not a number")))?;
            pairs.push((k, x));
        }
        let family = family.ok_or_else(|| SpecError::one("missing key 'family'"))?;
        let keys: &[&str] = match family {
            "stable" => &["alpha"],
            "tempered" => &["alpha", "a"],
            "mixture" => &["alpha1", "alpha2", "c1", "c2"],
            "drift" => &["mu"],
            "custom" => return Err(SpecError::one("custom families cannot be built from text")),
            other => return Err(SpecError::one(format!("unknown family '{other}'"))),
        };
        let mut violations: Vec<String> = pairs
            .iter()
            .filter(|(k, _)| !keys.contains(k))
            .map(|(k, _)| format!("unknown key '{k}' for family {family}"))
            .collect();
        let get = |key: &str| pairs.iter().find(|(k, _)| *k == key).map(|&(_, v)| v);
        for k in keys {
            if get(k).is_none() {
                violations.push(format!("missing key '{k}'"));
            }
        }
        if !violations.is_empty() {
            return Err(SpecError { violations });
        }
        let val = |key: &str| get(key).unwrap_or(f64::NAN);
        let spec = match family {
            "stable" => SubordinatorSpec::Stable { alpha: val("alpha") },
            "tempered" => SubordinatorSpec::TemperedStable { alpha: val("alpha"), a: val("a") },
            "mixture" => SubordinatorSpec::StableMixture {
                alpha1: val("alpha1"),
                alpha2: val("alpha2"),
                c1: val("c1"),
                c2: val("c2"),
            },
            _ => SubordinatorSpec::DeterministicDrift { mu: val("mu") },
        };
        spec.validated()
    }
}
