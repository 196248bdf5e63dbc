use std::path::PathBuf;

use tfbm::montecarlo::Quantity;
use tfbm::tfbm::TfbmModel;
use tfbm::SubordinatorSpec;

use crate::args::{AsymptoticFamily, FamilyArg, ModelArgs, OrderArgs, QuantityArg, Spacing};
use crate::CliError;

/// Upper bound on table grid size, to keep a typo from exhausting memory.
pub const MAX_GRID_POINTS: usize = 1_000_000;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Subordinator plus the outer fBm parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub spec: SubordinatorSpec,
    pub hurst: Option<f64>,
    pub sigma2: f64,
}

impl ModelSpec {
    pub fn from_args(m: &ModelArgs, family: Option<FamilyArg>) -> Result<Self, CliError> {
        let family = family.or(m.family).ok_or_else(|| usage("missing --family"))?;
        let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| usage(format!("missing --{flag} for this family")));
        let spec = match family {
            FamilyArg::Stable => SubordinatorSpec::Stable { alpha: need(m.alpha, "alpha")? },
            FamilyArg::Tempered => SubordinatorSpec::TemperedStable { alpha: need(m.alpha, "alpha")?, a: need(m.a, "a")? },
            FamilyArg::Mixture => SubordinatorSpec::StableMixture {
                alpha1: need(m.alpha1, "alpha1")?,
                alpha2: need(m.alpha2, "alpha2")?,
                c1: need(m.c1, "c1")?,
                c2: need(m.c2, "c2")?,
            },
            FamilyArg::Drift => SubordinatorSpec::DeterministicDrift { mu: need(m.mu, "mu")? },
        };
        spec.validate().map_err(|e| usage(e.to_string()))?;
        let sigma2 = m.sigma2.unwrap_or(1.0);
        if let Some(h) = m.hurst {
            TfbmModel::new(h, sigma2, spec.clone()).map_err(|e| usage(e.to_string()))?;
        } else if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(usage(format!("--sigma2 = {sigma2} must be finite and positive")));
        }
        Ok(ModelSpec { spec, hurst: m.hurst, sigma2 })
    }

    pub fn model(&self) -> Result<TfbmModel, CliError> {
        let h = self.hurst.ok_or_else(|| usage("missing --hurst"))?;
        TfbmModel::new(h, self.sigma2, self.spec.clone()).map_err(|e| usage(e.to_string()))
    }
}

/// One fully specified evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Query {
    pub quantity: QuantityArg,
    pub t: f64,
    /// s, or the lag v for increment-cov
    pub second: Option<f64>,
    pub kappa: Option<f64>,
    pub m: Option<f64>,
}

impl Query {
    pub fn new(quantity: QuantityArg, t: Option<f64>, second: Option<f64>, order: &OrderArgs, model: &ModelSpec) -> Result<Self, CliError> {
        use QuantityArg::*;
        let t = t.ok_or_else(|| usage("missing --t"))?;
        let second_flag = if quantity == IncrementCov { "--v" } else { "--s" };
        let needs_second = !matches!(quantity, Var | Moment);
        let second = if needs_second {
            Some(second.ok_or_else(|| usage(format!("missing {second_flag} for {}", quantity.name())))?)
        } else {
            None
        };
        let kappa = if matches!(quantity, Moment | IncrementMoment) {
            Some(order.kappa.ok_or_else(|| usage(format!("missing --kappa for {}", quantity.name())))?)
        } else {
            None
        };
        let m = if quantity == AbsIncrementMoment {
            Some(order.m.ok_or_else(|| usage("missing --m for abs-increment-moment"))?)
        } else {
            None
        };
        if matches!(quantity, Cov | Corr | Var | IncrementCov | AbsIncrementMoment) && model.hurst.is_none() {
            return Err(usage(format!("missing --hurst for {}", quantity.name())));
        }
        Ok(Query { quantity, t, second, kappa, m })
    }

    /// `key=value` list for the CSV params column.
    pub fn params(&self, spec: &SubordinatorSpec) -> String {
        let mut parts: Vec<String> = spec.params().iter().map(|(k, v)| format!("{k}={}", crate::fmt_num(*v))).collect();
        if let Some(k) = self.kappa {
            parts.push(format!("kappa={}", crate::fmt_num(k)));
        }
        if let Some(m) = self.m {
            parts.push(format!("m={}", crate::fmt_num(m)));
        }
        parts.join(";")
    }

    pub fn evaluate(&self, model: &ModelSpec) -> tfbm::Result<f64> {
        use tfbm::{moments, tfbm as z};
        let spec = &model.spec;
        let zmodel = || TfbmModel::new(model.hurst.unwrap_or(f64::NAN), model.sigma2, spec.clone());
        let s = self.second.unwrap_or(f64::NAN);
        match self.quantity {
            QuantityArg::Cov => z::cov_z(&zmodel()?, self.t, s),
            QuantityArg::Corr => z::corr_z(&zmodel()?, self.t, s),
            QuantityArg::Var => z::var_z(&zmodel()?, self.t),
            QuantityArg::Moment => moments::moment_u(spec, self.kappa.unwrap_or(f64::NAN), self.t),
            QuantityArg::IncrementMoment => moments::increment_moment_y(spec, self.kappa.unwrap_or(f64::NAN), self.t, s),
            QuantityArg::IncrementCov => z::increment_cov_z(&zmodel()?, self.t, s),
            QuantityArg::CovY => moments::cov_y(spec, self.t, s),
            QuantityArg::AbsIncrementMoment => z::abs_increment_moment_z(&zmodel()?, self.m.unwrap_or(f64::NAN), self.t, s),
        }
    }

    pub fn mc_quantity(&self) -> Quantity {
        let (t, s) = (self.t, self.second.unwrap_or(0.0));
        match self.quantity {
            QuantityArg::Cov => Quantity::CovZ { t, s },
            QuantityArg::Corr => Quantity::CorrZ { t, s },
            QuantityArg::Var => Quantity::VarZ { t },
            QuantityArg::Moment => Quantity::MomentU { kappa: self.kappa.unwrap_or(1.0), t },
            QuantityArg::IncrementMoment => Quantity::IncrementMomentY { kappa: self.kappa.unwrap_or(1.0), t, s },
            QuantityArg::IncrementCov => Quantity::IncrementCovZ { t, v: s },
            QuantityArg::CovY => Quantity::CovY { t, s },
            QuantityArg::AbsIncrementMoment => Quantity::AbsIncrementMomentZ { m: self.m.unwrap_or(2.0), t, s },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize, spacing: Spacing) -> Result<Self, CliError> {
        if !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(usage(format!("--t-start {start} must be below --t-stop {stop}")));
        }
        if !(2..=MAX_GRID_POINTS).contains(&count) {
            return Err(usage(format!("--t-count {count} must lie in [2, {MAX_GRID_POINTS}]")));
        }
        if spacing == Spacing::Log && !(start > 0.0) {
            return Err(usage("log spacing needs --t-start > 0"));
        }
        Ok(Grid { start, stop, count, spacing })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let f = i as f64 / n;
                if i == 0 {
                    return self.start;
                }
                if i + 1 == self.count {
                    return self.stop;
                }
                match self.spacing {
                    Spacing::Linear => self.start + f * (self.stop - self.start),
                    Spacing::Log => self.start * (f * (self.stop / self.start).ln()).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TablePlan {
    pub quantity: QuantityArg,
    pub model: ModelSpec,
    pub order: OrderArgs,
    pub t_grid: Grid,
    pub s_values: Vec<f64>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McPlan {
    pub query: Query,
    pub model: ModelSpec,
    pub reps: usize,
    pub seed: u64,
    pub dt: f64,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticsPlan {
    pub family: AsymptoticFamily,
    pub model: ModelSpec,
    pub t: f64,
    pub s: f64,
    pub v: Option<f64>,
}

/// A parsed, validated command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Invocation {
    Eval { query: Query, model: ModelSpec },
    Table(TablePlan),
    McValidate(McPlan),
    Asymptotics(AsymptoticsPlan),
    /// --help or --version text
    Info(String),
}
