//! Command-line grammar. Every optional flag can also come from `--config`;
//! values given on the command line win.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{ConfigError, ConfigMap};

#[derive(Debug, Parser)]
#[command(name = "tfbm", version, about = "Covariance structure of fractional Brownian motion under an inverse subordinator clock")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity at one point
    Eval {
        quantity: QuantityArg,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        point: PointArgs,
    },
    /// CSV table over a t grid and a list of second coordinates
    Table {
        quantity: QuantityArg,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Monte Carlo campaigns
    Mc {
        #[command(subcommand)]
        action: McAction,
    },
    /// Leading-order behavior in the limiting regimes of one family
    Asymptotics {
        #[arg(id = "target", value_name = "FAMILY")]
        family: AsymptoticFamily,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        point: PointArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum McAction {
    /// Compare an analytic value with its Monte Carlo estimate (exit 1 if |z| > 3)
    Validate {
        /// Quantity to check [default: cov]
        #[arg(long, value_enum)]
        quantity: Option<QuantityArg>,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        mc: McArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Cov,
    Corr,
    Var,
    Moment,
    IncrementMoment,
    IncrementCov,
    CovY,
    AbsIncrementMoment,
}

impl QuantityArg {
    pub fn name(self) -> &'static str {
        match self {
            QuantityArg::Cov => "cov",
            QuantityArg::Corr => "corr",
            QuantityArg::Var => "var",
            QuantityArg::Moment => "moment",
            QuantityArg::IncrementMoment => "increment-moment",
            QuantityArg::IncrementCov => "increment-cov",
            QuantityArg::CovY => "cov-y",
            QuantityArg::AbsIncrementMoment => "abs-increment-moment",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Stable,
    Tempered,
    Mixture,
    Drift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AsymptoticFamily {
    Stable,
    Mixture,
    Tempered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

fn parse_enum<T: ValueEnum>(key: &str, v: &str) -> Result<T, ConfigError> {
    T::from_str(v, false).map_err(|_| ConfigError::BadValue { key: key.to_string(), value: v.to_string() })
}

/// Fill every `None` field from the config map under the flag's name.
macro_rules! fill {
    ($cfg:expr, $self:ident, $($field:ident => $key:literal),* $(,)?) => {
        $( if $self.$field.is_none() { $self.$field = $cfg.parsed($key)?; } )*
    };
}

#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Stability index (stable, tempered)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Tempering rate
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub alpha1: Option<f64>,
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    /// Drift rate
    #[arg(long)]
    pub mu: Option<f64>,
    /// Hurst index H of the outer fBm
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Var B_H(1) [default: 1]
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// key = value file supplying any of these flags
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl ModelArgs {
    pub fn merge(&mut self, cfg: &ConfigMap) -> Result<(), ConfigError> {
        if self.family.is_none() {
            if let Some(v) = cfg.get("family") {
                self.family = Some(parse_enum("family", v)?);
            }
        }
        fill!(cfg, self, alpha => "alpha", a => "a", alpha1 => "alpha1", alpha2 => "alpha2",
              c1 => "c1", c2 => "c2", mu => "mu", hurst => "hurst", sigma2 => "sigma2");
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct OrderArgs {
    /// Moment order for moment / increment-moment
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Absolute-moment order for abs-increment-moment
    #[arg(long)]
    pub m: Option<f64>,
}

impl OrderArgs {
    pub fn merge(&mut self, cfg: &ConfigMap) -> Result<(), ConfigError> {
        fill!(cfg, self, kappa => "kappa", m => "m");
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    /// Lag between increments (increment-cov, stable asymptotics)
    #[arg(long)]
    pub v: Option<f64>,
}

impl PointArgs {
    pub fn merge(&mut self, cfg: &ConfigMap) -> Result<(), ConfigError> {
        fill!(cfg, self, t => "t", s => "s", v => "v");
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_stop: Option<f64>,
    #[arg(long)]
    pub t_count: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// Comma-separated second coordinates (s, or the lag v for increment-cov)
    #[arg(long, value_delimiter = ',')]
    pub s_values: Option<Vec<f64>>,
    /// Write CSV here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl GridArgs {
    pub fn merge(&mut self, cfg: &ConfigMap) -> Result<(), ConfigError> {
        fill!(cfg, self, t_start => "t-start", t_stop => "t-stop", t_count => "t-count", output => "output");
        if self.spacing.is_none() {
            if let Some(v) = cfg.get("spacing") {
                self.spacing = Some(parse_enum("spacing", v)?);
            }
        }
        if self.s_values.is_none() {
            if let Some(v) = cfg.get("s-values") {
                let parsed: Result<Vec<f64>, _> = v.split(',').map(|x| x.trim().parse()).collect();
                self.s_values = Some(parsed.map_err(|_| ConfigError::BadValue {
                    key: "s-values".into(),
                    value: v.to_string(),
                })?);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct McArgs {
    /// Number of replicates [default: 100000]
    #[arg(long)]
    pub reps: Option<usize>,
    /// [default: 42]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Subordinator grid step [default: 0.001]
    #[arg(long)]
    pub dt: Option<f64>,
    /// Write CSV here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl McArgs {
    pub fn merge(&mut self, cfg: &ConfigMap) -> Result<(), ConfigError> {
        fill!(cfg, self, reps => "reps", seed => "seed", dt => "dt", output => "output");
        Ok(())
    }
}
