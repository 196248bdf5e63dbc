//! Command-line front end for the `tfbm` library.
//!
//! `run` is the whole program minus process plumbing, so tests and fuzzers
//! can drive it with an argv vector and in-memory writers.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod config;
mod exec;
pub mod plan;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

use args::{Cli, Command, McAction, QuantityArg};
use config::{parse_config, ConfigMap};
pub use plan::{Invocation, Query};

pub const EXIT_OK: i32 = 0;
/// Numerical failure, or a Monte Carlo z-score beyond 3.
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure [{context}]: {source}")]
    Numeric { context: String, source: tfbm::Error },
    #[error("i/o: {0}")]
    Io(String),
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric { .. } | CliError::Io(_) => EXIT_FAILURE,
        }
    }
}

/// Shortest decimal that parses back to the same double.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x != 0.0 && x.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn load_config(path: Option<&std::path::PathBuf>) -> Result<ConfigMap, CliError> {
    match path {
        None => Ok(ConfigMap::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("--config {}: {e}", p.display())))?;
            Ok(parse_config(&text)?)
        }
    }
}

/// Parse and validate argv (including the program name) without running anything.
pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Invocation::Info(e.to_string())),
                _ => Err(CliError::Usage(e.to_string())),
            };
        }
    };
    match cli.command {
        Command::Eval { quantity, mut model, mut order, mut point } => {
            let cfg = load_config(model.config.as_ref())?;
            model.merge(&cfg)?;
            order.merge(&cfg)?;
            point.merge(&cfg)?;
            let m = plan::ModelSpec::from_args(&model, None)?;
            let second = if quantity == QuantityArg::IncrementCov { point.v } else { point.s };
            let query = Query::new(quantity, point.t, second, &order, &m)?;
            Ok(Invocation::Eval { query, model: m })
        }
        Command::Table { quantity, mut model, mut order, mut grid } => {
            let cfg = load_config(model.config.as_ref())?;
            model.merge(&cfg)?;
            order.merge(&cfg)?;
            grid.merge(&cfg)?;
            let m = plan::ModelSpec::from_args(&model, None)?;
            let need = |v: Option<f64>, f: &str| v.ok_or_else(|| CliError::Usage(format!("missing --{f}")));
            let t_grid = plan::Grid::new(
                need(grid.t_start, "t-start")?,
                need(grid.t_stop, "t-stop")?,
                grid.t_count.ok_or_else(|| CliError::Usage("missing --t-count".into()))?,
                grid.spacing.unwrap_or(args::Spacing::Linear),
            )?;
            let s_values = grid.s_values.clone().unwrap_or_default();
            // validate requirements once with a representative point
            Query::new(quantity, Some(t_grid.start), s_values.first().copied().or(Some(0.0)), &order, &m)?;
            if !matches!(quantity, QuantityArg::Var | QuantityArg::Moment) && s_values.is_empty() {
                return Err(CliError::Usage(format!("missing --s-values for {}", quantity.name())));
            }
            Ok(Invocation::Table(plan::TablePlan { quantity, model: m, order, t_grid, s_values, output: grid.output }))
        }
        Command::Mc { action: McAction::Validate { quantity, mut model, mut order, mut point, mut mc } } => {
            let cfg = load_config(model.config.as_ref())?;
            model.merge(&cfg)?;
            order.merge(&cfg)?;
            point.merge(&cfg)?;
            mc.merge(&cfg)?;
            let quantity = match quantity {
                Some(q) => q,
                None => match cfg.get("quantity") {
                    Some(v) => <QuantityArg as clap::ValueEnum>::from_str(v, false)
                        .map_err(|_| CliError::Usage(format!("config key 'quantity': cannot parse '{v}'")))?,
                    None => QuantityArg::Cov,
                },
            };
            let m = plan::ModelSpec::from_args(&model, None)?;
            let second = if quantity == QuantityArg::IncrementCov { point.v } else { point.s };
            let query = Query::new(quantity, point.t, second, &order, &m)?;
            let reps = mc.reps.unwrap_or(100_000);
            if reps < tfbm::montecarlo::MIN_REPLICATES {
                return Err(CliError::Usage(format!("--reps {reps} must be at least {}", tfbm::montecarlo::MIN_REPLICATES)));
            }
            let dt = mc.dt.unwrap_or(1e-3);
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(CliError::Usage(format!("--dt {dt} must be positive")));
            }
            if matches!(m.spec, tfbm::SubordinatorSpec::CustomBernstein(_)) {
                return Err(CliError::Usage("custom families cannot be simulated".into()));
            }
            Ok(Invocation::McValidate(plan::McPlan { query, model: m, reps, seed: mc.seed.unwrap_or(42), dt, output: mc.output }))
        }
        Command::Asymptotics { family, mut model, mut point } => {
            let cfg = load_config(model.config.as_ref())?;
            model.merge(&cfg)?;
            point.merge(&cfg)?;
            let fam = match family {
                args::AsymptoticFamily::Stable => args::FamilyArg::Stable,
                args::AsymptoticFamily::Mixture => args::FamilyArg::Mixture,
                args::AsymptoticFamily::Tempered => args::FamilyArg::Tempered,
            };
            if model.family.is_some_and(|f| f != fam) {
                return Err(CliError::Usage("--family disagrees with the asymptotics family".into()));
            }
            let m = plan::ModelSpec::from_args(&model, Some(fam))?;
            if m.hurst.is_none() {
                return Err(CliError::Usage("missing --hurst".into()));
            }
            let t = point.t.ok_or_else(|| CliError::Usage("missing --t".into()))?;
            let s = point.s.ok_or_else(|| CliError::Usage("missing --s".into()))?;
            if family == args::AsymptoticFamily::Stable && point.v.is_none() {
                return Err(CliError::Usage("missing --v for stable asymptotics".into()));
            }
            Ok(Invocation::Asymptotics(plan::AsymptoticsPlan { family, model: m, t, s, v: point.v }))
        }
    }
}

/// Run the program; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_invocation(argv).and_then(|inv| exec::execute(&inv, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &str) -> (i32, String, String) {
        let argv: Vec<&str> = std::iter::once("tfbm").chain(args.split_whitespace()).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grammar_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn formats_round_trip() {
        for &x in &[0.0, 2.0, std::f64::consts::FRAC_1_SQRT_2, 1e-7, 1.2345678901234567e20, -3.5e-300, 123456.789] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_num(2.0), "2");
        assert_eq!(fmt_num(1e-7), "1e-7");
    }

    #[test]
    fn eval_examples() {
        let (c, o, _) = run_str("eval corr --family stable --alpha 0.5 --hurst 0.5 --sigma2 1 --t 4 --s 1");
        assert_eq!((c, o.as_str()), (0, "0.7071067811865476\n"));
        let (c, o, _) = run_str("eval var --family drift --mu 1 --hurst 0.7 --sigma2 2 --t 1");
        assert_eq!((c, o.as_str()), (0, "2\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        let (c, _, e) = run_str("eval corr --family stable --hurst 0.5 --t 4 --s 1");
        assert_eq!(c, EXIT_USAGE);
        assert!(e.contains("--alpha"), "{e}");
        assert_eq!(run_str("eval nonsense").0, EXIT_USAGE);
        assert_eq!(run_str("eval cov --family stable --alpha 1.5 --hurst 0.5 --t 1 --s 1").0, EXIT_USAGE);
        let (c, _, e) = run_str("eval cov --family stable --alpha 0.5 --hurst 0.5 --t 1");
        assert_eq!(c, EXIT_USAGE);
        assert!(e.contains("--s"));
    }

    #[test]
    fn numerical_errors_exit_one_with_context() {
        let (c, _, e) = run_str("eval corr --family stable --alpha 0.5 --hurst 0.7 --t 0 --s 1");
        assert_eq!(c, EXIT_FAILURE);
        assert!(e.contains("family=stable") && e.contains("quantity=corr") && e.contains("alpha=0.5"), "{e}");
    }

    #[test]
    fn help_exits_zero() {
        let (c, o, _) = run_str("--help");
        assert_eq!(c, 0);
        assert!(o.contains("eval"));
    }
}
