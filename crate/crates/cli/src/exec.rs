use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use tfbm::montecarlo::{estimate, PathConfig};
use tfbm::tfbm::{mixture_asymptotics, stable_asymptotics, tempered_asymptotics, AsymptoticReport, TfbmModel};
use tfbm::SubordinatorSpec;

use crate::args::{AsymptoticFamily, QuantityArg};
use crate::plan::{AsymptoticsPlan, Invocation, McPlan, ModelSpec, Query, TablePlan};
use crate::{fmt_num, CliError, EXIT_FAILURE, EXIT_OK};

pub const TABLE_HEADER: &str = "quantity,family,params,H,sigma2,t,s,value";
pub const MC_HEADER: &str = "quantity,family,params,H,sigma2,t,s,value,mc_mean,mc_se,z,reps,seed";
pub const ASYMPTOTICS_HEADER: &str = "quantity,regime,variable,at,leading_value,leading_exponent,degenerate,terms,description";

/// Largest |z| for which a Monte Carlo check passes.
pub const Z_LIMIT: f64 = 3.0;

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn numeric(model: &ModelSpec, quantity: &str, params: &str, source: tfbm::Error) -> CliError {
    CliError::Numeric {
        context: format!("family={} quantity={quantity} params={params}", model.spec.family_name()),
        source,
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn opt_num(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// Fields shared by table and MC rows, up to and including `s`.
fn row_prefix(q: &Query, m: &ModelSpec, params: &str) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        q.quantity.name(),
        m.spec.family_name(),
        params,
        opt_num(m.hurst),
        fmt_num(m.sigma2),
        fmt_num(q.t),
        opt_num(q.second)
    )
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(crate) fn execute(inv: &Invocation, out: &mut dyn Write) -> Result<i32, CliError> {
    match inv {
        Invocation::Info(text) => {
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Invocation::Eval { query, model } => {
            let params = query.params(&model.spec);
            let v = query.evaluate(model).map_err(|e| numeric(model, query.quantity.name(), &params, e))?;
            writeln!(out, "{}", fmt_num(v)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Invocation::Table(plan) => table(plan, out),
        Invocation::McValidate(plan) => mc_validate(plan, out),
        Invocation::Asymptotics(plan) => asymptotics(plan, out),
    }
}

fn table(plan: &TablePlan, out: &mut dyn Write) -> Result<i32, CliError> {
    let ts = plan.t_grid.values();
    let seconds: Vec<Option<f64>> = if matches!(plan.quantity, QuantityArg::Var | QuantityArg::Moment) {
        vec![None]
    } else {
        plan.s_values.iter().copied().map(Some).collect()
    };
    let points: Vec<(f64, Option<f64>)> = ts.iter().flat_map(|&t| seconds.iter().map(move |&s| (t, s))).collect();
    let rows: Vec<Result<String, CliError>> = points
        .par_iter()
        .map(|&(t, s)| {
            let q = Query::new(plan.quantity, Some(t), s.or(Some(0.0)), &plan.order, &plan.model)?;
            let q = Query { second: s, ..q };
            let params = q.params(&plan.model.spec);
            let v = q.evaluate(&plan.model).map_err(|e| {
                numeric(&plan.model, q.quantity.name(), &format!("{params};t={};s={}", fmt_num(t), opt_num(s)), e)
            })?;
            Ok(format!("{},{}\n", row_prefix(&q, &plan.model, &params), fmt_num(v)))
        })
        .collect();
    let mut text = format!("{TABLE_HEADER}\n");
    for r in rows {
        text.push_str(&r?);
    }
    emit(&text, plan.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn mc_validate(plan: &McPlan, out: &mut dyn Write) -> Result<i32, CliError> {
    let q = &plan.query;
    let m = &plan.model;
    let params = q.params(&m.spec);
    let fail = |e| numeric(m, q.quantity.name(), &params, e);
    let analytic = q.evaluate(m).map_err(fail)?;
    let mq = q.mc_quantity();
    let horizon = mq.times().into_iter().fold(0.0_f64, f64::max);
    let cfg = PathConfig::new(plan.dt, horizon).map_err(fail)?;
    // subordinator-only quantities ignore H
    let model = TfbmModel::new(m.hurst.unwrap_or(0.5), m.sigma2, m.spec.clone()).map_err(fail)?;
    let est = estimate(&model, mq, plan.reps, plan.seed, &cfg).map_err(fail)?;
    let z = est.z_score(analytic);
    let text = format!(
        "{MC_HEADER}\n{},{},{},{},{},{},{}\n",
        row_prefix(q, m, &params),
        fmt_num(analytic),
        fmt_num(est.mean),
        fmt_num(est.std_error),
        fmt_num(z),
        est.n_replicates,
        plan.seed
    );
    emit(&text, plan.output.as_deref(), out)?;
    Ok(if z.abs() <= Z_LIMIT { EXIT_OK } else { EXIT_FAILURE })
}

fn terms_field(r: &AsymptoticReport) -> String {
    let mut s = String::new();
    for (i, p) in r.terms.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        let _ = write!(s, "{}*{}^{}", fmt_num(p.coefficient), r.regime.variable(), fmt_num(p.exponent));
    }
    s
}

fn asymptotics(plan: &AsymptoticsPlan, out: &mut dyn Write) -> Result<i32, CliError> {
    let m = &plan.model;
    let h = m.hurst.unwrap_or(f64::NAN);
    let reports = match (plan.family, &m.spec) {
        (AsymptoticFamily::Stable, SubordinatorSpec::Stable { alpha }) => {
            stable_asymptotics(*alpha, h, m.sigma2, plan.t, plan.s, plan.v.unwrap_or(f64::NAN))
        }
        (AsymptoticFamily::Mixture, spec) => mixture_asymptotics(spec, h, m.sigma2, plan.t, plan.s),
        (AsymptoticFamily::Tempered, spec) => tempered_asymptotics(spec, h, m.sigma2, plan.t, plan.s),
        (AsymptoticFamily::Stable, _) => return Err(CliError::Usage("stable asymptotics need --alpha".into())),
    };
    let params = m.spec.params().iter().map(|(k, v)| format!("{k}={}", fmt_num(*v))).collect::<Vec<_>>().join(";");
    let reports = reports.map_err(|e| numeric(m, "asymptotics", &params, e))?;
    let mut text = format!("{ASYMPTOTICS_HEADER}\n");
    for r in &reports {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{},{},{}",
            r.quantity,
            r.regime,
            r.regime.variable(),
            fmt_num(r.at),
            fmt_num(r.leading_value),
            fmt_num(r.leading_exponent),
            r.degenerate,
            terms_field(r),
            csv_field(&r.description)
        );
    }
    emit(&text, None, out)?;
    Ok(EXIT_OK)
}
