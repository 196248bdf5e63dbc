use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::samplers::sample_increment;
use crate::error::{domain, Error, Result};
use crate::subordinators::SubordinatorSpec;
use crate::tfbm::{fbm_cov, TfbmModel};

/// The simulated span may double this many times past the horizon.
const MAX_DOUBLINGS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathConfig {
    /// Grid step in the subordinator's own clock.
    pub dt: f64,
    pub horizon: f64,
}

impl PathConfig {
    pub fn new(dt: f64, horizon: f64) -> Result<Self> {
        let c = PathConfig { dt, horizon };
        c.validate()?;
        Ok(c)
    }

    /// dt = 1e-3 · horizon.
    pub fn for_horizon(horizon: f64) -> Result<Self> {
        Self::new(1e-3 * horizon, horizon)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(domain("PathConfig", format!("dt = {} must be positive", self.dt)));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(domain("PathConfig", format!("horizon = {} must be positive", self.horizon)));
        }
        Ok(())
    }
}

/// D sampled on the grid 0, dt, 2dt, ... up to the horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct SubordinatorPath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

pub fn sample_d_increments<R: Rng + ?Sized>(spec: &SubordinatorSpec, cfg: &PathConfig, rng: &mut R) -> Result<SubordinatorPath> {
    spec.validate()?;
    cfg.validate()?;
    let n = (cfg.horizon / cfg.dt).ceil() as usize;
    let mut times = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    times.push(0.0);
    values.push(0.0);
    let mut d = 0.0;
    for k in 1..=n {
        d += sample_increment(spec, cfg.dt, rng)?;
        times.push(k as f64 * cfg.dt);
        values.push(d);
    }
    Ok(SubordinatorPath { times, values })
}

fn check_times(func: &'static str, times: &[f64], cfg: &PathConfig) -> Result<()> {
    for &t in times {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(domain(func, format!("query time {t} must be finite and >= 0")));
        }
        if t > cfg.horizon {
            return Err(domain(func, format!("query time {t} exceeds horizon {}", cfg.horizon)));
        }
    }
    Ok(())
}

/// One joint draw of Y at the query times (any order).
///
/// D is walked along the dt grid until it passes the largest time; each Y(t)
/// is interpolated linearly inside the grid cell where D first exceeds t.
pub fn inverse_values_at<R: Rng + ?Sized>(spec: &SubordinatorSpec, times: &[f64], cfg: &PathConfig, rng: &mut R) -> Result<Vec<f64>> {
    spec.validate()?;
    cfg.validate()?;
    check_times("inverse_values_at", times, cfg)?;
    if let SubordinatorSpec::DeterministicDrift { mu } = *spec {
        return Ok(times.iter().map(|t| t / mu).collect());
    }
    let mut order: Vec<usize> = (0..times.len()).collect();
    order.sort_by(|&i, &j| times[i].total_cmp(&times[j]));
    let mut out = vec![0.0; times.len()];
    let max_steps = ((cfg.horizon * f64::from(1u32 << MAX_DOUBLINGS)) / cfg.dt).ceil() as u64;
    let mut next = 0;
    let mut d_prev = 0.0;
    let mut k = 0u64;
    while next < order.len() {
        if k >= max_steps {
            return Err(Error::HorizonExceeded { target: times[order[next]], span: k as f64 * cfg.dt });
        }
        let d = d_prev + sample_increment(spec, cfg.dt, rng)?;
        while next < order.len() && d > times[order[next]] {
            let t = times[order[next]];
            out[order[next]] = (k as f64 + (t - d_prev) / (d - d_prev)) * cfg.dt;
            next += 1;
        }
        d_prev = d;
        k += 1;
    }
    Ok(out)
}

/// In-place lower Cholesky factor of a row-major n×n matrix.
fn cholesky(a: &mut [f64], n: usize) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if !(d > 0.0) {
            return false;
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
        for k in j + 1..n {
            a[j * n + k] = 0.0;
        }
    }
    true
}

/// Centered Gaussian vector with covariance fbm_cov at the given times.
/// Equal times give equal values; time 0 gives 0.
pub(crate) fn fbm_at<R: Rng + ?Sized>(hurst: f64, sigma2: f64, ys: &[f64], rng: &mut R) -> Result<Vec<f64>> {
    let mut uniq: Vec<f64> = ys.iter().copied().filter(|&y| y > 0.0).collect();
    uniq.sort_by(f64::total_cmp);
    uniq.dedup();
    let n = uniq.len();
    let mut cov = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            cov[i * n + j] = fbm_cov(hurst, sigma2, uniq[i], uniq[j])?;
        }
    }
    let mut l = cov.clone();
    if !cholesky(&mut l, n) {
        let jitter = 1e-12 * (0..n).map(|i| cov[i * n + i]).sum::<f64>() / n as f64;
        l = cov;
        for i in 0..n {
            l[i * n + i] += jitter;
        }
        if !cholesky(&mut l, n) {
            return Err(Error::Factorization);
        }
    }
    let g: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    let b: Vec<f64> = (0..n).map(|i| (0..=i).map(|k| l[i * n + k] * g[k]).sum()).collect();
    Ok(ys
        .iter()
        .map(|&y| if y > 0.0 { b[uniq.binary_search_by(|u| u.total_cmp(&y)).unwrap()] } else { 0.0 })
        .collect())
}

/// One joint draw of Z = B_H(Y) at the query times.
pub fn sample_z_at<R: Rng + ?Sized>(model: &TfbmModel, times: &[f64], cfg: &PathConfig, rng: &mut R) -> Result<Vec<f64>> {
    model.validate()?;
    let ys = inverse_values_at(&model.sub, times, cfg, rng)?;
    fbm_at(model.hurst, model.sigma2, &ys, rng)
}
