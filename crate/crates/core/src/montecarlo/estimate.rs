use rayon::prelude::*;

use super::paths::{fbm_at, inverse_values_at, PathConfig};
use super::rng::RngStream;
use crate::error::{domain, Error, Result};
use crate::tfbm::TfbmModel;

/// Minimum replicate count accepted by the estimators.
pub const MIN_REPLICATES: usize = 100;

/// Quantities with a Monte Carlo estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    VarZ { t: f64 },
    CovZ { t: f64, s: f64 },
    CorrZ { t: f64, s: f64 },
    MomentU { kappa: f64, t: f64 },
    IncrementMomentY { kappa: f64, t: f64, s: f64 },
    AbsIncrementMomentZ { m: f64, t: f64, s: f64 },
    CovY { t: f64, s: f64 },
    /// Cov(Z(t) - Z(0), Z(t+v) - Z(v))
    IncrementCovZ { t: f64, v: f64 },
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::VarZ { .. } => "var",
            Quantity::CovZ { .. } => "cov",
            Quantity::CorrZ { .. } => "corr",
            Quantity::MomentU { .. } => "moment",
            Quantity::IncrementMomentY { .. } => "increment-moment",
            Quantity::AbsIncrementMomentZ { .. } => "abs-increment-moment",
            Quantity::CovY { .. } => "cov-y",
            Quantity::IncrementCovZ { .. } => "increment-cov",
        }
    }

    /// Times at which Y (and Z) must be drawn.
    pub fn times(&self) -> Vec<f64> {
        match *self {
            Quantity::VarZ { t } | Quantity::MomentU { t, .. } => vec![t],
            Quantity::CovZ { t, s }
            | Quantity::CorrZ { t, s }
            | Quantity::IncrementMomentY { t, s, .. }
            | Quantity::AbsIncrementMomentZ { t, s, .. }
            | Quantity::CovY { t, s } => vec![t, s],
            Quantity::IncrementCovZ { t, v } => vec![t, v, t + v],
        }
    }

    fn needs_z(&self) -> bool {
        !matches!(self, Quantity::MomentU { .. } | Quantity::IncrementMomentY { .. } | Quantity::CovY { .. })
    }

    /// Per-replicate statistics; `y` and `z` are aligned with `times()`.
    fn features(&self, y: &[f64], z: &[f64]) -> Vec<f64> {
        match *self {
            Quantity::VarZ { .. } => vec![z[0] * z[0]],
            Quantity::CovZ { .. } => vec![z[0] * z[1]],
            Quantity::CorrZ { .. } => vec![z[0] * z[1], z[0] * z[0], z[1] * z[1]],
            Quantity::MomentU { kappa, .. } => vec![y[0].powf(kappa)],
            Quantity::IncrementMomentY { kappa, .. } => vec![(y[0] - y[1]).abs().powf(kappa)],
            Quantity::AbsIncrementMomentZ { m, .. } => vec![(z[0] - z[1]).abs().powf(m)],
            Quantity::CovY { .. } => vec![y[0], y[1]],
            Quantity::IncrementCovZ { .. } => vec![z[0] * (z[2] - z[1])],
        }
    }

    /// Point estimate and per-replicate influence values.
    fn aggregate(&self, rows: &[&[f64]]) -> (f64, Vec<f64>) {
        let col = |j: usize| -> Vec<f64> { rows.iter().map(|r| r[j]).collect() };
        match self {
            Quantity::CorrZ { .. } => {
                let (a, b, c) = (col(0), col(1), col(2));
                let (ma, mb, mc) = (mean(&a), mean(&b), mean(&c));
                let r = ma / (mb * mc).sqrt();
                let psi = (0..rows.len()).map(|i| r * (a[i] / ma - 0.5 * b[i] / mb - 0.5 * c[i] / mc)).collect();
                (r, psi)
            }
            Quantity::CovY { .. } => {
                let (x, y) = (col(0), col(1));
                let (mx, my) = (mean(&x), mean(&y));
                let prod: Vec<f64> = (0..rows.len()).map(|i| (x[i] - mx) * (y[i] - my)).collect();
                let n = rows.len() as f64;
                let cov = mean(&prod) * n / (n - 1.0);
                (cov, prod.iter().map(|p| p - cov).collect())
            }
            _ => {
                let x = col(0);
                let m = mean(&x);
                (m, x.iter().map(|v| v - m).collect())
            }
        }
    }
}

/// Neumaier-compensated mean, summed in index order.
fn mean(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &x in xs {
        let t = sum + x;
        if f64::abs(sum) >= f64::abs(x) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    (sum + comp) / xs.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_replicates: usize,
}

impl McEstimate {
    /// (analytic - mean) / std_error. A degenerate (zero-variance) estimate
    /// scores 0 when it matches to rounding and infinity otherwise.
    pub fn z_score(&self, analytic: f64) -> f64 {
        let d = analytic - self.mean;
        if self.std_error > 0.0 {
            d / self.std_error
        } else if d.abs() <= 1e-12 * analytic.abs().max(self.mean.abs()) {
            0.0
        } else {
            d.signum() * f64::INFINITY
        }
    }
}

/// Estimate one quantity from `n` replicates on streams (seed, 0..n).
pub fn estimate(model: &TfbmModel, quantity: Quantity, n: usize, seed: u64, cfg: &PathConfig) -> Result<McEstimate> {
    Ok(estimate_many(model, &[quantity], n, seed, cfg)?[0])
}

/// Several quantities from one set of replicates; each replicate draws the
/// union of the required times jointly.
pub fn estimate_many(model: &TfbmModel, quantities: &[Quantity], n: usize, seed: u64, cfg: &PathConfig) -> Result<Vec<McEstimate>> {
    model.validate()?;
    cfg.validate()?;
    if n < MIN_REPLICATES {
        return Err(domain("estimate", format!("n_replicates = {n} must be at least {MIN_REPLICATES}")));
    }
    let mut all: Vec<f64> = quantities.iter().flat_map(|q| q.times()).collect();
    for &t in &all {
        if !(t >= 0.0) || t > cfg.horizon {
            return Err(domain("estimate", format!("time {t} must lie in [0, horizon = {}]", cfg.horizon)));
        }
    }
    all.sort_by(f64::total_cmp);
    all.dedup();
    let index: Vec<Vec<usize>> = quantities
        .iter()
        .map(|q| q.times().iter().map(|t| all.binary_search_by(|x| x.total_cmp(t)).unwrap()).collect())
        .collect();
    let needs_z = quantities.iter().any(Quantity::needs_z);

    let replicate = |i: usize| -> Result<Vec<Vec<f64>>> {
        let mut rng = RngStream::new(seed, i as u64);
        let ys = inverse_values_at(&model.sub, &all, cfg, &mut rng)?;
        let zs = if needs_z { fbm_at(model.hurst, model.sigma2, &ys, &mut rng)? } else { Vec::new() };
        Ok(quantities
            .iter()
            .zip(&index)
            .map(|(q, idx)| {
                let y: Vec<f64> = idx.iter().map(|&k| ys[k]).collect();
                let z: Vec<f64> = if needs_z { idx.iter().map(|&k| zs[k]).collect() } else { Vec::new() };
                q.features(&y, &z)
            })
            .collect())
    };
    let results: Vec<Result<Vec<Vec<f64>>>> = (0..n).into_par_iter().map(replicate).collect();

    let failed = results.iter().filter(|r| r.is_err()).count();
    if failed > 0 {
        let first = results.iter().find_map(|r| r.as_ref().err()).map(|e| e.to_string()).unwrap_or_default();
        log::warn!("{failed} of {n} replicates failed: {first}");
        if failed * 1000 > n {
            return Err(Error::ReplicateFailures { failed, total: n, first });
        }
    }
    let ok: Vec<&Vec<Vec<f64>>> = results.iter().filter_map(|r| r.as_ref().ok()).collect();
    let m = ok.len();
    Ok(quantities
        .iter()
        .enumerate()
        .map(|(qi, q)| {
            let rows: Vec<&[f64]> = ok.iter().map(|r| r[qi].as_slice()).collect();
            let (value, psi) = q.aggregate(&rows);
            let sq: Vec<f64> = psi.iter().map(|p| p * p).collect();
            let var = mean(&sq) * m as f64 / (m - 1) as f64;
            McEstimate { mean: value, std_error: (var / m as f64).sqrt(), n_replicates: m }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments;
    use crate::subordinators::SubordinatorSpec;
    use crate::tfbm::{corr_z, cov_z, fbm_cov};

    fn within(e: &McEstimate, exact: f64) -> bool {
        e.z_score(exact).abs() <= 3.0
    }

    #[test]
    fn drift_variance_and_covariance() {
        let m = TfbmModel::new(0.7, 2.0, SubordinatorSpec::DeterministicDrift { mu: 1.0 }).unwrap();
        let cfg = PathConfig::for_horizon(2.0).unwrap();
        let qs = [Quantity::VarZ { t: 1.0 }, Quantity::CovZ { t: 2.0, s: 1.0 }, Quantity::CorrZ { t: 2.0, s: 1.0 }];
        let e = estimate_many(&m, &qs, 20_000, 1, &cfg).unwrap();
        assert!(within(&e[0], 2.0), "{:?}", e[0]);
        assert!(within(&e[1], fbm_cov(0.7, 2.0, 2.0, 1.0).unwrap()), "{:?}", e[1]);
        assert!(within(&e[2], corr_z(&m, 2.0, 1.0).unwrap()), "{:?}", e[2]);
        // Y is deterministic for a drift
        let y = estimate(&m, Quantity::CovY { t: 2.0, s: 1.0 }, 200, 1, &cfg).unwrap();
        assert_eq!((y.mean, y.std_error), (0.0, 0.0));
    }

    #[test]
    fn stable_moments_of_y() {
        let m = TfbmModel::new(0.7, 1.0, SubordinatorSpec::Stable { alpha: 0.7 }).unwrap();
        let cfg = PathConfig::new(1e-3, 2.0).unwrap();
        let qs = [
            Quantity::MomentU { kappa: 1.0, t: 2.0 },
            Quantity::IncrementMomentY { kappa: 2.0, t: 2.0, s: 1.0 },
            Quantity::CovY { t: 2.0, s: 1.0 },
            Quantity::CovZ { t: 2.0, s: 1.0 },
        ];
        let e = estimate_many(&m, &qs, 5_000, 11, &cfg).unwrap();
        assert!(within(&e[0], moments::moment_u(&m.sub, 1.0, 2.0).unwrap()), "{:?}", e[0]);
        assert!(within(&e[1], moments::increment_moment_y(&m.sub, 2.0, 2.0, 1.0).unwrap()), "{:?}", e[1]);
        assert!(within(&e[2], moments::cov_y(&m.sub, 2.0, 1.0).unwrap()), "{:?}", e[2]);
        assert!(within(&e[3], cov_z(&m, 2.0, 1.0).unwrap()), "{:?}", e[3]);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let m = TfbmModel::new(0.6, 1.0, SubordinatorSpec::TemperedStable { alpha: 0.5, a: 1.0 }).unwrap();
        let cfg = PathConfig::new(1e-2, 1.0).unwrap();
        let q = Quantity::VarZ { t: 1.0 };
        let a = estimate(&m, q, 500, 42, &cfg).unwrap();
        let b = estimate(&m, q, 500, 42, &cfg).unwrap();
        assert_eq!(a, b);
        let c = estimate(&m, q, 500, 43, &cfg).unwrap();
        assert_ne!(a.mean, c.mean);
        let many = estimate_many(&m, &[q, Quantity::MomentU { kappa: 1.0, t: 1.0 }], 500, 42, &cfg).unwrap();
        assert_eq!(many[0], a);
    }

    #[test]
    fn rejects_bad_requests() {
        let m = TfbmModel::new(0.6, 1.0, SubordinatorSpec::Stable { alpha: 0.5 }).unwrap();
        let cfg = PathConfig::new(1e-2, 1.0).unwrap();
        assert!(estimate(&m, Quantity::VarZ { t: 1.0 }, 10, 1, &cfg).is_err());
        assert!(estimate(&m, Quantity::VarZ { t: 2.0 }, 100, 1, &cfg).is_err());
        let c = TfbmModel::new(0.6, 1.0, SubordinatorSpec::custom("lin", |s| s).unwrap()).unwrap();
        let r = estimate(&c, Quantity::VarZ { t: 1.0 }, 100, 1, &cfg);
        assert!(matches!(r, Err(Error::ReplicateFailures { failed: 100, .. })));
    }

    #[test]
    fn influence_mean_matches_direct() {
        let rows: Vec<Vec<f64>> = vec![vec![1.0, 2.0], vec![2.0, 4.5], vec![3.0, 5.0], vec![4.0, 9.0]];
        let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        let (cov, psi) = Quantity::CovY { t: 1.0, s: 1.0 }.aggregate(&refs);
        // sample covariance of (1,2,3,4) and (2,4.5,5,9)
        assert!((cov - 10.75 / 3.0).abs() < 1e-14);
        assert_eq!(psi.len(), 4);
    }
}
