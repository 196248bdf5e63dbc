use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftPlanner;

use crate::error::{domain, Error, Result};
use crate::tfbm::fgn_autocov;

/// Eigenvalues this far below zero (relative to the largest) count as roundoff.
const EIGEN_TOL: f64 = 1e-10;

/// Exact fractional Gaussian noise of length n by circulant embedding.
pub fn fgn_path<R: Rng + ?Sized>(hurst: f64, sigma0_2: f64, n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n < 2 || !n.is_power_of_two() {
        return Err(domain("fgn_path", format!("n = {n} must be a power of two >= 2")));
    }
    let m = 2 * n;
    let mut c: Vec<Complex64> = Vec::with_capacity(m);
    for k in 0..=n {
        c.push(Complex64::new(fgn_autocov(hurst, sigma0_2, k as u64)?, 0.0));
    }
    for k in (1..n).rev() {
        c.push(c[k]);
    }
    let fft = FftPlanner::new().plan_fft_forward(m);
    fft.process(&mut c);
    let top = c.iter().map(|z| z.re).fold(0.0, f64::max);
    let mut w: Vec<Complex64> = Vec::with_capacity(m);
    for z in &c {
        let lam = z.re;
        if lam < -EIGEN_TOL * top {
            return Err(Error::EmbeddingNegative { eigenvalue: lam });
        }
        let scale = (lam.max(0.0) / m as f64).sqrt();
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        w.push(Complex64::new(a, b) * scale);
    }
    fft.process(&mut w);
    Ok(w[..n].iter().map(|z| z.re).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::RngStream;

    /// Lag-k products averaged over each path, then over replicates.
    fn lag_stats(h: f64, n: usize, reps: u64, lag: usize) -> (f64, f64) {
        let vals: Vec<f64> = (0..reps)
            .map(|i| {
                let x = fgn_path(h, 1.0, n, &mut RngStream::new(17, i)).unwrap();
                (0..n - lag).map(|j| x[j] * x[j + lag]).sum::<f64>() / (n - lag) as f64
            })
            .collect();
        let m = vals.iter().sum::<f64>() / reps as f64;
        let v = vals.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (reps - 1) as f64;
        (m, (v / reps as f64).sqrt())
    }

    #[test]
    fn autocovariances_match() {
        for &h in &[0.3, 0.5, 0.8] {
            for lag in [0usize, 1, 2, 5, 10] {
                let (m, se) = lag_stats(h, 256, 400, lag);
                let exact = fgn_autocov(h, 1.0, lag as u64).unwrap();
                assert!((m - exact).abs() <= 3.0 * se + 1e-12, "H={h} lag={lag}: {m} ± {se} vs {exact}");
            }
        }
    }

    #[test]
    fn rejects_bad_lengths() {
        let mut r = RngStream::new(1, 0);
        assert!(fgn_path(0.7, 1.0, 100, &mut r).is_err());
        assert!(fgn_path(0.7, 1.0, 1, &mut r).is_err());
        assert_eq!(fgn_path(0.7, 1.0, 64, &mut r).unwrap().len(), 64);
    }
}
