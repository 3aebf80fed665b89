//! Empirical-distribution utilities shared by the simulators and the
//! verification suite.

use crate::error::{Error, Result};

/// Moments, quantiles and the sorted sample of one Monte Carlo batch.
#[derive(Debug, Clone)]
pub struct SampleSummary {
    count: usize,
    mean: f64,
    variance: f64,
    sorted: Vec<f64>,
}

impl SampleSummary {
    /// Sorts the sample once; everything else derives from the sorted view.
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyRequest("sample summary of no samples"));
        }
        samples.sort_by(|a, b| a.total_cmp(b));
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let variance = if samples.len() > 1 {
            samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Ok(Self {
            count: samples.len(),
            mean,
            variance,
            sorted: samples,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        (self.variance / self.count as f64).sqrt()
    }

    /// Linear-interpolation quantile, q in [0, 1].
    pub fn quantile(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, 1.0);
        let pos = q * (self.count - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        let frac = pos - lo as f64;
        self.sorted[lo] * (1.0 - frac) + self.sorted[hi] * frac
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.count - 1]
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }
}

/// Two-sided Kolmogorov-Smirnov statistic of a sample against a CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyRequest("KS statistic of no samples"));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let above = (i as f64 + 1.0) / n - f;
        let below = f - i as f64 / n;
        d = d.max(above).max(below);
    }
    Ok(d)
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyRequest("two-sample KS of an empty sample"));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|u, v| u.total_cmp(v));
    ys.sort_by(|u, v| u.total_cmp(v));
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0_f64;
    while i < xs.len() && j < ys.len() {
        let t = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= t {
            i += 1;
        }
        while j < ys.len() && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// One point of an empirical survival curve.
#[derive(Debug, Clone, Copy)]
pub struct SurvivalPoint {
    pub x: f64,
    pub survival: f64,
    pub std_error: f64,
}

/// Empirical survival P(X > x) on a grid, with Wilson-score standard errors.
///
/// The error is the half-width of the Wilson interval at one sigma, which
/// stays meaningful when the count of survivors is 0 or n.
pub fn empirical_survival(samples: &[f64], grid: &[f64]) -> Result<Vec<SurvivalPoint>> {
    if samples.is_empty() {
        return Err(Error::EmptyRequest("survival curve of no samples"));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    let out = grid
        .iter()
        .map(|&x| {
            // survivors strictly above x
            let idx = xs.partition_point(|&v| v <= x);
            let k = (xs.len() - idx) as f64;
            let p = k / n;
            let denom = 1.0 + 1.0 / n;
            let half = ((p * (1.0 - p) / n + 1.0 / (4.0 * n * n)).sqrt()) / denom;
            SurvivalPoint {
                x,
                survival: p,
                std_error: half,
            }
        })
        .collect();
    Ok(out)
}
