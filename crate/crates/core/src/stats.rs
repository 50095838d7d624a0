//! Empirical distributions and Kolmogorov–Smirnov distances.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Sorted sample with its empirical CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("empirical distribution needs at least one sample"));
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::Domain("samples must not be NaN"));
        }
        samples.sort_by(f64::total_cmp);
        Ok(EmpiricalDistribution { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn count(&self) -> usize {
        self.samples.len()
    }

    /// `#{samples <= x} / count`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.samples.len() as f64
    }

    /// Empirical `q`-quantile (lower order statistic).
    pub fn quantile(&self, q: f64) -> f64 {
        let n = self.samples.len();
        let i = libm::ceil(q * n as f64) as usize;
        self.samples[i.clamp(1, n) - 1]
    }

    pub fn ks_distance<F: FnMut(f64) -> Result<f64>>(&self, cdf: F) -> Result<f64> {
        ks_one_sample(&self.samples, cdf)
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// `sup_x |F_n(x) - F(x)|` for sorted draws, checked on both sides of every jump.
pub fn ks_one_sample<F: FnMut(f64) -> Result<f64>>(sorted: &[f64], mut cdf: F) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::Domain("KS distance needs at least one sample"));
    }
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == x {
            j += 1;
        }
        let f = cdf(x)?;
        d = d.max((j as f64 / n - f).abs()).max((f - i as f64 / n).abs());
        i = j;
    }
    Ok(d.min(1.0))
}

/// `sup_x |F_n(x) - G_m(x)|` for two sorted samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("KS distance needs nonempty samples"));
    }
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}
