//! Empirical distributions and goodness-of-fit statistics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::chi_square_quantile;

/// Counts over half-open bins `[e_i, e_{i+1})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
    /// Number of samples offered, including out-of-range and NaN values.
    pub total: u64,
}

impl Histogram {
    pub fn new(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::arg("a histogram needs at least two edges"));
        }
        if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::arg("histogram edges must be finite and strictly ascending"));
        }
        let bins = edges.len() - 1;
        Ok(Self { edges, counts: vec![0; bins], underflow: 0, overflow: 0, total: 0 })
    }

    pub fn add(&mut self, x: f64) {
        self.total += 1;
        if x < self.edges[0] {
            self.underflow += 1;
        } else if x >= *self.edges.last().expect("two edges") {
            self.overflow += 1;
        } else if x.is_nan() {
            // Counted in the total only.
        } else {
            let bin = self.edges.partition_point(|&e| e <= x) - 1;
            self.counts[bin] += 1;
        }
    }

    /// Adds another histogram with identical edges.
    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::arg("cannot merge histograms with different edges"));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.underflow += other.underflow;
        self.overflow += other.overflow;
        self.total += other.total;
        Ok(())
    }

    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    /// Count divided by `total × width` for each bin.
    pub fn densities(&self) -> Vec<f64> {
        let total = self.total.max(1) as f64;
        self.counts.iter().zip(self.edges.windows(2)).map(|(&c, w)| c as f64 / (total * (w[1] - w[0]))).collect()
    }
}

pub fn build_histogram(samples: &[f64], edges: &[f64]) -> Result<Histogram> {
    let mut h = Histogram::new(edges.to_vec())?;
    for &x in samples {
        h.add(x);
    }
    Ok(h)
}

/// Empirical law of a nonnegative count, e.g. gap events in one window.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CountTally {
    pub frequencies: BTreeMap<u64, u64>,
    pub trials: u64,
}

impl CountTally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = u64>) -> Self {
        let mut t = Self::new();
        for c in counts {
            t.record(c);
        }
        t
    }

    pub fn record(&mut self, count: u64) {
        *self.frequencies.entry(count).or_insert(0) += 1;
        self.trials += 1;
    }

    pub fn merge(&mut self, other: &CountTally) {
        for (&c, &f) in &other.frequencies {
            *self.frequencies.entry(c).or_insert(0) += f;
        }
        self.trials += other.trials;
    }

    pub fn mean(&self) -> f64 {
        factorial_moment(self, 1)
    }
}

/// `E[N (N−1) ⋯ (N−k+1)]` under the tally.
pub fn factorial_moment(tally: &CountTally, k: usize) -> f64 {
    if tally.trials == 0 {
        return f64::NAN;
    }
    let sum: f64 = tally
        .frequencies
        .iter()
        .map(|(&c, &f)| {
            let falling: f64 = (0..k as u64).map(|i| c.saturating_sub(i) as f64).product();
            falling * f as f64
        })
        .sum();
    sum / tally.trials as f64
}

/// Kolmogorov–Smirnov distance between the sample and `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::arg("no samples"));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::arg("samples contain NaN"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs()).max((f - i as f64 / n).abs());
    }
    Ok(d)
}

/// Result of a Pearson χ² test against a Poisson law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
}

impl ChiSquare {
    /// Upper `p` quantile of `χ²(dof)`, e.g. `p = 0.99`.
    pub fn critical_value(&self, p: f64) -> f64 {
        chi_square_quantile(self.dof, p)
    }
}

/// `P(N = k)` for `N ~ Poisson(λ)`.
pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    (k as f64 * lambda.ln() - lambda - crate::special::ln_gamma(k as f64 + 1.0)).exp()
}

/// Pearson χ² of the tally against `Poisson(λ)`.
///
/// Categories are `0, 1, …, K−1` and `≥ K`, where `K` is the largest
/// observed count (at least 1); trailing categories are merged until the
/// last expected count is at least 5.
pub fn chi2_poisson(tally: &CountTally, lambda: f64) -> Result<ChiSquare> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::arg(format!("lambda must be positive, got {lambda}")));
    }
    if tally.trials < 100 {
        return Err(Error::arg(format!("need at least 100 trials, got {}", tally.trials)));
    }
    let trials = tally.trials as f64;
    let top = tally.frequencies.keys().next_back().copied().unwrap_or(0).max(1);
    let mut expected: Vec<f64> = (0..top).map(|k| poisson_pmf(lambda, k) * trials).collect();
    let head: f64 = expected.iter().sum();
    expected.push((trials - head).max(0.0));
    while expected.len() > 1 && *expected.last().expect("nonempty") < 5.0 {
        let last = expected.pop().expect("nonempty");
        *expected.last_mut().expect("nonempty") += last;
    }
    if expected.len() < 2 {
        return Err(Error::Degenerate(format!(
            "all Poisson({lambda}) mass falls in one bin for {} trials",
            tally.trials
        )));
    }
    let last = expected.len() - 1;
    let mut observed = vec![0.0; expected.len()];
    for (&c, &f) in &tally.frequencies {
        observed[(c as usize).min(last)] += f as f64;
    }
    let statistic = observed.iter().zip(&expected).map(|(o, e)| (o - e) * (o - e) / e).sum();
    Ok(ChiSquare { statistic, dof: expected.len() - 1 })
}
