//! Monte Carlo summaries and discrete-law comparisons.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, Discrete};

use crate::error::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Poisson tail mass below which the l1 sum is truncated.
const POISSON_TAIL: f64 = 1e-12;

/// Pairwise (cascade) summation; the result depends only on the order of
/// `xs`, never on how the work was scheduled.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Mean with a 95% normal-approximation interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation over `sqrt(count)`.
    pub stderr: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl SummaryStats {
    pub fn from_values(xs: &[f64]) -> Self {
        let count = xs.len();
        if count == 0 {
            return Self {
                count,
                mean: f64::NAN,
                stderr: f64::NAN,
                ci_lo: f64::NAN,
                ci_hi: f64::NAN,
            };
        }
        let mean = pairwise_sum(xs) / count as f64;
        let stderr = if count > 1 {
            let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
            (pairwise_sum(&dev) / (count - 1) as f64).sqrt() / (count as f64).sqrt()
        } else {
            0.0
        };
        Self {
            count,
            mean,
            stderr,
            ci_lo: mean - Z95 * stderr,
            ci_hi: mean + Z95 * stderr,
        }
    }

    /// Proportion of `true`, with the same normal interval.
    pub fn from_bools(flags: impl IntoIterator<Item = bool>) -> Self {
        let (mut hits, mut total) = (0u64, 0u64);
        for f in flags {
            hits += f as u64;
            total += 1;
        }
        Self::from_successes(hits, total)
    }

    /// Proportion `successes / trials`; the sample variance of the 0/1
    /// values is `N p (1 - p) / (N - 1)`.
    pub fn from_successes(successes: u64, trials: u64) -> Self {
        if trials == 0 {
            return Self::from_values(&[]);
        }
        let n = trials as f64;
        let mean = successes as f64 / n;
        let stderr = if trials > 1 {
            (mean * (1.0 - mean) / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self {
            count: trials as usize,
            mean,
            stderr,
            ci_lo: mean - Z95 * stderr,
            ci_hi: mean + Z95 * stderr,
        }
    }

    pub fn from_counts<I: IntoIterator<Item = T>, T: Into<f64>>(counts: I) -> Self {
        let xs: Vec<f64> = counts.into_iter().map(Into::into).collect();
        Self::from_values(&xs)
    }

    /// `|self.mean - other.mean|` in units of the combined standard error.
    pub fn z_distance(&self, other: &SummaryStats) -> f64 {
        (self.mean - other.mean).abs() / self.stderr.hypot(other.stderr)
    }

    /// Multiply mean, stderr and interval by a constant.
    pub fn scaled(&self, k: f64) -> Self {
        let (lo, hi) = (self.ci_lo * k, self.ci_hi * k);
        Self {
            count: self.count,
            mean: self.mean * k,
            stderr: self.stderr * k.abs(),
            ci_lo: lo.min(hi),
            ci_hi: lo.max(hi),
        }
    }
}

/// Frequencies of the observed values.
pub fn empirical_pmf<T: Copy + Into<u64>>(values: &[T]) -> BTreeMap<usize, f64> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v.into() as usize).or_default() += 1;
    }
    let total = values.len() as f64;
    counts.into_iter().map(|(k, c)| (k, c as f64 / total)).collect()
}

pub fn poisson_pmf(lambda: f64, k: usize) -> f64 {
    if lambda == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * lambda.ln() - lambda - statrs::function::gamma::ln_gamma(k as f64 + 1.0)).exp()
}

/// Empirical law against `Poisson(lambda)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoissonFit {
    pub lambda: f64,
    /// `sum_k |p_k - Poisson(lambda)(k)|`, in `[0, 2]`.
    pub l1_distance: f64,
    pub empirical_pmf: BTreeMap<usize, f64>,
}

/// Exact l1 distance between `pmf` and `Poisson(lambda)`, including the
/// Poisson mass on values never observed. The Poisson sum is cut once its
/// remaining mass is below 1e-12 and that remainder is added in full.
pub fn poisson_fit(pmf: &BTreeMap<usize, f64>, lambda: f64) -> Result<PoissonFit> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "Poisson parameter must be >= 0, got {lambda}"
        )));
    }
    let total: f64 = pmf.values().sum();
    if (total - 1.0).abs() > 1e-12 || pmf.values().any(|&p| p < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "empirical pmf must be a probability vector (sums to {total})"
        )));
    }
    let max_k = pmf.keys().next_back().copied().unwrap_or(0);
    let mut dist = 0.0;
    let mut cum = 0.0;
    let mut k = 0;
    loop {
        let q = poisson_pmf(lambda, k);
        cum += q;
        let p = pmf.get(&k).copied().unwrap_or(0.0);
        dist += (p - q).abs();
        if k >= max_k && 1.0 - cum < POISSON_TAIL {
            break;
        }
        k += 1;
    }
    dist += (1.0 - cum).max(0.0);
    Ok(PoissonFit {
        lambda,
        l1_distance: dist.min(2.0),
        empirical_pmf: pmf.clone(),
    })
}

/// Exact `Binomial(n, p)` probabilities for `0..=n`.
pub fn binomial_pmf(n: u64, p: f64) -> Result<Vec<f64>> {
    let b = Binomial::new(p, n).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok((0..=n).map(|k| b.pmf(k)).collect())
}

/// Pearson chi-square goodness of fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Compares observed counts with expected probabilities over the same
/// categories. Adjacent categories are pooled from the right until every
/// pooled expected count is at least 5.
pub fn chi_square(observed: &[u64], expected_probs: &[f64]) -> Result<ChiSquare> {
    if observed.len() != expected_probs.len() {
        return Err(Error::Dimension {
            expected: expected_probs.len(),
            got: observed.len(),
        });
    }
    let total: u64 = observed.iter().sum();
    let t = total as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut o_acc, mut e_acc) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(expected_probs).rev() {
        o_acc += o as f64;
        e_acc += p * t;
        if e_acc >= 5.0 {
            bins.push((o_acc, e_acc));
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if e_acc > 0.0 || o_acc > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += o_acc;
                last.1 += e_acc;
            }
            None => bins.push((o_acc, e_acc)),
        }
    }
    if bins.len() < 2 {
        return Err(Error::InvalidParameter(
            "chi-square needs at least two categories with expected count >= 5".into(),
        ));
    }
    let statistic: f64 = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = bins.len() - 1;
    let chi = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: chi.sf(statistic),
    })
}

/// Two-sided Kolmogorov-Smirnov statistic of a sample against a CDF.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i as f64 + 1.0) / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the KS statistic for `n` samples.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.627_61 / (n as f64).sqrt()
}
