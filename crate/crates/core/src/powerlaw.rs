//! Discrete power-law fitting of degree sequences.
//!
//! The exponent is the maximum-likelihood estimate for
//! `P(k) = k^-gamma / zeta(gamma, xmin)` on the tail `k >= xmin`; `xmin` is the
//! candidate minimizing the Kolmogorov-Smirnov distance between the empirical
//! and fitted tail CDFs.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawConfig {
    /// Smallest tail size an `xmin` candidate may leave.
    pub min_tail: usize,
    /// Search interval for the exponent.
    pub gamma_bounds: (f64, f64),
    pub tolerance: f64,
}

impl Default for PowerLawConfig {
    fn default() -> Self {
        Self {
            min_tail: 10,
            gamma_bounds: (1.0001, 10.0),
            tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub xmin: usize,
    pub ks_distance: f64,
    pub n_tail: usize,
}

/// Hurwitz zeta `sum_{k>=0} (a + k)^-s` for `s > 1`, `a > 0`, by
/// Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    const DIRECT_TERMS: usize = 10;
    // B_{2j} / (2j)!
    const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30_240.0,
        -1.0 / 1_209_600.0,
        1.0 / 47_900_160.0,
        -691.0 / 1_307_674_368_000.0,
        1.0 / 74_724_249_600.0,
    ];

    let mut sum: f64 = (0..DIRECT_TERMS).map(|k| (a + k as f64).powf(-s)).sum();
    let x = a + DIRECT_TERMS as f64;
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);

    // rising factorial s (s+1) ... (s+2j-2) times x^{-s-2j+1}
    let mut rising = s * x.powf(-s - 1.0);
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += coeff * rising;
        let m = 2.0 * (j as f64 + 1.0);
        rising *= (s + m - 1.0) * (s + m) / (x * x);
    }
    sum
}

pub fn powerlaw_exponent(degrees: &[usize], config: &PowerLawConfig) -> Result<PowerLawFit> {
    let mut values: Vec<usize> = degrees.iter().copied().filter(|&d| d > 0).collect();
    values.sort_unstable();
    if values.len() < config.min_tail {
        return Err(Error::InsufficientData(format!(
            "power-law fit needs at least {} positive degrees, got {}",
            config.min_tail,
            values.len()
        )));
    }
    if values.first() == values.last() {
        return Err(Error::DegenerateDegrees);
    }

    // distinct values with their first index in the sorted list
    let mut distinct: Vec<(usize, usize)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if distinct.last().is_none_or(|&(last, _)| last != v) {
            distinct.push((v, i));
        }
    }
    // suffix sums of ln k for the log-likelihood
    let mut log_suffix = vec![0.0; values.len() + 1];
    for i in (0..values.len()).rev() {
        log_suffix[i] = log_suffix[i + 1] + (values[i] as f64).ln();
    }

    let mut best: Option<PowerLawFit> = None;
    // the largest distinct value cannot be xmin: its tail has a single value
    for (c, &(xmin, start)) in distinct.iter().enumerate().take(distinct.len() - 1) {
        let n_tail = values.len() - start;
        if n_tail < config.min_tail {
            break;
        }
        let log_sum = log_suffix[start];
        let gamma = maximize_likelihood(xmin, n_tail, log_sum, config);
        let ks = ks_distance(&values[start..], &distinct[c..], start, gamma, xmin);
        if best.is_none_or(|b| ks < b.ks_distance) {
            best = Some(PowerLawFit {
                gamma,
                xmin,
                ks_distance: ks,
                n_tail,
            });
        }
    }
    best.ok_or_else(|| {
        Error::InsufficientData(format!(
            "no xmin candidate leaves {} samples with two distinct values",
            config.min_tail
        ))
    })
}

fn log_likelihood(gamma: f64, xmin: usize, n_tail: usize, log_sum: f64) -> f64 {
    -(n_tail as f64) * hurwitz_zeta(gamma, xmin as f64).ln() - gamma * log_sum
}

/// Golden-section search; the log-likelihood is concave in the exponent.
fn maximize_likelihood(xmin: usize, n_tail: usize, log_sum: f64, config: &PowerLawConfig) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = config.gamma_bounds;
    let f = |g: f64| log_likelihood(g, xmin, n_tail, log_sum);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > config.tolerance {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

fn ks_distance(
    tail: &[usize],
    distinct: &[(usize, usize)],
    offset: usize,
    gamma: f64,
    xmin: usize,
) -> f64 {
    let n = tail.len() as f64;
    let norm = hurwitz_zeta(gamma, xmin as f64);
    let mut worst: f64 = 0.0;
    for (k, &(x, _)) in distinct.iter().enumerate() {
        // number of tail samples <= x
        let at_or_below = distinct.get(k + 1).map_or(tail.len(), |&(_, i)| i - offset);
        let empirical = at_or_below as f64 / n;
        let model = 1.0 - hurwitz_zeta(gamma, x as f64 + 1.0) / norm;
        worst = worst.max((empirical - model).abs());
    }
    worst
}
