//! Monte-Carlo estimation of coherence by Euler-Maruyama integration of the
//! noisy consensus dynamics.
//!
//! First order: `dx = -L x dt + dW`.
//! Second order: `dx1 = x2 dt`, `dx2 = -L (x1 + x2) dt + dW`.
//!
//! The estimate is the post-burn-in time average of `(1/N) sum_i (x_i - mean)^2`
//! (of `x1` for the second-order system), averaged over independent trials.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Order;
use crate::graph::{Graph, LaplacianMatrix};

/// `dt` may not exceed this multiple of `1 / lambda_max`.
pub const STABILITY_FACTOR: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub dt: f64,
    pub t_total: f64,
    /// Fraction of the horizon discarded before averaging.
    pub burn_in: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_total: 200.0,
            burn_in: 0.5,
            trials: 50,
            seed: 0,
        }
    }
}

impl SimConfig {
    pub fn total_steps(&self) -> usize {
        (self.t_total / self.dt).round() as usize
    }

    pub fn burn_in_steps(&self) -> usize {
        (self.burn_in * self.total_steps() as f64).floor() as usize
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt must be positive");
        }
        if !(self.t_total > 0.0 && self.t_total.is_finite()) {
            return bad("t_total must be positive");
        }
        if !(0.0..1.0).contains(&self.burn_in) {
            return bad("burn_in must lie in [0, 1)");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.burn_in_steps() >= self.total_steps() {
            return bad("no integration steps remain after burn-in");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimEstimate {
    pub value: f64,
    /// Standard error of the trial mean; 0 for a single trial.
    pub std_error: f64,
    pub trials_used: usize,
    /// Integration steps per trial, burn-in included.
    pub steps_used: usize,
}

/// Largest Laplacian eigenvalue by power iteration with a Rayleigh quotient.
pub fn lambda_max(g: &Graph) -> f64 {
    let n = g.n_vertices();
    if n < 2 {
        return 0.0;
    }
    let l = g.laplacian();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let mut y = vec![0.0; n];
    let mut estimate = 0.0;
    for _ in 0..10_000 {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
        l.apply(&x, &mut y);
        let next: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        std::mem::swap(&mut x, &mut y);
        if (next - estimate).abs() <= 1e-12 * next.abs() {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// `STABILITY_FACTOR / lambda_max`.
pub fn stable_dt(g: &Graph) -> f64 {
    STABILITY_FACTOR / lambda_max(g)
}

pub fn simulate(g: &Graph, order: Order, cfg: &SimConfig) -> Result<SimEstimate> {
    cfg.validate()?;
    if g.n_vertices() < 2 {
        return Err(Error::InvalidConfig(
            "simulation needs at least two vertices".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let suggested = stable_dt(g);
    if cfg.dt > suggested {
        return Err(Error::UnstableTimeStep {
            dt: cfg.dt,
            suggested,
        });
    }
    let l = g.laplacian();
    let values: Vec<f64> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial as u64);
            match order {
                Order::First => first_order_trial(&l, cfg, &mut rng),
                Order::Second => second_order_trial(&l, cfg, &mut rng),
            }
        })
        .collect();

    let k = values.len() as f64;
    let value = values.iter().sum::<f64>() / k;
    let std_error = if values.len() > 1 {
        let var = values.iter().map(|v| (v - value).powi(2)).sum::<f64>() / (k - 1.0);
        (var / k).sqrt()
    } else {
        0.0
    };
    Ok(SimEstimate {
        value,
        std_error,
        trials_used: cfg.trials,
        steps_used: cfg.total_steps(),
    })
}

pub fn simulate_first_order(g: &Graph, cfg: &SimConfig) -> Result<SimEstimate> {
    simulate(g, Order::First, cfg)
}

pub fn simulate_second_order(g: &Graph, cfg: &SimConfig) -> Result<SimEstimate> {
    simulate(g, Order::Second, cfg)
}

fn deviation_variance(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n
}

fn first_order_trial(l: &LaplacianMatrix<'_>, cfg: &SimConfig, rng: &mut ChaCha8Rng) -> f64 {
    let n = l.order();
    let (steps, burn) = (cfg.total_steps(), cfg.burn_in_steps());
    let sqrt_dt = cfg.dt.sqrt();
    let mut x = vec![0.0; n];
    let mut lx = vec![0.0; n];
    let mut acc = 0.0;
    for step in 0..steps {
        l.apply(&x, &mut lx);
        for i in 0..n {
            let xi: f64 = StandardNormal.sample(rng);
            x[i] += -cfg.dt * lx[i] + sqrt_dt * xi;
        }
        if step >= burn {
            acc += deviation_variance(&x);
        }
    }
    acc / (steps - burn) as f64
}

fn second_order_trial(l: &LaplacianMatrix<'_>, cfg: &SimConfig, rng: &mut ChaCha8Rng) -> f64 {
    let n = l.order();
    let (steps, burn) = (cfg.total_steps(), cfg.burn_in_steps());
    let sqrt_dt = cfg.dt.sqrt();
    let mut x1 = vec![0.0; n];
    let mut x2 = vec![0.0; n];
    let mut sum = vec![0.0; n];
    let mut force = vec![0.0; n];
    let mut acc = 0.0;
    for step in 0..steps {
        for i in 0..n {
            sum[i] = x1[i] + x2[i];
        }
        l.apply(&sum, &mut force);
        for i in 0..n {
            let xi: f64 = StandardNormal.sample(rng);
            x1[i] += cfg.dt * x2[i];
            x2[i] += -cfg.dt * force[i] + sqrt_dt * xi;
        }
        if step >= burn {
            acc += deviation_variance(&x1);
        }
    }
    acc / (steps - burn) as f64
}
