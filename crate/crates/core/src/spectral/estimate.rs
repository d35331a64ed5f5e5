//! Hutchinson trace estimation of `tr(L^+)` and `tr((L^+)^2)` for graphs too
//! large for a dense eigensolve.
//!
//! Each probe is a Rademacher vector projected onto the complement of the
//! all-ones vector; `L y = z` is solved by Jacobi-preconditioned conjugate
//! gradients. Then `z'y` estimates `tr(L^+)` and `y'y` estimates `tr((L^+)^2)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CoherenceReport, Method, Uncertainty};
use crate::error::{Error, Result};
use crate::graph::{Graph, LaplacianMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateConfig {
    pub probes: usize,
    pub seed: u64,
    /// Relative residual `||L y - z|| / ||z||` at which a solve stops.
    pub tolerance: f64,
    /// Defaults to `10 N` when unset.
    pub max_iterations: Option<usize>,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        Self {
            probes: 200,
            seed: 0,
            tolerance: 1e-10,
            max_iterations: None,
        }
    }
}

pub fn coherence_estimate(g: &Graph, config: &EstimateConfig) -> Result<CoherenceReport> {
    let n = g.n_vertices();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if config.probes < 2 {
        return Err(Error::InvalidConfig(
            "at least two probes are required".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let laplacian = g.laplacian();
    let inv_diag: Vec<f64> = laplacian.diagonal().iter().map(|&d| 1.0 / d).collect();
    let max_iterations = config.max_iterations.unwrap_or(10 * n.max(10));

    let samples: Vec<(f64, f64)> = (0..config.probes)
        .into_par_iter()
        .map(|probe| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(probe as u64);
            let mut z: Vec<f64> = (0..n)
                .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect();
            project_mean_zero(&mut z);
            let y = solve(&laplacian, &z, &inv_diag, config.tolerance, max_iterations)?;
            Ok((dot(&z, &y), dot(&y, &y)))
        })
        .collect::<Result<_>>()?;

    let (trace, trace_sq) = mean_and_std_error(&samples);
    let nf = n as f64;
    Ok(CoherenceReport {
        n_vertices: n,
        n_edges: g.n_edges(),
        h_fo: trace.0 / (2.0 * nf),
        h_so: trace_sq.0 / (2.0 * nf),
        kirchhoff: nf * trace.0,
        biharmonic: nf * trace_sq.0,
        method: Method::StochasticEstimate,
        uncertainty: Some(Uncertainty {
            h_fo_std_error: trace.1 / (2.0 * nf),
            h_so_std_error: trace_sq.1 / (2.0 * nf),
            probes: config.probes,
        }),
    })
}

fn mean_and_std_error(samples: &[(f64, f64)]) -> ((f64, f64), (f64, f64)) {
    let k = samples.len() as f64;
    let stats = |pick: fn(&(f64, f64)) -> f64| {
        let mean = samples.iter().map(pick).sum::<f64>() / k;
        let var = samples
            .iter()
            .map(|s| (pick(s) - mean).powi(2))
            .sum::<f64>()
            / (k - 1.0);
        (mean, (var / k).sqrt())
    };
    (stats(|s| s.0), stats(|s| s.1))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn project_mean_zero(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

/// Preconditioned CG for `L y = b` with `b` orthogonal to the all-ones vector.
/// The returned `y` has mean zero.
fn solve(
    l: &LaplacianMatrix<'_>,
    b: &[f64],
    inv_diag: &[f64],
    tolerance: f64,
    max_iterations: usize,
) -> Result<Vec<f64>> {
    let n = b.len();
    let b_norm = dot(b, b).sqrt();
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok(x);
    }
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(inv_diag).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let mut rz = dot(&r, &z);
    let mut residual = 1.0;
    for _ in 0..max_iterations {
        l.apply(&p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        project_mean_zero(&mut r);
        residual = dot(&r, &r).sqrt() / b_norm;
        if residual <= tolerance {
            project_mean_zero(&mut x);
            return Ok(x);
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::SolverDiverged {
        iterations: max_iterations,
        residual,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::psfw_iterative;
    use crate::spectral::{dense_coherence, pseudoinverse};

    #[test]
    fn solve_matches_pseudoinverse() {
        let g = psfw_iterative(3).unwrap().graph;
        let n = g.n_vertices();
        let l = g.laplacian();
        let inv_diag: Vec<f64> = l.diagonal().iter().map(|&d| 1.0 / d).collect();
        let mut b: Vec<f64> = (0..n).map(|i| ((i * 7) % 5) as f64 - 2.0).collect();
        project_mean_zero(&mut b);
        let y = solve(&l, &b, &inv_diag, 1e-12, 1000).unwrap();
        let p = pseudoinverse(&g).unwrap();
        let expected = &p * nalgebra::DVector::from_vec(b);
        for i in 0..n {
            assert!((y[i] - expected[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn estimate_agrees_with_dense() {
        let g = psfw_iterative(4).unwrap().graph;
        let dense = dense_coherence(&g).unwrap();
        let est = coherence_estimate(
            &g,
            &EstimateConfig {
                probes: 400,
                ..Default::default()
            },
        )
        .unwrap();
        let u = est.uncertainty.unwrap();
        assert!((est.h_fo - dense.h_fo).abs() <= 3.0 * u.h_fo_std_error);
        assert!((est.h_so - dense.h_so).abs() <= 3.0 * u.h_so_std_error);
        assert_eq!(est.method, Method::StochasticEstimate);
    }

    #[test]
    fn estimate_is_deterministic() {
        let g = psfw_iterative(3).unwrap().graph;
        let cfg = EstimateConfig {
            probes: 50,
            seed: 9,
            ..Default::default()
        };
        assert_eq!(
            coherence_estimate(&g, &cfg).unwrap(),
            coherence_estimate(&g, &cfg).unwrap()
        );
    }

    #[test]
    fn non_convergence_is_reported() {
        let g = psfw_iterative(4).unwrap().graph;
        let cfg = EstimateConfig {
            probes: 4,
            max_iterations: Some(1),
            ..Default::default()
        };
        assert!(matches!(
            coherence_estimate(&g, &cfg),
            Err(Error::SolverDiverged { .. })
        ));
    }
}
