//! Laplacian-spectrum evaluation of coherence, Kirchhoff and biharmonic
//! indices, and pairwise resistance and biharmonic distances.
//!
//! For a connected graph with Laplacian eigenvalues `0 = l_1 < l_2 <= ... <= l_N`:
//!
//! ```text
//! H_FO = 1/(2N) sum_{i>=2} 1/l_i       R(G) = N sum_{i>=2} 1/l_i
//! H_SO = 1/(2N) sum_{i>=2} 1/l_i^2     B(G) = N sum_{i>=2} 1/l_i^2
//! ```

mod estimate;

pub use estimate::{coherence_estimate, EstimateConfig};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph [`spectrum`] will decompose densely.
pub const DEFAULT_DENSE_THRESHOLD: usize = 5_000;

/// Relative cutoff below which an eigenvalue counts as zero.
pub const ZERO_EIGENVALUE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending Laplacian eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns; column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: Option<DMatrix<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "dense-spectrum")]
    DenseSpectrum,
    #[serde(rename = "stochastic-estimate")]
    StochasticEstimate,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::DenseSpectrum => "dense-spectrum",
            Method::StochasticEstimate => "stochastic-estimate",
        })
    }
}

/// Standard errors attached to a stochastic estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Uncertainty {
    pub h_fo_std_error: f64,
    pub h_so_std_error: f64,
    pub probes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub h_fo: f64,
    pub h_so: f64,
    pub kirchhoff: f64,
    pub biharmonic: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub uncertainty: Option<Uncertainty>,
}

pub fn spectrum(g: &Graph, want_vectors: bool) -> Result<Spectrum> {
    spectrum_with_threshold(g, want_vectors, DEFAULT_DENSE_THRESHOLD)
}

pub fn spectrum_with_threshold(
    g: &Graph,
    want_vectors: bool,
    threshold: usize,
) -> Result<Spectrum> {
    let n = g.n_vertices();
    if n > threshold {
        return Err(Error::TooLargeForDense {
            n_vertices: n,
            threshold,
        });
    }
    let l = g.laplacian().to_dense();
    if !want_vectors {
        let mut eigenvalues: Vec<f64> = l.symmetric_eigenvalues().iter().copied().collect();
        eigenvalues.sort_by(f64::total_cmp);
        return Ok(Spectrum {
            eigenvalues,
            eigenvectors: None,
        });
    }
    let eig = l.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, order[k])]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: Some(eigenvectors),
    })
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `1e-9 * max(1, l_N)`.
    pub fn zero_threshold(&self) -> f64 {
        let top = self.eigenvalues.last().copied().unwrap_or(0.0);
        ZERO_EIGENVALUE_TOLERANCE * top.max(1.0)
    }

    pub fn zero_modes(&self) -> usize {
        let thr = self.zero_threshold();
        self.eigenvalues.iter().filter(|&&l| l.abs() < thr).count()
    }

    fn require_connected(&self) -> Result<()> {
        match self.zero_modes() {
            1 => Ok(()),
            zero_modes => Err(Error::Disconnected { zero_modes }),
        }
    }

    /// `(sum 1/l_i, sum 1/l_i^2)` over the nonzero eigenvalues.
    pub fn reciprocal_sums(&self) -> Result<(f64, f64)> {
        self.require_connected()?;
        Ok(self.eigenvalues[1..]
            .iter()
            .fold((0.0, 0.0), |(s, t), &l| (s + 1.0 / l, t + 1.0 / (l * l))))
    }

    fn weighted_distance(&self, i: usize, j: usize, power: i32) -> Result<f64> {
        self.require_connected()?;
        let vectors = self.eigenvectors.as_ref().ok_or_else(|| {
            Error::InvalidConfig("distance needs a spectrum computed with eigenvectors".into())
        })?;
        let n = self.len();
        for v in [i, j] {
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n_vertices: n,
                });
            }
        }
        if i == j {
            return Ok(0.0);
        }
        Ok((1..n)
            .map(|k| {
                let d = vectors[(i, k)] - vectors[(j, k)];
                d * d / self.eigenvalues[k].powi(power)
            })
            .sum())
    }

    /// `sum_{k>=2} (u_ki - u_kj)^2 / l_k`.
    pub fn resistance(&self, i: usize, j: usize) -> Result<f64> {
        self.weighted_distance(i, j, 1)
    }

    /// `sum_{k>=2} (u_ki - u_kj)^2 / l_k^2`.
    pub fn biharmonic(&self, i: usize, j: usize) -> Result<f64> {
        self.weighted_distance(i, j, 2)
    }
}

pub fn coherence_from_spectrum(s: &Spectrum) -> Result<CoherenceReport> {
    let (inv, inv_sq) = s.reciprocal_sums()?;
    let n = s.len() as f64;
    // trace identity: sum of eigenvalues = sum of degrees = 2M
    let n_edges = (s.eigenvalues.iter().sum::<f64>() / 2.0).round() as usize;
    Ok(CoherenceReport {
        n_vertices: s.len(),
        n_edges,
        h_fo: inv / (2.0 * n),
        h_so: inv_sq / (2.0 * n),
        kirchhoff: n * inv,
        biharmonic: n * inv_sq,
        method: Method::DenseSpectrum,
        uncertainty: None,
    })
}

/// Dense-spectrum coherence of a graph.
pub fn dense_coherence(g: &Graph) -> Result<CoherenceReport> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut report = coherence_from_spectrum(&spectrum(g, false)?)?;
    report.n_edges = g.n_edges();
    Ok(report)
}

pub fn resistance_distance(g: &Graph, i: usize, j: usize) -> Result<f64> {
    spectrum(g, true)?.resistance(i, j)
}

pub fn biharmonic_distance(g: &Graph, i: usize, j: usize) -> Result<f64> {
    spectrum(g, true)?.biharmonic(i, j)
}

pub fn kirchhoff_index(g: &Graph) -> Result<f64> {
    let s = spectrum(g, false)?;
    Ok(s.len() as f64 * s.reciprocal_sums()?.0)
}

pub fn biharmonic_index(g: &Graph) -> Result<f64> {
    let s = spectrum(g, false)?;
    Ok(s.len() as f64 * s.reciprocal_sums()?.1)
}

/// Moore-Penrose pseudoinverse of the Laplacian as `(L + J/N)^-1 - J/N`.
pub fn pseudoinverse(g: &Graph) -> Result<DMatrix<f64>> {
    let n = g.n_vertices();
    if n > DEFAULT_DENSE_THRESHOLD {
        return Err(Error::TooLargeForDense {
            n_vertices: n,
            threshold: DEFAULT_DENSE_THRESHOLD,
        });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let shift = 1.0 / n as f64;
    let regularized = g.laplacian().to_dense().add_scalar(shift);
    let inverse = regularized
        .cholesky()
        .ok_or_else(|| {
            Error::InvalidConfig("regularized Laplacian is not positive definite".into())
        })?
        .inverse();
    Ok(inverse.add_scalar(-shift))
}

/// All-pairs resistance and biharmonic distances from the pseudoinverse `P`:
/// `Omega_ij = P_ii + P_jj - 2 P_ij`, and the same with `P^2` for `Theta`.
pub fn distance_matrices(g: &Graph) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let p = pseudoinverse(g)?;
    let p2 = &p * &p;
    let from_gram = |m: &DMatrix<f64>| {
        DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
            m[(i, i)] + m[(j, j)] - 2.0 * m[(i, j)]
        })
    };
    Ok((from_gram(&p), from_gram(&p2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(edges).unwrap()
    }

    fn k3() -> Graph {
        graph(&[(0, 1), (1, 2), (2, 0)])
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn small_spectra() {
        let check = |g: Graph, expected: &[f64]| {
            let s = spectrum(&g, false).unwrap();
            assert_eq!(s.len(), expected.len());
            for (a, b) in s.eigenvalues.iter().zip(expected) {
                assert!((a - b).abs() < 1e-12, "{:?} vs {expected:?}", s.eigenvalues);
            }
        };
        check(k3(), &[0.0, 3.0, 3.0]);
        check(graph(&[(0, 1)]), &[0.0, 2.0]);
        check(graph(&[(0, 1), (1, 2)]), &[0.0, 1.0, 3.0]);
    }

    #[test]
    fn coherence_examples() {
        let cases: [(Graph, f64, f64); 3] = [
            (k3(), 1.0 / 9.0, 1.0 / 27.0),
            (graph(&[(0, 1)]), 1.0 / 8.0, 1.0 / 16.0),
            (graph(&[(0, 1), (1, 2)]), 2.0 / 9.0, 5.0 / 27.0),
        ];
        for (g, fo, so) in cases {
            let r = dense_coherence(&g).unwrap();
            assert!(
                close(r.h_fo, fo, 1e-12) && close(r.h_so, so, 1e-12),
                "{r:?}"
            );
            assert_eq!(r.n_edges, g.n_edges());
        }
        let r = coherence_from_spectrum(&spectrum(&k3(), false).unwrap()).unwrap();
        assert!(close(r.kirchhoff, 2.0, 1e-12));
        assert!(close(r.biharmonic, 2.0 / 3.0, 1e-12));
        assert_eq!(r.n_edges, 3);
        assert_eq!(r.method, Method::DenseSpectrum);
    }

    #[test]
    fn disconnected_spectrum_is_rejected() {
        let g = graph(&[(0, 1), (2, 3)]);
        let err = coherence_from_spectrum(&spectrum(&g, false).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Disconnected { zero_modes: 2 }));
        assert!(matches!(pseudoinverse(&g), Err(Error::NotConnected)));
    }

    #[test]
    fn distance_examples() {
        let k3 = k3();
        assert!(close(
            resistance_distance(&k3, 0, 2).unwrap(),
            2.0 / 3.0,
            1e-12
        ));
        assert!(close(
            biharmonic_distance(&k3, 1, 2).unwrap(),
            2.0 / 9.0,
            1e-12
        ));
        let p3 = graph(&[(0, 1), (1, 2)]);
        assert!(close(resistance_distance(&p3, 0, 2).unwrap(), 2.0, 1e-12));
        let p2 = graph(&[(0, 1)]);
        assert!(close(biharmonic_distance(&p2, 0, 1).unwrap(), 0.5, 1e-12));
        assert_eq!(resistance_distance(&p3, 1, 1).unwrap(), 0.0);
        assert!(matches!(
            resistance_distance(&p3, 0, 7),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn index_examples() {
        let p3 = graph(&[(0, 1), (1, 2)]);
        assert!(close(kirchhoff_index(&p3).unwrap(), 4.0, 1e-12));
        assert!(close(kirchhoff_index(&k3()).unwrap(), 2.0, 1e-12));
        assert!(close(biharmonic_index(&k3()).unwrap(), 2.0 / 3.0, 1e-12));
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let g = graph(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4)]);
        let s = spectrum(&g, true).unwrap();
        let u = s.eigenvectors.as_ref().unwrap();
        let gram = u.transpose() * u;
        let residual = (gram - DMatrix::identity(5, 5)).abs().max();
        assert!(residual < 1e-8);
        // column k is an eigenvector for eigenvalue k
        let l = g.laplacian().to_dense();
        for k in 0..5 {
            let col = u.column(k);
            let diff = (&l * col - col * s.eigenvalues[k]).abs().max();
            assert!(diff < 1e-10);
        }
    }

    #[test]
    fn dense_threshold_is_enforced() {
        let edges: Vec<_> = (1..20).map(|i| (i - 1, i)).collect();
        let g = graph(&edges);
        assert!(matches!(
            spectrum_with_threshold(&g, false, 10),
            Err(Error::TooLargeForDense {
                n_vertices: 20,
                threshold: 10
            })
        ));
    }
}
