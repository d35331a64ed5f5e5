//! Randomized identities for spectra, distances and indices.

mod common;

use proptest::prelude::*;

use coherence_core::graph::PathMode;
use coherence_core::spectral::{
    biharmonic_index, dense_coherence, distance_matrices, kirchhoff_index, spectrum,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn indices_equal_pairwise_sums(seed in any::<u64>()) {
        let g = common::random_connected_graph(seed, 60);
        let n = g.n_vertices();
        let (omega, theta) = distance_matrices(&g).unwrap();
        let (mut so, mut st) = (0.0, 0.0);
        for i in 0..n {
            for j in (i + 1)..n {
                so += omega[(i, j)];
                st += theta[(i, j)];
            }
        }
        prop_assert!(rel(so, kirchhoff_index(&g).unwrap()) < 1e-8);
        prop_assert!(rel(st, biharmonic_index(&g).unwrap()) < 1e-8);
    }

    #[test]
    fn cauchy_schwarz(seed in any::<u64>()) {
        let g = common::random_connected_graph(seed, 80);
        let (s1, s2) = spectrum(&g, false).unwrap().reciprocal_sums().unwrap();
        let m = (g.n_vertices() - 1) as f64;
        prop_assert!(s2 * m >= s1 * s1 * (1.0 - 1e-12));
    }

    #[test]
    fn resistance_is_a_metric_bounded_by_hops(seed in any::<u64>()) {
        let g = common::random_connected_graph(seed, 30);
        let n = g.n_vertices();
        let (omega, _) = distance_matrices(&g).unwrap();
        let hops = common::floyd_warshall(&g);
        for i in 0..n {
            for j in 0..n {
                prop_assert!((omega[(i, j)] - omega[(j, i)]).abs() < 1e-10);
                if i != j {
                    prop_assert!(omega[(i, j)] > 0.0);
                    prop_assert!(omega[(i, j)] <= hops[i][j] as f64 + 1e-9);
                }
                for k in 0..n {
                    prop_assert!(omega[(i, j)] <= omega[(i, k)] + omega[(k, j)] + 1e-9);
                }
            }
        }
    }

    #[test]
    fn root_biharmonic_is_a_metric(seed in any::<u64>()) {
        let g = common::random_connected_graph(seed, 30);
        let n = g.n_vertices();
        let (_, theta) = distance_matrices(&g).unwrap();
        let root = theta.map(|x| x.max(0.0).sqrt());
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert!(theta[(i, j)] > 0.0);
                }
                for k in 0..n {
                    prop_assert!(root[(i, j)] <= root[(i, k)] + root[(k, j)] + 1e-9);
                }
            }
        }
    }

    #[test]
    fn relabeling_preserves_scalars(seed in any::<u64>()) {
        let g = common::random_connected_graph(seed, 80);
        let h = g.relabel(&common::random_permutation(g.n_vertices(), seed ^ 0xabcd)).unwrap();
        let (a, b) = (dense_coherence(&g).unwrap(), dense_coherence(&h).unwrap());
        prop_assert!(rel(b.h_fo, a.h_fo) < 1e-10);
        prop_assert!(rel(b.h_so, a.h_so) < 1e-10);
        prop_assert!(rel(b.kirchhoff, a.kirchhoff) < 1e-10);
        prop_assert!(rel(b.biharmonic, a.biharmonic) < 1e-10);
    }

    #[test]
    fn mean_path_matches_floyd_warshall(seed in any::<u64>()) {
        let g = common::random_connected_graph(seed, 50);
        let n = g.n_vertices();
        let hops = common::floyd_warshall(&g);
        let total: usize = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| hops[i][j]).sum();
        let expected = total as f64 / (n * (n - 1) / 2) as f64;
        prop_assert!((g.average_shortest_path(PathMode::Exact).unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn eigenvector_and_pseudoinverse_distances_agree() {
    for seed in 0..10 {
        let g = common::random_connected_graph(seed, 40);
        let s = spectrum(&g, true).unwrap();
        let (omega, theta) = distance_matrices(&g).unwrap();
        for i in 0..g.n_vertices() {
            for j in 0..i {
                assert!((s.resistance(i, j).unwrap() - omega[(i, j)]).abs() < 1e-9);
                assert!((s.biharmonic(i, j).unwrap() - theta[(i, j)]).abs() < 1e-8 * theta.amax());
            }
        }
    }
}
