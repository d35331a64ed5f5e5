//! Undirected simple graphs with dense vertex IDs, their Laplacians, and the
//! descriptive statistics used for real-network tables.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Above this many vertices [`PathMode::auto`] switches to sampled sources.
pub const EXACT_PATH_LIMIT: usize = 10_000;
/// Source count used by [`PathMode::auto`] for large graphs.
pub const DEFAULT_PATH_SOURCES: usize = 1_000;

/// Edges discarded while canonicalizing an input edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DropCounts {
    pub duplicates: usize,
    pub self_loops: usize,
}

/// An immutable undirected simple graph.
///
/// Vertices are `0..n_vertices()`. Neighbor lists are sorted and symmetric,
/// with no self-loops and no repeated entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    n_edges: usize,
}

/// Builds a canonical graph from raw vertex pairs.
///
/// Self-loops and repeated edges (in either orientation) are dropped and
/// counted. With no edges, `declared_vertices` must be given.
pub fn build_graph(
    raw_edges: &[(usize, usize)],
    declared_vertices: Option<usize>,
) -> Result<(Graph, DropCounts)> {
    let required = raw_edges
        .iter()
        .map(|&(u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    let n = match declared_vertices {
        Some(declared) if declared < required => {
            return Err(Error::DeclaredTooSmall { declared, required })
        }
        Some(declared) => declared,
        None if raw_edges.is_empty() => return Err(Error::EmptyGraph),
        None => required,
    };
    if n == 0 {
        return Err(Error::EmptyGraph);
    }

    let mut dropped = DropCounts::default();
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in raw_edges {
        if u == v {
            dropped.self_loops += 1;
            continue;
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let mut degree_sum = 0;
    for nbrs in adjacency.iter_mut() {
        nbrs.sort_unstable();
        let before = nbrs.len();
        nbrs.dedup();
        degree_sum += nbrs.len();
        dropped.duplicates += before - nbrs.len();
    }
    // each repeated edge is seen once from each endpoint
    dropped.duplicates /= 2;

    Ok((
        Graph {
            adjacency,
            n_edges: degree_sum / 2,
        },
        dropped,
    ))
}

impl Graph {
    /// Convenience wrapper over [`build_graph`] that discards drop counts.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self> {
        build_graph(edges, None).map(|(g, _)| g)
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Canonical edge list: pairs `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|nbrs| nbrs.binary_search(&v).is_ok())
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        let degrees = self.degrees();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        DegreeSummary {
            mean_degree: 2.0 * self.n_edges as f64 / self.n_vertices() as f64,
            max_degree,
            degrees,
        }
    }

    pub fn laplacian(&self) -> LaplacianMatrix<'_> {
        LaplacianMatrix { graph: self }
    }

    /// Component label per vertex (labels assigned in order of smallest
    /// member) and the number of components.
    pub fn connected_components(&self) -> (Vec<usize>, usize) {
        let n = self.n_vertices();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().1 == 1
    }

    /// Largest connected component, renumbered in increasing order of the
    /// original IDs. Ties go to the component containing the smallest
    /// original vertex. The map holds `Some(new_id)` for retained vertices.
    pub fn largest_connected_component(&self) -> (Graph, Vec<Option<usize>>) {
        let (label, count) = self.connected_components();
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l] += 1;
        }
        // labels follow smallest member, so the first maximum wins ties
        let best = sizes
            .iter()
            .enumerate()
            .fold(0, |best, (l, &s)| if s > sizes[best] { l } else { best });
        let keep: Vec<bool> = label.iter().map(|&l| l == best).collect();
        self.induced_subgraph(&keep)
    }

    /// Subgraph induced by the vertices flagged in `keep`.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n_vertices()];
        let mut next = 0;
        for (v, &k) in keep.iter().enumerate() {
            if k {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut adjacency = Vec::with_capacity(next);
        let mut degree_sum = 0;
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            if map[v].is_none() {
                continue;
            }
            let mapped: Vec<usize> = nbrs.iter().filter_map(|&w| map[w]).collect();
            degree_sum += mapped.len();
            adjacency.push(mapped);
        }
        (
            Graph {
                adjacency,
                n_edges: degree_sum / 2,
            },
            map,
        )
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidConfig(
                    "relabeling is not a permutation".into(),
                ));
            }
        }
        if perm.len() != n {
            return Err(Error::InvalidConfig(
                "relabeling is not a permutation".into(),
            ));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            let mut mapped: Vec<usize> = nbrs.iter().map(|&w| perm[w]).collect();
            mapped.sort_unstable();
            adjacency[perm[v]] = mapped;
        }
        Ok(Graph {
            adjacency,
            n_edges: self.n_edges,
        })
    }

    /// Hop distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n_vertices()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Mean hop distance over unordered vertex pairs.
    pub fn average_shortest_path(&self, mode: PathMode) -> Result<f64> {
        let n = self.n_vertices();
        if n < 2 {
            return Err(Error::InsufficientData(
                "average shortest path needs at least two vertices".into(),
            ));
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let sources: Vec<usize> = match mode {
            PathMode::Exact => (0..n).collect(),
            PathMode::Sampled { sources, seed } => {
                if sources == 0 {
                    return Err(Error::InvalidConfig(
                        "sampled mode needs sources > 0".into(),
                    ));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut picked = sample(&mut rng, n, sources.min(n)).into_vec();
                picked.sort_unstable();
                picked
            }
        };
        let total: u64 = sources
            .par_iter()
            .map(|&s| self.bfs_distances(s).iter().map(|&d| d as u64).sum::<u64>())
            .sum();
        Ok(total as f64 / (sources.len() as f64 * (n - 1) as f64))
    }
}

/// How [`Graph::average_shortest_path`] visits sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMode {
    Exact,
    /// Uniformly sampled distinct sources; deterministic for a given seed.
    Sampled {
        sources: usize,
        seed: u64,
    },
}

impl PathMode {
    /// Exact up to [`EXACT_PATH_LIMIT`] vertices, sampled above.
    pub fn auto(n_vertices: usize, seed: u64) -> Self {
        if n_vertices <= EXACT_PATH_LIMIT {
            PathMode::Exact
        } else {
            PathMode::Sampled {
                sources: DEFAULT_PATH_SOURCES,
                seed,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeSummary {
    pub degrees: Vec<usize>,
    pub mean_degree: f64,
    pub max_degree: usize,
}

/// `L = D - A`, backed by the graph's neighbor lists.
#[derive(Debug, Clone, Copy)]
pub struct LaplacianMatrix<'g> {
    graph: &'g Graph,
}

impl LaplacianMatrix<'_> {
    pub fn order(&self) -> usize {
        self.graph.n_vertices()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.graph.degree(i) as f64
        } else if self.graph.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    }

    /// `out = L x`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (v, nbrs) in self.graph.adjacency.iter().enumerate() {
            let mut acc = nbrs.len() as f64 * x[v];
            for &w in nbrs {
                acc -= x[w];
            }
            out[v] = acc;
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.graph
            .adjacency
            .iter()
            .map(|a| a.len() as f64)
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.order();
        let mut m = DMatrix::zeros(n, n);
        for (v, nbrs) in self.graph.adjacency.iter().enumerate() {
            m[(v, v)] = nbrs.len() as f64;
            for &w in nbrs {
                m[(v, w)] = -1.0;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(&edges).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let g = triangle();
        assert_eq!((g.n_vertices(), g.n_edges()), (3, 3));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn drops_duplicates_and_self_loops() {
        let (g, dropped) = build_graph(&[(0, 1), (0, 1), (2, 2)], Some(3)).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (3, 1));
        assert_eq!(
            dropped,
            DropCounts {
                duplicates: 1,
                self_loops: 1
            }
        );
        // reversed orientation is still a duplicate
        let (g, dropped) = build_graph(&[(0, 1), (1, 0)], None).unwrap();
        assert_eq!(g.n_edges(), 1);
        assert_eq!(dropped.duplicates, 1);
    }

    #[test]
    fn empty_input() {
        assert!(matches!(build_graph(&[], None), Err(Error::EmptyGraph)));
        let (g, _) = build_graph(&[], Some(4)).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (4, 0));
        assert!(matches!(
            build_graph(&[(0, 5)], Some(3)),
            Err(Error::DeclaredTooSmall { .. })
        ));
    }

    #[test]
    fn laplacian_examples() {
        let k3 = triangle();
        let l = k3.laplacian();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), if i == j { 2.0 } else { -1.0 });
            }
        }
        let p2 = path(2).laplacian().to_dense();
        assert_eq!(p2, DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));

        let star = Graph::from_edges(&[(0, 1), (0, 2), (0, 3)]).unwrap();
        let l = star.laplacian();
        assert_eq!(l.diagonal(), vec![3.0, 1.0, 1.0, 1.0]);
        assert_eq!(l.get(0, 2), -1.0);
        assert_eq!(l.get(1, 2), 0.0);
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (4, 2)]).unwrap();
        let ones = vec![1.0; g.n_vertices()];
        let mut out = vec![f64::NAN; g.n_vertices()];
        g.laplacian().apply(&ones, &mut out);
        assert!(out.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn lcc_drops_isolated_vertex() {
        let (g, _) = build_graph(&[(0, 1), (1, 2), (2, 0)], Some(4)).unwrap();
        let (lcc, map) = g.largest_connected_component();
        assert_eq!(lcc, triangle());
        assert_eq!(map, vec![Some(0), Some(1), Some(2), None]);
    }

    #[test]
    fn lcc_tie_break_prefers_smallest_id() {
        // triangle on {3,4,5}, triangle on {0,1,2}, edge {6,7}
        let g =
            Graph::from_edges(&[(3, 4), (4, 5), (5, 3), (6, 7), (1, 2), (2, 0), (0, 1)]).unwrap();
        let (lcc, map) = g.largest_connected_component();
        assert_eq!(lcc.n_vertices(), 3);
        assert_eq!(&map[..3], &[Some(0), Some(1), Some(2)]);
        assert!(map[3..].iter().all(Option::is_none));
    }

    #[test]
    fn lcc_is_idempotent() {
        let g = Graph::from_edges(&[(0, 1), (2, 3), (3, 4), (5, 5)]).unwrap();
        let (once, _) = g.largest_connected_component();
        let (twice, map) = once.largest_connected_component();
        assert_eq!(once, twice);
        assert!(map.iter().enumerate().all(|(i, m)| *m == Some(i)));
    }

    #[test]
    fn average_path_examples() {
        assert_eq!(
            triangle().average_shortest_path(PathMode::Exact).unwrap(),
            1.0
        );
        let p3 = path(3).average_shortest_path(PathMode::Exact).unwrap();
        assert!((p3 - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn average_path_rejects_disconnected() {
        let g = Graph::from_edges(&[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            g.average_shortest_path(PathMode::Exact),
            Err(Error::NotConnected)
        ));
    }

    #[test]
    fn sampled_path_with_all_sources_is_exact() {
        let g = path(12);
        let exact = g.average_shortest_path(PathMode::Exact).unwrap();
        let sampled = g
            .average_shortest_path(PathMode::Sampled {
                sources: 12,
                seed: 3,
            })
            .unwrap();
        assert!((exact - sampled).abs() < 1e-12);
        let a = g
            .average_shortest_path(PathMode::Sampled {
                sources: 4,
                seed: 9,
            })
            .unwrap();
        let b = g
            .average_shortest_path(PathMode::Sampled {
                sources: 4,
                seed: 9,
            })
            .unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn relabel_rejects_non_permutation() {
        assert!(triangle().relabel(&[0, 0, 1]).is_err());
        let g = path(3).relabel(&[2, 0, 1]).unwrap();
        assert!(g.has_edge(2, 0) && g.has_edge(0, 1) && !g.has_edge(2, 1));
    }
}
