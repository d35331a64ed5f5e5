//! Deterministic constructions of the pseudofractal scale-free web (PSFW) and
//! the Sierpinski gasket.
//!
//! Both families have `(3^(n+1) + 3) / 2` vertices and `3^(n+1)` edges at
//! generation `n`. Vertex numbering is reproducible: creation order for the
//! iterative PSFW, copy-major order for the merge constructions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};

pub const DEFAULT_MAX_GENERATION: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Psfw,
    Sierpinski,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Psfw => "psfw",
            Family::Sierpinski => "sierpinski",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psfw" => Ok(Family::Psfw),
            "sierpinski" => Ok(Family::Sierpinski),
            other => Err(Error::InvalidConfig(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub graph: Graph,
    pub family: Family,
    pub generation: u32,
    /// PSFW hubs `(A_n, B_n, C_n)`, or the three outmost gasket corners.
    pub hubs: [usize; 3],
}

/// `N_n = (3^(n+1) + 3) / 2`.
pub fn vertex_count(n: u32) -> u64 {
    (3u64.pow(n + 1) + 3) / 2
}

/// `M_n = 3^(n+1)`.
pub fn edge_count(n: u32) -> u64 {
    3u64.pow(n + 1)
}

fn check_generation(n: u32, limit: u32) -> Result<()> {
    if n > limit {
        Err(Error::GenerationTooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Default construction for a family: iterative for the PSFW.
pub fn generate(family: Family, n: u32) -> Result<GeneratedGraph> {
    generate_with_limit(family, n, DEFAULT_MAX_GENERATION)
}

pub fn generate_with_limit(family: Family, n: u32, limit: u32) -> Result<GeneratedGraph> {
    match family {
        Family::Psfw => psfw_iterative_with_limit(n, limit),
        Family::Sierpinski => sierpinski_with_limit(n, limit),
    }
}

pub fn psfw_iterative(n: u32) -> Result<GeneratedGraph> {
    psfw_iterative_with_limit(n, DEFAULT_MAX_GENERATION)
}

/// Starts from a triangle; every iteration gives each existing edge a new
/// vertex joined to both of its endpoints.
pub fn psfw_iterative_with_limit(n: u32, limit: u32) -> Result<GeneratedGraph> {
    check_generation(n, limit)?;
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    edges.reserve(edge_count(n) as usize - 3);
    let mut next = 3;
    for _ in 0..n {
        let existing = edges.len();
        for e in 0..existing {
            let (u, v) = edges[e];
            edges.push((u, next));
            edges.push((v, next));
            next += 1;
        }
    }
    finish(edges, next, Family::Psfw, n, [0, 1, 2])
}

pub fn psfw_selfsimilar(n: u32) -> Result<GeneratedGraph> {
    psfw_selfsimilar_with_limit(n, DEFAULT_MAX_GENERATION)
}

/// Joins three copies of `G_n` at their hubs:
/// `A1 = B3 -> A`, `B2 = C1 -> B`, `A2 = C3 -> C`.
pub fn psfw_selfsimilar_with_limit(n: u32, limit: u32) -> Result<GeneratedGraph> {
    check_generation(n, limit)?;
    merge_generations(
        n,
        Family::Psfw,
        |[a, _, c], copy, hub| match (copy, hub) {
            (1, 1) => Some((0, c)),
            (2, 1) => Some((0, a)),
            (2, 2) => Some((1, a)),
            _ => None,
        },
        |maps, [a, _, c]| [maps[0][a], maps[0][c], maps[1][a]],
    )
}

pub fn sierpinski(n: u32) -> Result<GeneratedGraph> {
    sierpinski_with_limit(n, DEFAULT_MAX_GENERATION)
}

/// Joins three copies of `S_n` pairwise at one outmost vertex each:
/// `B1 = A2`, `C1 = A3`, `C2 = B3`. The new corners are `A1`, `B2`, `C3`.
pub fn sierpinski_with_limit(n: u32, limit: u32) -> Result<GeneratedGraph> {
    check_generation(n, limit)?;
    merge_generations(
        n,
        Family::Sierpinski,
        |[_, b, c], copy, hub| match (copy, hub) {
            (1, 0) => Some((0, b)),
            (2, 0) => Some((0, c)),
            (2, 1) => Some((1, c)),
            _ => None,
        },
        |maps, [a, b, c]| [maps[0][a], maps[1][b], maps[2][c]],
    )
}

/// Shared copy-major merge loop.
///
/// `identify(hubs, copy, hub_index)` returns `Some((earlier_copy, vertex))` when
/// hub `hub_index` of copy `copy` is the same vertex as `vertex` in an earlier
/// copy. `new_hubs` picks the next generation's hubs from the per-copy maps.
fn merge_generations(
    n: u32,
    family: Family,
    identify: impl Fn([usize; 3], usize, usize) -> Option<(usize, usize)>,
    new_hubs: impl Fn(&[Vec<usize>; 3], [usize; 3]) -> [usize; 3],
) -> Result<GeneratedGraph> {
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    let mut order = 3;
    let mut hubs = [0, 1, 2];
    for _ in 0..n {
        let mut maps: [Vec<usize>; 3] = Default::default();
        let mut next = 0;
        for copy in 0..3 {
            let mut map = Vec::with_capacity(order);
            for v in 0..order {
                let shared = hubs
                    .iter()
                    .position(|&h| h == v)
                    .and_then(|hub| identify(hubs, copy, hub));
                match shared {
                    Some((earlier, w)) => map.push(maps[earlier][w]),
                    None => {
                        map.push(next);
                        next += 1;
                    }
                }
            }
            maps[copy] = map;
        }
        edges = maps
            .iter()
            .flat_map(|map| edges.iter().map(move |&(u, v)| (map[u], map[v])))
            .collect();
        hubs = new_hubs(&maps, hubs);
        order = next;
    }
    finish(edges, order, family, n, hubs)
}

fn finish(
    edges: Vec<(usize, usize)>,
    order: usize,
    family: Family,
    generation: u32,
    hubs: [usize; 3],
) -> Result<GeneratedGraph> {
    let (graph, dropped) = build_graph(&edges, Some(order))?;
    debug_assert_eq!(dropped.duplicates + dropped.self_loops, 0);
    Ok(GeneratedGraph {
        graph,
        family,
        generation,
        hubs,
    })
}
