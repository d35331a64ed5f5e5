//! Network coherence of consensus dynamics under noise.
//!
//! First-order coherence `H_FO` and second-order coherence `H_SO` are the
//! mean steady-state deviation variances of the noisy first- and second-order
//! consensus systems on a graph. This crate evaluates them from the Laplacian
//! spectrum, by stochastic trace estimation, exactly for the pseudofractal
//! scale-free web and Sierpinski gasket families, and by direct simulation.

pub mod error;
pub mod exact;
pub mod format;
pub mod generators;
pub mod graph;
pub mod ingest;
pub mod powerlaw;
pub mod scaling;
pub mod simulate;
pub mod spectral;

pub use error::{Error, Result};
pub use exact::Order;
pub use generators::Family;
pub use graph::Graph;
