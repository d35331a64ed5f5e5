use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("declared vertex count {declared} is smaller than the {required} vertices referenced by the edges")]
    DeclaredTooSmall { declared: usize, required: usize },

    #[error("vertex {vertex} out of range for a graph with {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },

    #[error("graph not connected")]
    NotConnected,

    #[error("graph disconnected: {zero_modes} eigenvalues below the zero threshold")]
    Disconnected { zero_modes: usize },

    #[error("degenerate degree sequence")]
    DegenerateDegrees,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("generation too large: n={n} exceeds the limit of {limit}")]
    GenerationTooLarge { n: u32, limit: u32 },

    #[error("graph with {n_vertices} vertices exceeds the dense threshold of {threshold}; use coherence_estimate")]
    TooLargeForDense { n_vertices: usize, threshold: usize },

    #[error("linear solver did not converge after {iterations} iterations (relative residual {residual:.3e}, tolerance {tolerance:.3e})")]
    SolverDiverged {
        iterations: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("recursion inconsistency at generation {generation}: {detail}")]
    RecursionInconsistency { generation: u32, detail: String },

    #[error("closed-form transcription inconsistency at n={n}: {detail}")]
    ClosedFormExponent { n: u32, detail: String },

    #[error("n={n} is outside theorem domain; use exact_sums")]
    OutsideTheoremDomain { n: u32 },

    #[error(
        "time step dt={dt} violates the stability bound 0.1/lambda_max; use dt <= {suggested:.6e}"
    )]
    UnstableTimeStep { dt: f64, suggested: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
