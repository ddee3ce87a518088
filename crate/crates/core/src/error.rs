use thiserror::Error;

/// Errors surfaced by polytope construction and the analysis operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input points span affine dimension {rank}, expected {dim}")]
    DegenerateInput { dim: usize, rank: usize },

    #[error("vertex list is empty")]
    EmptyVertices,

    #[error("vertex {index} ({vertex}) is not an extreme point")]
    NotExtreme { index: usize, vertex: String },

    #[error("coordinate dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not smooth at vertex {vertex}: {reason}")]
    NotSmoothAtVertex { vertex: usize, reason: String },

    #[error("halfspace cut is empty or not full-dimensional")]
    EmptyChop,

    #[error("halfspace cut crosses an edge at the non-lattice point {point}")]
    NonLatticeChop { point: String },

    #[error("vertex {vertex} is not divisible by {k} after translation")]
    NotDivisible { vertex: String, k: u64 },

    #[error("slice dimensions differ: {0} vs {1}")]
    SliceDimensionMismatch(usize, usize),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn not_smooth(vertex: usize, reason: impl Into<String>) -> Self {
        Error::NotSmoothAtVertex {
            vertex,
            reason: reason.into(),
        }
    }
}
