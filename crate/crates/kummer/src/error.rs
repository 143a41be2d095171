//! Error type shared across the crate.

use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by lattice, form and pipeline computations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is singular (det = 0)")]
    SingularMatrix,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Gram matrix has an odd diagonal entry; lattice is not even")]
    NotEven,

    #[error("lattice is degenerate (det = 0)")]
    DegenerateLattice,

    #[error("basis rows are linearly dependent")]
    DegenerateInput,

    #[error("rescaling by zero is not a lattice operation")]
    ZeroScale,

    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(BigInt),

    #[error("discriminant {0} is not positive; form is not indefinite")]
    NotIndefinite(BigInt),

    #[error("forms have different discriminants ({0} vs {1})")]
    DiscriminantMismatch(BigInt, BigInt),

    #[error("form ({0}, {1}, {2}) is not primitive")]
    NotPrimitive(BigInt, BigInt, BigInt),

    #[error("discriminant {0} is not fundamental")]
    NotFundamental(BigInt),

    #[error("discriminant {0} is outside the supported shape: {1}")]
    UnsupportedDiscriminant(BigInt, String),

    #[error("discriminant group is not cyclic of squarefree order: {0}")]
    NotCyclic(String),

    #[error("{0} is not a subgroup of the ambient unit group")]
    NotSubgroup(String),

    #[error("lattice not supported by the counting formula: {0}")]
    UnsupportedLattice(String),

    #[error("lattice is not hyperbolic (signature ({0}, {1}))")]
    NotHyperbolic(usize, usize),

    #[error("embedding is not primitive")]
    NonPrimitive,

    #[error("value exceeds the 64-bit desk-scale bound: {0}")]
    OverflowScope(String),

    #[error("search exhausted at n_max = {n_max}; best genus found has {best_gl2} pairwise inequivalent classes (D = {best_d})")]
    SearchExhausted {
        n_max: u64,
        best_d: u64,
        best_gl2: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
