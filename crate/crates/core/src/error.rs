//! Error type shared across the library.

use thiserror::Error;

/// Errors produced by exact arithmetic, validation and reduction operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,

    #[error("denominator vanishes at the evaluation point")]
    PoleError,

    #[error("|denominator| = {magnitude:e} below pole tolerance {tolerance:e}")]
    NearPoleError { magnitude: f64, tolerance: f64 },

    #[error("non-finite value in numeric evaluation")]
    NonFiniteValue,

    #[error("parse error at byte {pos}: {msg}")]
    ParseError { pos: usize, msg: String },

    #[error("vertex index {index} out of range 1..={n}")]
    BadVertexIndex { index: usize, n: usize },

    #[error("duplicate edge ({from}, {to})")]
    DuplicateEdge { from: usize, to: usize },

    #[error("structural set must be nonempty")]
    EmptySet,

    #[error("complement contains a non-loop cycle through vertex {witness}")]
    CycleInComplement { witness: usize },

    #[error("complement vertex {vertex} carries a loop weighted identically lambda")]
    LoopWeightIsLambda { vertex: usize },

    #[error("loop weight at complement vertex {vertex} equals lambda0 at lambda0")]
    LoopWeightEqualsLambda0 { vertex: usize },

    #[error("the set is not lambda0-structural")]
    NotLambda0Structural,

    #[error("det(M_comp - lambda I) is the zero function; complement block singular")]
    SingularComplement,

    #[error("complement block M_comp(lambda0) - lambda0 I is singular")]
    SingularComplementAtLambda0,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("numeric root finding failed: {0}")]
    NumericFailure(String),

    #[error("lambda0 is not an eigenvalue (trivial nullspace)")]
    NotAnEigenvalue,

    #[error("no generalized eigenvector of rank {rank} exists")]
    ChainTerminated { rank: usize },

    #[error("input vector is zero")]
    ZeroVectorInput,

    #[error("complement is not a single vertex")]
    ComplementNotSingleton,

    #[error("complement has an edge between distinct vertices ({from}, {to})")]
    ComplementNotDisconnected { from: usize, to: usize },

    #[error("reduced data does not satisfy the reconstruction hypothesis: {0}")]
    HypothesisNotSatisfied(String),

    #[error("basis matrix is singular")]
    SingularBasis,

    #[error("matrix has entries that are not constant")]
    NotConstantMatrix,

    #[error("spectrum contains eigenvalues outside the exact field")]
    InexactSpectrum,

    #[error("reduction rule not applicable: {0}")]
    RuleInapplicable(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
