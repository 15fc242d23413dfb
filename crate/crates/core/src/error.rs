use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid scalar literal `{0}`")]
    InvalidScalar(String),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("algebra is not commutative")]
    NotCommutative,

    #[error("subspace is not closed under the bimodule actions")]
    NotSubbimodule,

    #[error("map is not surjective (rank {rank}, codomain dimension {codomain})")]
    NotSurjective { rank: usize, codomain: usize },

    #[error("map does not intertwine the requested {0} actions")]
    NotIntertwining(&'static str),

    #[error("generator {index} does not lie in ker mu")]
    OutsideKernel { index: usize },

    #[error("invalid first-order calculus: {0}")]
    InvalidFodc(String),

    #[error("invalid Cartan pair: {0}")]
    InvalidCartanPair(String),
}
