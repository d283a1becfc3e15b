//! Exact linear algebra over the rationals.
//!
//! Everything downstream (products of subspaces, commutants, local units,
//! dual bases, fixed rings) reduces to spans and kernels computed here. All
//! arithmetic is exact; subspaces are kept in reduced row-echelon form so
//! that equality of subspaces is structural equality.

mod matrix;
mod scalar;
mod subspace;
mod vector;

pub use matrix::Matrix;
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use subspace::{solve, Solution, Subspace};
pub use vector::Vector;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear system has no solution")]
    Unsolvable,
    #[error("cannot parse rational literal {0:?}")]
    ParseScalar(String),
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, found })
    }
}
