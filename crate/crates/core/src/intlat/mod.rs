//! Exact integer lattice algebra: vector contents, pairings, divisibility
//! reports, Smith normal form and ranks.

mod divisibility;
mod matrix;
mod pairing;
mod vector;

pub use divisibility::{divisibility_bounds, DivisibilityReport};
pub use matrix::{rank, smith_normal_form, Matrix, SmithForm};
pub use pairing::{Pairing, PairingEntry, PairingMatrix, PartialPairing};
pub use vector::{gcd_content, IntVector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("pairing matrix is not square")]
    NotSquare,
    #[error("pairing matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("pairing matrix must have positive dimension")]
    Empty,
}
