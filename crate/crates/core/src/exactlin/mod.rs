//! Exact linear algebra over the rationals.

mod idempotent;
mod matrix;
mod rational;
mod subspace;

pub use idempotent::{
    admissibility_violation, below, meet_of_idempotents, orthogonal_idempotents, verify_complete_orthogonal,
    IdempotentError,
};
pub use matrix::QMat;
pub use rational::{ParseQError, Q};
pub use subspace::{kernel, restrict, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Mismatch { left: (usize, usize), right: (usize, usize), op: &'static str },
    #[error("expected shape {expected:?}, found {found:?}")]
    Shape { expected: (usize, usize), found: (usize, usize) },
    #[error("rows of unequal length")]
    Ragged,
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("matrix is singular")]
    Singular,
    #[error("subspaces live in ambient dimensions {0} and {1}")]
    AmbientMismatch(usize, usize),
    #[error("image of the domain subspace is not contained in the codomain subspace")]
    NotContained,
}
