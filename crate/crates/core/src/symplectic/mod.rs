//! Finite-dimensional hermitian symplectic linear algebra.

mod linalg;
pub mod random;
mod space;

use thiserror::Error;

pub use linalg::{
    arg_2pi, arg_pi, complement_basis, direct_sum, eigenvalues_2x2, hermitian_eigen, identity,
    max_abs, null_basis, range_basis, unitarity_defect, unitary_eigen, unitary_eigenvalues,
    CMatrix,
};
pub use space::{
    lagrangian_of_phi, maslov_m, maslov_of_unitary, phi_of_lagrangian, split_eigenspaces,
    symplectic_reduction, HermSymplecticSpace, Lagrangian, MINUS_ONE_TOLERANCE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymplecticError {
    #[error("invalid hermitian symplectic structure: {reason}")]
    InvalidStructure { reason: String },
    #[error("eigenspaces of gamma are unbalanced: dim K+ = {plus}, dim K- = {minus}")]
    UnbalancedEigenspaces { plus: usize, minus: usize },
    #[error("subspace is not Lagrangian (isotropy defect {residual:e})")]
    NotLagrangian { residual: f64 },
    #[error("projection of the Lagrangian to K+ is singular")]
    NotAGraph,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("Lagrangians live in different hermitian symplectic spaces")]
    SpaceMismatch,
    #[error("subspace is not isotropic (defect {residual:e})")]
    NotIsotropic { residual: f64 },
    #[error("matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },
}

impl SymplecticError {
    pub fn code(&self) -> &'static str {
        match self {
            SymplecticError::InvalidStructure { .. } => "InvalidStructure",
            SymplecticError::UnbalancedEigenspaces { .. } => "UnbalancedEigenspaces",
            SymplecticError::NotLagrangian { .. } => "NotLagrangian",
            SymplecticError::NotAGraph => "NotAGraph",
            SymplecticError::DimensionMismatch { .. } => "DimensionMismatch",
            SymplecticError::SpaceMismatch => "SpaceMismatch",
            SymplecticError::NotIsotropic { .. } => "NotIsotropic",
            SymplecticError::NotUnitary { .. } => "NotUnitary",
        }
    }
}
