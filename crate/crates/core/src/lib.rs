//! Invariants of isolated quasihomogeneous hypersurface singularities.
//!
//! The pipeline runs from polynomial text to weights, the Milnor algebra,
//! the spectrum and variation structure, and finally several independent
//! evaluations of the eta-invariant of the Milnor bundle.

pub mod eta;
pub mod milnor;
pub mod oracle;
pub mod poly;
pub mod spectral;
pub mod symplectic;

use thiserror::Error;

/// Any failure of the pipeline, tagged by the module that raised it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    Milnor(#[from] milnor::MilnorError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
    #[error(transparent)]
    Symplectic(#[from] symplectic::SymplecticError),
    #[error(transparent)]
    Eta(#[from] eta::EtaError),
}

impl Error {
    /// Module-qualified code such as `milnor_algebra.NonIsolatedSingularity`.
    pub fn code(&self) -> String {
        match self {
            Error::Poly(e) => format!("poly_core.{}", e.code()),
            Error::Milnor(e) => format!("milnor_algebra.{}", e.code()),
            Error::Spectral(e) => format!("spectral_data.{}", e.code()),
            Error::Symplectic(e) => format!("herm_symplectic.{}", e.code()),
            Error::Eta(eta::EtaError::Milnor(e)) => format!("milnor_algebra.{}", e.code()),
            Error::Eta(eta::EtaError::Symplectic(e)) => format!("herm_symplectic.{}", e.code()),
            Error::Eta(e) => format!("eta_formulas.{}", e.code()),
        }
    }
}
