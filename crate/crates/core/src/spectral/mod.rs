//! Spectrum, spectral flow, τ(f, b) and variation structures.

mod spectrum;
mod variation;

use thiserror::Error;

pub use spectrum::{
    epsilon_of, floor, frac, l_value, parity_sign, spectral_flow, spectrum_of, tau_invariant,
    SpectrumDivisor,
};
pub use variation::{
    brieskorn_block_data, brieskorn_blocks, brieskorn_phase, brieskorn_variation, cis, i_pow,
    n_squared, normalized_sign, one_variable_blocks, sebastiani_thom, signature_of_b,
    sine_quotient, template_block, unit_interval, variation_structure, BrieskornBlock,
    VariationBlock, VariationStructure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("spectrum is not symmetric about (n-1)/2")]
    SymmetryViolation,
    #[error("a block has V = 0, so its Seifert form cannot be inverted")]
    NonSimpleBlock,
}

impl SpectralError {
    pub fn code(&self) -> &'static str {
        match self {
            SpectralError::SymmetryViolation => "SymmetryViolation",
            SpectralError::NonSimpleBlock => "NonSimpleBlock",
        }
    }
}
