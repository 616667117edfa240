//! Exact multivariate polynomials over the rationals.
//!
//! Polynomials are parsed from a small text grammar, differentiated formally
//! and checked for quasihomogeneity. All arithmetic is exact.

mod monomial;
mod parse;
mod polynomial;
mod weights;

pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_polynomial_with};
pub use polynomial::{jacobian_ideal, Polynomial};
pub use weights::{weights_of, WeightSystem};

/// Exact rational numbers, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    SyntaxError {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("coefficient at position {position} is not a rational number: {reason}")]
    NonRationalCoefficient { position: usize, reason: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("polynomial is not quasihomogeneous: the weight equations are inconsistent")]
    NotQuasihomogeneous,
    #[error("weights are not determined by the support; free directions: {free_directions:?}")]
    WeightsUnderdetermined { free_directions: Vec<Vec<String>> },
    #[error("weight of variable {index} is not positive: {value}")]
    NonPositiveWeight { index: usize, value: String },
    #[error("the zero polynomial has no weight system")]
    ZeroPolynomial,
}

impl PolyError {
    pub fn code(&self) -> &'static str {
        match self {
            PolyError::SyntaxError { .. } => "SyntaxError",
            PolyError::NonRationalCoefficient { .. } => "NonRationalCoefficient",
            PolyError::UnknownVariable { .. } => "UnknownVariable",
            PolyError::NotQuasihomogeneous => "NotQuasihomogeneous",
            PolyError::WeightsUnderdetermined { .. } => "WeightsUnderdetermined",
            PolyError::NonPositiveWeight { .. } => "NonPositiveWeight",
            PolyError::ZeroPolynomial => "ZeroPolynomial",
        }
    }
}

/// Formats a rational as `num/den`, the exchange format used for exact values.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` or a bare integer.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}
