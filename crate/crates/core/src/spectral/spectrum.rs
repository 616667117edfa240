use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::SpectralError;
use crate::milnor::QuotientBasis;
use crate::poly::{Monomial, Rational, WeightSystem};

/// `l(α) = Σ (α_i + 1) w_i`.
pub fn l_value(alpha: &Monomial, w: &WeightSystem) -> Rational {
    assert_eq!(alpha.num_vars(), w.len(), "exponent and weight lengths differ");
    alpha
        .exponents()
        .iter()
        .zip(&w.weights)
        .map(|(&a, wi)| wi * Rational::from_integer((a as u64 + 1).into()))
        .fold(Rational::zero(), |s, t| s + t)
}

/// `sf(α) = β (l(α) − 1)`; always an integer.
pub fn spectral_flow(alpha: &Monomial, w: &WeightSystem) -> Rational {
    (l_value(alpha, w) - Rational::one()) * Rational::from_integer(w.beta.into())
}

/// `⌊q⌋`.
pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// `q − ⌊q⌋ ∈ [0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - Rational::from_integer(floor(q))
}

/// `(−1)^k`.
pub fn parity_sign(k: &BigInt) -> i32 {
    if k.is_even() {
        1
    } else {
        -1
    }
}

/// `(−1)^{[l] + n}`.
pub fn epsilon_of(l: &Rational, n: usize) -> i32 {
    parity_sign(&(floor(l) + BigInt::from(n)))
}

/// The multiset `{l(α) − 1}` together with the dimension parameter `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumDivisor {
    /// Sorted ascending.
    pub entries: Vec<Rational>,
    pub n: usize,
}

impl SpectrumDivisor {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `{sp}` equals `{n − 1 − sp}`.
    pub fn is_symmetric(&self) -> bool {
        let centre2 = Rational::from_integer(BigInt::from(self.n) - 1);
        let mut mirrored: Vec<Rational> =
            self.entries.iter().map(|s| &centre2 - s).collect();
        mirrored.sort();
        mirrored == self.entries
    }
}

pub fn spectrum_of(
    basis: &QuotientBasis,
    w: &WeightSystem,
    n: usize,
) -> Result<SpectrumDivisor, SpectralError> {
    let mut entries: Vec<Rational> = basis
        .exponents
        .iter()
        .map(|a| l_value(a, w) - Rational::one())
        .collect();
    entries.sort();
    let sp = SpectrumDivisor { entries, n };
    if !sp.is_symmetric() {
        return Err(SpectralError::SymmetryViolation);
    }
    Ok(sp)
}

/// `τ(f, b) = Σ_{1/2 < {l(α)} < 1} (−1)^{[l(α)] + n}`.
pub fn tau_invariant(basis: &QuotientBasis, w: &WeightSystem, n: usize) -> i64 {
    let half = Rational::new(1.into(), 2.into());
    basis
        .exponents
        .iter()
        .map(|a| l_value(a, w))
        .filter(|l| frac(l) > half)
        .map(|l| epsilon_of(&l, n) as i64)
        .sum()
}
