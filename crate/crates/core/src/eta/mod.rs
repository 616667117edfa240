//! Closed-form evaluations of the eta-invariant.
//!
//! Every exact path returns an [`EtaValue`] `(r0, r1)` standing for
//! `r0 + r1 · θ₀/π` with `θ₀ = arg(−1 + 4i/3)`.

mod brieskorn;

use std::fmt;
use std::ops::Add;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use brieskorn::{
    eta_brieskorn_fast, eta_brieskorn_fast_par, eta_brieskorn_naive, eta_brieskorn_naive_par,
    BrieskornLattice,
};

use crate::milnor::{MilnorError, QuotientBasis};
use crate::poly::{Rational, WeightSystem};
use crate::spectral::{floor, frac, l_value, parity_sign, spectral_flow, VariationStructure};
use crate::symplectic::{arg_pi, unitary_eigenvalues, CMatrix, SymplecticError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EtaError {
    #[error("eta needs n >= 1, got n = {n}")]
    DimensionTooSmall { n: usize },
    #[error("unitary maps have different sizes: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error(transparent)]
    Milnor(#[from] MilnorError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

impl EtaError {
    pub fn code(&self) -> &'static str {
        match self {
            EtaError::DimensionTooSmall { .. } => "DimensionTooSmall",
            EtaError::DimensionMismatch { .. } => "DimensionMismatch",
            EtaError::Milnor(e) => e.code(),
            EtaError::Symplectic(e) => e.code(),
        }
    }
}

/// Sign carried by the `λ = 1` contribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EtaConvention {
    /// `+θ₀/π · Σ (−1)^{l+n}`.
    General,
    /// `−θ₀/π · Σ (−1)^{l+n}`, as in the Brieskorn lattice sum.
    BrieskornSign,
}

impl EtaConvention {
    pub fn sign(self) -> i32 {
        match self {
            EtaConvention::General => 1,
            EtaConvention::BrieskornSign => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EtaConvention::General => "general",
            EtaConvention::BrieskornSign => "brieskorn",
        }
    }

    pub fn other(self) -> Self {
        match self {
            EtaConvention::General => EtaConvention::BrieskornSign,
            EtaConvention::BrieskornSign => EtaConvention::General,
        }
    }
}

/// `θ₀ = arg(−1 + 4i/3) ∈ [0, 2π)`.
pub fn theta0() -> f64 {
    std::f64::consts::PI - (4.0f64 / 3.0).atan()
}

/// `θ₀ / π`.
pub fn eta_constant() -> f64 {
    1.0 - (4.0f64 / 3.0).atan() / std::f64::consts::PI
}

/// `r0 + r1 · θ₀/π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaValue {
    pub r0: Rational,
    pub r1: Rational,
}

impl EtaValue {
    pub fn new(r0: Rational, r1: Rational) -> Self {
        EtaValue { r0, r1 }
    }

    pub fn zero() -> Self {
        EtaValue::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    pub fn to_float(&self) -> f64 {
        self.r0.to_f64().unwrap_or(f64::NAN) + self.r1.to_f64().unwrap_or(f64::NAN) * eta_constant()
    }

    /// The same value under the opposite `λ = 1` convention.
    pub fn flip_unit_term(&self) -> Self {
        EtaValue::new(self.r0.clone(), -self.r1.clone())
    }
}

impl Add for EtaValue {
    type Output = EtaValue;

    fn add(self, rhs: EtaValue) -> EtaValue {
        EtaValue::new(self.r0 + rhs.r0, self.r1 + rhs.r1)
    }
}

impl fmt::Display for EtaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r1.is_zero() {
            write!(f, "{}", self.r0)
        } else {
            write!(f, "{} + ({})·θ₀/π", self.r0, self.r1)
        }
    }
}

fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

/// `1 − 2{x}`.
fn asymmetry(x: &Rational) -> Rational {
    Rational::one() - int(2) * frac(x)
}

/// Shared summation in the shifted variable `x = l − 1`.
fn sum_shifted<'a>(xs: impl Iterator<Item = &'a Rational>, n: usize, conv: EtaConvention) -> EtaValue {
    let mut r0 = Rational::zero();
    let mut r1 = Rational::zero();
    for x in xs {
        let s = parity_sign(&(floor(x) + n + 1));
        if x.is_integer() {
            r1 += int((conv.sign() * s) as i64);
        } else {
            r0 += int(s as i64) * asymmetry(x);
        }
    }
    EtaValue::new(r0, r1)
}

fn check_n(n: usize) -> Result<(), EtaError> {
    if n == 0 {
        Err(EtaError::DimensionTooSmall { n })
    } else {
        Ok(())
    }
}

/// `Σ_{l∉ℤ} (−1)^{[l]+n}(1 − 2{l}) + s·θ₀/π·Σ_{l∈ℤ} (−1)^{l+n}`.
pub fn eta_closed_form(
    basis: &QuotientBasis,
    w: &WeightSystem,
    n: usize,
    conv: EtaConvention,
) -> Result<EtaValue, EtaError> {
    check_n(n)?;
    let mut r0 = Rational::zero();
    let mut r1 = Rational::zero();
    for a in &basis.exponents {
        let l = l_value(a, w);
        let s = parity_sign(&(floor(&l) + n));
        if l.is_integer() {
            r1 += int((conv.sign() * s) as i64);
        } else {
            r0 += int(s as i64) * asymmetry(&l);
        }
    }
    Ok(EtaValue::new(r0, r1))
}

/// The same sum written in spectral numbers `sp = l − 1`.
pub fn eta_closed_form_sp(
    basis: &QuotientBasis,
    w: &WeightSystem,
    n: usize,
    conv: EtaConvention,
) -> Result<EtaValue, EtaError> {
    check_n(n)?;
    let sp: Vec<Rational> = basis
        .exponents
        .iter()
        .map(|a| l_value(a, w) - Rational::one())
        .collect();
    Ok(sum_shifted(sp.iter(), n, conv))
}

/// The sum in terms of `sf(α)/β`.
pub fn eta_via_spectral_flow(
    basis: &QuotientBasis,
    w: &WeightSystem,
    n: usize,
    conv: EtaConvention,
) -> Result<EtaValue, EtaError> {
    check_n(n)?;
    let beta = int(w.beta as i64);
    let xs: Vec<Rational> = basis
        .exponents
        .iter()
        .map(|a| spectral_flow(a, w) / &beta)
        .collect();
    Ok(sum_shifted(xs.iter(), n, conv))
}

/// `Σ_{λ≠1} sign(b_λ)(1 − 2c)` over the blocks, plus the `λ = 1` term.
pub fn eta_eigen_decomp(vs: &VariationStructure, conv: EtaConvention) -> Result<EtaValue, EtaError> {
    check_n(vs.n)?;
    let mut r0 = Rational::zero();
    let mut r1 = Rational::zero();
    for b in &vs.blocks {
        if b.is_unit_eigenvalue() {
            r1 += int((conv.sign() * b.epsilon) as i64);
        } else {
            r0 += int(b.epsilon as i64) * (Rational::one() - int(2) * &b.c);
        }
    }
    Ok(EtaValue::new(r0, r1))
}

/// `η̃ = η/2 + (1/2π) Σ Arg spec(φ(Λ)φ(Λ_Y)*) + dim W / 2`.
pub fn eta_general_aps(
    eta_base: f64,
    phi_lambda: &CMatrix,
    phi_lambda_y: &CMatrix,
    w_dim: usize,
) -> Result<f64, EtaError> {
    if phi_lambda.shape() != phi_lambda_y.shape() || !phi_lambda.is_square() {
        return Err(EtaError::DimensionMismatch {
            left: phi_lambda.nrows(),
            right: phi_lambda_y.nrows(),
        });
    }
    let prod = phi_lambda * phi_lambda_y.adjoint();
    let correction: f64 = unitary_eigenvalues(&prod)?
        .into_iter()
        .map(arg_pi)
        .sum::<f64>()
        / (2.0 * std::f64::consts::PI);
    Ok(eta_base / 2.0 + correction + w_dim as f64 / 2.0)
}

/// `arg(−3/5 + 4i/5) / π`, the angle of the non-trivial `P⁰` eigenvalue.
pub fn p0_eigenvalue_angle() -> f64 {
    Complex64::new(-0.6, 0.8).arg() / std::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::{brieskorn_basis, brieskorn_weights, milnor_algebra};
    use crate::poly::parse_polynomial;
    use crate::spectral::{brieskorn_blocks, variation_structure};
    use crate::symplectic::identity;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn closed(text: &str, conv: EtaConvention) -> EtaValue {
        let f = parse_polynomial(text).unwrap();
        let m = milnor_algebra(&f).unwrap();
        let w = m.weights.unwrap();
        eta_closed_form(&m.basis, &w, f.num_vars() - 1, conv).unwrap()
    }

    #[test]
    fn constant() {
        assert!((eta_constant() - 0.7048327647).abs() < 1e-9);
        assert!((theta0() - 2.2142974356).abs() < 1e-9);
        assert!((p0_eigenvalue_angle() - eta_constant()).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed("x^3+y^2", EtaConvention::General), EtaValue::new(q(4, 3), q(0, 1)));
        assert_eq!(closed("x^2+y^2+z^2", EtaConvention::General), EtaValue::zero());
        assert_eq!(closed("x^2+y^2", EtaConvention::General), EtaValue::new(q(0, 1), q(1, 1)));
        assert_eq!(closed("x^2+y^2", EtaConvention::BrieskornSign), EtaValue::new(q(0, 1), q(-1, 1)));
    }

    #[test]
    fn n_zero_is_rejected() {
        let a = [3];
        let r = eta_closed_form(&brieskorn_basis(&a).unwrap(), &brieskorn_weights(&a), 0, EtaConvention::General);
        assert_eq!(r, Err(EtaError::DimensionTooSmall { n: 0 }));
    }

    #[test]
    fn paths_agree_exactly() {
        for a in [&[3u32, 2][..], &[2, 2], &[3, 4, 5], &[2, 3, 4, 5], &[6, 6], &[4, 4, 2, 2]] {
            let basis = brieskorn_basis(a).unwrap();
            let w = brieskorn_weights(a);
            let n = a.len() - 1;
            for conv in [EtaConvention::General, EtaConvention::BrieskornSign] {
                let c = eta_closed_form(&basis, &w, n, conv).unwrap();
                assert_eq!(c, eta_closed_form_sp(&basis, &w, n, conv).unwrap());
                assert_eq!(c, eta_via_spectral_flow(&basis, &w, n, conv).unwrap());
                assert_eq!(c, eta_eigen_decomp(&variation_structure(&basis, &w, n), conv).unwrap());
                assert_eq!(c, eta_eigen_decomp(&brieskorn_blocks(a), conv).unwrap());
            }
        }
    }

    #[test]
    fn eigen_decomp_examples() {
        let a = [3, 2];
        let vs = brieskorn_blocks(&a);
        assert_eq!(eta_eigen_decomp(&vs, EtaConvention::General).unwrap(), EtaValue::new(q(4, 3), q(0, 1)));
        let vs = brieskorn_blocks(&[2, 2, 2]);
        assert!(eta_eigen_decomp(&vs, EtaConvention::General).unwrap().is_zero());
    }

    #[test]
    fn denominator_divides_beta() {
        for a in [&[3u32, 2][..], &[3, 4, 5], &[5, 7], &[4, 6, 9]] {
            let w = brieskorn_weights(a);
            let e = eta_closed_form(&brieskorn_basis(a).unwrap(), &w, a.len() - 1, EtaConvention::General).unwrap();
            assert!((BigInt::from(w.beta) % e.r0.denom()).is_zero());
        }
    }

    #[test]
    fn float_value() {
        let e = EtaValue::new(q(1, 2), q(-1, 1));
        assert!((e.to_float() - (0.5 - eta_constant())).abs() < 1e-15);
        assert_eq!(e.flip_unit_term().r1, q(1, 1));
    }

    #[test]
    fn general_aps() {
        let id = identity(3);
        assert!((eta_general_aps(0.4, &id, &id, 2).unwrap() - 1.2).abs() < 1e-12);
        let i1 = CMatrix::from_element(1, 1, Complex64::i());
        let one = identity(1);
        assert!((eta_general_aps(0.0, &i1, &one, 0).unwrap() - 0.25).abs() < 1e-12);
        let m1 = CMatrix::from_element(1, 1, Complex64::new(-1.0, 0.0));
        assert!((eta_general_aps(0.0, &m1, &one, 0).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(
            eta_general_aps(0.0, &id, &one, 0),
            Err(EtaError::DimensionMismatch { left: 3, right: 1 })
        ));
    }
}
