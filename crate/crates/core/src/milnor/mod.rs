//! The Milnor algebra `O / (∂f/∂z_0, ..., ∂f/∂z_n)` and its monomial basis.

mod groebner;
mod order;

use thiserror::Error;

pub use groebner::{groebner_basis, GroebnerBasis};
pub use order::MonomialOrder;

use crate::poly::{jacobian_ideal, weights_of, Monomial, Polynomial, Rational, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("singularity is not isolated: no pure power of {missing:?} among the leading terms")]
    NonIsolatedSingularity { missing: Vec<String> },
    #[error("f is smooth at the origin (Jacobian ideal is the unit ideal)")]
    NotSingular,
    #[error("exponent a_{index} = {value} is smaller than 2")]
    ExponentTooSmall { index: usize, value: u32 },
    #[error("Milnor number {basis} disagrees with the weight product {product}")]
    WeightProductMismatch { basis: usize, product: String },
}

impl MilnorError {
    pub fn code(&self) -> &'static str {
        match self {
            MilnorError::NonIsolatedSingularity { .. } => "NonIsolatedSingularity",
            MilnorError::NotSingular => "NotSingular",
            MilnorError::ExponentTooSmall { .. } => "ExponentTooSmall",
            MilnorError::WeightProductMismatch { .. } => "WeightProductMismatch",
        }
    }
}

/// Exponent vectors `Λ` of a monomial basis of the Milnor algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub exponents: Vec<Monomial>,
    pub milnor_number: usize,
}

impl QuotientBasis {
    fn new(exponents: Vec<Monomial>) -> Self {
        let milnor_number = exponents.len();
        QuotientBasis {
            exponents,
            milnor_number,
        }
    }

    pub fn contains(&self, alpha: &Monomial) -> bool {
        self.exponents.contains(alpha)
    }

    /// Sorts by weighted degree, then lexicographically.
    pub fn sort_by_weights(&mut self, w: &WeightSystem) {
        self.exponents.sort_by(|a, b| {
            degree_in(w, a)
                .cmp(&degree_in(w, b))
                .then_with(|| a.cmp(b))
        });
    }

    /// True if every componentwise-smaller exponent is also present.
    pub fn is_downward_closed(&self) -> bool {
        let set: std::collections::HashSet<&Monomial> = self.exponents.iter().collect();
        self.exponents.iter().all(|a| {
            (0..a.num_vars()).all(|i| {
                if a.exponents()[i] == 0 {
                    return true;
                }
                let mut e = a.exponents().to_vec();
                e[i] -= 1;
                set.contains(&Monomial::new(e))
            })
        })
    }
}

fn degree_in(w: &WeightSystem, m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .zip(&w.beta_i)
        .map(|(&e, &b)| e as u64 * b)
        .sum()
}

/// Monomials outside the leading-term ideal.
///
/// Sorted by the weighted degree of the basis order (plain degree for grevlex),
/// then lexicographically.
pub fn monomial_basis(gb: &GroebnerBasis) -> Result<QuotientBasis, MilnorError> {
    let n = gb.num_vars();
    let lms = gb.leading_monomials();
    if lms.iter().any(Monomial::is_one) {
        return Ok(QuotientBasis::new(Vec::new()));
    }
    let missing: Vec<String> = (0..n)
        .filter(|&i| !lms.iter().any(|m| m.pure_power_var() == Some(i)))
        .map(|i| gb.vars()[i].clone())
        .collect();
    if !missing.is_empty() {
        return Err(MilnorError::NonIsolatedSingularity { missing });
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    staircase(&lms, &mut cur, 0, &mut out);
    out.sort_by(|a, b| match &gb.order {
        MonomialOrder::Weighted(w) => degree_in(w, a)
            .cmp(&degree_in(w, b))
            .then_with(|| a.cmp(b)),
        MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)),
    });
    Ok(QuotientBasis::new(out))
}

fn staircase(lms: &[Monomial], cur: &mut Vec<u32>, var: usize, out: &mut Vec<Monomial>) {
    if var == cur.len() {
        out.push(Monomial::new(cur.clone()));
        return;
    }
    loop {
        // With later coordinates zero, divisibility here rules out every extension.
        let m = Monomial::new(cur.clone());
        if lms.iter().any(|l| l.divides(&m)) {
            break;
        }
        staircase(lms, cur, var + 1, out);
        cur[var] += 1;
    }
    cur[var] = 0;
}

/// Weights (if any), Gröbner basis and monomial basis of the Milnor algebra of `f`.
#[derive(Clone, Debug)]
pub struct MilnorAlgebra {
    pub weights: Option<WeightSystem>,
    pub groebner: GroebnerBasis,
    pub basis: QuotientBasis,
}

impl MilnorAlgebra {
    pub fn milnor_number(&self) -> usize {
        self.basis.milnor_number
    }
}

/// Runs the full Gröbner path, using the weighted order whenever `f` has weights.
pub fn milnor_algebra(f: &Polynomial) -> Result<MilnorAlgebra, MilnorError> {
    let weights = weights_of(f).ok();
    let order = match &weights {
        Some(w) => MonomialOrder::Weighted(w.clone()),
        None => MonomialOrder::Grevlex,
    };
    let jac = jacobian_ideal(f);
    if jac.iter().all(Polynomial::is_zero) {
        // A constant has no isolated critical point.
        return Err(MilnorError::NonIsolatedSingularity {
            missing: f.vars().to_vec(),
        });
    }
    let groebner = groebner_basis(&jac, &order);
    if groebner.is_unit_ideal() {
        return Err(MilnorError::NotSingular);
    }
    let basis = monomial_basis(&groebner)?;
    if let Some(w) = &weights {
        let product = w.milnor_product();
        if product != Rational::from_integer(basis.milnor_number.into()) {
            return Err(MilnorError::WeightProductMismatch {
                basis: basis.milnor_number,
                product: crate::poly::rational_to_string(&product),
            });
        }
    }
    Ok(MilnorAlgebra {
        weights,
        groebner,
        basis,
    })
}

pub fn milnor_number(f: &Polynomial) -> Result<usize, MilnorError> {
    milnor_algebra(f).map(|m| m.milnor_number())
}

/// `Λ = {α : 0 ≤ α_j ≤ a_j − 2}` for `Σ z_j^{a_j}`.
pub fn brieskorn_basis(a: &[u32]) -> Result<QuotientBasis, MilnorError> {
    check_exponents(a)?;
    let mut out = Vec::new();
    let mut cur = vec![0u32; a.len()];
    loop {
        out.push(Monomial::new(cur.clone()));
        let mut j = a.len();
        loop {
            if j == 0 {
                let w = brieskorn_weights(a);
                let mut qb = QuotientBasis::new(out);
                qb.sort_by_weights(&w);
                return Ok(qb);
            }
            j -= 1;
            if cur[j] + 2 < a[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = 0;
        }
    }
}

pub fn check_exponents(a: &[u32]) -> Result<(), MilnorError> {
    match a.iter().position(|&x| x < 2) {
        Some(index) => Err(MilnorError::ExponentTooSmall {
            index,
            value: a[index],
        }),
        None => Ok(()),
    }
}

/// Weights `1/a_j` of a Brieskorn polynomial.
pub fn brieskorn_weights(a: &[u32]) -> WeightSystem {
    WeightSystem::from_weights(
        a.iter()
            .map(|&x| Rational::new(1.into(), x.into()))
            .collect(),
    )
    .expect("Brieskorn weights are positive")
}

/// `∏ (a_j − 1)`.
pub fn brieskorn_milnor_number(a: &[u32]) -> u64 {
    a.iter().map(|&x| (x as u64).saturating_sub(1)).product()
}

/// Compares two bases as sets.
pub fn same_exponent_set(a: &QuotientBasis, b: &QuotientBasis) -> bool {
    let mut x = a.exponents.clone();
    let mut y = b.exponents.clone();
    x.sort();
    y.sort();
    x == y
}
