use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::spectrum::{epsilon_of, floor, frac, l_value};
use super::SpectralError;
use crate::milnor::{brieskorn_basis, QuotientBasis};
use crate::poly::{Rational, WeightSystem};

/// `i^k`, exact.
pub fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `n²` reduced mod 4, enough to evaluate `i^{n²}`.
pub fn n_squared(n: usize) -> i64 {
    ((n % 4) * (n % 4)) as i64
}

/// `e^{2πiq}`; exactly `1` at integers.
pub fn cis(q: &Rational) -> Complex64 {
    let f = frac(q);
    if f.is_zero() {
        return Complex64::one();
    }
    let t = 2.0 * PI * f.to_f64().expect("finite rational");
    Complex64::new(t.cos(), t.sin())
}

/// Representative of `q` modulo 1 in `(0, 1]`.
pub fn unit_interval(q: &Rational) -> Rational {
    let f = frac(q);
    if f.is_zero() {
        Rational::one()
    } else {
        f
    }
}

/// One-dimensional summand `(ℂ; b, h, V)` of a variation structure.
#[derive(Clone, Debug, PartialEq)]
pub struct VariationBlock {
    /// `h = e^{2πic}`, `c ∈ (0, 1]`.
    pub c: Rational,
    /// `l(α)` when the block comes from a monomial.
    pub l: Option<Rational>,
    pub b: Complex64,
    pub h: Complex64,
    pub v: Complex64,
    pub epsilon: i32,
}

impl VariationBlock {
    pub fn is_unit_eigenvalue(&self) -> bool {
        self.c.is_one()
    }

    /// `|V b − (h − 1)|`.
    pub fn axiom_residual(&self) -> f64 {
        (self.v * self.b - (self.h - Complex64::one())).norm()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariationStructure {
    pub blocks: Vec<VariationBlock>,
    pub n: usize,
}

impl VariationStructure {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks sorted by `(c, ε)`; convenient for comparing two constructions.
    pub fn sorted_blocks(&self) -> Vec<VariationBlock> {
        let mut b = self.blocks.clone();
        b.sort_by(|x, y| x.c.cmp(&y.c).then(x.epsilon.cmp(&y.epsilon)));
        b
    }
}

/// Sign of the block after removing the `i^{±n²}` phase.
///
/// Equals `sign(i^{n²} b)` for `h ≠ 1` and `sign(i^{−(n²+1)} V)` for `h = 1`.
pub fn normalized_sign(c: &Rational, b: Complex64, v: Complex64, n: usize) -> i32 {
    let x = if c.is_one() {
        (v * i_pow(-(n_squared(n) + 1))).re
    } else {
        (b * i_pow(n_squared(n))).re
    };
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

/// Template block of a monomial with value `l`.
pub fn template_block(l: &Rational, n: usize) -> VariationBlock {
    let eps = epsilon_of(l, n);
    let e = eps as f64;
    let c = unit_interval(l);
    let lambda = cis(l);
    let n2 = n_squared(n);
    let (b, v) = if c.is_one() {
        (Complex64::zero(), i_pow(n2 + 1) * e)
    } else {
        (i_pow(-n2) * e, (lambda - 1.0) * i_pow(n2) * e)
    };
    VariationBlock {
        c,
        l: Some(l.clone()),
        b,
        h: lambda,
        v,
        epsilon: eps,
    }
}

/// One block per `α ∈ Λ` with eigenvalue `e^{2πi l(α)}` and sign `(−1)^{[l(α)]+n}`.
pub fn variation_structure(basis: &QuotientBasis, w: &WeightSystem, n: usize) -> VariationStructure {
    VariationStructure {
        blocks: basis
            .exponents
            .iter()
            .map(|a| template_block(&l_value(a, w), n))
            .collect(),
        n,
    }
}

/// `V(z^a) = ⊕_k (ℂ; 1, e^{2πik/a}, e^{2πik/a} − 1)`.
pub fn one_variable_blocks(a: u32) -> VariationStructure {
    let blocks = (1..a)
        .map(|k| {
            let c = Rational::new(k.into(), a.into());
            let h = cis(&c);
            VariationBlock {
                l: Some(c.clone()),
                c,
                b: Complex64::one(),
                h,
                v: h - 1.0,
                epsilon: 1,
            }
        })
        .collect();
    VariationStructure { blocks, n: 0 }
}

/// `ι_n = i^{−n} (−1)^{n(n+1)/2}`: `1` for even `n`, `i` for odd `n`.
pub fn brieskorn_phase(n: usize) -> Complex64 {
    let s = if (n * (n + 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    i_pow(-(n as i64 % 4)) * s
}

/// `sin(πS) / (2^n ∏ sin(πk_j/a_j))` with `S = Σ k_j/a_j`.
pub fn sine_quotient(a: &[u32], k: &[u32]) -> f64 {
    let n = a.len() - 1;
    let s: Rational = k
        .iter()
        .zip(a)
        .map(|(&kj, &aj)| Rational::new(kj.into(), aj.into()))
        .fold(Rational::zero(), |x, y| x + y);
    let num = sin_pi(&s);
    let den: f64 = k
        .iter()
        .zip(a)
        .map(|(&kj, &aj)| sin_pi(&Rational::new(kj.into(), aj.into())))
        .product();
    num / (2f64.powi(n as i32) * den)
}

/// `sin(πq)`, reduced mod 2 first and exactly zero at integers.
fn sin_pi(q: &Rational) -> f64 {
    let f = frac(q);
    if f.is_zero() {
        return 0.0;
    }
    let sign = if floor(q).is_odd() { -1.0 } else { 1.0 };
    sign * (PI * f.to_f64().unwrap()).sin()
}

/// A Brieskorn block together with the data used to cross-check it.
#[derive(Clone, Debug)]
pub struct BrieskornBlock {
    pub k: Vec<u32>,
    pub block: VariationBlock,
    /// `(h − 1)/V`, or zero when `h = 1`.
    pub quotient: Complex64,
    pub sine_quotient: f64,
}

/// `V_k = (−1)^{n(n+1)/2} ∏ (e^{2πik_j/a_j} − 1)`.
pub fn brieskorn_variation(a: &[u32], k: &[u32]) -> Complex64 {
    let n = a.len() - 1;
    let sign = if (n * (n + 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    k.iter()
        .zip(a)
        .map(|(&kj, &aj)| cis(&Rational::new(kj.into(), aj.into())) - 1.0)
        .fold(Complex64::new(sign, 0.0), |x, y| x * y)
}

pub fn brieskorn_block_data(a: &[u32]) -> Vec<BrieskornBlock> {
    let basis = brieskorn_basis(a).expect("exponents at least 2");
    let n = a.len() - 1;
    basis
        .exponents
        .iter()
        .map(|alpha| {
            let k: Vec<u32> = alpha.exponents().iter().map(|e| e + 1).collect();
            let s: Rational = k
                .iter()
                .zip(a)
                .map(|(&kj, &aj)| Rational::new(kj.into(), aj.into()))
                .fold(Rational::zero(), |x, y| x + y);
            let c = unit_interval(&s);
            let h = cis(&s);
            let v = brieskorn_variation(a, &k);
            let quotient = if c.is_one() {
                Complex64::zero()
            } else {
                (h - 1.0) / v
            };
            let epsilon = normalized_sign(&c, quotient, v, n);
            BrieskornBlock {
                sine_quotient: sine_quotient(a, &k),
                k,
                quotient,
                block: VariationBlock {
                    c,
                    l: Some(s),
                    b: quotient,
                    h,
                    v,
                    epsilon,
                },
            }
        })
        .collect()
}

/// Blocks `(h_k, b_k, V_k)` of `Σ z_j^{a_j}`, in the order of the monomial basis.
pub fn brieskorn_blocks(a: &[u32]) -> VariationStructure {
    let data = brieskorn_block_data(a);
    let n = a.len() - 1;
    let phase = brieskorn_phase(n);
    for d in &data {
        debug_assert!(
            (d.quotient - phase * d.sine_quotient).norm() <= 1e-9 * (1.0 + d.sine_quotient.abs()),
            "Brieskorn block identity fails at k = {:?}",
            d.k
        );
    }
    VariationStructure {
        blocks: data.into_iter().map(|d| d.block).collect(),
        n,
    }
}

/// Tensor product of variation structures via the Seifert form `S = V^{-1}`.
pub fn sebastiani_thom(
    g: &VariationStructure,
    h: &VariationStructure,
) -> Result<VariationStructure, SpectralError> {
    let n = g.n + h.n + 1;
    let sign = if ((g.n + 1) * (h.n + 1)).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut blocks = Vec::with_capacity(g.len() * h.len());
    for bg in &g.blocks {
        for bh in &h.blocks {
            if bg.v.norm() == 0.0 || bh.v.norm() == 0.0 {
                return Err(SpectralError::NonSimpleBlock);
            }
            let s = sign / (bg.v * bh.v);
            let v = s.inv();
            let c = unit_interval(&(&bg.c + &bh.c));
            let lambda = cis(&c);
            let b = if c.is_one() {
                Complex64::zero()
            } else {
                (lambda - 1.0) / v
            };
            let l = match (&bg.l, &bh.l) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            };
            blocks.push(VariationBlock {
                epsilon: normalized_sign(&c, b, v, n),
                c,
                l,
                b,
                h: lambda,
                v,
            });
        }
    }
    Ok(VariationStructure { blocks, n })
}

/// `Σ ε` over blocks with `b ≠ 0`; for odd `n` a formal signature.
pub fn signature_of_b(vs: &VariationStructure) -> i64 {
    vs.blocks
        .iter()
        .filter(|b| !b.is_unit_eigenvalue())
        .map(|b| b.epsilon as i64)
        .sum()
}
