use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{rational_to_string, PolyError, Polynomial, Rational};

/// Weights `w_i = β_i / β` of a quasihomogeneous polynomial.
///
/// `β` is the least common denominator of the weights, so `gcd(β_0, ..., β_n, β) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub weights: Vec<Rational>,
    pub beta: u64,
    pub beta_i: Vec<u64>,
}

impl WeightSystem {
    /// Builds the system from positive rational weights.
    pub fn from_weights(weights: Vec<Rational>) -> Result<Self, PolyError> {
        for (index, w) in weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(PolyError::NonPositiveWeight {
                    index,
                    value: rational_to_string(w),
                });
            }
        }
        let beta = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let beta_i = weights
            .iter()
            .map(|w| {
                (w.numer() * (&beta / w.denom()))
                    .to_u64()
                    .expect("weight numerator overflows u64")
            })
            .collect();
        Ok(WeightSystem {
            weights,
            beta: beta.to_u64().expect("weight denominator overflows u64"),
            beta_i,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `∏ (1/w_i − 1)`, the Milnor number predicted by the weights.
    pub fn milnor_product(&self) -> Rational {
        self.weights
            .iter()
            .map(|w| w.recip() - Rational::one())
            .fold(Rational::one(), |a, b| a * b)
    }

    /// Weighted degree `Σ e_i w_i` of an exponent vector.
    pub fn degree_of(&self, exponents: &[u32]) -> Rational {
        exponents
            .iter()
            .zip(&self.weights)
            .map(|(&e, w)| w * Rational::from_integer(e.into()))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Solves `Σ e_i w_i = 1` over the support of `f`.
pub fn weights_of(f: &Polynomial) -> Result<WeightSystem, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let n = f.num_vars();
    // Augmented rows [e_0 .. e_n | 1].
    let mut rows: Vec<Vec<Rational>> = f
        .support()
        .map(|m| {
            let mut r: Vec<Rational> = m
                .exponents()
                .iter()
                .map(|&e| Rational::from_integer(e.into()))
                .collect();
            r.push(Rational::one());
            r
        })
        .collect();

    let pivots = row_reduce(&mut rows, n);
    if rows
        .iter()
        .skip(pivots.len())
        .any(|r| !r[n].is_zero())
    {
        return Err(PolyError::NotQuasihomogeneous);
    }
    if pivots.len() < n {
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let free_directions = free
            .iter()
            .map(|&fc| {
                let mut v = vec![Rational::zero(); n];
                v[fc] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rows[r][fc].clone();
                }
                v.iter().map(rational_to_string).collect()
            })
            .collect();
        return Err(PolyError::WeightsUnderdetermined { free_directions });
    }
    let mut weights = vec![Rational::zero(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        weights[pc] = rows[r][n].clone();
    }
    let ws = WeightSystem::from_weights(weights)?;
    let half = Rational::new(1.into(), 2.into());
    for (i, w) in ws.weights.iter().enumerate() {
        if w > &half {
            log::warn!(
                "weight of {} is {} > 1/2; the singularity is not genuine in that variable",
                f.vars()[i],
                rational_to_string(w)
            );
        }
    }
    Ok(ws)
}

/// Reduced row echelon form over the first `cols` columns; returns pivot columns.
fn row_reduce(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..rows[i].len() {
                let delta = &factor * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}
