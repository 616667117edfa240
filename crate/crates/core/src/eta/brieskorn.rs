use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{EtaError, EtaValue};
use crate::milnor::check_exponents;
use crate::poly::Rational;
use crate::spectral::{floor, frac, parity_sign};

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Splits `0..total` into at most `parts` contiguous ranges.
fn chunks(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    let step = total.div_ceil(parts);
    (0..parts)
        .map(|i| (i * step, ((i + 1) * step).min(total)))
        .filter(|(s, e)| s < e)
        .collect()
}

/// Full enumeration of `Λ = {1 ≤ k_j ≤ a_j − 1}`.
pub fn eta_brieskorn_naive(a: &[u32]) -> Result<EtaValue, EtaError> {
    eta_brieskorn_naive_par(a, default_threads())
}

pub fn eta_brieskorn_naive_par(a: &[u32], threads: usize) -> Result<EtaValue, EtaError> {
    check_exponents(a)?;
    let n = a.len() - 1;
    let total: u64 = a.iter().map(|&x| (x - 1) as u64).product();
    let partials: Vec<EtaValue> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks(total, threads)
            .into_iter()
            .map(|(start, end)| scope.spawn(move || naive_range(a, n, start, end)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(partials.into_iter().fold(EtaValue::zero(), |acc, p| acc + p))
}

fn naive_range(a: &[u32], n: usize, start: u64, end: u64) -> EtaValue {
    let fracs: Vec<Vec<Rational>> = a
        .iter()
        .map(|&aj| (1..aj).map(|k| Rational::new(k.into(), aj.into())).collect())
        .collect();
    let sign_n: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut r0 = Rational::zero();
    let mut r1 = BigInt::zero();
    for idx in start..end {
        let mut rest = idx;
        let mut s = Rational::zero();
        for (j, &aj) in a.iter().enumerate().rev() {
            let m = (aj - 1) as u64;
            s += &fracs[j][(rest % m) as usize];
            rest /= m;
        }
        let fl = floor(&s);
        if s.is_integer() {
            r1 -= parity_sign(&(fl + n)) as i64;
        } else {
            let term = Rational::one() - Rational::from_integer(2.into()) * frac(&s);
            let sign = sign_n * parity_sign(&fl) as i64;
            if sign > 0 {
                r0 += term;
            } else {
                r0 -= term;
            }
        }
    }
    EtaValue::new(r0, Rational::from_integer(r1))
}

/// Per-variable residue histograms over `ℤ/(2L)`, `L = lcm(a_j)`.
///
/// Histogram `j` counts `k_j ∈ [1, a_j − 1]` by `k_j · L/a_j mod 2L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrieskornLattice {
    pub a: Vec<u32>,
    pub l: u64,
    pub residues: Vec<Vec<u64>>,
}

impl BrieskornLattice {
    pub fn new(a: &[u32]) -> Result<Self, EtaError> {
        check_exponents(a)?;
        let l = a.iter().fold(1u64, |acc, &x| acc.lcm(&(x as u64)));
        let modulus = 2 * l;
        let residues = a
            .iter()
            .map(|&aj| {
                let mut h = vec![0u64; modulus as usize];
                let step = l / aj as u64;
                for k in 1..aj as u64 {
                    h[((k * step) % modulus) as usize] += 1;
                }
                h
            })
            .collect();
        Ok(BrieskornLattice {
            a: a.to_vec(),
            l,
            residues,
        })
    }

    pub fn modulus(&self) -> u64 {
        2 * self.l
    }

    /// Counts of lattice points by `Σ k_j L/a_j mod 2L`.
    pub fn convolve(&self, threads: usize) -> Vec<u128> {
        let m = self.modulus() as usize;
        let mut acc = vec![0u128; m];
        acc[0] = 1;
        for h in &self.residues {
            let sparse: Vec<(usize, u128)> = h
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(r, &c)| (r, c as u128))
                .collect();
            acc = convolve_sparse(&acc, &sparse, threads);
        }
        acc
    }

    /// Exact sum of the lattice summand over all residues.
    pub fn eta(&self, threads: usize) -> EtaValue {
        let counts = self.convolve(threads);
        let l = self.l;
        let n = self.a.len() - 1;
        let sign_n: i128 = if n.is_multiple_of(2) { 1 } else { -1 };
        let mut r0: i128 = 0;
        let mut r1: i128 = 0;
        for (r, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let r = r as u64;
            let c = c as i128;
            let q = r / l;
            let rem = r % l;
            if rem == 0 {
                // s = q is an integer; the sign is −(−1)^{q+n}.
                let s: i128 = if (q as usize + n).is_multiple_of(2) { 1 } else { -1 };
                r1 -= s * c;
            } else {
                let s: i128 = if q.is_multiple_of(2) { 1 } else { -1 };
                r0 += sign_n * s * c * (l as i128 - 2 * rem as i128);
            }
        }
        EtaValue::new(
            Rational::new(BigInt::from(r0), BigInt::from(l)),
            Rational::from_integer(BigInt::from(r1)),
        )
    }
}

/// Cyclic convolution of a dense and a sparse histogram.
fn convolve_sparse(dense: &[u128], sparse: &[(usize, u128)], threads: usize) -> Vec<u128> {
    let m = dense.len();
    let work = |start: usize, end: usize| {
        let mut out = vec![0u128; m];
        for (i, &d) in dense.iter().enumerate().take(end).skip(start) {
            if d == 0 {
                continue;
            }
            for &(r, c) in sparse {
                let t = i + r;
                out[if t >= m { t - m } else { t }] += d * c;
            }
        }
        out
    };
    let ranges = chunks(m as u64, threads);
    if ranges.len() <= 1 {
        return work(0, m);
    }
    let partials: Vec<Vec<u128>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(s, e)| {
                let work = &work;
                scope.spawn(move || work(s as usize, e as usize))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = vec![0u128; m];
    for p in partials {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    out
}

/// The lattice sum regrouped by `s mod 2`.
pub fn eta_brieskorn_fast(a: &[u32]) -> Result<EtaValue, EtaError> {
    eta_brieskorn_fast_par(a, default_threads())
}

pub fn eta_brieskorn_fast_par(a: &[u32], threads: usize) -> Result<EtaValue, EtaError> {
    Ok(BrieskornLattice::new(a)?.eta(threads))
}
