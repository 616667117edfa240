//! Seeded random structures for property tests and the CLI demo.

use num_complex::Complex64;
use rand::Rng;

use super::linalg::{identity, CMatrix};
use super::space::{lagrangian_of_phi, HermSymplecticSpace, Lagrangian};

pub fn random_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// Unitary factor of a random square matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    if n == 0 {
        return identity(0);
    }
    random_matrix(n, n, rng).qr().q()
}

/// `γ = Q diag(iI, −iI) Q*` for a random unitary `Q`.
pub fn random_space<R: Rng>(m: usize, rng: &mut R) -> HermSymplecticSpace {
    let q = random_unitary(2 * m, rng);
    let g0 = HermSymplecticSpace::standard(m).gamma().clone();
    HermSymplecticSpace::new(&q * g0 * q.adjoint()).expect("conjugated structure is valid")
}

/// Graph of a random unitary, with a random change of basis.
pub fn random_lagrangian<R: Rng>(h: &HermSymplecticSpace, rng: &mut R) -> Lagrangian {
    let m = h.half_dim();
    let l = lagrangian_of_phi(h, &random_unitary(m, rng)).expect("graph of a unitary");
    let mix = random_matrix(m, m, rng) + identity(m) * Complex64::new(2.0, 0.0);
    Lagrangian::new(h, &l.basis * mix).unwrap_or(l)
}

/// `k` random vectors inside a random Lagrangian: an isotropic subspace.
pub fn random_isotropic<R: Rng>(h: &HermSymplecticSpace, k: usize, rng: &mut R) -> CMatrix {
    let l = random_lagrangian(h, rng);
    &l.basis * random_matrix(h.half_dim(), k, rng)
}
