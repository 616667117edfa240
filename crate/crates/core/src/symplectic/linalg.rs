//! Small dense complex linear algebra: a cyclic Jacobi eigensolver for
//! hermitian matrices and an eigensolver for unitary matrices built on it.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::SymplecticError;

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |U U* − I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(u * u.adjoint() - identity(u.nrows())))
}

/// Eigen-decomposition `A = V diag(λ) V*` of a hermitian matrix by cyclic
/// Jacobi rotations. Eigenvalues are ascending; eigenvectors are the columns.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    assert!(a.is_square(), "hermitian_eigen needs a square matrix");
    let mut a = a.clone();
    // Symmetrize against rounding in the input.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = identity(n);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 || r <= 1e-18 * scale {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / r; // e^{iφ}
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag(1, e^{-iφ}) [[c, s], [-s, c]]
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;
                rotate(&mut a, &mut v, p, q, g_pp, g_pq, g_qp, g_qq);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (values, vectors)
}

#[allow(clippy::too_many_arguments)]
fn rotate(
    a: &mut CMatrix,
    v: &mut CMatrix,
    p: usize,
    q: usize,
    g_pp: Complex64,
    g_pq: Complex64,
    g_qp: Complex64,
    g_qq: Complex64,
) {
    let n = a.nrows();
    // A <- A G
    for k in 0..n {
        let x = a[(k, p)];
        let y = a[(k, q)];
        a[(k, p)] = x * g_pp + y * g_qp;
        a[(k, q)] = x * g_pq + y * g_qq;
    }
    // A <- G* A
    for k in 0..n {
        let x = a[(p, k)];
        let y = a[(q, k)];
        a[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
        a[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    for k in 0..n {
        let x = v[(k, p)];
        let y = v[(k, q)];
        v[(k, p)] = x * g_pp + y * g_qp;
        v[(k, q)] = x * g_pq + y * g_qq;
    }
}

/// Eigenvalues and orthonormal eigenvectors of a unitary matrix.
///
/// Diagonalizes `(U + U*)/2`, then within every cluster of equal real parts
/// (tolerance `1e-9`) diagonalizes the restriction of `(U − U*)/2i`.
/// Eigenvalues are sorted by argument in `(−π, π]`.
pub fn unitary_eigen(u: &CMatrix) -> Result<(Vec<Complex64>, CMatrix), SymplecticError> {
    let defect = unitarity_defect(u);
    if defect > 1e-10 {
        return Err(SymplecticError::NotUnitary { defect });
    }
    let n = u.nrows();
    if n == 0 {
        return Ok((Vec::new(), identity(0)));
    }
    let ua = u.adjoint();
    let herm = (u + &ua) * Complex64::new(0.5, 0.0);
    let skew = (u - &ua) * Complex64::new(0.0, -0.5);
    let (re, q) = hermitian_eigen(&herm);

    let mut vectors = CMatrix::zeros(n, n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && re[end] - re[end - 1] <= 1e-9 {
            end += 1;
        }
        let qc = q.columns(start, end - start).into_owned();
        let k = qc.adjoint() * &skew * &qc;
        let (_, w) = hermitian_eigen(&k);
        let block = &qc * w;
        vectors.columns_mut(start, end - start).copy_from(&block);
        start = end;
    }

    let mut pairs: Vec<(Complex64, usize)> = (0..n)
        .map(|j| {
            let x = vectors.column(j);
            let lam = (x.adjoint() * u * x)[(0, 0)];
            (lam, j)
        })
        .collect();
    pairs.sort_by(|(a, i), (b, j)| {
        arg_pi(*a)
            .partial_cmp(&arg_pi(*b))
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(j))
    });
    let values = pairs.iter().map(|(l, _)| *l).collect();
    let sorted = CMatrix::from_fn(n, n, |r, c| vectors[(r, pairs[c].1)]);
    Ok((values, sorted))
}

/// Eigenvalues of a unitary matrix, sorted by argument.
pub fn unitary_eigenvalues(u: &CMatrix) -> Result<Vec<Complex64>, SymplecticError> {
    unitary_eigen(u).map(|(v, _)| v)
}

/// Argument in `(−π, π]`.
pub fn arg_pi(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    // atan2 returns -π for (-x, -0.0); fold it onto π.
    if a <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        a
    }
}

/// Argument in `[0, 2π)`.
pub fn arg_2pi(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Both roots of the characteristic polynomial of a 2×2 matrix.
pub fn eigenvalues_2x2(m: &CMatrix) -> [Complex64; 2] {
    assert!(m.nrows() == 2 && m.ncols() == 2, "eigenvalues_2x2 needs a 2x2 matrix");
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * 4.0).sqrt();
    let mut r = [(tr + disc) * 0.5, (tr - disc) * 0.5];
    r.sort_by(|a, b| arg_pi(*a).partial_cmp(&arg_pi(*b)).unwrap_or(Ordering::Equal));
    r
}

/// Relative eigenvalue cut-off used for numerical rank decisions.
pub const RANK_TOL: f64 = 1e-10;

/// Orthonormal basis of the column span, via the eigenvectors of `A A*`.
///
/// Eigenvalues of `A A*` at most `tol · max(1, λ_max)` count as zero.
pub fn range_basis(a: &CMatrix, tol: f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(&(a * a.adjoint()));
    let cut = tol * vals.last().copied().unwrap_or(0.0).max(1.0);
    let keep: Vec<usize> = (0..vals.len()).rev().filter(|&i| vals[i] > cut).collect();
    let mut out = CMatrix::zeros(a.nrows(), keep.len());
    for (c, &i) in keep.iter().enumerate() {
        out.set_column(c, &vecs.column(i));
    }
    normalize_phases(&mut out);
    out
}

/// Orthonormal basis of `ker A`, via the eigenvectors of `A* A`; same cut-off
/// rule as [`range_basis`].
pub fn null_basis(a: &CMatrix, tol: f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(&(a.adjoint() * a));
    let cut = tol * vals.last().copied().unwrap_or(0.0).max(1.0);
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] <= cut).collect();
    let mut out = CMatrix::zeros(a.ncols(), keep.len());
    for (c, &i) in keep.iter().enumerate() {
        out.set_column(c, &vecs.column(i));
    }
    normalize_phases(&mut out);
    out
}

/// Orthonormal basis of the orthogonal complement of the column span.
pub fn complement_basis(a: &CMatrix, tol: f64) -> CMatrix {
    null_basis(&a.adjoint(), tol)
}

/// Rotates each column so that its first entry of maximal modulus is real positive.
pub fn normalize_phases(m: &mut CMatrix) {
    for j in 0..m.ncols() {
        let mut best = ZERO;
        let mut best_norm = -1.0;
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if z.norm() > best_norm + 1e-12 {
                best = z;
                best_norm = z.norm();
            }
        }
        if best_norm > 0.0 {
            let ph = best.conj() / best_norm;
            for i in 0..m.nrows() {
                m[(i, j)] *= ph;
            }
        }
    }
}

/// Block-diagonal sum of square matrices.
pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), (b.nrows(), b.ncols())).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one() -> Complex64 {
        c(1.0, 0.0)
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        CMatrix::from_fn(n, n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        random_matrix(n, rng).qr().q()
    }

    #[test]
    fn jacobi_matches_nalgebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 3, 5, 9, 16] {
            let m = random_matrix(n, &mut rng);
            let h = &m + m.adjoint();
            let (vals, vecs) = hermitian_eigen(&h);
            let reference = h.clone().symmetric_eigen();
            let mut expected: Vec<f64> = reference.eigenvalues.iter().copied().collect();
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in vals.iter().zip(&expected) {
                assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            }
            assert!(unitarity_defect(&vecs) < 1e-12);
            let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                vals.iter().map(|&x| c(x, 0.0)),
            ));
            assert!(max_abs(&(&vecs * diag * vecs.adjoint() - &h)) < 1e-10);
        }
    }

    #[test]
    fn unitary_spectrum_identity() {
        let vals = unitary_eigenvalues(&identity(4)).unwrap();
        assert!(vals.iter().all(|z| (z - one()).norm() < 1e-14));
    }

    #[test]
    fn unit_eigenvalue_block() {
        let d = c(1.0, -0.5);
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[one() / d, c(0.0, -0.5) / d, c(0.0, -0.5) / d, one() / d],
        );
        let vals = unitary_eigenvalues(&m).unwrap();
        assert!((vals[0] - one()).norm() < 1e-12);
        assert!((vals[1] - c(0.6, 0.8)).norm() < 1e-12);
    }

    #[test]
    fn triangular_block_is_not_unitary() {
        let lam = c(0.5, 3f64.sqrt() / 2.0);
        let m = CMatrix::from_row_slice(2, 2, &[one(), one() - lam, c(0.0, 0.0), lam]);
        assert!(matches!(unitary_eigenvalues(&m), Err(SymplecticError::NotUnitary { .. })));
        let e = eigenvalues_2x2(&m);
        assert!((e[0] - one()).norm() < 1e-12);
        assert!((e[1] - lam).norm() < 1e-12);
    }

    #[test]
    fn unitary_spectrum_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 4, 7, 12, 20] {
            let u = random_unitary(n, &mut rng);
            let vals = unitary_eigenvalues(&u).unwrap();
            for z in &vals {
                assert!((z.norm() - 1.0).abs() < 1e-9);
            }
            let prod = vals.iter().fold(one(), |a, b| a * b);
            assert!((prod - u.determinant()).norm() < 1e-8);
            let w = random_unitary(n, &mut rng);
            let conj = unitary_eigenvalues(&(&w * &u * w.adjoint())).unwrap();
            for (a, b) in vals.iter().zip(&conj) {
                assert!((a - b).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn degenerate_real_parts_are_split() {
        // e^{iθ} and e^{-iθ} share a real part.
        let t = 0.7f64;
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(t.cos(), t.sin()),
            c(t.cos(), -t.sin()),
            c(-1.0, 0.0),
        ]));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = random_unitary(3, &mut rng);
        let vals = unitary_eigenvalues(&(&w * d * w.adjoint())).unwrap();
        assert!((vals[0] - c(t.cos(), -t.sin())).norm() < 1e-10);
        assert!((vals[1] - c(t.cos(), t.sin())).norm() < 1e-10);
        assert!((vals[2] - c(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn args() {
        assert_eq!(arg_pi(c(-1.0, -0.0)), std::f64::consts::PI);
        assert!((arg_2pi(c(0.0, -1.0)) - 1.5 * std::f64::consts::PI).abs() < 1e-15);
    }
}
