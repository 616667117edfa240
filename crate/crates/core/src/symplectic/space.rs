use std::sync::Arc;

use num_complex::Complex64;

use super::linalg::{
    arg_pi, complement_basis, hermitian_eigen, identity, max_abs, normalize_phases, null_basis,
    range_basis, RANK_TOL, unitarity_defect, unitary_eigenvalues, CMatrix,
};
use super::SymplecticError;

/// Eigenvalues within this distance of `−1` are dropped from the Maslov sum.
pub const MINUS_ONE_TOLERANCE: f64 = 1e-9;

const STRUCTURE_TOL: f64 = 1e-10;

#[derive(Debug)]
struct SpaceData {
    gamma: CMatrix,
    inner: CMatrix,
    /// `R` with `inner = R* R`; whitened coordinates are `R x`.
    whiten: CMatrix,
    unwhiten: CMatrix,
    gamma_w: CMatrix,
    /// Orthonormal bases (whitened coordinates) of the `±i` eigenspaces.
    k_plus: CMatrix,
    k_minus: CMatrix,
}

/// A finite-dimensional hermitian symplectic space `(ℂ^{2m}, ⟨,⟩, γ)`.
#[derive(Clone, Debug)]
pub struct HermSymplecticSpace(Arc<SpaceData>);

impl HermSymplecticSpace {
    /// Space with the standard inner product.
    pub fn new(gamma: CMatrix) -> Result<Self, SymplecticError> {
        let n = gamma.nrows();
        Self::with_inner(gamma, identity(n))
    }

    /// Space whose inner product has Gram matrix `inner`.
    pub fn with_inner(gamma: CMatrix, inner: CMatrix) -> Result<Self, SymplecticError> {
        let n = gamma.nrows();
        if !gamma.is_square() || inner.shape() != (n, n) {
            return Err(SymplecticError::InvalidStructure {
                reason: "gamma and the Gram matrix must be square of equal size".into(),
            });
        }
        if n % 2 == 1 {
            return Err(SymplecticError::InvalidStructure {
                reason: format!("dimension {} is odd", n),
            });
        }
        let chol = inner
            .clone()
            .cholesky()
            .ok_or(SymplecticError::InvalidStructure {
                reason: "Gram matrix is not hermitian positive definite".into(),
            })?;
        let whiten = chol.l().adjoint();
        let unwhiten = whiten
            .clone()
            .try_inverse()
            .ok_or(SymplecticError::InvalidStructure {
                reason: "Gram matrix is singular".into(),
            })?;
        let gamma_w = &whiten * &gamma * &unwhiten;
        let scale = 1.0 + max_abs(&gamma_w);
        if max_abs(&(&gamma_w * &gamma_w + identity(n))) > STRUCTURE_TOL * scale {
            return Err(SymplecticError::InvalidStructure {
                reason: "gamma^2 != -I".into(),
            });
        }
        if max_abs(&(gamma_w.adjoint() + &gamma_w)) > STRUCTURE_TOL * scale {
            return Err(SymplecticError::InvalidStructure {
                reason: "gamma is not skew-adjoint".into(),
            });
        }
        let half = Complex64::new(0.5, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let p_plus = (identity(n) - &gamma_w * i) * half;
        let p_minus = (identity(n) + &gamma_w * i) * half;
        let k_plus = range_basis(&p_plus, 0.5);
        let k_minus = range_basis(&p_minus, 0.5);
        if k_plus.ncols() != k_minus.ncols() {
            return Err(SymplecticError::UnbalancedEigenspaces {
                plus: k_plus.ncols(),
                minus: k_minus.ncols(),
            });
        }
        Ok(HermSymplecticSpace(Arc::new(SpaceData {
            gamma,
            inner,
            whiten,
            unwhiten,
            gamma_w,
            k_plus,
            k_minus,
        })))
    }

    /// `ℂ^{2m}` with `γ = diag(i I_m, −i I_m)`.
    pub fn standard(m: usize) -> Self {
        let mut g = CMatrix::zeros(2 * m, 2 * m);
        for j in 0..m {
            g[(j, j)] = Complex64::new(0.0, 1.0);
            g[(m + j, m + j)] = Complex64::new(0.0, -1.0);
        }
        Self::new(g).expect("standard structure is valid")
    }

    pub fn dim(&self) -> usize {
        self.0.gamma.nrows()
    }

    /// Half the dimension; the dimension of every Lagrangian.
    pub fn half_dim(&self) -> usize {
        self.dim() / 2
    }

    pub fn gamma(&self) -> &CMatrix {
        &self.0.gamma
    }

    pub fn inner(&self) -> &CMatrix {
        &self.0.inner
    }

    /// `⟨x, γ y⟩` for all column pairs.
    pub fn symplectic_pairing(&self, x: &CMatrix, y: &CMatrix) -> CMatrix {
        x.adjoint() * &self.0.inner * &self.0.gamma * y
    }

    fn to_white(&self, x: &CMatrix) -> CMatrix {
        &self.0.whiten * x
    }

    fn dewhiten(&self, x: &CMatrix) -> CMatrix {
        &self.0.unwhiten * x
    }

    fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.dim() == other.dim()
                && max_abs(&(&self.0.gamma - &other.0.gamma)) <= STRUCTURE_TOL
                && max_abs(&(&self.0.inner - &other.0.inner)) <= STRUCTURE_TOL)
    }
}

/// Bases of `K^±`, orthonormal for the space's inner product.
///
/// The projectors `P_± = (I ∓ iγ)/2` map onto these spans.
pub fn split_eigenspaces(h: &HermSymplecticSpace) -> (CMatrix, CMatrix) {
    (h.dewhiten(&h.0.k_plus), h.dewhiten(&h.0.k_minus))
}

/// A Lagrangian subspace, stored by a basis in the coordinates of its space.
#[derive(Clone, Debug)]
pub struct Lagrangian {
    pub basis: CMatrix,
    space: HermSymplecticSpace,
}

impl Lagrangian {
    pub fn new(space: &HermSymplecticSpace, basis: CMatrix) -> Result<Self, SymplecticError> {
        if basis.nrows() != space.dim() {
            return Err(SymplecticError::DimensionMismatch {
                left: basis.nrows(),
                right: space.dim(),
            });
        }
        let l = Lagrangian {
            basis,
            space: space.clone(),
        };
        let rank = range_basis(&space.to_white(&l.basis), RANK_TOL).ncols();
        if rank != space.half_dim() {
            return Err(SymplecticError::NotLagrangian {
                residual: f64::INFINITY,
            });
        }
        let residual = l.isotropy_defect();
        if residual > 1e-8 {
            return Err(SymplecticError::NotLagrangian { residual });
        }
        Ok(l)
    }

    pub fn space(&self) -> &HermSymplecticSpace {
        &self.space
    }

    /// `max |⟨x, γy⟩|` over orthonormalized basis vectors.
    pub fn isotropy_defect(&self) -> f64 {
        let w = range_basis(&self.space.to_white(&self.basis), RANK_TOL);
        max_abs(&(w.adjoint() * &self.space.0.gamma_w * &w))
    }

    pub fn is_lagrangian(&self, tol: f64) -> bool {
        range_basis(&self.space.to_white(&self.basis), RANK_TOL).ncols() == self.space.half_dim()
            && self.isotropy_defect() <= tol
    }

    /// Span equality with another subspace of the same space.
    pub fn same_span(&self, other: &Lagrangian, tol: f64) -> bool {
        let a = range_basis(&self.space.to_white(&self.basis), RANK_TOL);
        let b = range_basis(&other.space.to_white(&other.basis), RANK_TOL);
        if a.ncols() != b.ncols() {
            return false;
        }
        let proj = &a * a.adjoint();
        max_abs(&(&proj * &b - &b)) <= tol
    }

    /// Image under a linear map of the space.
    pub fn transform(&self, m: &CMatrix) -> Result<Lagrangian, SymplecticError> {
        Lagrangian::new(&self.space, m * &self.basis)
    }
}

/// `L = {x + φ(x) : x ∈ K⁺}`; returns `φ` in the bases of [`split_eigenspaces`].
pub fn phi_of_lagrangian(l: &Lagrangian) -> Result<CMatrix, SymplecticError> {
    let h = &l.space;
    let w = range_basis(&h.to_white(&l.basis), RANK_TOL);
    let xp = h.0.k_plus.adjoint() * &w;
    let xm = h.0.k_minus.adjoint() * &w;
    let (sv, _) = hermitian_eigen(&(xp.adjoint() * &xp));
    if sv.first().is_some_and(|&s| s < 1e-12) {
        return Err(SymplecticError::NotAGraph);
    }
    let inv = xp.try_inverse().ok_or(SymplecticError::NotAGraph)?;
    Ok(xm * inv)
}

/// The Lagrangian whose unitary is `phi`.
pub fn lagrangian_of_phi(
    h: &HermSymplecticSpace,
    phi: &CMatrix,
) -> Result<Lagrangian, SymplecticError> {
    if phi.shape() != (h.half_dim(), h.half_dim()) {
        return Err(SymplecticError::DimensionMismatch {
            left: phi.nrows(),
            right: h.half_dim(),
        });
    }
    let defect = unitarity_defect(phi);
    if defect > 1e-10 {
        return Err(SymplecticError::NotUnitary { defect });
    }
    let white = &h.0.k_plus + &h.0.k_minus * phi;
    Lagrangian::new(h, h.dewhiten(&white))
}

/// `m(V, W) = −(1/π) Σ Arg λ` over `λ ∈ spec(−φ(V)φ(W)*)`, `λ ≠ −1`.
pub fn maslov_m(v: &Lagrangian, w: &Lagrangian) -> Result<f64, SymplecticError> {
    if v.space.dim() != w.space.dim() {
        return Err(SymplecticError::DimensionMismatch {
            left: v.space.dim(),
            right: w.space.dim(),
        });
    }
    if !v.space.same_as(&w.space) {
        return Err(SymplecticError::SpaceMismatch);
    }
    let pv = phi_of_lagrangian(v)?;
    let pw = phi_of_lagrangian(w)?;
    let m = -(pv * pw.adjoint());
    maslov_of_unitary(&m)
}

/// `−(1/π) Σ Arg λ` over the spectrum of `u`, skipping `λ ≈ −1`.
pub fn maslov_of_unitary(u: &CMatrix) -> Result<f64, SymplecticError> {
    let vals = unitary_eigenvalues(u)?;
    let s: f64 = vals
        .iter()
        .filter(|z| (*z + Complex64::new(1.0, 0.0)).norm() > MINUS_ONE_TOLERANCE)
        .map(|z| arg_pi(*z))
        .sum();
    Ok(-s / std::f64::consts::PI)
}

/// `Λ^W = (Λ ∩ W⁰)/W`, realized on `W⁰ ∩ W^⊥ = (W + γW)^⊥`.
///
/// Returns the quotient space (standard inner product in an orthonormal
/// basis of that complement) and the reduced Lagrangian in its coordinates.
pub fn symplectic_reduction(
    l: &Lagrangian,
    w: &CMatrix,
) -> Result<(HermSymplecticSpace, Lagrangian), SymplecticError> {
    let h = &l.space;
    if w.nrows() != h.dim() {
        return Err(SymplecticError::DimensionMismatch {
            left: w.nrows(),
            right: h.dim(),
        });
    }
    let ww = range_basis(&h.to_white(w), RANK_TOL);
    if ww.ncols() == 0 {
        return Ok((h.clone(), l.clone()));
    }
    let g = &h.0.gamma_w;
    let residual = max_abs(&(ww.adjoint() * g * &ww));
    if residual > 1e-8 {
        return Err(SymplecticError::NotIsotropic { residual });
    }
    let gw = g * &ww;
    let mut span = CMatrix::zeros(h.dim(), 2 * ww.ncols());
    span.columns_mut(0, ww.ncols()).copy_from(&ww);
    span.columns_mut(ww.ncols(), ww.ncols()).copy_from(&gw);
    let q = complement_basis(&span, RANK_TOL);
    let gamma_q = q.adjoint() * g * &q;
    let quotient = HermSymplecticSpace::new(gamma_q)?;

    let lw = range_basis(&h.to_white(&l.basis), RANK_TOL);
    // Coefficients c with γW ⟂ L c, i.e. L c ∈ W⁰.
    let coeffs = null_basis(&(gw.adjoint() * &lw), RANK_TOL);
    let inter = &lw * coeffs;
    let mut projected = range_basis(&(q.adjoint() * inter), RANK_TOL);
    normalize_phases(&mut projected);
    let reduced = Lagrangian::new(&quotient, projected)?;
    Ok((quotient, reduced))
}
