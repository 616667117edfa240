//! Matrix oracle for the eta-invariant.
//!
//! The middle cohomology of the doubled fibre is modelled by one
//! four-dimensional summand per variation block, with orthonormal coordinates
//! `[p, q, p̄, q̄]` and `γ̂ = diag(i, −i, −i, i)`. Unbarred vectors carry the
//! variation block (`θ ↦ λθ`, `ω ↦ Vθ + ω`), barred vectors are fixed, and the
//! glueing Lagrangian is the diagonal `span(p + p̄, q + q̄)`. The eta-invariant is
//! the averaged Maslov index `m(ρ̂L, L)`.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::spectral::{VariationBlock, VariationStructure};
use crate::symplectic::{
    direct_sum, eigenvalues_2x2, maslov_m, unitary_eigenvalues, CMatrix, HermSymplecticSpace,
    Lagrangian, SymplecticError,
};

/// How the unipotent `λ = 1` blocks are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleMode {
    /// Transported projector of the general quasihomogeneous formula.
    General,
    /// The sign convention of the Brieskorn lattice sum.
    Brieskorn,
}

impl OracleMode {
    pub fn name(self) -> &'static str {
        match self {
            OracleMode::General => "general",
            OracleMode::Brieskorn => "brieskorn",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Plus,
    Minus,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelKind {
    Theta,
    Omega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub block: usize,
    pub kind: LabelKind,
    pub barred: bool,
}

/// The `4μ` labels `θ_i, ω_i, θ̄_i, ω̄_i` and the class of every block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleBasis {
    pub labels: Vec<Label>,
    pub classes: Vec<ClassTag>,
}

impl DoubleBasis {
    pub fn class_members(&self, tag: ClassTag) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i] == tag)
            .collect()
    }
}

/// The `4μ`-dimensional middle-degree model.
#[derive(Clone, Debug)]
pub struct DoubleSpace {
    pub space: HermSymplecticSpace,
    pub basis: DoubleBasis,
    /// `e_i = p_i`, `f_i = p̄_i`, `ẽ_i = q̄_i`, `f̃_i = q_i` as columns, in the
    /// orthonormal coordinates.
    pub e: CMatrix,
    pub f: CMatrix,
    pub e_tilde: CMatrix,
    pub f_tilde: CMatrix,
}

impl DoubleSpace {
    pub fn mu(&self) -> usize {
        self.basis.classes.len()
    }
}

/// `ρ̂` in the label basis and in orthonormal coordinates.
#[derive(Clone, Debug)]
pub struct MonodromyAction {
    pub mode: OracleMode,
    pub label_matrix: CMatrix,
    pub matrix: CMatrix,
    /// Label vectors (columns, same order as [`DoubleBasis::labels`]) in
    /// orthonormal coordinates. Their Gram matrix is not the identity.
    pub label_vectors: CMatrix,
}

/// One transported 2×2 block of `φ(ρ̂L) φ(L)*`.
#[derive(Clone, Debug)]
pub struct TransportedBlock {
    pub class: ClassTag,
    /// Computed from the model, in the bases `K⁺ = (p, q̄)`, `K⁻ = (p̄, q)`.
    pub computed: CMatrix,
    /// Closed-form matrix for the class.
    pub golden: CMatrix,
}

fn class_of(b: &VariationBlock) -> ClassTag {
    if b.is_unit_eigenvalue() {
        ClassTag::Zero
    } else if b.epsilon > 0 {
        ClassTag::Plus
    } else {
        ClassTag::Minus
    }
}

fn block_gamma() -> CMatrix {
    let i = Complex64::i();
    CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![i, -i, -i, i]))
}

fn block_lagrangian_basis() -> CMatrix {
    let (o, z) = (Complex64::one(), Complex64::zero());
    CMatrix::from_row_slice(4, 2, &[o, z, z, o, o, z, z, o])
}

fn unit(k: usize) -> nalgebra::DVector<Complex64> {
    let mut v = nalgebra::DVector::zeros(2);
    v[k] = Complex64::one();
    v
}

/// `κ'` for a unipotent block.
fn unipotent_kappa(b: &VariationBlock, mode: OracleMode) -> f64 {
    let eps = b.epsilon as f64;
    match mode {
        OracleMode::General => -eps,
        OracleMode::Brieskorn => eps,
    }
}

/// The 2×2 action `g` on `(p, q)` and the vectors `θ, ω` in those coordinates.
fn block_model(
    b: &VariationBlock,
    mode: OracleMode,
) -> (CMatrix, nalgebra::DVector<Complex64>, nalgebra::DVector<Complex64>) {
    if b.is_unit_eigenvalue() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let theta = nalgebra::DVector::from_vec(vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)]);
        let h = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::one(),
            -Complex64::one(),
        ]));
        let kappa = unipotent_kappa(b, mode);
        let g = CMatrix::identity(2, 2)
            + &theta * theta.adjoint() * h * Complex64::new(0.0, kappa);
        let alpha = -Complex64::i() * b.v / kappa;
        let omega = nalgebra::DVector::from_vec(vec![alpha * s, -alpha * s]);
        (g, theta, omega)
    } else {
        let (theta, u1) = if b.epsilon > 0 {
            (unit(1), unit(0))
        } else {
            (unit(0), unit(1))
        };
        let g = &theta * theta.adjoint() * b.h + &u1 * u1.adjoint();
        let kappa = b.v / (b.h - Complex64::one());
        let omega = &u1 + &theta * kappa;
        (g, theta, omega)
    }
}

/// Builds the doubled space with the glueing data; `γ̂` is block diagonal.
pub fn build_double(vs: &VariationStructure) -> DoubleSpace {
    let mu = vs.len();
    let gamma = direct_sum(&vec![block_gamma(); mu]);
    let space = HermSymplecticSpace::new(gamma).expect("block structure is valid");
    let mut labels = Vec::with_capacity(4 * mu);
    for block in 0..mu {
        for barred in [false, true] {
            for kind in [LabelKind::Theta, LabelKind::Omega] {
                labels.push(Label {
                    block,
                    kind,
                    barred,
                });
            }
        }
    }
    let classes = vs.blocks.iter().map(class_of).collect();
    let pick = |offset: usize| {
        let mut m = CMatrix::zeros(4 * mu, mu);
        for i in 0..mu {
            m[(4 * i + offset, i)] = Complex64::one();
        }
        m
    };
    DoubleSpace {
        space,
        basis: DoubleBasis { labels, classes },
        e: pick(0),
        f_tilde: pick(1),
        f: pick(2),
        e_tilde: pick(3),
    }
}

/// `ρ̂ᵉ` fixing barred vectors and acting by the variation blocks on the rest.
pub fn monodromy_action(ds: &DoubleSpace, vs: &VariationStructure, mode: OracleMode) -> MonodromyAction {
    let mu = ds.mu();
    assert_eq!(mu, vs.len(), "double space and variation structure disagree");
    let mut label_blocks = Vec::with_capacity(mu);
    let mut ortho_blocks = Vec::with_capacity(mu);
    let mut vector_blocks = Vec::with_capacity(mu);
    for b in &vs.blocks {
        // Label order per block: θ, ω, θ̄, ω̄.
        let mut lm = CMatrix::identity(4, 4);
        lm[(0, 0)] = b.h;
        lm[(0, 1)] = b.v;
        label_blocks.push(lm);

        let (g, theta, omega) = block_model(b, mode);
        let mut m = CMatrix::identity(4, 4);
        m.view_mut((0, 0), (2, 2)).copy_from(&g);
        ortho_blocks.push(m);

        let mut vecs = CMatrix::zeros(4, 4);
        vecs.view_mut((0, 0), (2, 1)).copy_from(&theta);
        vecs.view_mut((0, 1), (2, 1)).copy_from(&omega);
        vecs.view_mut((2, 2), (2, 1)).copy_from(&theta);
        vecs.view_mut((2, 3), (2, 1)).copy_from(&omega);
        vector_blocks.push(vecs);
    }
    MonodromyAction {
        mode,
        label_matrix: direct_sum(&label_blocks),
        matrix: direct_sum(&ortho_blocks),
        label_vectors: direct_sum(&vector_blocks),
    }
}

/// `L = span{e_i + f_i, ẽ_i + f̃_i}`.
pub fn glue_lagrangian(ds: &DoubleSpace) -> Lagrangian {
    let mu = ds.mu();
    let mut basis = CMatrix::zeros(4 * mu, 2 * mu);
    basis.columns_mut(0, mu).copy_from(&(&ds.e + &ds.f));
    basis.columns_mut(mu, mu).copy_from(&(&ds.e_tilde + &ds.f_tilde));
    Lagrangian::new(&ds.space, basis).expect("the diagonal is Lagrangian")
}

/// `φ(ρ̂L)` of one block in the bases `K⁺ = (p, q̄)`, `K⁻ = (p̄, q)`, in which `φ(L) = I`.
fn block_phi(g: &CMatrix) -> CMatrix {
    // Columns ρ̂(p + p̄) = g p + p̄ and ρ̂(q + q̄) = g q + q̄.
    let mut xp = CMatrix::zeros(2, 2);
    let mut xm = CMatrix::zeros(2, 2);
    for col in 0..2 {
        xp[(0, col)] = g[(0, col)];
        xm[(1, col)] = g[(1, col)];
    }
    xp[(1, 1)] = Complex64::one();
    xm[(0, 0)] = Complex64::one();
    xm * xp.try_inverse().expect("transported Lagrangian is a graph")
}

/// Closed-form transported block for the class of `b`.
pub fn golden_block(b: &VariationBlock) -> CMatrix {
    let (o, z) = (Complex64::one(), Complex64::zero());
    match class_of(b) {
        ClassTag::Plus => CMatrix::from_row_slice(2, 2, &[o, o - b.h, z, b.h]),
        ClassTag::Minus => {
            let hb = b.h.conj();
            CMatrix::from_row_slice(2, 2, &[hb, z, o - hb, o])
        }
        ClassTag::Zero => {
            // Upper sign for ε = +1.
            let s = Complex64::new(0.0, -0.5 * b.epsilon as f64);
            let d = o + s;
            CMatrix::from_row_slice(2, 2, &[o / d, s / d, s / d, o / d])
        }
    }
}

/// Per-block transported matrices next to their closed forms (general mode).
pub fn transported_blocks(ma: &MonodromyAction, ds: &DoubleSpace, vs: &VariationStructure) -> Vec<TransportedBlock> {
    (0..ds.mu())
        .map(|i| {
            let g = ma.matrix.view((4 * i, 4 * i), (2, 2)).into_owned();
            TransportedBlock {
                class: ds.basis.classes[i],
                computed: block_phi(&g),
                golden: golden_block(&vs.blocks[i]),
            }
        })
        .collect()
}

/// Eigenvalues of every transported block, sorted by argument.
pub fn transported_spectrum(
    vs: &VariationStructure,
    mode: OracleMode,
) -> Result<Vec<Vec<Complex64>>, SymplecticError> {
    vs.blocks
        .iter()
        .map(|b| {
            let (g, _, _) = block_model(b, mode);
            unitary_eigenvalues(&block_phi(&g))
        })
        .collect()
}

/// Spectrum predicted per block: `{1, e^{2πiεl}}`, and `{1, 3/5 − ε·4/5 i}` when `λ = 1`.
pub fn predicted_spectrum(vs: &VariationStructure) -> Vec<[Complex64; 2]> {
    vs.blocks
        .iter()
        .map(|b| {
            let other = if b.is_unit_eigenvalue() {
                Complex64::new(0.6, -0.8 * b.epsilon as f64)
            } else if b.epsilon > 0 {
                b.h
            } else {
                b.h.conj()
            };
            [Complex64::one(), other]
        })
        .collect()
}

/// Eigenvalues of a 2×2 golden block (these need not be unitary).
pub fn golden_eigenvalues(b: &VariationBlock) -> [Complex64; 2] {
    eigenvalues_2x2(&golden_block(b))
}

fn block_maslov(b: &VariationBlock, mode: OracleMode) -> Result<f64, SymplecticError> {
    let space = HermSymplecticSpace::new(block_gamma())?;
    let l = Lagrangian::new(&space, block_lagrangian_basis())?;
    let (g, _, _) = block_model(b, mode);
    let mut m = CMatrix::identity(4, 4);
    m.view_mut((0, 0), (2, 2)).copy_from(&g);
    let rl = l.transform(&m)?;
    maslov_m(&rl, &l)
}

/// `Σ_i m(ρ̂L_i, L_i)` block by block.
pub fn eta_via_double(vs: &VariationStructure, mode: OracleMode) -> Result<f64, SymplecticError> {
    let mut total = 0.0;
    for b in &vs.blocks {
        total += block_maslov(b, mode)?;
    }
    Ok(total)
}

/// `m(ρ̂L, L)` on the whole `4μ`-dimensional space.
pub fn eta_via_double_full(vs: &VariationStructure, mode: OracleMode) -> Result<f64, SymplecticError> {
    let ds = build_double(vs);
    let ma = monodromy_action(&ds, vs, mode);
    let l = glue_lagrangian(&ds);
    let rl = l.transform(&ma.matrix)?;
    maslov_m(&rl, &l)
}

/// `e = θ + bω` and `f̃ = θ − bω` in label coordinates, for every block.
pub fn label_e_vectors(vs: &VariationStructure) -> (CMatrix, CMatrix) {
    let mu = vs.len();
    let mut e = CMatrix::zeros(4 * mu, mu);
    let mut ft = CMatrix::zeros(4 * mu, mu);
    for (i, b) in vs.blocks.iter().enumerate() {
        e[(4 * i, i)] = Complex64::one();
        e[(4 * i + 1, i)] = b.b;
        ft[(4 * i, i)] = Complex64::one();
        ft[(4 * i + 1, i)] = -b.b;
    }
    (e, ft)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::{brieskorn_basis, brieskorn_weights};
    use crate::spectral::{brieskorn_blocks, variation_structure};
    use crate::symplectic::max_abs;

    fn template(a: &[u32]) -> VariationStructure {
        variation_structure(&brieskorn_basis(a).unwrap(), &brieskorn_weights(a), a.len() - 1)
    }

    fn theta0_over_pi() -> f64 {
        1.0 - (4.0f64 / 3.0).atan() / std::f64::consts::PI
    }

    #[test]
    fn classes() {
        let ds = build_double(&template(&[3, 2]));
        assert_eq!(ds.space.dim(), 8);
        assert_eq!(ds.basis.class_members(ClassTag::Plus), vec![1]);
        assert_eq!(ds.basis.class_members(ClassTag::Minus), vec![0]);
        assert!(ds.basis.class_members(ClassTag::Zero).is_empty());
        let ds = build_double(&template(&[2, 2]));
        assert_eq!(ds.space.dim(), 4);
        assert_eq!(ds.basis.class_members(ClassTag::Zero), vec![0]);
        assert_eq!(ds.basis.labels.len(), 4);
    }

    #[test]
    fn label_action_is_realized() {
        for a in [vec![3, 2], vec![2, 2], vec![3, 4, 5], vec![2, 2, 3]] {
            let vs = template(&a);
            for mode in [OracleMode::General, OracleMode::Brieskorn] {
                let ds = build_double(&vs);
                let ma = monodromy_action(&ds, &vs, mode);
                let lhs = &ma.matrix * &ma.label_vectors;
                let rhs = &ma.label_vectors * &ma.label_matrix;
                assert!(max_abs(&(lhs - rhs)) < 1e-12);
                // Barred half is fixed.
                for i in 0..vs.len() {
                    let fixed = ma.matrix.view((4 * i + 2, 4 * i + 2), (2, 2)).into_owned();
                    assert!(max_abs(&(fixed - CMatrix::identity(2, 2))) == 0.0);
                }
            }
        }
    }

    #[test]
    fn a1_curve_label_action() {
        let vs = template(&[2, 2]);
        let ds = build_double(&vs);
        let ma = monodromy_action(&ds, &vs, OracleMode::General);
        // ω ↦ ε i² θ + ω with ε = +1.
        assert!((ma.label_matrix[(0, 1)] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(ma.label_matrix[(1, 1)], Complex64::one());
    }

    #[test]
    fn brieskorn_e_identity() {
        let vs = brieskorn_blocks(&[3, 2]);
        let ds = build_double(&vs);
        let ma = monodromy_action(&ds, &vs, OracleMode::Brieskorn);
        let (e, ft) = label_e_vectors(&vs);
        for (i, b) in vs.blocks.iter().enumerate() {
            let lhs = &ma.label_matrix * e.column(i);
            let rhs = e.column(i) * b.h + ft.column(i) * (b.h - Complex64::one());
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn glue_is_lagrangian_and_preserved() {
        let vs = template(&[3, 4]);
        let ds = build_double(&vs);
        let l = glue_lagrangian(&ds);
        assert_eq!(l.basis.ncols(), 2 * vs.len());
        assert_eq!(l.isotropy_defect(), 0.0);
        for mode in [OracleMode::General, OracleMode::Brieskorn] {
            let ma = monodromy_action(&ds, &vs, mode);
            assert!(l.transform(&ma.matrix).unwrap().is_lagrangian(1e-12));
        }
    }

    #[test]
    fn golden_blocks_match() {
        for a in [vec![3, 2], vec![2, 2], vec![3, 3], vec![4, 6], vec![2, 3, 4, 5]] {
            let vs = template(&a);
            let ds = build_double(&vs);
            let ma = monodromy_action(&ds, &vs, OracleMode::General);
            for (t, b) in transported_blocks(&ma, &ds, &vs).iter().zip(&vs.blocks) {
                match t.class {
                    ClassTag::Zero => assert!(max_abs(&(&t.computed - &t.golden)) < 1e-12),
                    _ => {
                        for k in 0..2 {
                            assert!((t.computed[(k, k)] - t.golden[(k, k)]).norm() < 1e-12);
                        }
                        let ev = eigenvalues_2x2(&t.computed);
                        let gv = golden_eigenvalues(b);
                        for (x, y) in ev.iter().zip(&gv) {
                            assert!((x - y).norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spectrum_against_prediction() {
        for a in [vec![3, 2], vec![2, 2], vec![2, 2, 2, 2], vec![3, 4, 5]] {
            let vs = brieskorn_blocks(&a);
            let got = transported_spectrum(&vs, OracleMode::Brieskorn).unwrap();
            for (g, p) in got.iter().zip(predicted_spectrum(&vs)) {
                let mut p = p.to_vec();
                p.sort_by(|x, y| crate::symplectic::arg_pi(*x).partial_cmp(&crate::symplectic::arg_pi(*y)).unwrap());
                for (x, y) in g.iter().zip(&p) {
                    assert!((x - y).norm() < 1e-9, "{a:?}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn cusp_and_a1_values() {
        assert!((eta_via_double(&template(&[3, 2]), OracleMode::General).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert!(eta_via_double(&template(&[2, 2, 2]), OracleMode::General).unwrap().abs() < 1e-12);
        let g = eta_via_double(&template(&[2, 2]), OracleMode::General).unwrap();
        let b = eta_via_double(&brieskorn_blocks(&[2, 2]), OracleMode::Brieskorn).unwrap();
        assert!((g - theta0_over_pi()).abs() < 1e-12);
        assert!((b + theta0_over_pi()).abs() < 1e-12);
    }

    #[test]
    fn full_matrix_equals_blockwise() {
        for a in [vec![3, 2], vec![2, 2], vec![3, 4, 2], vec![5, 3], vec![2, 2, 2, 3]] {
            let vs = template(&a);
            for mode in [OracleMode::General, OracleMode::Brieskorn] {
                let x = eta_via_double(&vs, mode).unwrap();
                let y = eta_via_double_full(&vs, mode).unwrap();
                assert!((x - y).abs() < 1e-9, "{a:?} {mode:?}: {x} vs {y}");
            }
        }
    }
}
