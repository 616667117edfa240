//! `maslov`: the matrix oracle on a demo singularity or on random Lagrangians.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use singeta_core::eta::{eta_closed_form, EtaConvention};
use singeta_core::milnor::{brieskorn_basis, brieskorn_weights};
use singeta_core::oracle::{eta_via_double, eta_via_double_full, OracleMode};
use singeta_core::spectral::variation_structure;
use singeta_core::symplectic::random::{random_lagrangian, random_space};
use singeta_core::symplectic::{maslov_m, phi_of_lagrangian, unitarity_defect};
use singeta_core::Error;

use crate::report::round15;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DemoRow {
    pub exponents: Vec<u32>,
    pub mode: String,
    pub blockwise: f64,
    pub full_matrix: f64,
    pub closed_form: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomReport {
    pub dim: usize,
    pub seed: u64,
    pub m_vw: f64,
    pub m_wv: f64,
    pub m_vv: f64,
    pub antisymmetry_residual: f64,
    pub phi_unitarity_defect: f64,
}

/// `m(ρ̂L, L)` for a few small Brieskorn singularities in both oracle modes.
pub fn demo() -> Result<Vec<DemoRow>, Error> {
    let mut rows = Vec::new();
    for a in [vec![3u32, 2], vec![2, 2], vec![3, 4], vec![2, 2, 2]] {
        let basis = brieskorn_basis(&a)?;
        let w = brieskorn_weights(&a);
        let n = a.len() - 1;
        let vs = variation_structure(&basis, &w, n);
        for (mode, conv) in [
            (OracleMode::General, EtaConvention::General),
            (OracleMode::Brieskorn, EtaConvention::BrieskornSign),
        ] {
            rows.push(DemoRow {
                exponents: a.clone(),
                mode: mode.name().to_string(),
                blockwise: round15(eta_via_double(&vs, mode)?),
                full_matrix: round15(eta_via_double_full(&vs, mode)?),
                closed_form: round15(eta_closed_form(&basis, &w, n, conv)?.to_float()),
            });
        }
    }
    Ok(rows)
}

/// Two random Lagrangians in a random structure on `ℂ^dim`.
pub fn random(dim: usize, seed: u64) -> Result<RandomReport, Error> {
    let m = (dim / 2).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_space(m, &mut rng);
    let v = random_lagrangian(&h, &mut rng);
    let w = random_lagrangian(&h, &mut rng);
    let m_vw = maslov_m(&v, &w)?;
    let m_wv = maslov_m(&w, &v)?;
    let m_vv = maslov_m(&v, &v)?;
    let defect = unitarity_defect(&phi_of_lagrangian(&v)?);
    Ok(RandomReport {
        dim: 2 * m,
        seed,
        m_vw: round15(m_vw),
        m_wv: round15(m_wv),
        m_vv: round15(m_vv),
        antisymmetry_residual: (m_vw + m_wv).abs(),
        phi_unitarity_defect: defect,
    })
}
