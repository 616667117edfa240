//! Report construction for `analyze` and `brieskorn`.

use std::collections::BTreeMap;
use std::time::Instant;

use singeta_core::eta::{
    eta_brieskorn_fast_par, eta_brieskorn_naive_par, eta_closed_form, eta_closed_form_sp,
    eta_eigen_decomp, eta_via_spectral_flow, EtaConvention, EtaError,
};
use singeta_core::milnor::{brieskorn_basis, brieskorn_weights, milnor_algebra, QuotientBasis};
use singeta_core::oracle::{eta_via_double, OracleMode};
use singeta_core::poly::{parse_polynomial, parse_polynomial_with, rational_to_string, WeightSystem};
use singeta_core::spectral::{
    brieskorn_blocks, signature_of_b, spectrum_of, tau_invariant, variation_structure,
    VariationStructure,
};
use singeta_core::symplectic::MINUS_ONE_TOLERANCE;
use singeta_core::Error;

use crate::report::{
    consistency, spectrum_report, BasisReport, EtaEntry, Flags, InputEcho, Report, WeightsReport,
    BASIS_LIMIT, FLOAT_AGREEMENT,
};

/// Largest Milnor number for which the matrix oracle runs by default.
pub const ORACLE_LIMIT: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrieskornPath {
    Fast,
    Naive,
    Both,
}

impl BrieskornPath {
    fn name(self) -> &'static str {
        match self {
            BrieskornPath::Fast => "fast",
            BrieskornPath::Naive => "naive",
            BrieskornPath::Both => "both",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub convention: EtaConvention,
    pub threads: usize,
    pub timing: bool,
}

fn oracle_mode(conv: EtaConvention) -> OracleMode {
    match conv {
        EtaConvention::General => OracleMode::General,
        EtaConvention::BrieskornSign => OracleMode::Brieskorn,
    }
}

fn weights_report(w: &WeightSystem) -> WeightsReport {
    WeightsReport {
        weights: w.weights.iter().map(rational_to_string).collect(),
        beta: w.beta,
        beta_i: w.beta_i.clone(),
    }
}

fn basis_report(basis: &QuotientBasis) -> BasisReport {
    BasisReport {
        exponents: basis
            .exponents
            .iter()
            .take(BASIS_LIMIT)
            .map(|m| m.exponents().to_vec())
            .collect(),
        total: basis.milnor_number as u64,
        truncated: basis.exponents.len() > BASIS_LIMIT,
    }
}

fn flags(opts: &Options, brieskorn_path: Option<BrieskornPath>) -> Flags {
    Flags {
        unit_eigenvalue_sign: opts.convention.name().to_string(),
        brieskorn_path: brieskorn_path.map(|p| p.name().to_string()),
        minus_one_tolerance: MINUS_ONE_TOLERANCE,
        arg_branch: "(-pi, pi]".to_string(),
        oracle_tolerance: FLOAT_AGREEMENT,
    }
}

fn exact_entry(
    r: Result<singeta_core::eta::EtaValue, EtaError>,
    conv: EtaConvention,
) -> Result<EtaEntry, Error> {
    match r {
        Ok(v) => Ok(EtaEntry::exact(&v, conv)),
        Err(EtaError::DimensionTooSmall { n }) => Ok(EtaEntry::skipped(format!(
            "eta needs at least two variables (n = {n})"
        ))),
        Err(e) => Err(e.into()),
    }
}

/// Paths shared by both commands.
#[allow(clippy::too_many_arguments)]
fn common_paths(
    eta: &mut BTreeMap<String, EtaEntry>,
    basis: &QuotientBasis,
    w: &WeightSystem,
    n: usize,
    vs_eigen: &VariationStructure,
    vs_oracle: &VariationStructure,
    conv: EtaConvention,
    with_alternate: bool,
) -> Result<(), Error> {
    eta.insert("closed_form".into(), exact_entry(eta_closed_form(basis, w, n, conv), conv)?);
    eta.insert("closed_form_sp".into(), exact_entry(eta_closed_form_sp(basis, w, n, conv), conv)?);
    eta.insert("eigen_decomp".into(), exact_entry(eta_eigen_decomp(vs_eigen, conv), conv)?);
    eta.insert("spectral_flow".into(), exact_entry(eta_via_spectral_flow(basis, w, n, conv), conv)?);
    if with_alternate {
        let alt = conv.other();
        eta.insert(
            format!("closed_form_{}", alt.name()),
            exact_entry(eta_closed_form(basis, w, n, alt), alt)?,
        );
    }
    let oracle = if n == 0 {
        EtaEntry::skipped("eta needs at least two variables (n = 0)")
    } else if basis.milnor_number > ORACLE_LIMIT {
        EtaEntry::skipped(format!("milnor number above the oracle limit {ORACLE_LIMIT}"))
    } else {
        EtaEntry::float_only(eta_via_double(vs_oracle, oracle_mode(conv))?, conv)
    };
    eta.insert("double_oracle".into(), oracle);
    Ok(())
}

fn brieskorn_paths(
    eta: &mut BTreeMap<String, EtaEntry>,
    a: &[u32],
    path: BrieskornPath,
    threads: usize,
) -> Result<(), Error> {
    let conv = EtaConvention::BrieskornSign;
    if a.len() < 2 {
        let e = EtaEntry::skipped("eta needs at least two variables (n = 0)");
        eta.insert("brieskorn_fast".into(), e.clone());
        eta.insert("brieskorn_naive".into(), e);
        return Ok(());
    }
    if matches!(path, BrieskornPath::Fast | BrieskornPath::Both) {
        eta.insert("brieskorn_fast".into(), EtaEntry::exact(&eta_brieskorn_fast_par(a, threads)?, conv));
    }
    if matches!(path, BrieskornPath::Naive | BrieskornPath::Both) {
        eta.insert("brieskorn_naive".into(), EtaEntry::exact(&eta_brieskorn_naive_par(a, threads)?, conv));
    }
    Ok(())
}

/// `analyze "<poly>"`.
pub fn analyze(text: &str, vars: Option<&[String]>, opts: &Options) -> Result<Report, Error> {
    let start = Instant::now();
    let f = match vars {
        Some(v) => parse_polynomial_with(text, v)?,
        None => parse_polynomial(text)?,
    };
    let alg = milnor_algebra(&f)?;
    let n = f.num_vars() - 1;
    let mut eta = BTreeMap::new();
    let mut report = Report {
        input: InputEcho {
            command: "analyze".into(),
            text: text.to_string(),
            variables: f.vars().to_vec(),
            exponents: f.brieskorn_exponents(),
        },
        weights: alg.weights.as_ref().map(weights_report),
        milnor_number: alg.milnor_number() as u64,
        basis: basis_report(&alg.basis),
        spectrum: None,
        signature: None,
        tau: None,
        eta: BTreeMap::new(),
        consistency: consistency(&BTreeMap::new()),
        flags: flags(opts, None),
        timing_ms: None,
    };
    match &alg.weights {
        Some(w) => {
            let sp = spectrum_of(&alg.basis, w, n)?;
            let vs = variation_structure(&alg.basis, w, n);
            report.spectrum = Some(spectrum_report(&sp.entries, sp.is_symmetric()));
            report.signature = Some(signature_of_b(&vs));
            report.tau = Some(tau_invariant(&alg.basis, w, n));
            common_paths(&mut eta, &alg.basis, w, n, &vs, &vs, opts.convention, true)?;
            match f.brieskorn_exponents() {
                Some(a) => brieskorn_paths(&mut eta, &a, BrieskornPath::Both, opts.threads)?,
                None => {
                    let e = EtaEntry::skipped("not a Brieskorn polynomial");
                    eta.insert("brieskorn_fast".into(), e.clone());
                    eta.insert("brieskorn_naive".into(), e);
                }
            }
        }
        None => {
            let reason = "not quasihomogeneous: no weight system";
            for k in ["closed_form", "closed_form_sp", "eigen_decomp", "spectral_flow", "double_oracle", "brieskorn_fast", "brieskorn_naive"] {
                eta.insert(k.to_string(), EtaEntry::skipped(reason));
            }
        }
    }
    report.consistency = consistency(&eta);
    report.eta = eta;
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}

/// `brieskorn a_1 ... a_k`.
pub fn brieskorn(a: &[u32], path: BrieskornPath, opts: &Options) -> Result<Report, Error> {
    let start = Instant::now();
    let basis = brieskorn_basis(a)?;
    let w = brieskorn_weights(a);
    let n = a.len() - 1;
    let sp = spectrum_of(&basis, &w, n)?;
    let vs = variation_structure(&basis, &w, n);
    let vars: Vec<String> = (0..a.len()).map(|i| format!("x{i}")).collect();
    let text = a
        .iter()
        .zip(&vars)
        .map(|(e, v)| format!("{v}^{e}"))
        .collect::<Vec<_>>()
        .join(" + ");
    let mut eta = BTreeMap::new();
    let blocks = if basis.milnor_number <= ORACLE_LIMIT {
        brieskorn_blocks(a)
    } else {
        vs.clone()
    };
    common_paths(&mut eta, &basis, &w, n, &blocks, &blocks, opts.convention, false)?;
    brieskorn_paths(&mut eta, a, path, opts.threads)?;
    let consistency = consistency(&eta);
    Ok(Report {
        input: InputEcho {
            command: "brieskorn".into(),
            text,
            variables: vars,
            exponents: Some(a.to_vec()),
        },
        weights: Some(weights_report(&w)),
        milnor_number: basis.milnor_number as u64,
        basis: basis_report(&basis),
        spectrum: Some(spectrum_report(&sp.entries, sp.is_symmetric())),
        signature: Some(signature_of_b(&vs)),
        tau: Some(tau_invariant(&basis, &w, n)),
        eta,
        consistency,
        flags: flags(opts, Some(path)),
        timing_ms: opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}
