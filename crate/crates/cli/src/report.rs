//! Serializable analysis report.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use singeta_core::eta::{EtaConvention, EtaValue};
use singeta_core::poly::{rational_from_str, rational_to_string, Rational};

/// Number of basis exponents echoed before truncation.
pub const BASIS_LIMIT: usize = 200;

/// Distinct spectrum values shown in the text view.
const TEXT_SPECTRUM_LIMIT: usize = 24;

/// Tolerance for comparisons that involve a floating-point path.
pub const FLOAT_AGREEMENT: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub weights: Option<WeightsReport>,
    pub milnor_number: u64,
    pub basis: BasisReport,
    pub spectrum: Option<SpectrumReport>,
    pub signature: Option<i64>,
    pub tau: Option<i64>,
    pub eta: BTreeMap<String, EtaEntry>,
    pub consistency: Consistency,
    pub flags: Flags,
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub command: String,
    pub text: String,
    pub variables: Vec<String>,
    pub exponents: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightsReport {
    pub weights: Vec<String>,
    pub beta: u64,
    pub beta_i: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub exponents: Vec<Vec<u32>>,
    pub total: u64,
    pub truncated: bool,
}

/// Spectrum as `(value, multiplicity)` pairs in increasing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub values: Vec<SpectrumValue>,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumValue {
    pub value: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaEntry {
    pub r0: Option<String>,
    pub r1: Option<String>,
    pub float: Option<f64>,
    pub convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skipped_reason: Option<String>,
}

impl EtaEntry {
    pub fn exact(v: &EtaValue, conv: EtaConvention) -> Self {
        EtaEntry {
            r0: Some(rational_to_string(&v.r0)),
            r1: Some(rational_to_string(&v.r1)),
            float: Some(round15(v.to_float())),
            convention: Some(conv.name().to_string()),
            skipped_reason: None,
        }
    }

    pub fn float_only(x: f64, conv: EtaConvention) -> Self {
        EtaEntry {
            r0: None,
            r1: None,
            float: Some(round15(x)),
            convention: Some(conv.name().to_string()),
            skipped_reason: None,
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        EtaEntry {
            r0: None,
            r1: None,
            float: None,
            convention: None,
            skipped_reason: Some(reason.into()),
        }
    }

    pub fn value(&self) -> Option<EtaValue> {
        Some(EtaValue::new(
            rational_from_str(self.r0.as_ref()?)?,
            rational_from_str(self.r1.as_ref()?)?,
        ))
    }

    fn has_value(&self) -> bool {
        self.float.is_some()
    }
}

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    /// Equal after flipping the sign of the `λ = 1` term.
    DocumentedDiscrepancy,
    Disagree,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Consistency {
    pub paths: Vec<String>,
    pub matrix: Vec<Vec<Agreement>>,
    pub status: Agreement,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flags {
    pub unit_eigenvalue_sign: String,
    pub brieskorn_path: Option<String>,
    pub minus_one_tolerance: f64,
    pub arg_branch: String,
    pub oracle_tolerance: f64,
}

fn compare(a: &EtaEntry, b: &EtaEntry) -> Agreement {
    if let (Some(x), Some(y)) = (a.value(), b.value()) {
        if x == y {
            return Agreement::Agree;
        }
        if x == y.flip_unit_term() && a.convention != b.convention {
            return Agreement::DocumentedDiscrepancy;
        }
        return Agreement::Disagree;
    }
    let (fa, fb) = (a.float.unwrap_or(f64::NAN), b.float.unwrap_or(f64::NAN));
    if (fa - fb).abs() <= FLOAT_AGREEMENT {
        return Agreement::Agree;
    }
    // The exact partner tells how far apart the two conventions are.
    let exact = a.value().or_else(|| b.value());
    if let Some(v) = exact {
        let flipped = v.flip_unit_term().to_float();
        let other = if a.value().is_some() { fb } else { fa };
        if a.convention != b.convention && (flipped - other).abs() <= FLOAT_AGREEMENT {
            return Agreement::DocumentedDiscrepancy;
        }
    }
    Agreement::Disagree
}

/// Pairwise agreement of every path that carries a value.
pub fn consistency(eta: &BTreeMap<String, EtaEntry>) -> Consistency {
    let paths: Vec<String> = eta
        .iter()
        .filter(|(_, e)| e.has_value())
        .map(|(k, _)| k.clone())
        .collect();
    let mut matrix = vec![vec![Agreement::Agree; paths.len()]; paths.len()];
    let mut notes = Vec::new();
    let mut status = Agreement::Agree;
    for i in 0..paths.len() {
        for j in (i + 1)..paths.len() {
            let r = compare(&eta[&paths[i]], &eta[&paths[j]]);
            matrix[i][j] = r;
            matrix[j][i] = r;
            match r {
                Agreement::Agree => {}
                Agreement::DocumentedDiscrepancy => {
                    if status == Agreement::Agree {
                        status = r;
                    }
                    notes.push(format!(
                        "{} vs {}: r1 differs in sign only (lambda = 1 convention)",
                        paths[i], paths[j]
                    ));
                }
                Agreement::Disagree => {
                    status = r;
                    notes.push(format!("{} vs {}: values disagree", paths[i], paths[j]));
                }
            }
        }
    }
    Consistency {
        paths,
        matrix,
        status,
        notes,
    }
}

/// Compresses a sorted spectrum into value/multiplicity pairs.
pub fn spectrum_report(entries: &[Rational], symmetric: bool) -> SpectrumReport {
    let mut values: Vec<SpectrumValue> = Vec::new();
    let mut last: Option<&Rational> = None;
    for e in entries {
        match (last, values.last_mut()) {
            (Some(p), Some(v)) if p == e => v.multiplicity += 1,
            _ => values.push(SpectrumValue {
                value: rational_to_string(e),
                multiplicity: 1,
            }),
        }
        last = Some(e);
    }
    SpectrumReport { values, symmetric }
}

pub fn exit_code(report: &Report) -> i32 {
    match report.consistency.status {
        Agreement::Agree => 0,
        Agreement::DocumentedDiscrepancy => 3,
        Agreement::Disagree => 1,
    }
}

/// Human-readable summary.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("input: {}\n", r.input.text));
    if let Some(w) = &r.weights {
        out.push_str(&format!("weights: ({}) beta = {}\n", w.weights.join(", "), w.beta));
    }
    out.push_str(&format!("milnor number: {}\n", r.milnor_number));
    if let Some(s) = &r.spectrum {
        let shown: Vec<String> = s
            .values
            .iter()
            .take(TEXT_SPECTRUM_LIMIT)
            .map(|v| {
                if v.multiplicity == 1 {
                    v.value.clone()
                } else {
                    format!("{}^{}", v.value, v.multiplicity)
                }
            })
            .collect();
        let more = if s.values.len() > TEXT_SPECTRUM_LIMIT { ", ..." } else { "" };
        out.push_str(&format!("spectrum: {{{}{}}}\n", shown.join(", "), more));
    }
    if let Some(sig) = r.signature {
        out.push_str(&format!("signature: {sig}\n"));
    }
    if let Some(t) = r.tau {
        out.push_str(&format!("tau: {t}\n"));
    }
    out.push_str("eta:\n");
    for (k, e) in &r.eta {
        match (&e.skipped_reason, e.value(), e.float) {
            (Some(reason), _, _) => out.push_str(&format!("  {k}: skipped ({reason})\n")),
            (None, Some(v), Some(f)) => {
                let exact = if v.r1.is_zero() {
                    e.r0.clone().unwrap_or_default()
                } else {
                    format!("{} + ({})*theta0/pi", e.r0.as_deref().unwrap_or(""), e.r1.as_deref().unwrap_or(""))
                };
                out.push_str(&format!("  {k}: {exact} = {f} [{}]\n", e.convention.as_deref().unwrap_or("")))
            }
            (None, None, Some(f)) => {
                out.push_str(&format!("  {k}: {f} [{}]\n", e.convention.as_deref().unwrap_or("")))
            }
            _ => {}
        }
    }
    let status = match r.consistency.status {
        Agreement::Agree => "consistent",
        Agreement::DocumentedDiscrepancy => "documented discrepancy",
        Agreement::Disagree => "INCONSISTENT",
    };
    out.push_str(&format!("consistency: {status}\n"));
    for n in &r.consistency.notes {
        out.push_str(&format!("  {n}\n"));
    }
    if let Some(t) = r.timing_ms {
        out.push_str(&format!("time: {t:.3} ms\n"));
    }
    out
}
