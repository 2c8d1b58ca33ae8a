//! JSON documents emitted with `--format json`.
//!
//! Polynomial coefficients are decimal strings so that arbitrary-precision
//! values survive consumers with 64-bit or floating-point integers.

use num_rational::BigRational;
use qwick::{NormalForm, QPolynomial};
use serde::{Deserialize, Serialize};

/// `[[exponent, "coefficient"], ...]`, ascending exponent.
pub type PolyJson = Vec<(u64, String)>;

pub fn poly_json(p: &QPolynomial) -> PolyJson {
    p.to_pairs()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub creators: usize,
    pub annihilators: usize,
    pub coeff: PolyJson,
}

/// Terms in descending shape order, matching the text rendering.
pub fn normal_form_json(nf: &NormalForm) -> Vec<TermJson> {
    nf.iter()
        .rev()
        .map(|((creators, annihilators), p)| TermJson {
            creators,
            annihilators,
            coeff: poly_json(p),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueJson {
    pub creators: usize,
    pub annihilators: usize,
    /// Exact rational, `"p/q"` or an integer.
    pub value: String,
}

pub fn evaluated_json(nf: &NormalForm, q: &BigRational) -> Vec<ValueJson> {
    nf.evaluate(q)
        .into_iter()
        .map(|((creators, annihilators), v)| ValueJson {
            creators,
            annihilators,
            value: v.to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram_count: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub word: String,
    pub method: String,
    pub normal_form: Vec<TermJson>,
    /// Present only for `--method both`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    /// The diagram engine's result, present only when the engines disagree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form_diagrams: Option<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluated: Option<Vec<ValueJson>>,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub edges: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsJson {
    pub c: u64,
    pub d: u64,
    pub tc: u64,
    pub l: u64,
    pub weight_exponent: u64,
}

impl From<qwick::DiagramStats> for StatsJson {
    fn from(s: qwick::DiagramStats) -> Self {
        StatsJson {
            c: s.crossings,
            d: s.degenerate,
            tc: s.total_crossings,
            l: s.length,
            weight_exponent: s.weight_exponent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramsReport {
    pub word: String,
    /// Diagram count per degree, indexed by degree.
    pub counts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagrams: Option<Vec<DiagramJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StirlingReport {
    pub n: usize,
    /// `k` of each entry of `values`.
    pub k: Vec<usize>,
    pub values: Vec<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_q1: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RookReport {
    pub word: String,
    pub method: String,
    /// `R_k(q)` indexed by `k`.
    pub rook: Vec<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}
