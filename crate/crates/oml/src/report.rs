//! JSON-lines reports. Rationals are written as `"p/q"` strings (integers
//! without a denominator), elements by their labels.

use oml_core::mmp::{validate, Girth, ValidationReport};
use oml_core::states::{
    admits_classically_strong, admits_strong_01_set, admits_strong_set, classify_states, PairCertificate,
    PolytopeSummary, StateClass, StateVector, StrongReport,
};
use oml_core::{MmpDiagram, Rational};
use serde::Serialize;

use crate::poset::element_label;

pub fn rational(q: &Rational) -> String {
    q.to_string()
}

pub fn state_strings(v: &StateVector) -> Vec<String> {
    v.values().iter().map(rational).collect()
}

pub fn class_name(c: StateClass) -> &'static str {
    match c {
        StateClass::None => "None",
        StateClass::ExactlyOne => "ExactlyOne",
        StateClass::MoreThanOne => "MoreThanOne",
    }
}

fn girth_string(g: Girth) -> String {
    match g {
        Girth::Finite(n) => n.to_string(),
        Girth::Infinite => "infinite".into(),
    }
}

#[derive(Debug, Serialize)]
pub struct ValidateLine {
    pub line: usize,
    pub atoms: usize,
    pub blocks: usize,
    pub mmp: bool,
    pub greechie_admissible: bool,
    pub connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub girth: Option<String>,
    pub uncovered_atoms: Vec<usize>,
    pub small_blocks: Vec<usize>,
    pub overlapping_pairs: Vec<(usize, usize)>,
    pub heavy_pairs: Vec<(usize, usize)>,
}

impl ValidateLine {
    pub fn new(line: usize, d: &MmpDiagram, r: &ValidationReport) -> Self {
        ValidateLine {
            line,
            atoms: d.atom_count(),
            blocks: d.block_count(),
            mmp: r.mmp(),
            greechie_admissible: r.greechie_admissible,
            connected: r.connected,
            girth: r.girth.map(girth_string),
            uncovered_atoms: r.uncovered_atoms.iter().map(|a| a.0).collect(),
            small_blocks: r.small_blocks.clone(),
            overlapping_pairs: r.overlapping_pairs.clone(),
            heavy_pairs: r.heavy_pairs.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorLine {
    pub line: usize,
    pub error: String,
}

#[derive(Debug, Serialize)]
pub struct StrongJson {
    pub admits: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_pair: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<&'static str>,
    pub pairs_checked: usize,
    pub lp_solves: usize,
}

impl StrongJson {
    fn new(r: &StrongReport) -> Self {
        StrongJson {
            admits: r.admits,
            witness_pair: r
                .witness_pair
                .as_ref()
                .map(|(x, y)| [element_label(x), element_label(y)]),
            certificate: r.certificate.as_ref().map(|c| match c {
                PairCertificate::NoStates => "NoStates",
                PairCertificate::PremiseInfeasible => "PremiseInfeasible",
                PairCertificate::MinimumIsOne => "MinimumIsOne",
                PairCertificate::NoSeparatingState => "NoSeparatingState",
            }),
            pairs_checked: r.pairs_checked,
            lp_solves: r.lp_solves,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct StatesLine {
    pub line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub classification: &'static str,
    /// The common atom value when the only state is constant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unique_state: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong: Option<StrongJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong_01: Option<StrongJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classically_strong: Option<bool>,
}

/// Which optional analyses to run.
#[derive(Clone, Copy, Debug, Default)]
pub struct StateChecks {
    pub strong: bool,
    pub zero_one: bool,
    pub classical: bool,
}

fn constant_value(v: &StateVector) -> Option<&Rational> {
    let first = v.values().first()?;
    v.values().iter().all(|x| x == first).then_some(first)
}

pub fn states_line(
    line: usize,
    name: Option<&str>,
    d: &MmpDiagram,
    checks: StateChecks,
) -> oml_core::Result<StatesLine> {
    let summary: PolytopeSummary = classify_states(d)?;
    let value = summary.unique_state.as_ref().and_then(constant_value).map(rational);
    let witnesses = match summary.classification {
        StateClass::MoreThanOne => [&summary.witness, &summary.second_witness]
            .into_iter()
            .flatten()
            .map(state_strings)
            .collect(),
        _ => Vec::new(),
    };
    let admissible = validate(d).greechie_admissible;
    let strong = if checks.strong && admissible {
        Some(StrongJson::new(&admits_strong_set(d)?))
    } else {
        None
    };
    let strong_01 = if checks.zero_one && admissible {
        Some(StrongJson::new(&admits_strong_01_set(d)?))
    } else {
        None
    };
    let classically_strong = if checks.classical && admissible {
        Some(admits_classically_strong(d)?)
    } else {
        None
    };
    Ok(StatesLine {
        line,
        name: name.map(str::to_string),
        classification: class_name(summary.classification),
        value,
        unique_state: summary.unique_state.as_ref().map(state_strings),
        witnesses,
        strong,
        strong_01,
        classically_strong,
    })
}
