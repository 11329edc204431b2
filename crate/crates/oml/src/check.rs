//! Executable claims table: every expected corpus property recomputed.

use oml_core::lattice::build_oml;
use oml_core::mmp::{element_count, longest_loop};
use oml_core::states::{admits_strong_set, classify_states, is_state};
use oml_core::symmetry::{are_isomorphic, is_self_dual};
use oml_core::Rational;
use serde::Serialize;

use crate::corpus::{self, parse_state, CorpusEntry, STATES_35_35E};
use crate::report::class_name;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub property: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

fn check(name: &str, property: &'static str, expected: impl ToString, actual: impl ToString) -> Check {
    Check {
        name: name.to_string(),
        property,
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn failed(name: &str, property: &'static str, expected: impl ToString, err: impl std::fmt::Display) -> Check {
    check(name, property, expected, format!("error: {err}"))
}

/// Checks the claims of one entry.
pub fn check_entry(e: &CorpusEntry) -> Vec<Check> {
    let d = e.diagram();
    let x = &e.expected;
    let mut out = Vec::new();

    if x.state_classification.is_some() || x.unique_state_value.is_some() {
        match classify_states(&d) {
            Ok(s) => {
                if let Some(c) = x.state_classification {
                    out.push(check(
                        e.name,
                        "classification",
                        class_name(c),
                        class_name(s.classification),
                    ));
                }
                if let Some(v) = x.unique_state_value {
                    let want: Rational = v.parse().expect("corpus values parse");
                    let uniform = s
                        .unique_state
                        .as_ref()
                        .is_some_and(|u| u.values().iter().all(|q| *q == want));
                    let actual = if uniform {
                        v.to_string()
                    } else {
                        "not uniform".to_string()
                    };
                    out.push(check(e.name, "unique_state_value", v, actual));
                }
            }
            Err(err) => out.push(failed(e.name, "classification", "a result", err)),
        }
    }
    if let Some(sd) = x.self_dual {
        out.push(check(e.name, "self_dual", sd, is_self_dual(&d)));
    }
    if let Some(strong) = x.admits_strong_set {
        match admits_strong_set(&d) {
            Ok(r) => out.push(check(e.name, "admits_strong_set", strong, r.admits)),
            Err(err) => out.push(failed(e.name, "admits_strong_set", strong, err)),
        }
    }
    if let Some(n) = x.element_count {
        match element_count(&d) {
            Ok(c) => out.push(check(e.name, "element_count", n, c)),
            Err(err) => out.push(failed(e.name, "element_count", n, err)),
        }
        match build_oml(&d) {
            Ok(p) => out.push(check(e.name, "poset_size", n, p.len())),
            Err(err) => out.push(failed(e.name, "poset_size", n, err)),
        }
    }
    if let Some(n) = x.longest_loop {
        match longest_loop(&d) {
            Ok(l) => out.push(check(e.name, "longest_loop", n, l.map_or(0, |l| l.order()))),
            Err(err) => out.push(failed(e.name, "longest_loop", n, err)),
        }
    }
    if e.name == "35-35e" {
        for (i, s) in STATES_35_35E.iter().enumerate() {
            let property = if i == 0 { "listed_state_1" } else { "listed_state_2" };
            let actual = match parse_state(s) {
                Ok(v) => is_state(&d, &v).map_or_else(|err| format!("error: {err}"), |b| b.to_string()),
                Err(err) => format!("error: {err}"),
            };
            out.push(check(e.name, property, true, actual));
        }
    }
    if e.name == "73-73" {
        let derived = corpus::derived_73_73();
        out.push(check(
            e.name,
            "derived_by_dropping_blocks",
            true,
            are_isomorphic(&derived, &d).is_some(),
        ));
    }
    out
}

pub fn check_corpus() -> Vec<Check> {
    corpus::CORPUS.iter().flat_map(check_entry).collect()
}
