//! JSON report. Everything except `timing_ms` is deterministic for a fixed
//! config, flag set and seed.

use std::collections::BTreeMap;

use frt_core::frt::TWord;
use frt_core::scalar::Cyclo;
use frt_core::uq::IdentityOutcome;
use frt_core::Scalar;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub status: Status,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub data: BTreeMap<String, Value>,
}

impl Section {
    pub fn new() -> Section {
        Section {
            status: Status::Pass,
            failures: Vec::new(),
            notes: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    pub fn not_applicable(note: impl Into<String>) -> Section {
        Section {
            status: Status::NotApplicable,
            notes: vec![note.into()],
            ..Section::new()
        }
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: Value) {
        self.status = Status::Fail;
        self.failures.push(Failure {
            check: check.into(),
            witness,
        });
    }

    pub fn data(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    /// Records a failure when the identity does not hold.
    pub fn identity(&mut self, name: &str, out: &IdentityOutcome) {
        if let Some((w, l, r)) = &out.witness {
            self.fail(
                name,
                json!({ "word": word_json(w), "lhs": scalar_json(l), "rhs": scalar_json(r) }),
            );
        }
    }
}

impl Default for Section {
    fn default() -> Self {
        Section::new()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub max_degree: usize,
    pub seed: u64,
    pub passed: bool,
    pub sections: BTreeMap<String, Section>,
    pub timing_ms: BTreeMap<String, f64>,
}

fn cyclo_coeffs(c: &Cyclo) -> Value {
    c.coeffs()
        .iter()
        .map(|q| json!({ "num": q.numer().to_string(), "den": q.denom().to_string() }))
        .collect()
}

/// `{mode, m, coeffs}` for field elements, `{mode, m, num, den}` with one
/// coefficient list per power of `t` for rational functions.
pub fn scalar_json(s: &Scalar) -> Value {
    let m = s.field().conductor();
    match s.as_cyclo() {
        Some(c) => {
            json!({ "mode": "cyclo", "m": m, "coeffs": cyclo_coeffs(c), "text": s.to_string() })
        }
        None => {
            let f = s.to_ratfunc();
            let poly = |p: &[Cyclo]| p.iter().map(cyclo_coeffs).collect::<Vec<_>>();
            json!({
                "mode": "ratfunc",
                "m": m,
                "num": poly(f.numerator()),
                "den": poly(f.denominator()),
                "text": s.to_string(),
            })
        }
    }
}

pub fn scalar_matrix_json(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Value {
    (0..rows)
        .map(|i| (0..cols).map(|j| scalar_json(&f(i, j))).collect::<Vec<_>>())
        .collect()
}

/// Letters as 1-based `[lower, upper]` pairs.
pub fn word_json(w: &TWord) -> Value {
    w.letters()
        .iter()
        .map(|&(i, j)| json!([i + 1, j + 1]))
        .collect()
}
