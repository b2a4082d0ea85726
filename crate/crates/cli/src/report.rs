//! Run reports and the JSON shapes of core values.

use qgame_core::qgame::{Strategy, StrategyProfile};
use qgame_core::{QuantumState, UnitaryOperator, C64};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::scenario::Scenario;

pub const TOOL: &str = "qgame";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Follows directly from the game definitions.
    #[serde(rename = "paper-literal")]
    PaperLiteral,
    /// Added by this tool: searches, certificates, diagnostics.
    #[serde(rename = "extension")]
    Extension,
    /// Depends on the entangled two-qubit protocol and its conventions.
    #[serde(rename = "per cited construction")]
    PerCitedConstruction,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::PaperLiteral => "paper-literal",
            Provenance::Extension => "extension",
            Provenance::PerCitedConstruction => "per cited construction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultItem {
    pub name: String,
    pub provenance: Provenance,
    pub tolerance: f64,
    pub value: Value,
}

impl ResultItem {
    pub fn new(name: &str, provenance: Provenance, tolerance: f64, value: Value) -> Self {
        ResultItem {
            name: name.to_string(),
            provenance,
            tolerance,
            value,
        }
    }
}

/// Seeds, tolerances and iteration counts; nothing time-dependent.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub seed: u64,
    pub tolerances: serde_json::Map<String, Value>,
    pub counters: serde_json::Map<String, Value>,
}

/// A CSV table written next to the report.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotTable {
    pub file: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub scenario: Scenario,
    pub results: Vec<ResultItem>,
    pub diagnostics: Diagnostics,
    #[serde(skip)]
    pub plots: Vec<PlotTable>,
}

impl RunReport {
    pub fn result(&self, name: &str) -> Option<&ResultItem> {
        self.results.iter().find(|r| r.name == name)
    }
}

pub fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn state(s: &QuantumState) -> Value {
    Value::Array(s.amplitudes().iter().map(|&z| complex(z)).collect())
}

pub fn unitary(u: &UnitaryOperator) -> Value {
    let m = u.matrix();
    Value::Array(
        (0..m.dim())
            .map(|r| Value::Array(m.row(r).iter().map(|&z| complex(z)).collect()))
            .collect(),
    )
}

pub fn strategy(s: &Strategy) -> Value {
    json!({ "init": state(&s.init), "unitary": unitary(&s.unitary) })
}

pub fn profile(p: &StrategyProfile) -> Value {
    json!({ "a": strategy(&p.a), "b": strategy(&p.b) })
}

pub fn ranked(r: &[(String, f64)]) -> Value {
    Value::Array(r.iter().map(|(l, p)| json!([l, p])).collect())
}
