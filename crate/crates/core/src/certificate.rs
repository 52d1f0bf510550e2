//! Machine-checkable verdict records shared by every certification routine.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::amalgamation::{AmalgamSolution, AmalgamSpan};
use crate::structures::{Embedding, FinStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// Candidates examined (structures, spans, amalgam candidates, ...).
    pub candidates: u64,
    /// Largest structure size touched.
    pub max_size: usize,
    pub millis: u64,
}

/// The evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Structure { structure: FinStructure },
    /// A structure and a vertex subset of it (e.g. a member whose induced
    /// substructure on `subset` is not a member).
    Substructure { structure: FinStructure, subset: Vec<usize> },
    Pair { left: FinStructure, right: FinStructure },
    Embedding { dom: FinStructure, cod: FinStructure, map: Embedding },
    Span(AmalgamSpan),
    Amalgam { span: AmalgamSpan, solution: AmalgamSolution },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Evidence>,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn pass(claim: impl Into<String>) -> Self {
        Certificate {
            claim: claim.into(),
            verdict: Verdict::Pass,
            witness: None,
            counterexample: None,
            stats: Stats::default(),
            notes: Vec::new(),
        }
    }

    pub fn fail(claim: impl Into<String>, counterexample: Evidence) -> Self {
        Certificate {
            verdict: Verdict::Fail,
            counterexample: Some(counterexample),
            ..Certificate::pass(claim)
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_witness(mut self, w: Evidence) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_stats(mut self, candidates: u64, max_size: usize, clock: &Clock) -> Self {
        self.stats = Stats {
            candidates,
            max_size,
            millis: clock.millis(),
        };
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Wall clock for `Stats::millis`.
pub struct Clock(Instant);

impl Clock {
    pub fn start() -> Self {
        Clock(Instant::now())
    }

    pub fn millis(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}
