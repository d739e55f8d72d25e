use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::gfield::Elem;

/// Why a check failed. Indices refer to canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A hyperplane `dual^⊥` whose intersection with the set does not span it.
    Hyperplane { index: u64, dual: Vec<Elem>, rank: usize },
    /// `other` has support inside the support of `word` but is not an
    /// admissible multiple of it.
    CodewordPair {
        message: Vec<Elem>,
        word: Vec<Elem>,
        other_message: Vec<Elem>,
        other_word: Vec<Elem>,
    },
    /// A codimension-2 space meeting every member in a large enough space.
    Codim2 { index: usize, basis: Vec<Vec<Elem>> },
    /// A point outside every span of rho+1 members.
    UncoveredPoint { index: u64, point: Vec<Elem>, rho: usize },
    /// Every point is already covered with the smaller value rho.
    SmallerRho { rho: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineVerdict {
    pub engine: String,
    pub verdict: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub verdict: bool,
    pub engine: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub engines: Vec<EngineVerdict>,
    pub witness: Option<Witness>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: &str, engine: &str, witness: Option<Witness>, started: Instant) -> Self {
        VerificationReport {
            check: check.to_string(),
            verdict: witness.is_none(),
            engine: engine.to_string(),
            engines: Vec::new(),
            witness,
            elapsed_ms: started.elapsed().as_millis() as u64,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Copy with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn engine_verdict(&self) -> EngineVerdict {
        EngineVerdict {
            engine: self.engine.clone(),
            verdict: self.verdict,
            witness: self.witness.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
