//! Verdict reports: one JSON document per run.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Indeterminate,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Indeterminate => 2,
        }
    }
}

impl From<sharpset::certificate::Verdict> for Outcome {
    fn from(v: sharpset::certificate::Verdict) -> Self {
        use sharpset::certificate::Verdict::*;
        match v {
            Certified => Outcome::Pass,
            Refuted => Outcome::Fail,
            Indeterminate => Outcome::Indeterminate,
        }
    }
}

impl From<sharpset::hocolim::harness::Outcome> for Outcome {
    fn from(o: sharpset::hocolim::harness::Outcome) -> Self {
        use sharpset::hocolim::harness::Outcome::*;
        match o {
            Pass => Outcome::Pass,
            Fail => Outcome::Fail,
            HypothesisNotEstablished | Indeterminate => Outcome::Indeterminate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        InputDigest { path: path.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub verdict: Outcome,
    pub evidence: serde_json::Value,
    pub seed: Option<u64>,
    /// Only with `--timing`, so reports stay byte-identical otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_micros: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub command: Vec<String>,
    pub error: ErrorDetail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorDetail {
    pub kind: &'static str,
    pub message: String,
}

pub fn evidence<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("evidence serializes")
}
