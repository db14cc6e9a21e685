//! Machine-readable run reports. Reports are fully deterministic for fixed
//! inputs: field order is fixed, maps are sorted, and rationals are strings.
//! Wall-clock timing is kept out of the serialized document (it goes to
//! stderr) so that identical inputs produce byte-identical reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::curve::NodalCurve;
use crate::theorems::BoundReport;

#[derive(Debug, Clone, Serialize)]
pub struct CurveSummary {
    pub components: usize,
    pub nodes: usize,
    pub connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
}

impl CurveSummary {
    pub fn of(curve: &NodalCurve) -> Self {
        CurveSummary {
            components: curve.components().len(),
            nodes: curve.nodes().len(),
            connected: curve.is_connected(),
            genus: curve.arithmetic_genus().ok(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionsOut {
    pub h0: usize,
    pub h1: usize,
    pub euler: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KoszulOut {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
}

/// Top-level report emitted by every CLI command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input_hash: String,
    pub curve: CurveSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sections: Option<SectionsOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koszul: Option<KoszulOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ununs_level: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<serde_json::Value>,
    /// true when some checks were skipped under the slice cap
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub partial: bool,
    /// wall time; never serialized, printed to stderr instead
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

impl Report {
    pub fn new(command: String, input_hash: String, curve: &NodalCurve) -> Self {
        Report {
            command,
            input_hash,
            curve: CurveSummary::of(curve),
            sections: None,
            koszul: None,
            bounds: None,
            ununs_level: None,
            verdicts: None,
            partial: false,
            elapsed: std::time::Duration::ZERO,
        }
    }
}

/// Hex digest of the command name plus every input document.
pub fn input_hash(command: &str, inputs: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    for x in inputs {
        h.update([0u8]);
        h.update(x.as_bytes());
    }
    hex::encode(h.finalize())
}
