//! Machine-readable record of one CLI run.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveSummary {
    pub variant: String,
    pub size: usize,
    pub kappa: Option<usize>,
    pub steps: Option<usize>,
    pub repair_used: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub oracle: String,
    pub optimum: usize,
    pub agrees: bool,
}

/// Identical inputs and seeds give byte-identical reports unless
/// `timing_ms` is requested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub digest: String,
    pub summary: SolveSummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleComparison>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
