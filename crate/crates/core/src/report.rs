use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Outcome of a numeric identity check.
///
/// `passed` holds iff `max_residual` is at or below the tolerance the check
/// ran with; the tolerance itself is recorded under `details["tolerance"]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub max_residual: f64,
    pub samples: usize,
    pub passed: bool,
    pub details: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, max_residual: f64, samples: usize, tolerance: f64) -> Self {
        let mut details = BTreeMap::new();
        details.insert("tolerance".to_string(), tolerance);
        Self {
            name: name.into(),
            max_residual,
            samples,
            passed: max_residual <= tolerance,
            details,
        }
    }

    pub fn with_detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }
}
