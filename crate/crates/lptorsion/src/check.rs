//! Pass/fail summaries shared by the certification laboratories.

use serde::Serialize;

/// One named assertion with its worst measured excursion.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    /// Worst signed excursion beyond the asserted bound (≤ 0 means pass
    /// with margin; the pass flag applies the stated tolerance).
    pub worst: f64,
    pub detail: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, pass: bool, worst: f64, detail: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            pass,
            worst,
            detail: detail.into(),
        }
    }
}
