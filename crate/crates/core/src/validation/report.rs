use serde::{Deserialize, Serialize};

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    /// Identifies the row within its report, e.g. `n=3/l=1`.
    pub key: String,
    pub quantity: String,
    pub expected: f64,
    pub computed: f64,
    pub rel_error: f64,
    /// Relative tolerance.
    pub tolerance: f64,
    pub pass: bool,
    /// Known misprint or reference-only row: reported, but it does not decide
    /// whether the report passes.
    pub annotation: Option<String>,
}

impl Row {
    /// `pass` iff `|computed - expected| <= tolerance * max(|expected|, 1e-12)`.
    pub fn new(
        key: impl Into<String>,
        quantity: impl Into<String>,
        expected: f64,
        computed: f64,
        tolerance: f64,
    ) -> Self {
        let scale = expected.abs().max(1e-12);
        let rel_error = (computed - expected).abs() / scale;
        Self {
            key: key.into(),
            quantity: quantity.into(),
            expected,
            computed,
            rel_error,
            tolerance,
            pass: rel_error <= tolerance,
            annotation: None,
        }
    }

    /// Same test with an absolute tolerance, stored in relative form.
    pub fn absolute(
        key: impl Into<String>,
        quantity: impl Into<String>,
        expected: f64,
        computed: f64,
        tol: f64,
    ) -> Self {
        Self::new(key, quantity, expected, computed, tol / expected.abs().max(1e-12))
    }

    pub fn annotate(mut self, note: impl Into<String>) -> Self {
        self.annotation = Some(note.into());
        self
    }

    /// Whether the row takes part in the pass/fail outcome.
    pub fn counts(&self) -> bool {
        self.annotation.is_none()
    }
}

/// Cutoff scan behind the bound-state calibration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub r_min: f64,
    /// Nodeless negative-energy level for `1/r`, if one lies above the floor.
    pub coulomb: Option<f64>,
    pub log: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Conclusive,
    /// The comparison could not be set up; rows may be partial.
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub label: String,
    pub rows: Vec<Row>,
    pub status: Status,
    /// Only filled by the bound-state report.
    pub scan: Vec<ScanPoint>,
}

impl ComparisonReport {
    pub fn new(label: impl Into<String>, rows: Vec<Row>) -> Self {
        Self {
            label: label.into(),
            rows,
            status: Status::Conclusive,
            scan: Vec::new(),
        }
    }

    pub fn is_conclusive(&self) -> bool {
        self.status == Status::Conclusive
    }

    /// Every counted row passes.
    pub fn passed(&self) -> bool {
        self.rows.iter().filter(|r| r.counts()).all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.counts() && !r.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule_is_relative_with_a_floor() {
        assert!(Row::new("k", "q", 2.0, 2.059, 0.03).pass);
        assert!(!Row::new("k", "q", 2.0, 2.07, 0.03).pass);
        assert!(Row::new("k", "q", 0.0, 0.0, 0.0).pass);
        assert!(!Row::new("k", "q", 0.0, 1e-9, 1.0).pass);
        let r = Row::absolute("k", "q", 0.0417, 1.0 / 24.0, 5e-5);
        assert!(r.pass);
        assert!((r.tolerance * 0.0417 - 5e-5).abs() < 1e-15);
    }

    #[test]
    fn annotated_rows_do_not_fail_a_report() {
        let rows = vec![
            Row::new("a", "q", 1.0, 1.0, 1e-9),
            Row::new("b", "q", 0.2, 0.22, 1e-9).annotate("misprint"),
        ];
        let report = ComparisonReport::new("t", rows);
        assert!(report.passed());
        assert_eq!(report.failures().count(), 0);
        assert!(!report.rows[1].pass);
    }
}
