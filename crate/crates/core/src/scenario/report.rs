use std::fmt::Write as _;

use serde::Serialize;

/// A named polynomial in a report, rendered canonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub label: String,
    pub value: String,
}

impl Residual {
    pub fn new(label: impl Into<String>, value: impl ToString) -> Residual {
        Residual {
            label: label.into(),
            value: value.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub shift: i64,
    pub signs: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    /// Wall-clock milliseconds per check; only filled on request so that
    /// plain reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<Vec<u128>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {} (shift {})", self.scenario, self.shift);
        let _ = writeln!(out, "signs: {}", self.signs);
        for (i, c) in self.checks.iter().enumerate() {
            let tag = if c.passed { "pass" } else { "FAIL" };
            let _ = write!(out, "[{tag}] {}", c.check);
            if let Some(ms) = self.timing_ms.as_ref().and_then(|t| t.get(i)) {
                let _ = write!(out, " ({ms} ms)");
            }
            out.push('\n');
            if let Some(note) = &c.note {
                let _ = writeln!(out, "    note: {note}");
            }
            for r in &c.residuals {
                let _ = writeln!(out, "    {} = {}", r.label, r.value);
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "result: {} ({passed}/{} checks passed)",
            if self.passed { "pass" } else { "FAIL" },
            self.checks.len()
        );
        out
    }
}
