//! Verification reports: per-check records with a status, the statement
//! each check exercises, and numeric evidence.

use serde::Serialize;
use std::fmt::Write as _;

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Nothing to test (e.g. both sides of a comparison vanish).
    Vacuous,
    /// The check ran, but its threshold is a convention, not a theorem.
    Heuristic,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Vacuous => "vacuous",
            CheckStatus::Heuristic => "heuristic",
        }
    }

    /// Only `Fail` fails a suite; vacuous and heuristic statuses do not.
    pub fn is_failure(self) -> bool {
        self == CheckStatus::Fail
    }
}

/// One executed check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The statement being verified, e.g. "Theorem 1" or "Lemma 1".
    pub reference: String,
    pub status: CheckStatus,
    /// Named numeric evidence (worst margins, counts, estimates).
    pub evidence: Vec<(String, f64)>,
    pub detail: String,
    pub runtime_ms: f64,
}

/// The full outcome of a verification run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status.is_failure())
            .count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }

    /// Human-readable table, one line per check.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(8)
            .max(8);
        for check in &self.checks {
            let mut line = format!(
                "{:<w$}  {:<9}  [{}]",
                check.name,
                check.status.label(),
                check.reference,
                w = width
            );
            if !check.detail.is_empty() {
                let _ = write!(line, "  {}", check.detail);
            }
            for (key, value) in check.evidence.iter().take(4) {
                let _ = write!(line, "  {key}={value}");
            }
            out.push_str(&line);
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} checks, {} failed",
            self.checks.len(),
            self.failures()
        );
        out
    }
}

/// Time a closure and build a `CheckResult` from its outcome; any error
/// becomes a failing check and the suite moves on.
pub fn run_check<F>(name: &str, reference: &str, f: F) -> CheckResult
where
    F: FnOnce() -> crate::error::Result<(CheckStatus, Vec<(String, f64)>, String)>,
{
    let start = std::time::Instant::now();
    let (status, evidence, detail) = match f() {
        Ok(outcome) => outcome,
        Err(e) => (CheckStatus::Fail, Vec::new(), format!("error: {e}")),
    };
    CheckResult {
        name: name.to_string(),
        reference: reference.to_string(),
        status,
        evidence,
        detail,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_counting_and_summary() {
        let mut report = VerificationReport::default();
        report.push(run_check("alpha", "Theorem 1", || {
            Ok((CheckStatus::Pass, vec![("margin".into(), 0.5)], String::new()))
        }));
        report.push(run_check("beta", "Lemma 1", || {
            Err(crate::error::Error::ZeroIndex)
        }));
        assert_eq!(report.failures(), 1);
        assert!(!report.all_passed());
        let text = report.summary_text();
        assert!(text.contains("alpha"));
        assert!(text.contains("FAIL"));
        assert!(text.contains("2 checks, 1 failed"));
    }
}
