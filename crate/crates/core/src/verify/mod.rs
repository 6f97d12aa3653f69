//! Cross-validation suites tying the closed forms, the golden tables,
//! the group computations, and the homology oracle together, plus the
//! Betti-number distinguishability engine.
//!
//! Every check yields a [`Report`]; failures and flagged anomalies
//! always carry a witness. Known paper anomalies are marked expected so
//! a regression is distinguishable from a documented discrepancy.

mod distinguish;
mod suites;

pub use distinguish::{distinguish, DistinguishOutcome};
pub use suites::{golden_table_suite, oracle_suite, run_identity_suite};

use serde_json::{json, Value};

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        }
    }
}

/// Witness data for a non-pass: the first differing degree when that is
/// meaningful, and renderings of the two compared values.
#[derive(Clone, Debug, Default)]
pub struct Witness {
    pub degree: Option<usize>,
    pub left: String,
    pub right: String,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub params: String,
    pub status: Status,
    /// Present whenever the status is not `Pass`.
    pub witness: Option<Witness>,
    /// True for documented anomalies: a flagged status here is healthy.
    pub expected_flagged: bool,
}

impl Report {
    pub fn pass(check: impl Into<String>, params: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            params: params.into(),
            status: Status::Pass,
            witness: None,
            expected_flagged: false,
        }
    }

    pub fn fail(check: impl Into<String>, params: impl Into<String>, witness: Witness) -> Self {
        Report {
            check: check.into(),
            params: params.into(),
            status: Status::Fail,
            witness: Some(witness),
            expected_flagged: false,
        }
    }

    pub fn flagged(
        check: impl Into<String>,
        params: impl Into<String>,
        witness: Witness,
        expected: bool,
    ) -> Self {
        Report {
            check: check.into(),
            params: params.into(),
            status: Status::Flagged,
            witness: Some(witness),
            expected_flagged: expected,
        }
    }

    /// An unexpected problem: a hard failure, or a flag that was not
    /// documented beforehand.
    pub fn is_unexpected(&self) -> bool {
        match self.status {
            Status::Pass => false,
            Status::Fail => true,
            Status::Flagged => !self.expected_flagged,
        }
    }

    pub fn to_json(&self) -> Value {
        let witness = self.witness.as_ref().map(|w| {
            json!({
                "degree": w.degree,
                "left": w.left,
                "right": w.right,
                "note": w.note,
            })
        });
        json!({
            "check": self.check,
            "params": self.params,
            "status": self.status.as_str(),
            "expected_flagged": self.expected_flagged,
            "witness": witness,
        })
    }
}

/// Markdown summary of a report list, one row per check.
pub fn markdown_summary(reports: &[Report]) -> String {
    let mut out = String::new();
    out.push_str("| check | params | status | witness |\n");
    out.push_str("|---|---|---|---|\n");
    for r in reports {
        let witness = r
            .witness
            .as_ref()
            .map(|w| {
                let mut s = String::new();
                if let Some(d) = w.degree {
                    s.push_str(&format!("degree {d}: "));
                }
                s.push_str(&format!("{} vs {}", w.left, w.right));
                if !w.note.is_empty() {
                    s.push_str(&format!(" ({})", w.note));
                }
                s
            })
            .unwrap_or_default();
        let status = if r.status == Status::Flagged && r.expected_flagged {
            "flagged (expected)".to_string()
        } else {
            r.status.as_str().to_string()
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            r.check, r.params, status, witness
        ));
    }
    let unexpected = reports.iter().filter(|r| r.is_unexpected()).count();
    let passes = reports
        .iter()
        .filter(|r| r.status == Status::Pass)
        .count();
    out.push_str(&format!(
        "\n{} checks: {} passed, {} unexpected problems.\n",
        reports.len(),
        passes,
        unexpected
    ));
    out
}
