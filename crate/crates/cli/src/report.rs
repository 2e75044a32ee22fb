//! Check outcomes and their text/JSON rendering.

use serde::Serialize;

/// How a single check resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The asserted property held.
    Pass,
    /// The asserted property broke.
    Fail,
    /// The check predicts a failure and the failure reproduced — counts as
    /// a pass for the suite's exit status.
    ExpectedFail,
}

/// Raw result produced by a check body (no timing).
#[derive(Clone, Debug)]
pub struct RawOutcome {
    pub verdict: Verdict,
    pub samples: usize,
    pub counterexample: Option<String>,
    pub notes: Option<String>,
}

impl RawOutcome {
    pub fn pass(samples: usize) -> RawOutcome {
        RawOutcome { verdict: Verdict::Pass, samples, counterexample: None, notes: None }
    }

    pub fn fail(samples: usize, counterexample: String) -> RawOutcome {
        RawOutcome {
            verdict: Verdict::Fail,
            samples,
            counterexample: Some(counterexample),
            notes: None,
        }
    }

    /// A predicted failure that did reproduce, with the witness that shows it.
    pub fn expected_fail(samples: usize, counterexample: String) -> RawOutcome {
        RawOutcome {
            verdict: Verdict::ExpectedFail,
            samples,
            counterexample: Some(counterexample),
            notes: None,
        }
    }

    pub fn with_notes(mut self, notes: String) -> RawOutcome {
        self.notes = Some(notes);
        self
    }

    pub fn effective_pass(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// One line of the suite report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    /// Effective result: true unless the verdict is `fail`.
    pub pass: bool,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub millis: u128,
}

impl CheckReport {
    pub fn from_raw(name: &str, raw: RawOutcome, millis: u128) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            pass: raw.effective_pass(),
            verdict: raw.verdict,
            samples: raw.samples,
            counterexample: raw.counterexample,
            notes: raw.notes,
            millis,
        }
    }

    /// Aligned one-line text rendering.
    pub fn text_line(&self) -> String {
        let tag = match self.verdict {
            Verdict::Pass => "PASS ",
            Verdict::Fail => "FAIL ",
            Verdict::ExpectedFail => "XFAIL",
        };
        let mut line = format!(
            "{tag}  {:<26} samples={:<5} {:>7} ms",
            self.name, self.samples, self.millis
        );
        if let Some(c) = &self.counterexample {
            line.push_str(&format!("\n       counterexample: {c}"));
        }
        if let Some(nt) = &self.notes {
            line.push_str(&format!("\n       note: {nt}"));
        }
        line
    }
}

/// Whole-suite report, the unit of `--json` output.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub n: usize,
    pub deg: usize,
    pub samples: usize,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_failure_counts_as_pass() {
        let raw = RawOutcome::expected_fail(1, "residual -3*d1*d2".into());
        assert!(raw.effective_pass());
        let rep = CheckReport::from_raw("demo", raw, 3);
        assert!(rep.pass);
        assert!(rep.text_line().starts_with("XFAIL"));
        let js = serde_json::to_value(&rep).unwrap();
        assert_eq!(js["verdict"], "expected-fail");
        assert_eq!(js["pass"], true);
    }

    #[test]
    fn failure_is_a_failure() {
        let rep = CheckReport::from_raw("demo", RawOutcome::fail(2, "boom".into()), 1);
        assert!(!rep.pass);
        assert!(rep.text_line().contains("counterexample: boom"));
    }
}
