use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Undetermined,
}

/// A three-valued verdict with its justification.
///
/// `Undetermined` always names the oracle tier that gave up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub reason: String,
}

impl Verdict {
    pub fn pass(reason: impl Into<String>) -> Verdict {
        Verdict { outcome: Outcome::Pass, reason: reason.into() }
    }

    pub fn fail(reason: impl Into<String>) -> Verdict {
        Verdict { outcome: Outcome::Fail, reason: reason.into() }
    }

    pub fn undetermined(tier: &str, reason: impl Into<String>) -> Verdict {
        Verdict { outcome: Outcome::Undetermined, reason: format!("[{tier}] {}", reason.into()) }
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    /// Conjunction: any FAIL wins, then any UNDETERMINED, else PASS.
    pub fn all(verdicts: &[&Verdict], pass_reason: &str) -> Verdict {
        if let Some(v) = verdicts.iter().find(|v| v.is_fail()) {
            return (*v).clone();
        }
        if let Some(v) = verdicts.iter().find(|v| v.outcome == Outcome::Undetermined) {
            return (*v).clone();
        }
        Verdict::pass(pass_reason)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Undetermined => "UNDETERMINED",
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.outcome, self.reason)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_prefers_fail() {
        let p = Verdict::pass("ok");
        let u = Verdict::undetermined("invariants", "keys collide");
        let f = Verdict::fail("bad");
        assert_eq!(Verdict::all(&[&p, &u, &f], "x").outcome, Outcome::Fail);
        assert_eq!(Verdict::all(&[&p, &u], "x").outcome, Outcome::Undetermined);
        assert!(Verdict::all(&[&p, &p], "x").is_pass());
        assert!(u.reason.starts_with("[invariants]"));
    }
}
