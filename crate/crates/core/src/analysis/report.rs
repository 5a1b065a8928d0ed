use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    HypothesesNotMet,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::HypothesesNotMet => "HYPOTHESES_NOT_MET",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

/// Outcome of checking one theorem on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub status: Status,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
    pub witnesses: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: &str) -> VerificationReport {
        VerificationReport {
            theorem: theorem.to_string(),
            status: Status::Pass,
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    /// Records a hypothesis; returns whether it holds.
    pub fn hypothesis(&mut self, name: &str, satisfied: bool, detail: impl Into<String>) -> bool {
        self.hypotheses.push(Check {
            name: name.to_string(),
            satisfied,
            detail: detail.into(),
        });
        satisfied
    }

    pub fn conclusion(&mut self, name: &str, satisfied: bool, detail: impl Into<String>) -> bool {
        self.conclusions.push(Check {
            name: name.to_string(),
            satisfied,
            detail: detail.into(),
        });
        satisfied
    }

    /// A conclusion that does not apply to this instance; counts as satisfied.
    pub fn not_applicable(&mut self, name: &str, reason: &str) {
        self.conclusion(name, true, format!("not applicable: {reason}"));
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    /// Settles the status from the recorded checks.
    pub fn finish(mut self) -> VerificationReport {
        self.status = if self.hypotheses.iter().any(|c| !c.satisfied) {
            Status::HypothesesNotMet
        } else if self.conclusions.iter().any(|c| !c.satisfied) {
            Status::Fail
        } else {
            Status::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn conclusion_named(&self, name: &str) -> Option<&Check> {
        self.conclusions.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem: {}", self.theorem)?;
        writeln!(f, "status: {}", self.status)?;
        for (title, checks) in [("hypotheses", &self.hypotheses), ("conclusions", &self.conclusions)] {
            if checks.is_empty() {
                continue;
            }
            writeln!(f, "{title}:")?;
            for c in checks {
                let mark = if c.satisfied { "ok" } else { "no" };
                if c.detail.is_empty() {
                    writeln!(f, "  [{mark}] {}", c.name)?;
                } else {
                    writeln!(f, "  [{mark}] {}: {}", c.name, c.detail)?;
                }
            }
        }
        if !self.witnesses.is_empty() {
            writeln!(f, "witnesses:")?;
            for w in &self.witnesses {
                writeln!(f, "  {w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let mut r = VerificationReport::new("t");
        r.hypothesis("h", true, "");
        r.conclusion("c", true, "");
        assert_eq!(r.clone().finish().status, Status::Pass);
        r.conclusion("d", false, "");
        assert_eq!(r.clone().finish().status, Status::Fail);
        r.hypothesis("g", false, "");
        assert_eq!(r.finish().status, Status::HypothesesNotMet);
    }

    #[test]
    fn json_shape() {
        let mut r = VerificationReport::new("main");
        r.hypothesis("reflexive", true, "");
        let v = r.finish().to_json();
        assert_eq!(v["status"], "PASS");
        assert_eq!(v["hypotheses"][0]["name"], "reflexive");
        assert!(v["witnesses"].as_array().unwrap().is_empty());
    }
}
