//! Verification outcomes with counterexample certificates.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exact::{format_q, Q};

/// A concrete counterexample: the elements involved and both sides of the
/// violated relation, as exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<usize>,
    pub lhs: String,
    pub relation: String,
    pub rhs: String,
}

impl Witness {
    /// Witness over carrier indices; element names default to the indices.
    pub fn at(indices: &[usize], lhs: &Q, relation: &str, rhs: &Q) -> Self {
        Witness::raw(indices, format_q(lhs), relation, format_q(rhs))
    }

    pub fn raw(indices: &[usize], lhs: String, relation: &str, rhs: String) -> Self {
        Witness {
            elements: indices.iter().map(|i| i.to_string()).collect(),
            indices: indices.to_vec(),
            lhs,
            relation: relation.to_string(),
            rhs,
        }
    }

    /// Witness over elements that have no index (symbolic carriers).
    pub fn symbolic(elements: Vec<String>, lhs: String, relation: &str, rhs: String) -> Self {
        Witness { elements, indices: Vec::new(), lhs, relation: relation.to_string(), rhs }
    }

    /// Replaces index names by human-readable labels.
    pub fn labelled(mut self, labels: &[String]) -> Self {
        if !self.indices.is_empty() {
            self.elements =
                self.indices.iter().map(|&i| labels.get(i).cloned().unwrap_or_else(|| i.to_string())).collect();
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The hypothesis of a conditional statement does not hold on the input.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    /// The statement being checked, in symbolic form.
    pub identity: String,
    pub status: Status,
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub seed: u64,
    pub samples: u64,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    pub passed: bool,
    pub exhaustive: bool,
    /// False when any assertion was evaluated in floating point.
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
    pub assertions: Vec<Assertion>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            kind: "report".into(),
            command: command.into(),
            direction: None,
            passed: true,
            exhaustive: true,
            exact: true,
            sampling: None,
            assertions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn sampled(command: impl Into<String>, sampling: Sampling) -> Self {
        let mut r = Report::new(command);
        r.exhaustive = false;
        r.sampling = Some(sampling);
        r
    }

    /// Records an assertion; it fails exactly when a witness is supplied.
    pub fn check(&mut self, name: &str, identity: &str, checked: u64, witness: Option<Witness>) -> &mut Self {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.push(Assertion { name: name.into(), identity: identity.into(), status, checked, witness })
    }

    pub fn vacuous(&mut self, name: &str, identity: &str) -> &mut Self {
        self.push(Assertion {
            name: name.into(),
            identity: identity.into(),
            status: Status::Vacuous,
            checked: 0,
            witness: None,
        })
    }

    pub fn push(&mut self, a: Assertion) -> &mut Self {
        if a.status == Status::Fail {
            self.passed = false;
        }
        self.assertions.push(a);
        self
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    /// Appends the assertions of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) -> &mut Self {
        self.exhaustive &= other.exhaustive;
        self.exact &= other.exact;
        if self.sampling.is_none() {
            self.sampling = other.sampling;
        }
        for mut a in other.assertions {
            if !prefix.is_empty() {
                a.name = format!("{prefix}: {}", a.name);
            }
            self.push(a);
        }
        for n in other.notes {
            self.notes.push(if prefix.is_empty() { n } else { format!("{prefix}: {n}") });
        }
        self
    }

    /// Applies `labels` to every witness.
    pub fn labelled(mut self, labels: &[String]) -> Self {
        for a in &mut self.assertions {
            if let Some(w) = a.witness.take() {
                a.witness = Some(w.labelled(labels));
            }
        }
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| a.status == Status::Fail)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{verdict} {}", self.command);
        if let Some(d) = &self.direction {
            let _ = writeln!(s, "  direction: {d}");
        }
        if let Some(sm) = &self.sampling {
            let _ = writeln!(s, "  sampled: {} samples, seed {}, coordinates <= {}", sm.samples, sm.seed, sm.bound);
        }
        if !self.exact {
            let _ = writeln!(s, "  NOTE: floating-point assertions present");
        }
        for a in &self.assertions {
            let tag = match a.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
                Status::Vacuous => "n/a ",
            };
            let _ = writeln!(s, "  [{tag}] {} ({}; {} cases)", a.name, a.identity, a.checked);
            if let Some(w) = &a.witness {
                let _ = writeln!(s, "         at ({}): {} {} {}", w.elements.join(", "), w.lhs, w.relation, w.rhs);
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn failure_requires_witness() {
        let mut r = Report::new("t");
        r.check("a", "x <= y", 3, None);
        assert!(r.passed);
        r.check("b", "x <= y", 3, Some(Witness::at(&[1, 2], &qi(2), "<=", &qi(1))));
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
        assert!(r.failures().all(|a| a.witness.is_some()));
    }

    #[test]
    fn labels_replace_indices() {
        let w = Witness::at(&[1], &qi(0), "=", &qi(1)).labelled(&["a".into(), "b".into()]);
        assert_eq!(w.elements, vec!["b".to_string()]);
    }
}
