//! Validation reports shared by the groupoid and double-groupoid checkers.

use serde::Serialize;
use std::fmt;

/// A single violated axiom together with a witness tuple of ids.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    /// Stable axiom code, e.g. `"inverse-law"`, `"interchange"`.
    pub axiom: String,
    /// Ids of the offending objects/arrows/boxes, in the order the axiom names them.
    pub witness: Vec<u32>,
    pub message: String,
}

impl Violation {
    pub fn new(axiom: &str, witness: Vec<u32>, message: impl Into<String>) -> Self {
        Violation {
            axiom: axiom.to_string(),
            witness,
            message: message.into(),
        }
    }
}

/// Outcome of an exhaustive validation pass. Empty means valid.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, witness: Vec<u32>, message: impl Into<String>) {
        self.violations.push(Violation::new(axiom, witness, message));
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Deterministic order regardless of how the checks were partitioned.
    pub fn sort(&mut self) {
        self.violations
            .sort_by(|a, b| (&a.axiom, &a.witness).cmp(&(&b.axiom, &b.witness)));
    }

    pub fn has_axiom(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "[{}] witness {:?}: {}", v.axiom, v.witness, v.message)?;
        }
        Ok(())
    }
}
