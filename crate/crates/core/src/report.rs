use std::fmt;

use serde::{Deserialize, Serialize};

/// A single failed law or malformed reference, with the identifiers that
/// witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub malformed: bool,
}

/// Outcome of a validator. Violations are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when some violation is a dangling or ill-typed reference rather
    /// than a failed law.
    pub fn has_malformed(&self) -> bool {
        self.violations.iter().any(|v| v.malformed)
    }

    pub fn push<S: Into<String>>(&mut self, law: &str, witness: impl IntoIterator<Item = S>) {
        self.violations.push(Violation {
            law: law.to_string(),
            witness: witness.into_iter().map(Into::into).collect(),
            malformed: false,
        });
    }

    pub fn malformed<S: Into<String>>(&mut self, what: &str, witness: impl IntoIterator<Item = S>) {
        self.violations.push(Violation {
            law: what.to_string(),
            witness: witness.into_iter().map(Into::into).collect(),
            malformed: true,
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Violations whose law name starts with `prefix`.
    pub fn laws_matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Violation> {
        self.violations.iter().filter(move |v| v.law.starts_with(prefix))
    }

    pub fn mentions(&self, prefix: &str) -> bool {
        self.laws_matching(prefix).next().is_some()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} [{}]", v.law, v.witness.join(", "))?;
        }
        Ok(())
    }
}
