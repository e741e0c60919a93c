use std::fmt;

use serde::Serialize;

use crate::rational::{serde_text, Rational};
use crate::series::{CoefficientKey, ColorSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// The first failing coefficient of an identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<String>,
    pub detail: String,
    #[serde(with = "serde_text")]
    pub expected: Rational,
    #[serde(with = "serde_text")]
    pub got: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub parameters: String,
    pub status: Status,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}] checked={}", self.status, self.identity, self.parameters, self.checked)?;
        if let Some(w) = &self.witness {
            write!(
                f,
                " at ({}) {}: expected {} got {}",
                w.tuple.join(","),
                w.detail,
                w.expected,
                w.got
            )?;
        }
        Ok(())
    }
}

/// Collects coefficient comparisons and keeps the smallest failing key in
/// graded lexicographic order (ties broken by `detail`).
pub struct ReportBuilder<'a> {
    identity: String,
    parameters: String,
    colors: &'a ColorSet,
    checked: usize,
    worst: Option<(CoefficientKey, Witness)>,
}

impl<'a> ReportBuilder<'a> {
    pub fn new(identity: impl Into<String>, parameters: impl Into<String>, colors: &'a ColorSet) -> Self {
        ReportBuilder { identity: identity.into(), parameters: parameters.into(), colors, checked: 0, worst: None }
    }

    pub fn check(&mut self, key: &CoefficientKey, detail: &str, expected: &Rational, got: &Rational) {
        self.checked += 1;
        if expected == got {
            return;
        }
        let replace = match &self.worst {
            None => true,
            Some((k, w)) => (key, detail) < (k, w.detail.as_str()),
        };
        if replace {
            let witness = Witness {
                tuple: self.colors.render(key.colors()),
                detail: detail.to_string(),
                expected: expected.clone(),
                got: got.clone(),
            };
            self.worst = Some((key.clone(), witness));
        }
    }

    pub fn finish(self) -> IdentityReport {
        let witness = self.worst.map(|(_, w)| w);
        IdentityReport {
            identity: self.identity,
            parameters: self.parameters,
            status: if witness.is_some() { Status::Fail } else { Status::Pass },
            checked: self.checked,
            witness,
        }
    }
}
