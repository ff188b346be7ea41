//! Verdict records shared by the property suites, the gallery and the CLI.

use serde::Serialize;
use serde_json::Value;

use crate::sweep::{EmptySubsets, SweepMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Whether this verdict is a violation of an expected outcome.
    pub fn is_violation(self) -> bool {
        self == Verdict::Fail
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Refuted => "REFUTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// One checked property. `anchor` is a short description of the claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyVerdict {
    pub id: String,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<SweepMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_subsets: Option<EmptySubsets>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl PropertyVerdict {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, verdict: Verdict) -> Self {
        PropertyVerdict {
            id: id.into(),
            anchor: anchor.into(),
            mode: None,
            empty_subsets: None,
            verdict,
            witness: None,
            detail: None,
        }
    }

    pub fn check(id: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        Self::new(id, anchor, Verdict::from_bool(ok))
    }

    pub fn mode(mut self, mode: SweepMode) -> Self {
        self.mode = Some(mode);
        self
    }

    pub fn empty_subsets(mut self, e: EmptySubsets) -> Self {
        self.empty_subsets = Some(e);
        self
    }

    pub fn witness<T: Serialize>(mut self, w: &T) -> Self {
        self.witness = serde_json::to_value(w).ok().filter(|v| !v.is_null());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// The verdicts of one suite, sorted by property id.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyVerdict>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, mut properties: Vec<PropertyVerdict>) -> Self {
        properties.sort_by(|a, b| a.id.cmp(&b.id));
        SuiteReport {
            suite: suite.into(),
            properties,
        }
    }

    pub fn has_violation(&self) -> bool {
        self.properties.iter().any(|p| p.verdict.is_violation())
    }
}
