//! Exact symbolic models of four infinite lattices and the claims checked
//! on them.

pub mod closed_sets;
pub mod ext;
pub mod ray_ring;
pub mod two_chain;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Verdict;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub id: String,
    pub anchor: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Claim {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        computed: impl Into<String>,
        verdict: Verdict,
    ) -> Self {
        Claim {
            id: id.into(),
            anchor: anchor.into(),
            computed: computed.into(),
            verdict,
            detail: None,
        }
    }

    /// PASS when `ok`, FAIL otherwise.
    pub fn expect(
        id: impl Into<String>,
        anchor: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) -> Self {
        Self::new(id, anchor, computed, Verdict::from_bool(ok))
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GalleryReport {
    pub example: String,
    pub claims: Vec<Claim>,
}

impl GalleryReport {
    pub fn new(example: impl Into<String>, claims: Vec<Claim>) -> Self {
        GalleryReport {
            example: example.into(),
            claims,
        }
    }

    pub fn has_violation(&self) -> bool {
        self.claims.iter().any(|c| c.verdict.is_violation())
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Example {
    ClosedSets,
    TwoChainDm,
    RayRing,
    Exmp3,
}

impl Example {
    pub const ALL: [Example; 4] = [
        Example::ClosedSets,
        Example::TwoChainDm,
        Example::RayRing,
        Example::Exmp3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Example::ClosedSets => "closed-sets",
            Example::TwoChainDm => "two-chain-dm",
            Example::RayRing => "ray-ring",
            Example::Exmp3 => "exmp3",
        }
    }

    pub fn run(self) -> Result<GalleryReport> {
        match self {
            Example::ClosedSets => closed_sets::report(),
            Example::TwoChainDm => two_chain::twochain_dm(),
            Example::RayRing => ray_ring::rayring_closure(),
            Example::Exmp3 => two_chain::regular_without_b(),
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single example, or `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    One(Example),
    All,
}

impl Selection {
    pub fn examples(self) -> Vec<Example> {
        match self {
            Selection::One(e) => vec![e],
            Selection::All => Example::ALL.to_vec(),
        }
    }
}

impl FromStr for Selection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Selection::All);
        }
        Example::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .map(Selection::One)
            .ok_or_else(|| Error::Input(format!("unknown gallery example `{s}`")))
    }
}

/// Runs the selected examples on separate threads; reports come back in
/// selection order.
pub fn run(sel: Selection) -> Result<Vec<GalleryReport>> {
    let examples = sel.examples();
    std::thread::scope(|scope| {
        let handles: Vec<_> = examples
            .iter()
            .map(|&e| scope.spawn(move || e.run()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("gallery job panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parses() {
        assert_eq!("all".parse::<Selection>().unwrap(), Selection::All);
        assert_eq!(
            "ray-ring".parse::<Selection>().unwrap(),
            Selection::One(Example::RayRing)
        );
        assert!("nope".parse::<Selection>().is_err());
    }

    #[test]
    fn all_examples_pass() {
        let reports = run(Selection::All).unwrap();
        assert_eq!(reports.len(), 4);
        for r in &reports {
            assert!(!r.has_violation(), "{r:#?}");
        }
    }
}
