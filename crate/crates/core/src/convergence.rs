//! Order (O) and unbounded order (uO) limits of eventually periodic
//! sequences on finite lattices.
//!
//! A finite lattice is complete, so a sequence O-converges to `x` exactly
//! when its liminf (join of tail meets) and limsup (meet of tail joins) both
//! equal `x`: tail meets form a directed set and tail joins a filtered set
//! that sandwich the tail, and conversely any sandwiching pair `(M, N)` is
//! squeezed between them. [`OLimitOracle`] checks the sandwich definition
//! literally, by enumerating directed and filtered subsets, so the shortcut
//! used by [`o_limit`] can be validated against it.
//!
//! On a finite lattice O-convergence of a sequence is eventual constancy.
//! Consequently order continuity of uO-convergence always holds here and the
//! failure of it without join-infinite distributivity can only be exhibited
//! on an infinite lattice; see [`crate::gallery::closed_sets`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::set::ElementSet;

/// An eventually periodic sequence: `prefix` followed by `cycle` repeated
/// forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeq")]
pub struct UpSeq {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

#[derive(Deserialize)]
struct RawSeq {
    #[serde(default)]
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

impl TryFrom<RawSeq> for UpSeq {
    type Error = Error;
    fn try_from(raw: RawSeq) -> Result<Self> {
        UpSeq::new(raw.prefix, raw.cycle)
    }
}

impl UpSeq {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Input("sequence cycle must be nonempty".into()));
        }
        Ok(UpSeq { prefix, cycle })
    }

    pub fn constant(x: usize) -> Self {
        UpSeq {
            prefix: vec![],
            cycle: vec![x],
        }
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// The `n`-th term.
    pub fn at(&self, n: usize) -> usize {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Number of terms that cover the prefix, one full period, and the
    /// wrap-around step back to the start of the cycle.
    fn span(&self) -> usize {
        self.prefix.len() + self.cycle.len() + 1
    }

    pub fn validate(&self, lattice: &FiniteLattice) -> Result<()> {
        self.prefix
            .iter()
            .chain(&self.cycle)
            .try_for_each(|&id| lattice.poset().check_id(id))
    }

    /// Applies `f` termwise.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> UpSeq {
        UpSeq {
            prefix: self.prefix.iter().map(|&x| f(x)).collect(),
            cycle: self.cycle.iter().map(|&x| f(x)).collect(),
        }
    }

    /// The termwise combination `n ↦ f(self_n, other_n)`, again eventually
    /// periodic with the lcm of the two periods.
    pub fn zip_with(&self, other: &UpSeq, f: impl Fn(usize, usize) -> usize) -> UpSeq {
        let start = self.prefix.len().max(other.prefix.len());
        let period = lcm(self.cycle.len(), other.cycle.len());
        UpSeq {
            prefix: (0..start).map(|n| f(self.at(n), other.at(n))).collect(),
            cycle: (start..start + period)
                .map(|n| f(self.at(n), other.at(n)))
                .collect(),
        }
    }

    /// True when from some index on every term satisfies `pred`.
    pub fn eventually(&self, pred: impl Fn(usize) -> bool) -> bool {
        let end = self.prefix.len() + self.cycle.len();
        (0..=self.prefix.len()).any(|start| (start..end).all(|n| pred(self.at(n))))
    }

    /// Every sequence over `alphabet` with prefix length `<= max_prefix` and
    /// cycle length in `1..=max_cycle`.
    pub fn enumerate(alphabet: &[usize], max_prefix: usize, max_cycle: usize) -> Vec<UpSeq> {
        let words = |len: usize| -> Vec<Vec<usize>> {
            let mut out = vec![vec![]];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|w| {
                        alphabet.iter().map(move |&a| {
                            let mut v = w.clone();
                            v.push(a);
                            v
                        })
                    })
                    .collect();
            }
            out
        };
        let prefixes: Vec<Vec<usize>> = (0..=max_prefix).flat_map(words).collect();
        let cycles: Vec<Vec<usize>> = (1..=max_cycle).flat_map(words).collect();
        prefixes
            .iter()
            .flat_map(|p| {
                cycles.iter().map(move |c| UpSeq {
                    prefix: p.clone(),
                    cycle: c.clone(),
                })
            })
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Join of tail meets; for a periodic tail this is the meet of the cycle.
pub fn liminf(lattice: &FiniteLattice, seq: &UpSeq) -> usize {
    lattice.inf_iter(seq.cycle.iter().copied())
}

/// Meet of tail joins; for a periodic tail this is the join of the cycle.
pub fn limsup(lattice: &FiniteLattice, seq: &UpSeq) -> usize {
    lattice.sup_iter(seq.cycle.iter().copied())
}

/// The O-limit, if the sequence O-converges.
pub fn o_limit(lattice: &FiniteLattice, seq: &UpSeq) -> Option<usize> {
    let lo = liminf(lattice, seq);
    (lo == limsup(lattice, seq)).then_some(lo)
}

/// Lattices larger than this are refused by [`OLimitOracle`].
pub const ORACLE_MAX_SIZE: usize = 8;

/// Literal sandwich check for O-convergence: `x` is a limit iff there are a
/// directed `M` and a filtered `N` with `⋁M = ⋀N = x` such that for every
/// `(m, n) ∈ M × N` the sequence is eventually in `[m, n]`.
///
/// Directed and filtered subsets are enumerated once per lattice.
pub struct OLimitOracle<'a> {
    lattice: &'a FiniteLattice,
    directed: Vec<Vec<ElementSet>>,
    filtered: Vec<Vec<ElementSet>>,
}

impl<'a> OLimitOracle<'a> {
    pub fn new(lattice: &'a FiniteLattice) -> Result<Self> {
        let n = lattice.len();
        if n > ORACLE_MAX_SIZE {
            return Err(Error::ResourceCap(format!(
                "O-limit oracle enumerates subsets; |L| = {n} exceeds {ORACLE_MAX_SIZE}"
            )));
        }
        let ids: Vec<usize> = (0..n).collect();
        let mut directed = vec![Vec::new(); n];
        let mut filtered = vec![Vec::new(); n];
        let p = lattice.poset();
        for mask in 1..(1u64 << n) {
            let s = ElementSet::from_mask(&ids, mask);
            if p.is_directed(&s) {
                directed[lattice.sup(&s)].push(s);
            }
            if p.is_filtered(&s) {
                filtered[lattice.inf(&s)].push(s);
            }
        }
        Ok(OLimitOracle {
            lattice,
            directed,
            filtered,
        })
    }

    pub fn converges_to(&self, seq: &UpSeq, x: usize) -> bool {
        let n = self.lattice.len();
        // allowed[m] = { n : the sequence is eventually in [m, n] }
        let allowed: Vec<ElementSet> = (0..n)
            .map(|m| {
                (0..n)
                    .filter(|&top| {
                        seq.eventually(|v| self.lattice.leq(m, v) && self.lattice.leq(v, top))
                    })
                    .collect()
            })
            .collect();
        self.directed[x].iter().any(|big_m| {
            let ok = big_m
                .iter()
                .fold(self.lattice.all(), |acc, m| acc.intersection(&allowed[m]));
            self.filtered[x].iter().any(|big_n| big_n.is_subset(&ok))
        })
    }
}

/// One-shot form of [`OLimitOracle::converges_to`].
pub fn o_limit_oracle(lattice: &FiniteLattice, seq: &UpSeq, x: usize) -> Result<bool> {
    lattice.poset().check_id(x)?;
    Ok(OLimitOracle::new(lattice)?.converges_to(seq, x))
}

/// Which truncation pairs the uO definition quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum UoVariant {
    /// `(x_n ∧ t) ∨ s → (x ∧ t) ∨ s` for all `s <= t`.
    #[default]
    Restricted,
    /// `(x_n ∨ s) ∧ t → (x ∨ s) ∧ t` for all `s, t`.
    Unrestricted,
}

/// Checks uO-convergence of `seq` to `x`; on failure returns the first
/// `(s, t)` (in lexicographic order) whose truncated sequence misses.
pub fn uo_converges_to(
    lattice: &FiniteLattice,
    seq: &UpSeq,
    x: usize,
    variant: UoVariant,
) -> std::result::Result<(), (usize, usize)> {
    let n = lattice.len();
    for s in 0..n {
        for t in 0..n {
            let truncate = |v: usize| match variant {
                UoVariant::Restricted => lattice.apply_f(s, t, v),
                UoVariant::Unrestricted => lattice.apply_g(s, t, v),
            };
            if variant == UoVariant::Restricted && !lattice.leq(s, t) {
                continue;
            }
            if o_limit(lattice, &seq.map(truncate)) != Some(truncate(x)) {
                return Err((s, t));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UoLimit {
    pub limit: Option<usize>,
    /// Truncation pair `(s, t)` refuting the only possible candidate.
    pub witness: Option<(usize, usize)>,
}

/// The uO-limit. Since the `(⊥, ⊤)` truncation is the identity, the only
/// candidate is the O-limit; it is accepted iff every truncation agrees.
pub fn uo_limit(lattice: &FiniteLattice, seq: &UpSeq) -> UoLimit {
    uo_limit_with(lattice, seq, UoVariant::Restricted)
}

pub fn uo_limit_with(lattice: &FiniteLattice, seq: &UpSeq, variant: UoVariant) -> UoLimit {
    match o_limit(lattice, seq) {
        None => UoLimit {
            limit: None,
            witness: Some((lattice.bottom(), lattice.top())),
        },
        Some(x) => match uo_converges_to(lattice, seq, x, variant) {
            Ok(()) => UoLimit {
                limit: Some(x),
                witness: None,
            },
            Err(w) => UoLimit {
                limit: None,
                witness: Some(w),
            },
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Constant,
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneLimitReport {
    pub direction: Monotonicity,
    /// Join of the range for increasing sequences, meet for decreasing ones.
    pub range_bound: usize,
    pub uo_limit: Option<usize>,
    /// `uo_limit` is absent or equals `range_bound`.
    pub holds: bool,
}

/// For a monotone sequence, checks that a uO-limit (when it exists) is the
/// supremum (increasing) or infimum (decreasing) of the range.
pub fn check_monotone_limit(lattice: &FiniteLattice, seq: &UpSeq) -> Result<MonotoneLimitReport> {
    seq.validate(lattice)?;
    let terms: Vec<usize> = (0..seq.span()).map(|n| seq.at(n)).collect();
    let increasing = terms.windows(2).all(|w| lattice.leq(w[0], w[1]));
    let decreasing = terms.windows(2).all(|w| lattice.leq(w[1], w[0]));
    let direction = match (increasing, decreasing) {
        (true, true) => Monotonicity::Constant,
        (true, false) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        (false, false) => {
            return Err(Error::Precondition(
                "sequence is neither increasing nor decreasing".into(),
            ))
        }
    };
    let range_bound = match direction {
        Monotonicity::Decreasing => lattice.inf_iter(terms.iter().copied()),
        _ => lattice.sup_iter(terms.iter().copied()),
    };
    let limit = uo_limit(lattice, seq).limit;
    Ok(MonotoneLimitReport {
        direction,
        range_bound,
        uo_limit: limit,
        holds: limit.is_none_or(|x| x == range_bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn seq(prefix: &[usize], cycle: &[usize]) -> UpSeq {
        UpSeq::new(prefix.to_vec(), cycle.to_vec()).unwrap()
    }

    #[test]
    fn empty_cycle_rejected() {
        assert!(UpSeq::new(vec![1], vec![]).is_err());
        assert!(serde_json::from_str::<UpSeq>(r#"{"prefix":[0],"cycle":[]}"#).is_err());
        let s: UpSeq = serde_json::from_str(r#"{"cycle":[2]}"#).unwrap();
        assert_eq!(s, UpSeq::constant(2));
    }

    #[test]
    fn indexing_and_zip() {
        let a = seq(&[9], &[1, 2]);
        assert_eq!(
            (0..5).map(|n| a.at(n)).collect::<Vec<_>>(),
            vec![9, 1, 2, 1, 2]
        );
        let b = seq(&[], &[5, 6, 7]);
        let z = a.zip_with(&b, |x, y| x * 10 + y);
        for n in 0..20 {
            assert_eq!(z.at(n), a.at(n) * 10 + b.at(n));
        }
        assert_eq!(z.cycle().len(), 6);
    }

    #[test]
    fn liminf_limsup_examples() {
        let b2 = named::boolean(2); // ∅=0, a=1, b=2, ab=3
        let s = seq(&[], &[1, 2]);
        assert_eq!(liminf(&b2, &s), 0);
        assert_eq!(limsup(&b2, &s), 3);
        assert_eq!(o_limit(&b2, &s), None);
        let s = seq(&[3], &[0]);
        assert_eq!(liminf(&b2, &s), 0);
        assert_eq!(limsup(&b2, &s), 0);
        assert_eq!(o_limit(&b2, &s), Some(0));
        for x in 0..4 {
            assert_eq!(o_limit(&b2, &UpSeq::constant(x)), Some(x));
        }
    }

    #[test]
    fn oracle_examples() {
        let b2 = named::boolean(2);
        assert!(o_limit_oracle(&b2, &UpSeq::constant(1), 1).unwrap());
        assert!(!o_limit_oracle(&b2, &seq(&[], &[1, 2]), 3).unwrap());
        let c3 = named::chain(3);
        assert!(o_limit_oracle(&c3, &seq(&[0, 2], &[1]), 1).unwrap());
        assert!(o_limit_oracle(&named::boolean(4), &UpSeq::constant(0), 0).is_err());
    }

    #[test]
    fn uo_examples() {
        let n5 = named::n5();
        for x in 0..n5.len() {
            assert_eq!(uo_limit(&n5, &UpSeq::constant(x)).limit, Some(x));
        }
        let r = uo_limit(&n5, &seq(&[], &[1, 3]));
        assert_eq!(r.limit, None);
        assert_eq!(r.witness, Some((n5.bottom(), n5.top())));
    }

    #[test]
    fn monotone_examples() {
        let c4 = named::chain(4);
        let r = check_monotone_limit(&c4, &seq(&[0, 1, 2], &[3])).unwrap();
        assert_eq!(r.direction, Monotonicity::Increasing);
        assert_eq!(r.uo_limit, Some(3));
        assert!(r.holds);
        let r = check_monotone_limit(&c4, &UpSeq::constant(2)).unwrap();
        assert_eq!(r.direction, Monotonicity::Constant);
        assert_eq!(r.uo_limit, Some(2));
        // decreasing in B3: abc, ab, a, then constant a
        let b3 = named::boolean(3);
        let r = check_monotone_limit(&b3, &seq(&[7, 3], &[1])).unwrap();
        assert_eq!(r.direction, Monotonicity::Decreasing);
        assert_eq!(r.range_bound, 1);
        assert_eq!(r.uo_limit, Some(1));
        assert!(check_monotone_limit(&b3, &seq(&[], &[1, 2])).is_err());
    }

    #[test]
    fn enumerate_counts() {
        let all = UpSeq::enumerate(&[0, 1], 2, 3);
        // prefixes 1 + 2 + 4, cycles 2 + 4 + 8
        assert_eq!(all.len(), 7 * 14);
    }
}
