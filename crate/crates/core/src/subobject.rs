//! Structural classification of subsets of a finite lattice, the bound
//! properties (A) and (B), regularity, and O-/uO-adherence.

use std::fmt::Debug;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::convergence::{o_limit, uo_limit, UpSeq};
use crate::cut;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::set::ElementSet;
use crate::sweep::{EmptySubsets, SweepConfig, SweepMode};

/// A subset with its structural flags, always recomputed from the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetDescriptor {
    pub members: ElementSet,
    pub sublattice: bool,
    pub ideal: bool,
    pub down_set: bool,
    pub convex: bool,
}

pub fn classify(lattice: &FiniteLattice, set: &ElementSet) -> Result<SubsetDescriptor> {
    lattice.poset().check_set(set)?;
    let p = lattice.poset();
    let sublattice = is_sublattice(lattice, set);
    let down_set = set.iter().all(|a| p.down_set(a).is_subset(set));
    let join_closed = set
        .iter()
        .all(|a| set.iter().all(|b| set.contains(lattice.join(a, b))));
    let convex = set.iter().all(|a| {
        set.iter()
            .filter(|&b| p.leq(a, b))
            .all(|b| p.up_set(a).intersection(&p.down_set(b)).is_subset(set))
    });
    Ok(SubsetDescriptor {
        members: *set,
        sublattice,
        ideal: down_set && join_closed,
        down_set,
        convex,
    })
}

pub fn is_sublattice(lattice: &FiniteLattice, set: &ElementSet) -> bool {
    set.iter().all(|a| {
        set.iter()
            .all(|b| set.contains(lattice.meet(a, b)) && set.contains(lattice.join(a, b)))
    })
}

/// Smallest sublattice containing `set`.
pub fn sublattice_closure(lattice: &FiniteLattice, set: &ElementSet) -> ElementSet {
    let mut current = *set;
    loop {
        let mut next = current;
        for a in current.iter() {
            for b in current.iter() {
                next.insert(lattice.meet(a, b));
                next.insert(lattice.join(a, b));
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

pub(crate) fn require_sublattice(lattice: &FiniteLattice, y: &ElementSet) -> Result<()> {
    lattice.poset().check_set(y)?;
    if is_sublattice(lattice, y) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} is not a sublattice",
            lattice.poset().format_set(y)
        )))
    }
}

/// A subset `A ⊆ Y` and a bound `x` of `A` that no bound of `A` inside `Y`
/// dominates (Property (A)) or is dominated by (Property (B)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundWitness {
    pub subset: Vec<usize>,
    pub x: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundPropertyCheck {
    pub holds: bool,
    pub mode: SweepMode,
    pub empty_subsets: EmptySubsets,
    pub witness: Option<BoundWitness>,
}

/// Property (A): for `A ⊆ Y` and `x ∈ A⁻` there is `y ∈ A⁻ ∩ Y` with
/// `x <= y`.
pub fn has_property_a(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> Result<BoundPropertyCheck> {
    bound_property(lattice, y, cfg, Side::Lower)
}

/// Property (B): for `A ⊆ Y` and `x ∈ A⁺` there is `y ∈ A⁺ ∩ Y` with
/// `y <= x`.
pub fn has_property_b(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> Result<BoundPropertyCheck> {
    bound_property(lattice, y, cfg, Side::Upper)
}

#[derive(Clone, Copy)]
enum Side {
    Lower,
    Upper,
}

/// Runs `visit` over subsets of `y`: all of them when `|Y|` is within the
/// exhaustive limit; otherwise every relative cut of `Y` first, then the
/// sampled sweep. Returns the mode.
pub(crate) fn sweep_subsets_of<F>(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
    mut visit: F,
) -> SweepMode
where
    F: FnMut(&ElementSet) -> ControlFlow<()>,
{
    let include_empty = cfg.empty_subsets.includes_empty();
    let members = y.to_vec();
    let exhaustive = members.len() <= cfg.subset_exhaustive_limit && !cfg.force_sampled;
    if !exhaustive {
        for a in cut::relative_cuts(lattice.poset(), y).unwrap_or_default() {
            if (include_empty || !a.is_empty()) && visit(&a).is_break() {
                return SweepMode::Sampled {
                    samples: cfg.samples,
                    max_enumerated_size: cfg.small_size,
                };
            }
        }
    }
    cfg.for_each_subset(
        &members,
        cfg.subset_exhaustive_limit,
        include_empty,
        |ids| visit(&ElementSet::from_ids(ids.iter().copied())),
    )
}

fn bound_property(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
    side: Side,
) -> Result<BoundPropertyCheck> {
    lattice.poset().check_set(y)?;
    let p = lattice.poset();
    let mut witness = None;
    let mode = sweep_subsets_of(lattice, y, cfg, |a| {
        let (bounds, reach): (ElementSet, fn(&_, usize) -> ElementSet) = match side {
            Side::Lower => (p.lb(a), |p: &crate::FinitePoset, v| p.down_set(v)),
            Side::Upper => (p.ub(a), |p: &crate::FinitePoset, v| p.up_set(v)),
        };
        let covered = bounds
            .intersection(y)
            .iter()
            .fold(ElementSet::empty(), |acc, v| acc.union(&reach(p, v)));
        match bounds.difference(&covered).first() {
            Some(x) => {
                witness = Some(BoundWitness {
                    subset: a.to_vec(),
                    x,
                });
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    Ok(BoundPropertyCheck {
        holds: witness.is_none(),
        mode,
        empty_subsets: cfg.empty_subsets,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Sup,
    Inf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityWitness {
    pub subset: Vec<usize>,
    pub kind: BoundKind,
    pub in_sublattice: usize,
    pub in_lattice: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityCheck {
    pub holds: bool,
    pub mode: SweepMode,
    pub empty_subsets: EmptySubsets,
    pub witness: Option<RegularityWitness>,
}

/// Whether every supremum or infimum that a subset of `Y` has inside `Y`
/// agrees with the one in the lattice.
pub fn is_regular(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> Result<RegularityCheck> {
    require_sublattice(lattice, y)?;
    let p = lattice.poset();
    let mut witness = None;
    let mode = sweep_subsets_of(lattice, y, cfg, |a| {
        if let Some(s) = p.least(&p.ub(a).intersection(y)) {
            let in_l = lattice.sup(a);
            if s != in_l {
                witness = Some(RegularityWitness {
                    subset: a.to_vec(),
                    kind: BoundKind::Sup,
                    in_sublattice: s,
                    in_lattice: in_l,
                });
                return ControlFlow::Break(());
            }
        }
        if let Some(i) = p.greatest(&p.lb(a).intersection(y)) {
            let in_l = lattice.inf(a);
            if i != in_l {
                witness = Some(RegularityWitness {
                    subset: a.to_vec(),
                    kind: BoundKind::Inf,
                    in_sublattice: i,
                    in_lattice: in_l,
                });
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    Ok(RegularityCheck {
        holds: witness.is_none(),
        mode,
        empty_subsets: cfg.empty_subsets,
        witness,
    })
}

/// Whether `⋁A` and `⋀A` (taken in the lattice) lie in `Y` for every
/// nonempty `A ⊆ Y`.
pub fn is_sup_inf_closed(
    lattice: &FiniteLattice,
    y: &ElementSet,
    cfg: &SweepConfig,
) -> Result<bool> {
    lattice.poset().check_set(y)?;
    let cfg = cfg.clone().with_empty_subsets(EmptySubsets::Nonempty);
    let mut closed = true;
    sweep_subsets_of(lattice, y, &cfg, |a| {
        if y.contains(lattice.sup(a)) && y.contains(lattice.inf(a)) {
            ControlFlow::Continue(())
        } else {
            closed = false;
            ControlFlow::Break(())
        }
    });
    Ok(closed)
}

/// Sequences used to approximate "all nets valued in X" have cycles of
/// length at most this. A prefix never changes a limit.
pub const ADHERENCE_MAX_CYCLE: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convergence {
    O,
    Uo,
}

fn first_adherence(
    lattice: &FiniteLattice,
    x: &ElementSet,
    kind: Convergence,
) -> Result<ElementSet> {
    lattice.poset().check_set(x)?;
    let alphabet = x.to_vec();
    let mut out = ElementSet::empty();
    for cycle_len in 1..=ADHERENCE_MAX_CYCLE {
        for s in UpSeq::enumerate(&alphabet, 0, cycle_len) {
            if s.cycle().len() != cycle_len {
                continue;
            }
            let limit = match kind {
                Convergence::O => o_limit(lattice, &s),
                Convergence::Uo => uo_limit(lattice, &s).limit,
            };
            if let Some(v) = limit {
                out.insert(v);
            }
        }
    }
    Ok(out)
}

/// Limits of O-convergent sequences valued in `x`.
pub fn first_o_adherence(lattice: &FiniteLattice, x: &ElementSet) -> Result<ElementSet> {
    first_adherence(lattice, x, Convergence::O)
}

/// Limits of uO-convergent sequences valued in `x`.
pub fn first_uo_adherence(lattice: &FiniteLattice, x: &ElementSet) -> Result<ElementSet> {
    first_adherence(lattice, x, Convergence::Uo)
}

/// Something that can compute first adherences of its own kind of set.
pub trait AdherenceBackend {
    type Set: Clone + PartialEq + Debug;
    fn first_adherence(&self, set: &Self::Set) -> Result<Self::Set>;
}

/// Finite-lattice backend.
pub struct FiniteAdherence<'a> {
    pub lattice: &'a FiniteLattice,
    pub kind: Convergence,
}

impl AdherenceBackend for FiniteAdherence<'_> {
    type Set = ElementSet;
    fn first_adherence(&self, set: &ElementSet) -> Result<ElementSet> {
        first_adherence(self.lattice, set, self.kind)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdherenceTrace<S> {
    /// `stages[0]` is the input; `stages[k + 1]` is the first adherence of
    /// `stages[k]`.
    pub stages: Vec<S>,
    /// Least `k` with `stages[k] == stages[k + 1]`, if reached within the
    /// iteration budget.
    pub stabilized_at: Option<usize>,
}

/// Iterates first adherence until a fixpoint or `max_iter` steps. The
/// union over earlier stages is the last stage, since every set is
/// contained in its first adherence (constant sequences).
pub fn iterate_adherence<B: AdherenceBackend>(
    backend: &B,
    start: &B::Set,
    max_iter: usize,
) -> Result<AdherenceTrace<B::Set>> {
    let mut stages = vec![start.clone()];
    for k in 0..max_iter {
        let next = backend.first_adherence(&stages[k])?;
        if next == stages[k] {
            return Ok(AdherenceTrace {
                stages,
                stabilized_at: Some(k),
            });
        }
        stages.push(next);
    }
    Ok(AdherenceTrace {
        stages,
        stabilized_at: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn set(ids: &[usize]) -> ElementSet {
        ElementSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn principal_down_set_has_every_flag() {
        let b3 = named::boolean(3);
        for x in 0..8 {
            let d = classify(&b3, &b3.poset().down_set(x)).unwrap();
            assert!(d.sublattice && d.ideal && d.down_set && d.convex);
        }
    }

    #[test]
    fn bounds_of_b2_are_not_convex() {
        let b2 = named::boolean(2);
        let d = classify(&b2, &set(&[0, 3])).unwrap();
        assert!(d.sublattice);
        assert!(!d.convex);
        assert!(!d.down_set);
    }

    #[test]
    fn antichain_without_join_is_not_sublattice() {
        let b3 = named::boolean(3);
        // {a, b}: a ∨ b = ab missing
        let d = classify(&b3, &set(&[1, 2])).unwrap();
        assert!(!d.sublattice);
        assert!(d.convex);
    }

    #[test]
    fn properties_for_whole_lattice() {
        let l = named::n5();
        let cfg = SweepConfig::default();
        assert!(has_property_a(&l, &l.all(), &cfg).unwrap().holds);
        assert!(has_property_b(&l, &l.all(), &cfg).unwrap().holds);
        assert!(is_regular(&l, &l.all(), &cfg).unwrap().holds);
    }

    #[test]
    fn missing_top_fails_a_on_empty_subset() {
        let c3 = named::chain(3);
        let y = set(&[0, 1]);
        let literal = has_property_a(&c3, &y, &SweepConfig::default()).unwrap();
        assert!(!literal.holds);
        assert_eq!(
            literal.witness,
            Some(BoundWitness {
                subset: vec![],
                x: 2
            })
        );
        let nonempty = SweepConfig::default().with_empty_subsets(EmptySubsets::Nonempty);
        assert!(has_property_a(&c3, &y, &nonempty).unwrap().holds);
        assert!(
            has_property_b(&c3, &y, &SweepConfig::default())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn regularity_requires_sublattice() {
        let b3 = named::boolean(3);
        assert!(matches!(
            is_regular(&b3, &set(&[1, 2]), &SweepConfig::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn adherence_is_identity_on_finite_lattices() {
        let l = named::m3();
        for x in [set(&[]), set(&[1]), set(&[1, 2, 3])] {
            assert_eq!(first_o_adherence(&l, &x).unwrap(), x);
            assert_eq!(first_uo_adherence(&l, &x).unwrap(), x);
            let trace = iterate_adherence(
                &FiniteAdherence {
                    lattice: &l,
                    kind: Convergence::O,
                },
                &x,
                5,
            )
            .unwrap();
            assert_eq!(trace.stabilized_at, Some(0));
        }
    }
}
