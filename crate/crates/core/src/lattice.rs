//! Finite lattices with precomputed meet/join tables.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::set::ElementSet;
use crate::sweep::{SweepConfig, SweepMode};

/// A finite lattice. Meet and join are derived from the order, never read
/// from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Derives meet/join tables from the order, failing with the first pair
    /// (in id order) that lacks a meet or a join.
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = poset.down_set(a).intersection(&poset.down_set(b));
                let m = poset.greatest(&lower).ok_or_else(|| {
                    Error::NotALattice(poset.name(a).into(), poset.name(b).into(), "meet")
                })?;
                let upper = poset.up_set(a).intersection(&poset.up_set(b));
                let j = poset.least(&upper).ok_or_else(|| {
                    Error::NotALattice(poset.name(a).into(), poset.name(b).into(), "join")
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let all = poset.all();
        let bottom = poset
            .least(&all)
            .ok_or_else(|| Error::NotALattice("∅".into(), "∅".into(), "join (bottom)"))?;
        let top = poset
            .greatest(&all)
            .ok_or_else(|| Error::NotALattice("∅".into(), "∅".into(), "meet (top)"))?;
        Ok(FiniteLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, id: usize) -> &str {
        self.poset.name(id)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn all(&self) -> ElementSet {
        self.poset.all()
    }

    /// Join of a set; `sup(∅) = ⊥`.
    pub fn sup(&self, set: &ElementSet) -> usize {
        self.sup_iter(set.iter())
    }

    /// Meet of a set; `inf(∅) = ⊤`.
    pub fn inf(&self, set: &ElementSet) -> usize {
        self.inf_iter(set.iter())
    }

    pub fn sup_iter<I: IntoIterator<Item = usize>>(&self, ids: I) -> usize {
        ids.into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn inf_iter<I: IntoIterator<Item = usize>>(&self, ids: I) -> usize {
        ids.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `f_{s,t}(x) = (x ∧ t) ∨ s`
    #[inline]
    pub fn apply_f(&self, s: usize, t: usize, x: usize) -> usize {
        self.join(self.meet(x, t), s)
    }

    /// `g_{s,t}(x) = (x ∨ s) ∧ t`
    #[inline]
    pub fn apply_g(&self, s: usize, t: usize, x: usize) -> usize {
        self.meet(self.join(x, s), t)
    }

    /// Checks commutativity, associativity and absorption of the tables:
    /// exhaustively for `n <= 32`, on 10⁴ seeded random triples above.
    pub fn verify_laws(&self) -> std::result::Result<(), String> {
        let n = self.len();
        let check = |a: usize, b: usize, c: usize| -> std::result::Result<(), String> {
            let ok = self.meet(a, b) == self.meet(b, a)
                && self.join(a, b) == self.join(b, a)
                && self.meet(self.meet(a, b), c) == self.meet(a, self.meet(b, c))
                && self.join(self.join(a, b), c) == self.join(a, self.join(b, c))
                && self.meet(a, self.join(a, b)) == a
                && self.join(a, self.meet(a, b)) == a;
            if ok {
                Ok(())
            } else {
                Err(format!(
                    "lattice laws fail at ({}, {}, {})",
                    self.name(a),
                    self.name(b),
                    self.name(c)
                ))
            }
        };
        if n <= 32 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..10_000 {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    /// Checks `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` over all triples; the first
    /// failing triple in lexicographic order is the witness.
    pub fn is_distributive(&self) -> DistributivityCheck {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return DistributivityCheck {
                            holds: false,
                            witness: Some(TripleWitness { a, b, c, lhs, rhs }),
                        };
                    }
                }
            }
        }
        DistributivityCheck {
            holds: true,
            witness: None,
        }
    }

    fn hom_failure(&self, map: impl Fn(usize, usize, usize) -> usize) -> Option<MapWitness> {
        let n = self.len();
        for s in 0..n {
            for t in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let j = self.join(x, y);
                        let (lhs, rhs) = (map(s, t, j), self.join(map(s, t, x), map(s, t, y)));
                        if lhs != rhs {
                            return Some(MapWitness {
                                s,
                                t,
                                x,
                                y,
                                op: LatticeOp::Join,
                                lhs,
                                rhs,
                            });
                        }
                        let m = self.meet(x, y);
                        let (lhs, rhs) = (map(s, t, m), self.meet(map(s, t, x), map(s, t, y)));
                        if lhs != rhs {
                            return Some(MapWitness {
                                s,
                                t,
                                x,
                                y,
                                op: LatticeOp::Meet,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Decides independently whether the lattice is distributive, whether
    /// every `f_{s,t}` is a lattice homomorphism and whether every `g_{s,t}`
    /// is; for distributive lattices also checks the reparametrisation
    /// identities `f_{s,t} = f_{s,s∨t} = g_{s,s∨t}` and
    /// `g_{s,t} = g_{s∧t,t} = f_{s∧t,t}`.
    pub fn homomorphism_characterization(&self) -> HomomorphismReport {
        let distributive = self.is_distributive();
        let f_witness = self.hom_failure(|s, t, x| self.apply_f(s, t, x));
        let g_witness = self.hom_failure(|s, t, x| self.apply_g(s, t, x));
        let identities = distributive.holds.then(|| self.reparametrisation_failure());
        let f_ok = f_witness.is_none();
        let g_ok = g_witness.is_none();
        HomomorphismReport {
            distributive: distributive.holds,
            distributive_witness: distributive.witness,
            f_homomorphisms: f_ok,
            f_witness,
            g_homomorphisms: g_ok,
            g_witness,
            identities_hold: identities.map(|w| w.is_none()),
            identities_witness: identities.flatten(),
            consistent: distributive.holds == f_ok && f_ok == g_ok,
        }
    }

    fn reparametrisation_failure(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for s in 0..n {
            for t in 0..n {
                let st_join = self.join(s, t);
                let st_meet = self.meet(s, t);
                for x in 0..n {
                    let f = self.apply_f(s, t, x);
                    let g = self.apply_g(s, t, x);
                    let ok = f == self.apply_f(s, st_join, x)
                        && f == self.apply_g(s, st_join, x)
                        && g == self.apply_g(st_meet, t, x)
                        && g == self.apply_f(st_meet, t, x);
                    if !ok {
                        return Some([s, t, x]);
                    }
                }
            }
        }
        None
    }

    /// Meet-infinite distributive law `x ∨ ⋀A = ⋀(x ∨ A)` over nonempty `A`.
    pub fn check_mid(&self, cfg: &SweepConfig) -> InfiniteLawCheck {
        self.check_infinite_law(cfg, |x, a| {
            let lhs = self.join(x, self.inf_iter(a.iter().copied()));
            let rhs = self.inf_iter(a.iter().map(|&y| self.join(x, y)));
            (lhs, rhs)
        })
    }

    /// Join-infinite distributive law `x ∧ ⋁A = ⋁(x ∧ A)` over nonempty `A`.
    pub fn check_jid(&self, cfg: &SweepConfig) -> InfiniteLawCheck {
        self.check_infinite_law(cfg, |x, a| {
            let lhs = self.meet(x, self.sup_iter(a.iter().copied()));
            let rhs = self.sup_iter(a.iter().map(|&y| self.meet(x, y)));
            (lhs, rhs)
        })
    }

    fn check_infinite_law<F>(&self, cfg: &SweepConfig, sides: F) -> InfiniteLawCheck
    where
        F: Fn(usize, &[usize]) -> (usize, usize),
    {
        let ids: Vec<usize> = (0..self.len()).collect();
        let mut witness = None;
        let mode = cfg.for_each_subset(&ids, cfg.lattice_exhaustive_limit, false, |a| {
            for x in 0..self.len() {
                let (lhs, rhs) = sides(x, a);
                if lhs != rhs {
                    witness = Some(LawWitness {
                        x,
                        subset: a.to_vec(),
                        lhs,
                        rhs,
                    });
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        InfiniteLawCheck {
            holds: witness.is_none(),
            mode,
            witness,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `a ∧ (b ∨ c)`
    pub lhs: usize,
    /// `(a ∧ b) ∨ (a ∧ c)`
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributivityCheck {
    pub holds: bool,
    pub witness: Option<TripleWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeOp {
    Join,
    Meet,
}

/// A pair `(x, y)` on which a map `h` fails `h(x op y) = h(x) op h(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapWitness {
    pub s: usize,
    pub t: usize,
    pub x: usize,
    pub y: usize,
    pub op: LatticeOp,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub distributive: bool,
    pub distributive_witness: Option<TripleWitness>,
    pub f_homomorphisms: bool,
    pub f_witness: Option<MapWitness>,
    pub g_homomorphisms: bool,
    pub g_witness: Option<MapWitness>,
    /// `None` when the lattice is not distributive (identities not claimed).
    pub identities_hold: Option<bool>,
    /// `[s, t, x]` where an identity failed.
    pub identities_witness: Option<[usize; 3]>,
    /// The three verdicts agree.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawWitness {
    pub x: usize,
    pub subset: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteLawCheck {
    pub holds: bool,
    pub mode: SweepMode,
    pub witness: Option<LawWitness>,
}
