//! Deterministic, seeded construction of posets and lattices.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cut;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::{lettered, FinitePoset};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::subobject::{self, SubsetDescriptor};

/// What to generate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenSpec {
    /// Random order on `size` elements: each pair `i < j` is related with
    /// `edge_probability`, then the transitive closure is taken.
    RandomPoset {
        size: usize,
        edge_probability: f64,
        seed: u64,
    },
    /// The lattice of down-sets of a random poset (always distributive).
    DownsetLattice {
        size: usize,
        edge_probability: f64,
        seed: u64,
    },
    /// Dedekind-MacNeille completion of a random poset.
    RandomLattice {
        size: usize,
        edge_probability: f64,
        seed: u64,
    },
    Chain {
        size: usize,
    },
    /// Powerset of `atoms` atoms.
    Boolean {
        atoms: usize,
    },
    #[serde(rename = "M3")]
    M3,
    #[serde(rename = "N5")]
    N5,
    /// Product of a `rows`-chain and a `cols`-chain.
    Grid {
        rows: usize,
        cols: usize,
    },
    /// A random sublattice of the lattice produced by `base`.
    RandomSublattice {
        base: Box<GenSpec>,
        target_size: usize,
        seed: u64,
    },
}

/// Maximum base size for a down-set lattice; the lattice itself is capped at
/// [`MAX_ELEMENTS`].
pub const MAX_DOWNSET_BASE: usize = 24;

#[derive(Clone, Debug)]
pub enum Generated {
    Poset(FinitePoset),
    Lattice(FiniteLattice),
    Sublattice {
        lattice: FiniteLattice,
        subset: SubsetDescriptor,
    },
}

impl Generated {
    pub fn poset(&self) -> &FinitePoset {
        match self {
            Generated::Poset(p) => p,
            Generated::Lattice(l) => l.poset(),
            Generated::Sublattice { lattice, .. } => lattice.poset(),
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    Ok(match spec {
        GenSpec::RandomPoset {
            size,
            edge_probability,
            seed,
        } => Generated::Poset(random_poset(*size, *edge_probability, *seed)?),
        GenSpec::DownsetLattice {
            size,
            edge_probability,
            seed,
        } => {
            if *size > MAX_DOWNSET_BASE {
                return Err(out_of_range("size", *size, MAX_DOWNSET_BASE));
            }
            let base = random_poset(*size, *edge_probability, *seed)?;
            Generated::Lattice(downset_lattice(&base)?)
        }
        GenSpec::RandomLattice {
            size,
            edge_probability,
            seed,
        } => {
            if *size > MAX_RANDOM_LATTICE_BASE {
                return Err(out_of_range("size", *size, MAX_RANDOM_LATTICE_BASE));
            }
            Generated::Lattice(random_lattice(*size, *edge_probability, *seed)?)
        }
        GenSpec::Chain { size } => {
            if *size == 0 || *size > MAX_ELEMENTS {
                return Err(out_of_range("size", *size, MAX_ELEMENTS));
            }
            Generated::Lattice(named::chain(*size))
        }
        GenSpec::Boolean { atoms } => {
            if *atoms > 8 {
                return Err(out_of_range("atoms", *atoms, 8));
            }
            Generated::Lattice(named::boolean(*atoms))
        }
        GenSpec::M3 => Generated::Lattice(named::m3()),
        GenSpec::N5 => Generated::Lattice(named::n5()),
        GenSpec::Grid { rows, cols } => {
            if *rows == 0 || *cols == 0 || rows * cols > MAX_ELEMENTS {
                return Err(Error::Input(format!(
                    "grid {rows}x{cols} must be nonempty with at most {MAX_ELEMENTS} elements"
                )));
            }
            Generated::Lattice(named::grid(*rows, *cols))
        }
        GenSpec::RandomSublattice {
            base,
            target_size,
            seed,
        } => {
            let lattice = match generate(base)? {
                Generated::Lattice(l) => l,
                Generated::Sublattice { lattice, subset } => {
                    let (sub, _) = lattice.poset().induced(&subset.members)?;
                    FiniteLattice::from_poset(sub)?
                }
                Generated::Poset(_) => {
                    return Err(Error::Input(
                        "random-sublattice needs a lattice-valued base".into(),
                    ))
                }
            };
            let subset = random_sublattice(&lattice, *seed, *target_size);
            Generated::Sublattice { lattice, subset }
        }
    })
}

fn out_of_range(field: &str, value: usize, max: usize) -> Error {
    Error::Input(format!("{field} = {value} out of range (max {max})"))
}

pub fn random_poset(size: usize, edge_probability: f64, seed: u64) -> Result<FinitePoset> {
    if size > MAX_ELEMENTS {
        return Err(out_of_range("size", size, MAX_ELEMENTS));
    }
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(Error::Input(format!(
            "edge_probability = {edge_probability} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            if rng.gen_bool(edge_probability) {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::from_relation(lettered(size), &pairs)
}

/// The lattice of down-sets of `base` ordered by inclusion. Elements are
/// named by their members (`∅` for the empty down-set) and numbered by
/// `(size, members)`.
pub fn downset_lattice(base: &FinitePoset) -> Result<FiniteLattice> {
    let mut found: HashSet<ElementSet> = HashSet::new();
    let mut frontier = vec![ElementSet::empty()];
    found.insert(ElementSet::empty());
    while let Some(d) = frontier.pop() {
        for x in base.all().difference(&d).iter() {
            let below = base.down_set(x);
            if below.difference(&ElementSet::singleton(x)).is_subset(&d) {
                let next = d.union(&ElementSet::singleton(x));
                if found.insert(next) {
                    if found.len() > MAX_ELEMENTS {
                        return Err(Error::ResourceCap(format!(
                            "more than {MAX_ELEMENTS} down-sets"
                        )));
                    }
                    frontier.push(next);
                }
            }
        }
    }
    let mut sets: Vec<ElementSet> = found.into_iter().collect();
    sets.sort_by(|a, b| a.size_lex_cmp(b));
    let names = sets
        .iter()
        .map(|s| {
            if s.is_empty() {
                "∅".to_string()
            } else {
                base.format_set(s)
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.is_subset(b) && b.len() == a.len() + 1 {
                pairs.push((i, j));
            }
        }
    }
    FiniteLattice::from_poset(FinitePoset::from_relation(names, &pairs)?)
}

/// Grows a sublattice from random elements: one element at a time is added
/// and the set closed under binary meet and join, until it has at least
/// `target_size` elements or is all of `lattice`.
pub fn random_sublattice(
    lattice: &FiniteLattice,
    seed: u64,
    target_size: usize,
) -> SubsetDescriptor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..lattice.len()).collect();
    order.shuffle(&mut rng);
    let mut current = ElementSet::empty();
    for x in order {
        if current.len() >= target_size.max(1) {
            break;
        }
        if current.contains(x) {
            continue;
        }
        current.insert(x);
        current = subobject::sublattice_closure(lattice, &current);
    }
    subobject::classify(lattice, &current).expect("ids come from the lattice")
}

/// Every lattice with at most `max_size` elements, one per isomorphism
/// class, in order of size. Feasible up to `max_size = 8`.
pub fn all_lattices(max_size: usize) -> Vec<FiniteLattice> {
    assert!(max_size <= 8, "enumeration is factorial in the size");
    let mut out = Vec::new();
    for n in 1..=max_size {
        if n <= 2 {
            out.push(named::chain(n));
            continue;
        }
        let k = n - 2;
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        let perms = permutations(k);
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        for mask in 0..(1u64 << pairs.len()) {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let inner = match FinitePoset::from_relation(
                (0..k).map(|i| i.to_string()).collect(),
                &chosen,
            ) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let canon = perms
                .iter()
                .map(|perm| {
                    let mut bits = vec![false; k * k];
                    for a in 0..k {
                        for b in 0..k {
                            bits[perm[a] * k + perm[b]] = inner.leq(a, b);
                        }
                    }
                    bits
                })
                .min()
                .unwrap_or_default();
            if !seen.insert(canon) {
                continue;
            }
            // bottom = 0, inner elements 1..=k, top = k + 1
            let mut rel: Vec<(usize, usize)> =
                chosen.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
            for i in 1..=k {
                rel.push((0, i));
                rel.push((i, k + 1));
            }
            rel.push((0, k + 1));
            let mut names = vec!["0".to_string()];
            names.extend(lettered(k));
            names.push("1".to_string());
            let poset = FinitePoset::from_relation(names, &rel).expect("bounded extension");
            if let Ok(l) = FiniteLattice::from_poset(poset) {
                out.push(l);
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Base size cap for [`random_lattice`].
pub const MAX_RANDOM_LATTICE_BASE: usize = cut::DEFAULT_DM_MAX_ELEMENTS;

/// The completion of a seeded random poset, as a lattice.
pub fn random_lattice(size: usize, edge_probability: f64, seed: u64) -> Result<FiniteLattice> {
    let base = random_poset(size, edge_probability, seed)?;
    Ok(cut::dm_completion(&base)?.lattice)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    Downset,
    Random,
}

/// One lattice of the property corpus with the sublattices to test on it.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: CorpusKind,
    pub lattice: FiniteLattice,
    pub subsets: Vec<ElementSet>,
}

const EDGE_PROBABILITIES: [f64; 4] = [0.2, 0.35, 0.5, 0.7];

/// `downsets` down-set lattices of random posets on 1 to 7 points and
/// `random` completions of random posets on 2 to 8 points. Each entry
/// carries a random sublattice and an interval `[s, t]`.
pub fn corpus(downsets: usize, random: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(downsets + random);
    for k in 0..downsets + random {
        let kind = if k < downsets {
            CorpusKind::Downset
        } else {
            CorpusKind::Random
        };
        let p = EDGE_PROBABILITIES[k % EDGE_PROBABILITIES.len()];
        let s: u64 = rng.gen();
        let (name, lattice) = match kind {
            CorpusKind::Downset => {
                let size = 1 + k % 7;
                let base = random_poset(size, p, s)?;
                (format!("downset-{k}-n{size}"), downset_lattice(&base)?)
            }
            CorpusKind::Random => {
                let size = 2 + k % 7;
                (format!("random-{k}-n{size}"), random_lattice(size, p, s)?)
            }
        };
        let n = lattice.len();
        let sub = random_sublattice(&lattice, s ^ 0x9e37, rng.gen_range(1..=n)).members;
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let interval = lattice
            .poset()
            .interval(lattice.meet(a, b), lattice.join(a, b))?;
        out.push(CorpusEntry {
            name,
            kind,
            lattice,
            subsets: vec![sub, interval],
        });
    }
    Ok(out)
}

/// Standard small lattices.
pub mod named {
    use super::*;
    use crate::poset::numbered;

    fn lattice(names: &[&str], covers: &[(usize, usize)]) -> FiniteLattice {
        let poset =
            FinitePoset::from_relation(names.iter().map(|s| s.to_string()).collect(), covers)
                .expect("named poset");
        FiniteLattice::from_poset(poset).expect("named lattice")
    }

    /// `0 < 1 < .. < n-1`
    pub fn chain(n: usize) -> FiniteLattice {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteLattice::from_poset(FinitePoset::from_relation(numbered(n), &pairs).expect("chain"))
            .expect("chain is a lattice")
    }

    /// Subsets of `{a, b, ..}` (`k` atoms), id = bitmask, `∅` for the empty set.
    pub fn boolean(k: usize) -> FiniteLattice {
        let n = 1usize << k;
        let letters = lettered(k);
        let names = (0..n)
            .map(|mask| {
                if mask == 0 {
                    "∅".to_string()
                } else {
                    (0..k)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| letters[b].as_str())
                        .collect::<String>()
                }
            })
            .collect();
        let mut pairs = Vec::new();
        for mask in 0..n {
            for b in 0..k {
                if mask >> b & 1 == 0 {
                    pairs.push((mask, mask | 1 << b));
                }
            }
        }
        FiniteLattice::from_poset(FinitePoset::from_relation(names, &pairs).expect("boolean"))
            .expect("boolean lattice")
    }

    /// The diamond: `0 < a, b, c < 1` with `a, b, c` pairwise incomparable.
    pub fn m3() -> FiniteLattice {
        lattice(
            &["0", "a", "b", "c", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
    }

    /// The pentagon: `0 < a < b < 1` and `0 < c < 1`.
    pub fn n5() -> FiniteLattice {
        lattice(
            &["0", "a", "b", "c", "1"],
            &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        )
    }

    /// Product of chains of lengths `rows` and `cols`; element `(i, j)` has
    /// id `i * cols + j`.
    pub fn grid(rows: usize, cols: usize) -> FiniteLattice {
        let names = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| format!("{i},{j}")))
            .collect();
        let mut pairs = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                let id = i * cols + j;
                if i + 1 < rows {
                    pairs.push((id, id + cols));
                }
                if j + 1 < cols {
                    pairs.push((id, id + 1));
                }
            }
        }
        FiniteLattice::from_poset(FinitePoset::from_relation(names, &pairs).expect("grid"))
            .expect("grid lattice")
    }
}
