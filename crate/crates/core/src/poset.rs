//! Finite partially ordered sets stored as a dense reachability matrix.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

/// A finite poset on ids `0..n` with unique names.
///
/// The full order relation (not only covers) is stored twice, as the row of
/// up-sets and the row of down-sets, so that bound queries are a fold of
/// bitset intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
}

impl FinitePoset {
    /// Builds a poset from named elements and a list of `(lower, upper)`
    /// pairs. The pairs may be covers or any generating subset of the order;
    /// the reflexive-transitive closure is taken and then checked for
    /// antisymmetry.
    pub fn from_relation(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                size: n,
                max: MAX_ELEMENTS,
            });
        }
        let mut seen = HashMap::with_capacity(n);
        for name in &names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in pairs {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::InvalidId { id, size: n });
                }
            }
            up[a].insert(b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row = row.union(&row_k);
                }
            }
        }
        let mut down = vec![ElementSet::empty(); n];
        for (i, row) in up.iter().enumerate() {
            for j in row {
                down[j].insert(i);
            }
        }
        for i in 0..n {
            let both = up[i].intersection(&down[i]);
            if let Some(j) = both.iter().find(|&j| j != i) {
                return Err(Error::NotAntisymmetric(names[i].clone(), names[j].clone()));
            }
        }
        Ok(FinitePoset { names, up, down })
    }

    /// Chain `0 < 1 < .. < n-1` with names `"0".."n-1"`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relation(numbered(n), &pairs).expect("chain is a poset")
    }

    /// `n` pairwise incomparable elements named `a`, `b`, ...
    pub fn antichain(n: usize) -> Self {
        Self::from_relation(lettered(n), &[]).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// All element ids as a set.
    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `[x, ->)`
    #[inline]
    pub fn up_set(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    /// `(<-, x]`
    #[inline]
    pub fn down_set(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    pub fn check_id(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidId {
                id,
                size: self.len(),
            })
        }
    }

    pub fn check_set(&self, set: &ElementSet) -> Result<()> {
        match set.difference(&self.all()).first() {
            None => Ok(()),
            Some(id) => Err(Error::InvalidId {
                id,
                size: self.len(),
            }),
        }
    }

    /// `A⁺`, the common upper bounds of `A` (all of `P` for `A = ∅`).
    pub fn upper_bounds(&self, set: &ElementSet) -> Result<ElementSet> {
        self.check_set(set)?;
        Ok(self.ub(set))
    }

    /// `A⁻`, the common lower bounds of `A` (all of `P` for `A = ∅`).
    pub fn lower_bounds(&self, set: &ElementSet) -> Result<ElementSet> {
        self.check_set(set)?;
        Ok(self.lb(set))
    }

    #[inline]
    pub(crate) fn ub(&self, set: &ElementSet) -> ElementSet {
        set.iter()
            .fold(self.all(), |acc, a| acc.intersection(&self.up[a]))
    }

    #[inline]
    pub(crate) fn lb(&self, set: &ElementSet) -> ElementSet {
        set.iter()
            .fold(self.all(), |acc, a| acc.intersection(&self.down[a]))
    }

    /// Nonempty, and every pair has an upper bound inside the set.
    pub fn is_directed(&self, set: &ElementSet) -> bool {
        self.internally_bounded(set, &self.up)
    }

    /// Nonempty, and every pair has a lower bound inside the set.
    pub fn is_filtered(&self, set: &ElementSet) -> bool {
        self.internally_bounded(set, &self.down)
    }

    fn internally_bounded(&self, set: &ElementSet, rows: &[ElementSet]) -> bool {
        if set.is_empty() {
            return false;
        }
        let members = set.to_vec();
        members.iter().enumerate().all(|(i, &a)| {
            members[i..]
                .iter()
                .all(|&b| rows[a].intersection(&rows[b]).intersects(set))
        })
    }

    /// `[s, t] = {x : s <= x <= t}`; requires `s <= t`.
    pub fn interval(&self, s: usize, t: usize) -> Result<ElementSet> {
        self.check_id(s)?;
        self.check_id(t)?;
        if !self.leq(s, t) {
            return Err(Error::Precondition(format!(
                "interval [{}, {}] requires {} <= {}",
                self.names[s], self.names[t], self.names[s], self.names[t]
            )));
        }
        Ok(self.up[s].intersection(&self.down[t]))
    }

    /// The least element of `set`, if it has one.
    pub fn least(&self, set: &ElementSet) -> Option<usize> {
        set.iter().find(|&x| set.is_subset(&self.up[x]))
    }

    /// The greatest element of `set`, if it has one.
    pub fn greatest(&self, set: &ElementSet) -> Option<usize> {
        set.iter().find(|&x| set.is_subset(&self.down[x]))
    }

    /// Supremum of `set` in this poset, if it exists.
    pub fn sup_of(&self, set: &ElementSet) -> Option<usize> {
        self.least(&self.ub(set))
    }

    /// Infimum of `set` in this poset, if it exists.
    pub fn inf_of(&self, set: &ElementSet) -> Option<usize> {
        self.greatest(&self.lb(set))
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram, sorted by id.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].iter() {
                if a != b && self.up[a].intersection(&self.down[b]).len() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of the longest chain ending at each element (minimal elements
    /// have rank 0).
    pub fn ranks(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.down[i].len());
        let mut rank = vec![0usize; self.len()];
        for &x in &order {
            rank[x] = self.down[x]
                .iter()
                .filter(|&y| y != x)
                .map(|y| rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// Ids sorted by `(rank, name)`; the order used by every serializer.
    pub fn display_order(&self) -> Vec<usize> {
        let rank = self.ranks();
        let mut ids: Vec<usize> = (0..self.len()).collect();
        ids.sort_by(|&a, &b| (rank[a], &self.names[a]).cmp(&(rank[b], &self.names[b])));
        ids
    }

    /// The sub-poset induced on `set`, with the map from new ids to old.
    pub fn induced(&self, set: &ElementSet) -> Result<(FinitePoset, Vec<usize>)> {
        self.check_set(set)?;
        let members = set.to_vec();
        let index: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let names = members.iter().map(|&m| self.names[m].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for b in self.up[a].intersection(set).iter() {
                pairs.push((i, index[&b]));
            }
        }
        Ok((FinitePoset::from_relation(names, &pairs)?, members))
    }

    /// Comma-separated names of a set, in id order, for reports.
    pub fn format_set(&self, set: &ElementSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

pub(crate) fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub(crate) fn lettered(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}
