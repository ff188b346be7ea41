//! Exhaustive-or-sampled enumeration of subsets, with the mode always
//! reported back to the caller.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Lattices up to this size get every subset checked for the infinite
/// distributive laws.
pub const LATTICE_EXHAUSTIVE_LIMIT: usize = 15;
/// Subsets `Y` up to this size get every `A ⊆ Y` checked.
pub const SUBSET_EXHAUSTIVE_LIMIT: usize = 12;
/// Completions with at most this many cuts get every family checked.
pub const FAMILY_EXHAUSTIVE_LIMIT: usize = 12;
pub const DEFAULT_SAMPLES: usize = 10_000;
/// In sampled mode, every subset up to this size is enumerated before the
/// random draws start.
pub const DEFAULT_SMALL_SIZE: usize = 3;

/// How the empty subset is treated by quantifiers of the form "for all
/// `A ⊆ Y`".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EmptySubsets {
    /// `A = ∅` is quantified over like any other subset.
    #[default]
    Literal,
    /// Only nonempty `A` are considered.
    Nonempty,
}

impl EmptySubsets {
    pub fn includes_empty(self) -> bool {
        self == EmptySubsets::Literal
    }
}

/// Whether a sweep saw every case or a sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum SweepMode {
    Exhaustive,
    Sampled {
        samples: usize,
        max_enumerated_size: usize,
    },
}

impl SweepMode {
    pub fn is_exhaustive(&self) -> bool {
        matches!(self, SweepMode::Exhaustive)
    }

    /// Combines two modes; sampled wins.
    pub fn and(self, other: SweepMode) -> SweepMode {
        match (self, other) {
            (SweepMode::Exhaustive, m) | (m, SweepMode::Exhaustive) => m,
            (m, _) => m,
        }
    }
}

impl std::fmt::Display for SweepMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepMode::Exhaustive => write!(f, "exhaustive"),
            SweepMode::Sampled {
                samples,
                max_enumerated_size,
            } => write!(
                f,
                "sampled ({samples} random + all subsets of size <= {max_enumerated_size})"
            ),
        }
    }
}

/// Knobs shared by every sweeping check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub lattice_exhaustive_limit: usize,
    pub subset_exhaustive_limit: usize,
    pub family_exhaustive_limit: usize,
    pub samples: usize,
    pub small_size: usize,
    pub seed: u64,
    pub empty_subsets: EmptySubsets,
    /// Forces sampled mode even below the exhaustive limits.
    pub force_sampled: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            lattice_exhaustive_limit: LATTICE_EXHAUSTIVE_LIMIT,
            subset_exhaustive_limit: SUBSET_EXHAUSTIVE_LIMIT,
            family_exhaustive_limit: FAMILY_EXHAUSTIVE_LIMIT,
            samples: DEFAULT_SAMPLES,
            small_size: DEFAULT_SMALL_SIZE,
            seed: 0x5eed,
            empty_subsets: EmptySubsets::Literal,
            force_sampled: false,
        }
    }
}

impl SweepConfig {
    pub fn with_empty_subsets(mut self, mode: EmptySubsets) -> Self {
        self.empty_subsets = mode;
        self
    }

    fn mode_for(&self, n: usize, limit: usize) -> SweepMode {
        if n <= limit && n < 64 && !self.force_sampled {
            SweepMode::Exhaustive
        } else {
            SweepMode::Sampled {
                samples: self.samples,
                max_enumerated_size: self.small_size,
            }
        }
    }

    /// Visits subsets of `members` (as sorted member lists): all of
    /// them when `members.len() <= limit`, otherwise every subset of size up
    /// to `small_size` followed by `samples` uniform random subsets.
    ///
    /// Exhaustive order is by increasing bitmask, which makes the first
    /// failing subset a reproducible witness. Returning `Break` stops the
    /// sweep early.
    pub fn for_each_subset<F>(
        &self,
        members: &[usize],
        limit: usize,
        include_empty: bool,
        mut visit: F,
    ) -> SweepMode
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = members.len();
        let mode = self.mode_for(n, limit);
        let mut buf = Vec::with_capacity(n);
        match mode {
            SweepMode::Exhaustive => {
                let start = if include_empty { 0 } else { 1 };
                for mask in start..(1u64 << n) {
                    buf.clear();
                    buf.extend((0..n).filter(|k| mask >> k & 1 == 1).map(|k| members[k]));
                    if visit(&buf).is_break() {
                        break;
                    }
                }
            }
            SweepMode::Sampled { .. } => {
                let min_size = if include_empty { 0 } else { 1 };
                for size in min_size..=self.small_size.min(n) {
                    let mut idx: Vec<usize> = (0..size).collect();
                    loop {
                        buf.clear();
                        buf.extend(idx.iter().map(|&k| members[k]));
                        if visit(&buf).is_break() {
                            return mode;
                        }
                        if !next_combination(&mut idx, n) {
                            break;
                        }
                    }
                }
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut drawn = 0;
                while drawn < self.samples {
                    buf.clear();
                    buf.extend(members.iter().copied().filter(|_| rng.gen::<bool>()));
                    if buf.is_empty() && !include_empty {
                        continue;
                    }
                    drawn += 1;
                    if visit(&buf).is_break() {
                        break;
                    }
                }
            }
        }
        mode
    }
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; false when exhausted.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
