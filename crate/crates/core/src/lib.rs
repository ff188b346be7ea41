//! Finite order theory: posets, lattices, cuts and the Dedekind-MacNeille
//! completion, O- and uO-convergence of eventually periodic sequences, and
//! exact symbolic models of a few infinite lattices.

pub mod convergence;
pub mod cut;
pub mod error;
pub mod gallery;
pub mod generators;
pub mod io;
pub mod lattice;
pub mod poset;
pub mod report;
pub mod set;
pub mod subobject;
pub mod suite;
pub mod sweep;

pub use convergence::{o_limit, uo_limit, UpSeq};
pub use cut::{dm_completion, DmLattice};
pub use error::{Error, Result};
pub use lattice::FiniteLattice;
pub use poset::FinitePoset;
pub use report::{PropertyVerdict, SuiteReport, Verdict};
pub use set::ElementSet;
pub use sweep::{EmptySubsets, SweepConfig, SweepMode};
