//! Exact commuting probabilities of π-elements in finite permutation groups,
//! with verifiers for the related bounds and a catalog-driven sweep.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod group;
pub mod harness;
pub mod invariants;
pub mod perm;
pub mod primes;
pub mod ratio;
pub mod report_io;
pub mod structure;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use harness::{TheoremId, TheoremReport, Verdict, Witness};
pub use invariants::PiElementSet;
pub use perm::Permutation;
pub use primes::PrimeSet;
pub use ratio::ExactRatio;
pub use structure::Subgroup;
