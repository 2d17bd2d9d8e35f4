//! Permutation-group and block-design machinery for half-flag-transitive
//! 2-designs.
//!
//! Points are 1-based in every public interface. Permutations compose
//! left-to-right: `a.then(&b)` applies `a` first.

pub mod action;
pub mod data;
pub mod design;
pub mod error;
pub mod perm;
pub mod pipeline;
pub mod sieve;
pub mod subgroups;

pub use error::{Error, Result};
pub use perm::{PermGroup, Permutation, PointSet, StabChain};
