//! Permutations, point sets, stabilizer chains and permutation groups.

mod chain;
mod group;
pub mod io;
mod permutation;
mod pointset;

pub use chain::{Level, StabChain};
pub use group::{PermGroup, RandomElements, SetOrbit, DEFAULT_ORBIT_CAP};
pub use permutation::Permutation;
pub use pointset::PointSet;
