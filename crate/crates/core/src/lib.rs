//! Permutation-group engine for counting derived subgroups.
//!
//! For a finite group `G` the crate computes
//!
//! * the **d-invariant**: the number of isomorphism classes among the derived
//!   subgroups `H'` of all subgroups `H <= G`, and
//! * the **GR-invariant**: the number of distinct derived subgroups `H'` as
//!   subsets of `G`,
//!
//! together with the structural machinery those need (stabilizer chains,
//! Sylow subgroups, subgroup lattices, isomorphism testing) and a catalog of
//! the group families they are evaluated on.

pub mod catalog;
pub mod chain;
pub mod error;
pub mod field;
pub mod group;
pub mod invariants;
pub mod iso;
pub mod lattice_file;
pub mod perm;
pub mod subgroups;
pub mod suite;
pub mod table;

pub use catalog::{make, parse_and_make, GroupSpec};
pub use error::{Error, Result};
pub use group::PermGroup;
pub use invariants::{d_invariant, gr_invariant, InvariantReport};
pub use perm::Permutation;
pub use subgroups::{Lattice, SubgroupRecord};
