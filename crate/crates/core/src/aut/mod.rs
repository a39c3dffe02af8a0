//! Automorphism groups of vertex-coloured digraphs.

mod brute;
mod chain;
mod partition;
mod perm;
mod search;

pub use brute::{brute_force_automorphisms, BRUTE_FORCE_LIMIT};
pub use chain::{PermGroup, PermGroupJson};
pub use partition::{refine, OrderedPartition};
pub use perm::Permutation;
pub use search::{automorphism_order_capped, automorphisms, automorphisms_with, AutOptions, AutOutcome};

/// Orbits of `group` on its points.
pub fn orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    group.orbits()
}

pub fn is_semiregular(group: &PermGroup) -> bool {
    group.is_semiregular()
}
