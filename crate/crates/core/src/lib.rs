//! Construction, classification and certificate verification of
//! n-partite digraphical representations (n-PDRs) of finite groups.
//!
//! An n-PDR of `G` is a regular digraph whose automorphism group is
//! isomorphic to `G`, acts semiregularly with `n` orbits, and induces no
//! arcs inside any orbit. Every positive result produced here is checked
//! against the automorphism engine in [`aut`] before it is returned.

pub mod aut;
pub mod classify;
pub mod digraph;
pub mod error;
pub mod group;
pub mod ncayley;
pub mod recipes;
pub mod search;

pub use aut::{automorphisms, OrderedPartition, PermGroup, Permutation};
pub use digraph::Digraph;
pub use error::{Error, Result};
pub use classify::{
    admits_npdr, build_npdr, build_npdr_with_digraph, verify_digraph, verify_npdr, Certificate, Checks,
    Outcome,
};
pub use group::{parse_group, Element, ElementSet, Group};
pub use ncayley::{build_ncayley, ConnectionFamily, NCayleyDigraph};
pub use recipes::{Construction, RecipeOutput};
pub use search::{NonExistenceCertificate, SearchBudget, SearchMode};
