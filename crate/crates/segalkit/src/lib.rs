//! Desk-scale machinery for finite simplicial and bisimplicial sets.
//!
//! The crate provides exact combinatorial models: finite simplicial sets in
//! normal form (non-degenerate generators plus face assignments), finite
//! bisimplicial sets, finite limits and colimits, lifting-property deciders
//! for the Kan, Reedy, trivial and left fibration classes, Segal and
//! completeness checks for discrete objects, the twisted-arrow fibration with
//! its evaluation ("Yoneda") checks, discrete iterated cylinders, and exact
//! integer homology through Smith normal form.
//!
//! Everything is deterministic: enumerations follow the lexicographic order
//! on ordinal value sequences and the canonical `(degree, insertion index)`
//! order on generators, so repeated runs produce identical output.

pub mod budget;
pub mod cylinder;
#[cfg(test)]
mod cylinder_tests;
pub mod error;
pub mod fincat;
pub mod homology;
pub mod levels;
pub mod lifting;
#[cfg(test)]
mod lifting_tests;
pub mod objfile;
pub mod ordinal;
pub mod segal;
#[cfg(test)]
mod segal_tests;
pub mod bisset;
pub mod sset;
pub mod yoneda;
#[cfg(test)]
mod yoneda_tests;

pub use error::{Error, Result};
