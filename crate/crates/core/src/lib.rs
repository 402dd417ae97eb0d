//! Permutation patterns, left-to-right maxima and a Wilf equivalence between
//! 3-5-2-4-1-satisfying and 31-4-2-avoiding permutations.
//!
//! * [`perm`]: permutations, reduction, LRmax specifications and their
//!   minimal/maximal fills, the Simion–Schmidt bijection.
//! * [`pattern`]: the vincular pattern DSL, occurrence search, and class
//!   membership tests.
//! * [`bijection`]: the recursive, spec-preserving bijection `phi`.
//! * [`enumerate`]: exhaustive enumeration and class counting.
//! * [`verify`]: the exhaustive self-check suite.

pub mod bijection;
pub mod enumerate;
mod error;
pub mod pattern;
pub mod perm;
pub mod verify;

pub use error::{Domain, Error, Result};
pub use pattern::{Class, Occurrence, VincularPattern};
pub use perm::{LrMaxSpec, Permutation};
