//! Dehn twist factorizations on closed surfaces: words, rewriting moves,
//! relation substitutions, an exact homology check and the invariants of the
//! Lefschetz fibrations they describe.

pub mod batch;
pub mod derivation;
pub mod error;
pub mod homology;
pub mod invariants;
pub mod library;
pub mod pipelines;
pub mod rewrite;
pub mod surface;
pub mod word;

pub use error::{Error, Result};

#[cfg(test)]
mod properties;
