//! Finite universal algebra toolkit centered on right regular bands.
//!
//! The crate works entirely with concrete finite algebras (dense operation
//! tables over `0..n`) and relational structures whose relations are carved
//! out by conjunctions of identities.  On top of that base it provides
//! congruence machinery, free algebras for a small registry of varieties,
//! the free/forgetful adjunction between relational structures and those
//! varieties, direct-product decompositions of bands relative to a central
//! element, and a handful of concrete constructions (subdirectly irreducible
//! bands, bounded lattices, complement graphs).

pub mod algebra;
pub mod adjunction;
pub mod congruence;
pub mod constructions;
pub mod decomposition;
mod error;
pub mod fixtures;
pub mod free;
pub mod relational;

pub use error::{Error, Result};
