//! Exact computations on generalized Littlewood-Richardson semigroups of
//! classical embeddings `G ⊂ Ĝ`: root data, characters and branching,
//! matrix realizations, semigroup enumeration, face defects and generic
//! stabilizers.

// Dense exact linear algebra reads better with explicit indices.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod embed;
pub mod error;
pub mod exactq;
pub mod isotropy;
pub mod lrsemigroup;
pub mod repcalc;
pub mod rootsys;
pub mod suite;

pub use error::{Error, Result};
