//! Binary mutually orthogonal frequency squares of mixed type.
//!
//! The crate covers validation and orthogonality checks, Z_w-sum relations and the
//! non-extendibility tests they give, exhaustive square generation, canonical forms
//! under the natural symmetry group, and maximum-clique search for completions.

pub mod enumeration;
pub mod cli;
pub mod error;
pub mod format;
pub mod golden;
pub mod encoding;
pub mod isomorphism;
pub mod orthogonality;
pub mod relations;
pub mod search;
pub mod square;

pub use error::{Error, Result};
pub use square::{FrequencySquare, MofsSet, TypeSignature};
