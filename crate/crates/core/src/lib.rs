//! Exact computations with Z/2-graded semisimple algebras and the spin
//! representations of the symmetric groups.
//!
//! Every scalar is an element of a real multi-quadratic field
//! ([`exactnum::SqrtNumber`]), so all identities are checked with zero
//! tolerance.

pub mod checks;
pub mod cli;
pub mod exactnum;
pub mod gradedstruct;
pub mod linalg;
pub mod poly;
pub mod seminormal;
pub mod shiftedcomb;
pub mod spinalg;

/// Version tag written into every machine-readable output.
pub const SCHEMA: &str = "superspin/1";
