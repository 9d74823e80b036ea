//! Graph isomorphism toolkit: combinatorial refinement (color refinement,
//! k-dimensional Weisfeiler-Leman), a permutation-group kernel (Schreier-Sims,
//! blocks, homomorphisms), Luks-style string isomorphism with local
//! certificates, and the t-CR closure machinery with a complete
//! individualization-refinement isomorphism engine.
//!
//! The crate is `no_std` (alloc required); IO, file formats and the CLI live
//! in the companion `isokit` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod gen;
pub mod graph;
pub mod perm;
pub mod refine;
pub mod si;
pub mod tcr;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, GraphPair};
