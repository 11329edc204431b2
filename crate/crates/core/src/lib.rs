//! Greechie / MMP hypergraph diagrams of orthomodular lattices.
//!
//! The crate is `no_std` (it needs `alloc`) and covers:
//!
//! * [`mmp`]: the one-line text format, structural validation, loops and
//!   girth, duality and block surgery;
//! * [`lattice`]: the pasted orthomodular lattice of an admissible diagram;
//! * [`states`]: exact rational analysis of the state polytope, 0-1 states
//!   and strong sets of states, backed by the exact simplex in [`lp`];
//! * [`symmetry`]: canonical labelling, isomorphism and automorphisms;
//! * [`generator`]: isomorph-free generation by canonical augmentation.
//!
//! IO, JSON, rendering and the command line live in the companion `oml` crate.

#![no_std]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

mod diagram;
mod error;

pub mod generator;
pub mod lattice;
pub mod lp;
pub mod mmp;
pub mod states;
pub mod symmetry;

pub use diagram::{AtomId, Block, MmpDiagram};
pub use error::{Error, Result};

/// Exact rational number used for every state value.
pub type Rational = num_rational::BigRational;
