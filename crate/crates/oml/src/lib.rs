//! Files, corpus and command line for Greechie/MMP diagrams.
//!
//! The analysis itself lives in `oml-core`; this crate adds everything that
//! needs `std`: reading MMP and JSON lines, JSON-lines reports, DOT output,
//! the built-in corpus of published lattices, multi-threaded generation with
//! checkpoints, and the `oml` binary.

pub mod check;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod format;
pub mod parallel;
pub mod poset;
pub mod render;
pub mod report;

pub use error::{Error, Result};
