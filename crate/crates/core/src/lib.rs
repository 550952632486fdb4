//! Matching theory on small graphs.
//!
//! This crate decides the Pfaffian property of desk-scale graphs by exhaustive
//! means and exposes the machinery behind that decision: perfect-matching
//! enumeration, signs of 1-factors under an orientation, clockwise parity of
//! circuits, near-bipartite structure detection, and a bounded search for
//! forbidden-structure witnesses (subgraphs reducible to an even subdivision
//! of `K3,3`, `gamma1` or `gamma2` whose vertex complement has a 1-factor).
//!
//! Everything is deterministic: enumerations are canonically ordered, searches
//! return the first hit in that order, and all values are immutable after
//! construction. The crate is `no_std` (with `alloc`); IO, file formats and
//! the command-line front end live in the companion `pfaffian-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod census;
pub mod characterize;
mod error;
pub mod fixtures;
mod gf2;
pub mod graph;
mod iso;
pub mod matching;
pub mod nearbip;
pub mod orient;
pub mod pfaffian;
pub mod walk;

pub use error::Error;
pub use graph::{Bipartition, Edge, Graph, VertexId};
pub use matching::{AlternatingCircuit, EdgeCycle, OneFactor};
pub use orient::{Orientation, Parity, Sign};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
