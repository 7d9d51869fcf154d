//! Hamiltonian reduction for Ising models and QUBOs.
//!
//! An instance is turned into an SK graph (spins plus one field node), in
//! which weighted minimum cuts correspond to ground states. Groups of nodes
//! that every minimum cut keeps together are merged, and pairs that every
//! minimum cut separates are flipped and merged, until no cheap certificate
//! is left. The result is a smaller Hamiltonian together with a map that
//! carries its ground states back to ground states of the input.
//!
//! Modules:
//! - [`model`]: Ising/QUBO/SK-graph types and exact evaluation.
//! - [`oracle`]: exhaustive ground truth for small instances.
//! - [`bounds`]: lower bounds on the non-separability index.
//! - [`compress`]: flip/merge bookkeeping and the reduction map.
//! - [`fasthare`]: the incremental candidate-list reduction loop.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod compress;
mod error;
pub mod fasthare;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
