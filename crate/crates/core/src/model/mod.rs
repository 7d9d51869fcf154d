//! Ising, QUBO and SK-graph representations with exact integer evaluation.
//!
//! The energy of a spin configuration and the capacity of the matching cut
//! on the SK graph are related by
//!
//! ```text
//! H(x(S)) = 2·c(S) − W,    W = Σ_e w_e = Σ h_i + Σ J_ij
//! ```
//!
//! where `x(S)` is [`config_of_cut`]. The same identity fixes the energy
//! offset recorded when two nodes are merged.

mod graph;
mod ising;
mod qubo;
mod spin;

pub use graph::{Cut, MergeOutcome, NeighborChange, SkGraph};
pub use ising::IsingHamiltonian;
pub use qubo::{QuboInstance, QUBO_SCALE};
pub use spin::{Spin, SpinConfiguration};

use alloc::vec::Vec;

pub type NodeId = usize;
pub type Weight = i64;

/// Upper bound on `Σ|h_i| + Σ|J_ij|`. Keeps every capacity, norm and doubled
/// score of any compressed graph inside `i64`.
pub const MAX_TOTAL_WEIGHT: i64 = 1 << 60;

/// Multiplier `a` in `H(x(S)) = a·c(S) + b`.
pub const CUT_ENERGY_SCALE: i64 = 2;

pub fn ising_to_sk(h: &IsingHamiltonian) -> SkGraph {
    SkGraph::from_ising(h)
}

pub fn qubo_to_ising(q: &QuboInstance) -> crate::Result<(IsingHamiltonian, i64)> {
    q.to_ising()
}

/// Energy of the configuration induced by `cut`: `2·c(S) − W`.
pub fn energy_of_cut(g: &SkGraph, cut: &Cut) -> i64 {
    CUT_ENERGY_SCALE * g.cut_capacity(cut) - g.total_weight()
}

/// Spin configuration read off a cut of an uncompressed SK graph.
///
/// Spins on the same side as the field node are +1, the others −1.
pub fn config_of_cut(g: &SkGraph, cut: &Cut) -> SpinConfiguration {
    let field_up = cut.contains(g.field_node());
    (0..g.num_spins())
        .map(|i| Spin::from_parity(cut.contains(i) != field_up))
        .collect::<Vec<_>>()
        .into()
}

/// The cut whose side `S` holds the −1 spins; the field node is outside.
pub fn cut_of_config(s: &SpinConfiguration) -> Cut {
    (0..s.len()).filter(|&i| !s[i].is_up()).collect()
}
