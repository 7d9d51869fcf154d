#![allow(dead_code)]

use hare_core::model::{IsingHamiltonian, SkGraph};
use proptest::prelude::*;

/// Weights for every unordered pair of `nodes` nodes, 0 meaning "no edge".
pub fn pair_weights(nodes: usize, bound: i64, density: f64) -> impl Strategy<Value = Vec<i64>> {
    let pairs = nodes * (nodes - 1) / 2;
    proptest::collection::vec(
        (proptest::bool::weighted(density), 1..=bound, proptest::bool::ANY)
            .prop_map(|(on, w, neg)| if !on { 0 } else if neg { -w } else { w }),
        pairs,
    )
}

pub fn graph_from(nodes: usize, weights: &[i64]) -> SkGraph {
    let mut g = SkGraph::with_nodes(nodes);
    let mut k = 0;
    for u in 0..nodes {
        for v in u + 1..nodes {
            if weights[k] != 0 {
                g.add_edge(u, v, weights[k]).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Random SK graph with `2..=max_nodes` nodes (field node included).
pub fn sk_graph(max_nodes: usize, bound: i64) -> impl Strategy<Value = SkGraph> {
    (2..=max_nodes, prop_oneof![Just(0.3), Just(0.6), Just(1.0)]).prop_flat_map(
        move |(nodes, density)| pair_weights(nodes, bound, density).prop_map(move |w| graph_from(nodes, &w)),
    )
}

pub fn ising_from(n: usize, weights: &[i64]) -> IsingHamiltonian {
    let mut h = IsingHamiltonian::new(n);
    let mut k = 0;
    for u in 0..=n {
        for v in u + 1..=n {
            let w = weights[k];
            k += 1;
            if w == 0 {
                continue;
            }
            if v == n {
                h.add_field(u, w).unwrap();
            } else {
                h.add_coupling(u, v, w).unwrap();
            }
        }
    }
    h
}

/// Random Hamiltonian with `min_spins..=max_spins` spins.
pub fn hamiltonian(
    min_spins: usize,
    max_spins: usize,
    bound: i64,
) -> impl Strategy<Value = IsingHamiltonian> {
    (
        min_spins..=max_spins,
        prop_oneof![Just(0.2), Just(0.4), Just(0.7), Just(1.0)],
    )
        .prop_flat_map(move |(n, density)| {
            pair_weights(n + 1, bound, density).prop_map(move |w| ising_from(n, &w))
        })
}
