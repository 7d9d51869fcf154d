//! The FastHare loop: identify relations on a budgeted candidate list,
//! enlarge them, compress, and keep the scores current incrementally.

mod state;

pub use state::ScoreState;

use crate::compress::{Compressor, Reduction};
use crate::error::Result;
use crate::model::{IsingHamiltonian, SkGraph};

pub const DEFAULT_ALPHA: usize = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Candidate budget per node.
    pub alpha: usize,
    /// Merge weakly non-separable pairs (one per round) when nothing strict
    /// is left.
    pub weak_ngs: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            alpha: DEFAULT_ALPHA,
            weak_ngs: true,
        }
    }
}

/// Counters describing one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    /// Rounds that compressed something.
    pub rounds: usize,
    pub merges: usize,
    pub flips: usize,
    pub weak_merges: usize,
    /// Times the candidate list was rebuilt from scratch after running dry.
    pub refreshes: usize,
    pub nodes_before: usize,
    pub nodes_after: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    pub fixed_spins: usize,
    pub offset: i64,
    /// Elementary score updates.
    pub work: u64,
}

impl RunReport {
    /// `1 − n'/n` in spins.
    pub fn reduction_ratio(&self) -> f64 {
        if self.nodes_before == 0 {
            0.0
        } else {
            1.0 - self.nodes_after as f64 / self.nodes_before as f64
        }
    }
}

/// Result of [`run`].
#[derive(Clone, Debug)]
pub struct Outcome {
    pub graph: SkGraph,
    pub reduction: Reduction,
    pub report: RunReport,
}

/// Reduces `h` with the given configuration.
pub fn reduce(h: &IsingHamiltonian, config: Config) -> Result<Outcome> {
    run(SkGraph::from_ising(h), config)
}

/// Runs the loop on an uncompressed SK graph until neither the incremental
/// pass nor a from-scratch pass finds anything to compress.
pub fn run(graph: SkGraph, config: Config) -> Result<Outcome> {
    let mut report = RunReport {
        nodes_before: graph.num_spins(),
        edges_before: graph.edge_count(),
        ..RunReport::default()
    };
    let mut state = ScoreState::initialize(&graph, config.alpha)?;
    let mut comp = Compressor::from_graph(graph)?;
    let mut fresh_pass = true;
    loop {
        let rel = state.classify(comp.graph(), config.weak_ngs);
        if rel.is_empty() {
            if fresh_pass {
                break;
            }
            state.refresh(comp.graph());
            report.refreshes += 1;
            fresh_pass = true;
            continue;
        }
        fresh_pass = false;
        comp.compress_round(&rel, &mut state)?;
        report.rounds += 1;
    }
    report.merges = comp.merges();
    report.flips = comp.flips();
    report.weak_merges = comp.weak_merges();
    report.work = state.work();
    let reduction = comp.reduction()?;
    let (graph, _) = comp.into_parts();
    report.nodes_after = reduction.hamiltonian.num_spins();
    report.edges_after = graph.edge_count();
    report.fixed_spins = reduction.num_fixed();
    report.offset = reduction.offset;
    Ok(Outcome {
        graph,
        reduction,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SpinConfiguration;
    use crate::oracle;
    use alloc::vec;
    use alloc::vec::Vec;

    fn running_example() -> IsingHamiltonian {
        let mut h = IsingHamiltonian::new(2);
        h.add_field(0, 1).unwrap();
        h.add_coupling(0, 1, 3).unwrap();
        h
    }

    #[test]
    fn running_example_compresses_fully() {
        let h = running_example();
        let out = reduce(&h, Config::default()).unwrap();
        assert_eq!(out.graph.node_count(), 1);
        assert_eq!(out.report.nodes_after, 0);
        assert_eq!(out.report.fixed_spins, 2);
        assert_eq!(out.report.reduction_ratio(), 1.0);
        let x = out.reduction.reconstruct(&SpinConfiguration::new(vec![])).unwrap();
        assert_eq!(x.values(), [1, 1]);
        assert_eq!(out.report.offset, oracle::ground_energy(&h).unwrap());
    }

    #[test]
    fn initial_candidates() {
        let g = SkGraph::from_ising(&running_example());
        let s = ScoreState::initialize(&g, 2).unwrap();
        assert_eq!(s.candidates().collect::<Vec<_>>(), [(0, 1), (0, 2)]);
        assert_eq!(s.fast_score(0, 1).unwrap().twice(), 6);
        assert_eq!(ScoreState::initialize(&g, 0).unwrap_err(), crate::Error::InvalidAlpha(0));
        let empty = ScoreState::initialize(&SkGraph::with_nodes(1), 2).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn nothing_to_do_leaves_the_instance_alone() {
        // a frustrated ring with heavy symmetric weights certifies nothing
        let mut h = IsingHamiltonian::new(3);
        h.add_coupling(0, 1, 1).unwrap();
        h.add_coupling(1, 2, 1).unwrap();
        h.add_coupling(0, 2, -1).unwrap();
        let out = reduce(&h, Config { weak_ngs: false, ..Config::default() }).unwrap();
        assert_eq!(out.report.merges, 0);
        assert_eq!(out.reduction, Reduction::identity(&h));
    }
}
