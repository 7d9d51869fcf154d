//! Compression of certified relations: flips, merges, and the bookkeeping
//! that maps reduced solutions back to the original spins.

mod closure;
mod map;
mod reduction;

pub use closure::{enlarge, strict_closure, Closure};
pub use map::ReductionMap;
pub use reduction::{extract_reduced_hamiltonian, Assignment, Reduction};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{IsingHamiltonian, MergeOutcome, NodeId, SkGraph};

/// Relations found in one identification pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassifiedRelations {
    /// Groups on one side of every min-cut.
    pub ngs: Vec<Vec<NodeId>>,
    /// Groups on one side of at least one min-cut.
    pub weak_ngs: Vec<Vec<NodeId>>,
    /// Pairs on opposite sides of every min-cut.
    pub antipolar: Vec<(NodeId, NodeId)>,
}

impl ClassifiedRelations {
    pub fn is_empty(&self) -> bool {
        self.ngs.is_empty() && self.weak_ngs.is_empty() && self.antipolar.is_empty()
    }

    pub fn has_strict(&self) -> bool {
        !self.ngs.is_empty() || !self.antipolar.is_empty()
    }
}

/// Hook notified after every graph mutation.
pub trait Observer {
    fn flipped(&mut self, _g: &SkGraph, _u: NodeId) {}
    fn merged(&mut self, _g: &SkGraph, _outcome: &MergeOutcome) {}
}

impl Observer for () {}

/// What one call to [`Compressor::compress_round`] did.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundStats {
    pub merges: usize,
    pub flips: usize,
    pub weak: bool,
}

/// A graph being compressed and the reduction map recording how.
#[derive(Clone, Debug)]
pub struct Compressor {
    graph: SkGraph,
    map: ReductionMap,
    flips: usize,
    merges: usize,
    weak_merges: usize,
}

impl Compressor {
    pub fn new(h: &IsingHamiltonian) -> Self {
        Self::from_fresh_graph(SkGraph::from_ising(h))
    }

    /// Wraps a graph in which no node has been merged yet.
    pub fn from_graph(graph: SkGraph) -> Result<Self> {
        if let Some(u) = (0..graph.capacity()).find(|&u| !graph.is_live(u)) {
            return Err(Error::DeadNode(u));
        }
        Ok(Self::from_fresh_graph(graph))
    }

    fn from_fresh_graph(graph: SkGraph) -> Self {
        Compressor {
            map: ReductionMap::new(graph.capacity(), graph.field_node()),
            graph,
            flips: 0,
            merges: 0,
            weak_merges: 0,
        }
    }

    pub fn graph(&self) -> &SkGraph {
        &self.graph
    }

    pub fn map(&self) -> &ReductionMap {
        &self.map
    }

    pub fn flips(&self) -> usize {
        self.flips
    }

    pub fn merges(&self) -> usize {
        self.merges
    }

    pub fn weak_merges(&self) -> usize {
        self.weak_merges
    }

    /// Negates every weight at `u` and records the flip.
    pub fn flip(&mut self, u: NodeId, obs: &mut impl Observer) -> Result<()> {
        self.graph.flip(u)?;
        self.map.flip(u);
        self.flips += 1;
        obs.flipped(&self.graph, u);
        Ok(())
    }

    /// Merges `u` and `v`, returning the surviving node.
    pub fn merge(&mut self, u: NodeId, v: NodeId, obs: &mut impl Observer) -> Result<NodeId> {
        let outcome = self.graph.merge(u, v)?;
        self.map.union(outcome.dropped, outcome.kept);
        self.map.add_offset(-outcome.internal);
        self.merges += 1;
        obs.merged(&self.graph, &outcome);
        Ok(outcome.kept)
    }

    /// Flips `u`, then merges it with `v`.
    pub fn compress_antipolar(
        &mut self,
        u: NodeId,
        v: NodeId,
        obs: &mut impl Observer,
    ) -> Result<NodeId> {
        if u == v {
            return Err(Error::SameNode(u));
        }
        if !self.graph.is_live(v) {
            return Err(Error::DeadNode(v));
        }
        self.flip(u, obs)?;
        self.merge(u, v, obs)
    }

    /// Applies every strict relation of the closure of `rel`; when there is
    /// none, merges the first surviving weak group instead.
    pub fn compress_round(
        &mut self,
        rel: &ClassifiedRelations,
        obs: &mut impl Observer,
    ) -> Result<RoundStats> {
        let mut closure = strict_closure(rel)?;
        let components = closure.components();
        let mut stats = RoundStats::default();
        if components.is_empty() {
            let weak = closure::surviving_weak(&mut closure, &rel.weak_ngs);
            if let Some(group) = weak.first() {
                let mut group = group.clone();
                self.check_live(&group)?;
                group.sort_unstable();
                group.dedup();
                stats.merges = self.merge_group(&group, obs)?;
                self.weak_merges += stats.merges;
                stats.weak = true;
            }
            return Ok(stats);
        }
        for comp in &components {
            let nodes: Vec<NodeId> = comp.iter().map(|&(x, _)| x).collect();
            self.check_live(&nodes)?;
        }
        for comp in components {
            let field = self.graph.field_node();
            let (reference, ref_parity) = comp
                .iter()
                .copied()
                .find(|&(x, _)| x == field)
                .unwrap_or(comp[0]);
            for &(x, p) in &comp {
                if p != ref_parity {
                    self.flip(x, obs)?;
                    stats.flips += 1;
                }
            }
            let mut group: Vec<NodeId> = Vec::with_capacity(comp.len());
            group.push(reference);
            group.extend(comp.iter().map(|&(x, _)| x).filter(|&x| x != reference));
            stats.merges += self.merge_group(&group, obs)?;
        }
        Ok(stats)
    }

    fn check_live(&self, nodes: &[NodeId]) -> Result<()> {
        match nodes.iter().find(|&&u| !self.graph.is_live(u)) {
            Some(&u) => Err(Error::DeadNode(u)),
            None => Ok(()),
        }
    }

    fn merge_group(&mut self, group: &[NodeId], obs: &mut impl Observer) -> Result<usize> {
        let mut current = group[0];
        for &x in &group[1..] {
            current = self.merge(current, x, obs)?;
        }
        Ok(group.len() - 1)
    }

    /// The reduced Hamiltonian and the map back to the original spins.
    pub fn reduction(&mut self) -> Result<Reduction> {
        reduction::build(&self.graph, &mut self.map)
    }

    pub fn into_parts(self) -> (SkGraph, ReductionMap) {
        (self.graph, self.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SpinConfiguration;
    use crate::oracle;
    use alloc::vec;

    fn ising(n: usize, fields: &[(usize, i64)], couplings: &[(usize, usize, i64)]) -> IsingHamiltonian {
        let mut h = IsingHamiltonian::new(n);
        for &(i, v) in fields {
            h.add_field(i, v).unwrap();
        }
        for &(i, j, v) in couplings {
            h.add_coupling(i, j, v).unwrap();
        }
        h
    }

    fn assert_preserves_optimum(h: &IsingHamiltonian, c: &mut Compressor) {
        let red = c.reduction().unwrap();
        let check = oracle::check_reduction(h, &red).unwrap();
        assert!(check.passed(), "{check:?}");
    }

    #[test]
    fn flip_twice_is_identity() {
        let h = ising(2, &[(0, 1)], &[(0, 1, 3)]);
        let mut c = Compressor::new(&h);
        let before = c.graph().clone();
        c.flip(0, &mut ()).unwrap();
        c.flip(0, &mut ()).unwrap();
        assert_eq!(c.graph(), &before);
        assert_eq!(c.map().offset(), 0);
    }

    #[test]
    fn flip_of_running_example() {
        let h = ising(2, &[(0, 1)], &[(0, 1, -3)]);
        let mut c = Compressor::new(&h);
        c.flip(1, &mut ()).unwrap();
        assert_eq!(c.graph().weight(0, 1), 3);
        assert_eq!(c.graph().weight(0, 2), 1);
    }

    #[test]
    fn merge_aggregates_and_cancels() {
        let h = ising(3, &[], &[(0, 2, 2), (1, 2, 3)]);
        let mut c = Compressor::new(&h);
        let z = c.merge(0, 1, &mut ()).unwrap();
        assert_eq!(c.graph().weight(z, 2), 5);
        let h = ising(3, &[], &[(0, 2, 2), (1, 2, -2)]);
        let mut c = Compressor::new(&h);
        let z = c.merge(0, 1, &mut ()).unwrap();
        assert!(!c.graph().has_edge(z, 2));
    }

    #[test]
    fn merge_keeps_optimum_of_running_example() {
        let h = ising(2, &[(0, 1)], &[(0, 1, 3)]);
        let mut c = Compressor::new(&h);
        c.merge(0, 1, &mut ()).unwrap();
        assert_preserves_optimum(&h, &mut c);
        c.merge(0, 2, &mut ()).unwrap();
        let red = c.reduction().unwrap();
        assert_eq!(red.hamiltonian.num_spins(), 0);
        let x = red.reconstruct(&SpinConfiguration::new(vec![])).unwrap();
        assert_eq!(x.values(), [1, 1]);
        assert_eq!(h.energy(&x).unwrap(), -4);
    }

    #[test]
    fn antipolar_compression() {
        let h = ising(2, &[(0, 1)], &[(0, 1, -3)]);
        let mut c = Compressor::new(&h);
        c.compress_antipolar(1, 0, &mut ()).unwrap();
        assert_eq!(c.graph().node_count(), 2);
        assert_preserves_optimum(&h, &mut c);
        let red = c.reduction().unwrap();
        let best = oracle::exact_ground_states(&red.hamiltonian).unwrap();
        let x = red.reconstruct(&best.states[0]).unwrap();
        assert_eq!(x.values(), [1, -1]);
        assert_eq!(h.energy(&x).unwrap(), -4);

        // either endpoint may be flipped
        let mut other = Compressor::new(&h);
        other.compress_antipolar(0, 1, &mut ()).unwrap();
        assert_preserves_optimum(&h, &mut other);
    }

    #[test]
    fn antipolar_chain_parities() {
        let h = ising(3, &[], &[(0, 1, -4), (1, 2, -4)]);
        let mut c = Compressor::new(&h);
        let rel = ClassifiedRelations {
            antipolar: vec![(0, 1), (1, 2)],
            ..Default::default()
        };
        let stats = c.compress_round(&rel, &mut ()).unwrap();
        assert_eq!((stats.merges, stats.flips), (2, 1));
        let red = c.reduction().unwrap();
        assert_eq!(red.assignments[0].sign, red.assignments[2].sign);
        assert_ne!(red.assignments[0].sign, red.assignments[1].sign);
        assert_preserves_optimum(&h, &mut c);
    }

    #[test]
    fn round_merge_counts() {
        let h = ising(6, &[], &[(0, 1, 5), (2, 3, 5), (4, 5, 5)]);
        let mut c = Compressor::new(&h);
        let rel = ClassifiedRelations {
            ngs: vec![vec![0, 1], vec![2, 3], vec![4, 5]],
            ..Default::default()
        };
        assert_eq!(c.compress_round(&rel, &mut ()).unwrap().merges, 3);
        assert_eq!(c.graph().node_count(), 4);

        let mut c = Compressor::new(&h);
        let weak = ClassifiedRelations {
            weak_ngs: vec![vec![0, 1], vec![2, 3]],
            ..Default::default()
        };
        let stats = c.compress_round(&weak, &mut ()).unwrap();
        assert_eq!((stats.merges, stats.weak), (1, true));
        assert_eq!(c.weak_merges(), 1);

        let mut c = Compressor::new(&h);
        let none = c.compress_round(&ClassifiedRelations::default(), &mut ()).unwrap();
        assert_eq!(none, RoundStats::default());
    }

    #[test]
    fn identity_reduction() {
        let h = ising(3, &[(1, -2)], &[(0, 1, 3), (1, 2, -1)]);
        let mut c = Compressor::new(&h);
        let red = c.reduction().unwrap();
        assert_eq!(red, Reduction::identity(&h));
        let y = SpinConfiguration::from_values(&[1, -1, 1]).unwrap();
        assert_eq!(red.reconstruct(&y).unwrap(), y);
        assert!(matches!(
            red.reconstruct(&SpinConfiguration::all_up(2)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn field_node_can_be_flipped() {
        let h = ising(2, &[(0, 3), (1, -2)], &[(0, 1, 1)]);
        let mut c = Compressor::new(&h);
        c.flip(2, &mut ()).unwrap();
        c.flip(0, &mut ()).unwrap();
        c.merge(2, 0, &mut ()).unwrap();
        assert_preserves_optimum(&h, &mut c);
    }
}
