use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{IsingHamiltonian, NodeId, Weight};
use crate::error::{Error, Result};

/// Weighted undirected graph whose cuts encode an Ising Hamiltonian.
///
/// Nodes `0..n` are the spins and node `n` is the field node carrying the
/// external fields as edge weights. Merging may move the field node onto a
/// different id; [`SkGraph::field_node`] always names the live one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkGraph {
    adj: Vec<BTreeMap<NodeId, Weight>>,
    alive: Vec<bool>,
    field: NodeId,
    live: usize,
    edges: usize,
}

/// Effect of merging `dropped` into `kept`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOutcome {
    pub kept: NodeId,
    pub dropped: NodeId,
    /// Weight of the edge that disappeared between the two nodes (0 if none).
    pub internal: Weight,
    /// One entry per former neighbour of `dropped` other than `kept`.
    pub changes: Vec<NeighborChange>,
}

/// Weights seen by one neighbour `node` of the absorbed node.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct NeighborChange {
    pub node: NodeId,
    pub before_kept: Weight,
    pub before_dropped: Weight,
    pub after: Weight,
}

impl SkGraph {
    /// `count` isolated nodes; the last one is the field node.
    pub fn with_nodes(count: usize) -> Self {
        assert!(count >= 1, "an SK graph has at least the field node");
        SkGraph {
            adj: alloc::vec![BTreeMap::new(); count],
            alive: alloc::vec![true; count],
            field: count - 1,
            live: count,
            edges: 0,
        }
    }

    pub fn from_ising(h: &IsingHamiltonian) -> Self {
        let n = h.num_spins();
        let mut g = SkGraph::with_nodes(n + 1);
        for (i, j, w) in h.couplings() {
            g.insert(i, j, w);
        }
        for (i, w) in h.fields() {
            g.insert(i, n, w);
        }
        g
    }

    fn insert(&mut self, u: NodeId, v: NodeId, w: Weight) {
        debug_assert!(w != 0 && u != v);
        if self.adj[u].insert(v, w).is_none() {
            self.edges += 1;
        }
        self.adj[v].insert(u, w);
    }

    fn remove(&mut self, u: NodeId, v: NodeId) {
        if self.adj[u].remove(&v).is_some() {
            self.edges -= 1;
        }
        self.adj[v].remove(&u);
    }

    /// Adds `w` to the weight of `(u, v)`; a zero result deletes the edge.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, w: Weight) -> Result<()> {
        self.check_live(u)?;
        self.check_live(v)?;
        if u == v {
            return Err(Error::SameNode(u));
        }
        let new = self
            .weight(u, v)
            .checked_add(w)
            .ok_or(Error::WeightOverflow)?;
        if new == 0 {
            self.remove(u, v);
        } else {
            self.insert(u, v, new);
        }
        Ok(())
    }

    fn check_live(&self, u: NodeId) -> Result<()> {
        if u >= self.alive.len() {
            return Err(Error::IndexOutOfRange {
                index: u,
                len: self.alive.len(),
            });
        }
        if !self.alive[u] {
            return Err(Error::DeadNode(u));
        }
        Ok(())
    }

    /// Number of node ids ever allocated (spins plus the field node).
    pub fn capacity(&self) -> usize {
        self.alive.len()
    }

    /// Spins of the instance the graph was built for.
    pub fn num_spins(&self) -> usize {
        self.alive.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn field_node(&self) -> NodeId {
        self.field
    }

    pub fn is_live(&self, u: NodeId) -> bool {
        self.alive.get(u).copied().unwrap_or(false)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.alive.len()).filter(|&u| self.alive[u])
    }

    pub fn neighbors(&self, u: NodeId) -> impl Iterator<Item = (NodeId, Weight)> + '_ {
        self.adj[u].iter().map(|(&v, &w)| (v, w))
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adj[u].len()
    }

    /// `w_uv`, or 0 when there is no edge.
    pub fn weight(&self, u: NodeId, v: NodeId) -> Weight {
        self.adj[u].get(&v).copied().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].contains_key(&v)
    }

    /// 1-norm of the weight vector of `u`.
    pub fn norm(&self, u: NodeId) -> i64 {
        self.adj[u].values().map(|w| w.abs()).sum()
    }

    /// Edges `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, Weight)> + '_ {
        self.nodes().flat_map(move |u| {
            self.adj[u]
                .range(u + 1..)
                .map(move |(&v, &w)| (u, v, w))
        })
    }

    /// Sum of all edge weights.
    pub fn total_weight(&self) -> i64 {
        self.edges().map(|(_, _, w)| w).sum()
    }

    /// Negates every weight incident to `u`.
    pub fn flip(&mut self, u: NodeId) -> Result<()> {
        self.check_live(u)?;
        let neighbors: Vec<NodeId> = self.adj[u].keys().copied().collect();
        for v in neighbors {
            let w = self.adj[u].get_mut(&v).unwrap();
            *w = -*w;
            let back = self.adj[v].get_mut(&u).unwrap();
            *back = -*back;
        }
        Ok(())
    }

    /// Merges two live nodes into one, aggregating parallel edges.
    ///
    /// The node with more neighbours survives (ties: lower id). If either node
    /// is the field node, the survivor becomes the field node.
    pub fn merge(&mut self, u: NodeId, v: NodeId) -> Result<MergeOutcome> {
        self.check_live(u)?;
        self.check_live(v)?;
        if u == v {
            return Err(Error::SameNode(u));
        }
        let (kept, dropped) = match self.degree(u).cmp(&self.degree(v)) {
            core::cmp::Ordering::Greater => (u, v),
            core::cmp::Ordering::Less => (v, u),
            core::cmp::Ordering::Equal => (u.min(v), u.max(v)),
        };
        let internal = self.weight(kept, dropped);
        if internal != 0 {
            self.remove(kept, dropped);
        }
        let absorbed = core::mem::take(&mut self.adj[dropped]);
        let mut changes = Vec::with_capacity(absorbed.len());
        for (x, wd) in absorbed {
            self.adj[x].remove(&dropped);
            self.edges -= 1;
            let before = self.weight(kept, x);
            let after = before + wd;
            if after == 0 {
                self.remove(kept, x);
            } else {
                self.insert(kept, x, after);
            }
            changes.push(NeighborChange {
                node: x,
                before_kept: before,
                before_dropped: wd,
                after,
            });
        }
        self.alive[dropped] = false;
        self.live -= 1;
        if dropped == self.field {
            self.field = kept;
        }
        #[cfg(debug_assertions)]
        {
            self.check_local(kept);
            for c in &changes {
                self.check_local(c.node);
            }
        }
        Ok(MergeOutcome {
            kept,
            dropped,
            internal,
            changes,
        })
    }

    #[cfg(debug_assertions)]
    fn check_local(&self, u: NodeId) {
        assert!(self.alive[u]);
        assert!(self.alive[self.field]);
        for (&v, &w) in &self.adj[u] {
            assert!(v != u, "self-loop on {u}");
            assert!(w != 0, "zero-weight edge ({u}, {v})");
            assert!(self.alive[v], "edge to dead node {v}");
            assert_eq!(self.adj[v].get(&u), Some(&w), "asymmetric edge ({u}, {v})");
        }
    }

    /// Checks every structural invariant; intended for tests.
    pub fn validate(&self) -> core::result::Result<(), &'static str> {
        if !self.is_live(self.field) {
            return Err("field node is not live");
        }
        let mut half_edges = 0;
        for u in 0..self.adj.len() {
            if !self.alive[u] {
                if !self.adj[u].is_empty() {
                    return Err("dead node with edges");
                }
                continue;
            }
            for (&v, &w) in &self.adj[u] {
                if v == u {
                    return Err("self-loop");
                }
                if w == 0 {
                    return Err("zero-weight edge");
                }
                if !self.is_live(v) {
                    return Err("edge to dead node");
                }
                if self.adj[v].get(&u) != Some(&w) {
                    return Err("asymmetric edge");
                }
                half_edges += 1;
            }
        }
        if half_edges != 2 * self.edges {
            return Err("edge count out of sync");
        }
        if self.alive.iter().filter(|&&a| a).count() != self.live {
            return Err("node count out of sync");
        }
        Ok(())
    }

    /// Capacity `c(S)`: total weight of edges with exactly one endpoint in `S`.
    pub fn cut_capacity(&self, cut: &Cut) -> i64 {
        cut.side
            .iter()
            .filter(|&&u| self.is_live(u))
            .flat_map(|&u| self.neighbors(u))
            .filter(|(v, _)| !cut.side.contains(v))
            .map(|(_, w)| w)
            .sum()
    }
}

/// One side `S` of the cut `⟨S, V∖S⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    pub side: BTreeSet<NodeId>,
}

impl Cut {
    pub fn empty() -> Self {
        Cut::default()
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.side.contains(&u)
    }
}

impl FromIterator<NodeId> for Cut {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        Cut {
            side: iter.into_iter().collect(),
        }
    }
}
