use alloc::vec::Vec;

use crate::model::NodeId;

/// Union-find with parities over the nodes of an SK graph.
///
/// For a non-root node the parity slot holds its parity relative to its
/// parent. For a root it records whether the root has been flipped an odd
/// number of times, so that the original value of every node `i` is
/// `(−1)^{rel(i)}` times the current value of its root, where `rel(i)` is the
/// XOR of all slots on the path from `i` up to and including the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    parent: Vec<NodeId>,
    parity: Vec<bool>,
    field: NodeId,
    offset: i64,
}

impl ReductionMap {
    /// Identity map over `capacity` nodes whose field node is `field`.
    pub fn new(capacity: usize, field: NodeId) -> Self {
        ReductionMap {
            parent: (0..capacity).collect(),
            parity: alloc::vec![false; capacity],
            field,
            offset: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Id of the original field node.
    pub fn field(&self) -> NodeId {
        self.field
    }

    /// Accumulated constant: `min H_original = min H_reduced + offset`.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub(crate) fn add_offset(&mut self, delta: i64) {
        self.offset += delta;
    }

    /// Root of `i` and the parity of `i` relative to the root (root slot
    /// excluded). Compresses the path.
    pub fn find(&mut self, i: NodeId) -> (NodeId, bool) {
        let (root, parity) = self.resolve_to_root(i);
        let mut cur = i;
        let mut cur_parity = parity;
        while self.parent[cur] != cur {
            let next = self.parent[cur];
            let step = self.parity[cur];
            self.parent[cur] = root;
            self.parity[cur] = cur_parity;
            cur_parity ^= step;
            cur = next;
        }
        (root, parity)
    }

    fn resolve_to_root(&self, i: NodeId) -> (NodeId, bool) {
        let mut r = i;
        let mut p = false;
        while self.parent[r] != r {
            p ^= self.parity[r];
            r = self.parent[r];
        }
        (r, p)
    }

    /// Root of `i` and `rel(i)`, the parity between the original value of `i`
    /// and the current value of the root.
    pub fn resolve(&self, i: NodeId) -> (NodeId, bool) {
        let (r, p) = self.resolve_to_root(i);
        (r, p ^ self.parity[r])
    }

    /// Records a flip of the graph node `root`.
    pub(crate) fn flip(&mut self, root: NodeId) {
        debug_assert_eq!(self.parent[root], root);
        self.parity[root] ^= true;
    }

    /// Hangs root `dropped` under root `kept`; both now share one variable.
    pub(crate) fn union(&mut self, dropped: NodeId, kept: NodeId) {
        debug_assert!(self.parent[dropped] == dropped && self.parent[kept] == kept);
        self.parity[dropped] ^= self.parity[kept];
        self.parent[dropped] = kept;
    }

    /// `Some(value)` when `i` ended up merged with the field node.
    pub fn fixed_value(&self, i: NodeId) -> Option<i64> {
        let (r, p) = self.resolve(i);
        let (rf, pf) = self.resolve(self.field);
        (r == rf).then_some(if p == pf { 1 } else { -1 })
    }
}
