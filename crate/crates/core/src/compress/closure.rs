use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ClassifiedRelations;
use crate::error::{Error, Result};
use crate::model::NodeId;

/// Signed union-find over the nodes named by a set of relations: parity 0
/// means "same side of every min-cut", parity 1 "opposite sides".
#[derive(Clone, Debug, Default)]
pub struct Closure {
    parent: BTreeMap<NodeId, (NodeId, bool)>,
}

impl Closure {
    pub fn new() -> Self {
        Self::default()
    }

    fn find(&mut self, x: NodeId) -> (NodeId, bool) {
        let mut path = Vec::new();
        let mut r = x;
        let mut p = false;
        while let Some(&(up, step)) = self.parent.get(&r) {
            if up == r {
                break;
            }
            path.push(r);
            p ^= step;
            r = up;
        }
        let mut cur_parity = p;
        for node in path {
            let (_, step) = self.parent[&node];
            self.parent.insert(node, (r, cur_parity));
            cur_parity ^= step;
        }
        (r, p)
    }

    fn touch(&mut self, x: NodeId) {
        self.parent.entry(x).or_insert((x, false));
    }

    /// Parity between `a` and `b` if they are already related.
    pub fn relation(&mut self, a: NodeId, b: NodeId) -> Option<bool> {
        if !self.parent.contains_key(&a) || !self.parent.contains_key(&b) {
            return (a == b).then_some(false);
        }
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        (ra == rb).then_some(pa ^ pb)
    }

    /// Adds the claim `parity(a, b) = parity`.
    pub fn relate(&mut self, a: NodeId, b: NodeId, parity: bool) -> Result<()> {
        self.touch(a);
        self.touch(b);
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != parity {
                return Err(Error::Contradiction(a.min(b), a.max(b)));
            }
            return Ok(());
        }
        let (child, root) = if ra < rb { (rb, ra) } else { (ra, rb) };
        self.parent.insert(child, (root, pa ^ pb ^ parity));
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Components of size at least two, each as ascending `(node, parity)`
    /// with parities relative to the component's smallest node; components
    /// are ordered by their smallest node.
    pub fn components(&mut self) -> Vec<Vec<(NodeId, bool)>> {
        let keys: Vec<NodeId> = self.parent.keys().copied().collect();
        let mut by_root: BTreeMap<NodeId, Vec<(NodeId, bool)>> = BTreeMap::new();
        for x in keys {
            let (r, p) = self.find(x);
            by_root.entry(r).or_default().push((x, p));
        }
        let mut comps: Vec<Vec<(NodeId, bool)>> = by_root
            .into_values()
            .filter(|c| c.len() >= 2)
            .map(|c| {
                let base = c[0].1;
                c.into_iter().map(|(x, p)| (x, p ^ base)).collect()
            })
            .collect();
        comps.sort_by_key(|c| c[0].0);
        comps
    }
}

/// Closure of the strict relations (NGs and antipolar pairs).
pub fn strict_closure(rel: &ClassifiedRelations) -> Result<Closure> {
    let mut c = Closure::new();
    for group in &rel.ngs {
        for pair in group.windows(2) {
            c.relate(pair[0], pair[1], false)?;
        }
    }
    for &(a, b) in &rel.antipolar {
        if a == b {
            return Err(Error::SameNode(a));
        }
        c.relate(a, b, true)?;
    }
    Ok(c)
}

/// Weak sets that neither contradict nor are implied by the strict closure.
pub(crate) fn surviving_weak(closure: &mut Closure, weak: &[Vec<NodeId>]) -> Vec<Vec<NodeId>> {
    weak.iter()
        .filter(|set| {
            let contradicts = set.iter().enumerate().any(|(i, &a)| {
                set[i + 1..]
                    .iter()
                    .any(|&b| closure.relation(a, b) == Some(true))
            });
            let implied = set
                .iter()
                .all(|&x| closure.relation(set[0], x) == Some(false));
            set.len() >= 2 && !contradicts && !implied
        })
        .cloned()
        .collect()
}

/// Closes the relations under union of overlapping groups, propagation of
/// antipolarity through groups, and composition of antipolar pairs.
///
/// Output groups are the parity classes of size at least two. For every
/// component with both classes populated, the smallest node of each class is
/// paired with every node of the other class.
pub fn enlarge(rel: &ClassifiedRelations) -> Result<ClassifiedRelations> {
    let mut closure = strict_closure(rel)?;
    let weak_ngs = surviving_weak(&mut closure, &rel.weak_ngs);
    let mut ngs = Vec::new();
    let mut antipolar = Vec::new();
    for comp in closure.components() {
        let side = |p: bool| -> Vec<NodeId> {
            comp.iter().filter(|&&(_, q)| q == p).map(|&(x, _)| x).collect()
        };
        let (zero, one) = (side(false), side(true));
        if let (Some(&a), Some(&b)) = (zero.first(), one.first()) {
            let mut pairs: Vec<(NodeId, NodeId)> = one
                .iter()
                .map(|&y| (a, y))
                .chain(zero.iter().map(|&x| (b, x)))
                .map(|(p, q)| (p.min(q), p.max(q)))
                .collect();
            pairs.sort_unstable();
            pairs.dedup();
            antipolar.extend(pairs);
        }
        for class in [zero, one] {
            if class.len() >= 2 {
                ngs.push(class);
            }
        }
    }
    Ok(ClassifiedRelations {
        ngs,
        weak_ngs,
        antipolar,
    })
}
