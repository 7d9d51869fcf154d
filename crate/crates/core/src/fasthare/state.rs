use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bounds::{self, PairKind, Score};
use crate::compress::{ClassifiedRelations, Observer};
use crate::error::{Error, Result};
use crate::model::{MergeOutcome, NodeId, SkGraph, Weight};

/// Tie-break key of an edge; the field node sorts last.
type Rank = (NodeId, NodeId);
type Edge = (NodeId, NodeId);

/// Candidate list `L` and the quantities maintained for it: the norms
/// `A_v = ‖w^(v)‖` of every node and the common-neighbour terms `B_uv` of
/// every candidate edge.
#[derive(Clone, Debug)]
pub struct ScoreState {
    alpha: usize,
    capacity: usize,
    field: NodeId,
    norms: Vec<i64>,
    /// Candidate edges `(u, v)`, `u < v`, with `(|w_uv|, B_uv)`.
    list: BTreeMap<(NodeId, NodeId), (Weight, i64)>,
    /// Candidate partners of each node.
    at: Vec<BTreeSet<NodeId>>,
    /// Nodes with an incident weight changed since the last pass.
    touched: BTreeSet<NodeId>,
    /// Candidates added since the last pass.
    fresh: BTreeSet<(NodeId, NodeId)>,
    all_dirty: bool,
    weak: BTreeSet<(NodeId, NodeId)>,
    work: u64,
}

fn key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    (u.min(v), u.max(v))
}

impl ScoreState {
    /// Scores every edge and keeps the `α·|V|` best as candidates.
    pub fn initialize(g: &SkGraph, alpha: usize) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        let mut s = ScoreState {
            alpha,
            capacity: 0,
            field: g.field_node(),
            norms: alloc::vec![0; g.capacity()],
            list: BTreeMap::new(),
            at: alloc::vec![BTreeSet::new(); g.capacity()],
            touched: BTreeSet::new(),
            fresh: BTreeSet::new(),
            all_dirty: true,
            weak: BTreeSet::new(),
            work: 0,
        };
        s.refresh(g);
        Ok(s)
    }

    /// Rebuilds everything from the current graph, as a fresh start would.
    pub fn refresh(&mut self, g: &SkGraph) {
        self.field = g.field_node();
        self.capacity = g.node_count() * self.alpha;
        self.list.clear();
        self.at.iter_mut().for_each(BTreeSet::clear);
        self.touched.clear();
        self.fresh.clear();
        self.weak.clear();
        self.all_dirty = true;
        for u in 0..g.capacity() {
            self.norms[u] = if g.is_live(u) { g.norm(u) } else { 0 };
            self.work += g.degree(u) as u64;
        }
        let mut ranked: Vec<(Score, Rank, Edge)> = g
            .edges()
            .map(|(u, v, w)| (self.fast(u, v, w), self.rank(u, v), (u, v)))
            .collect();
        self.work += ranked.len() as u64;
        let keep = self.capacity.min(ranked.len());
        if keep < ranked.len() {
            ranked.select_nth_unstable_by(keep, |a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            ranked.truncate(keep);
        }
        for (_, _, (u, v)) in ranked {
            self.insert(g, u, v);
        }
    }

    fn fast(&self, u: NodeId, v: NodeId, w: Weight) -> Score {
        bounds::fast_score_from(w, self.norms[u], self.norms[v])
    }

    /// Tie-break order on edges: by ids, with the field node ranked last.
    fn rank(&self, u: NodeId, v: NodeId) -> Rank {
        let r = |x: NodeId| if x == self.field { usize::MAX } else { x };
        let (a, b) = (r(u), r(v));
        (a.min(b), a.max(b))
    }

    fn insert(&mut self, g: &SkGraph, u: NodeId, v: NodeId) {
        let b = bounds::common_neighbor_term(g, u, v);
        self.work += g.degree(u).min(g.degree(v)) as u64 + 1;
        self.list.insert(key(u, v), (g.weight(u, v).abs(), b));
        self.at[u].insert(v);
        self.at[v].insert(u);
        self.fresh.insert(key(u, v));
    }

    fn remove(&mut self, u: NodeId, v: NodeId) {
        let k = key(u, v);
        self.list.remove(&k);
        self.at[u].remove(&v);
        self.at[v].remove(&u);
        self.fresh.remove(&k);
        self.weak.remove(&k);
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    /// Elementary score updates performed so far.
    pub fn work(&self) -> u64 {
        self.work
    }

    /// Maintained `A_u`.
    pub fn norm(&self, u: NodeId) -> i64 {
        self.norms[u]
    }

    /// Maintained `B_uv` for a candidate edge.
    pub fn common(&self, u: NodeId, v: NodeId) -> Option<i64> {
        self.list.get(&key(u, v)).map(|&(_, b)| b)
    }

    pub fn candidates(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.list.keys().copied()
    }

    /// Fast score of a candidate edge from maintained values.
    pub fn fast_score(&self, u: NodeId, v: NodeId) -> Option<Score> {
        let &(w, _) = self.list.get(&key(u, v))?;
        Some(self.fast(u, v, w))
    }

    /// Similarity score of a candidate edge from maintained values.
    pub fn similarity_score(&self, u: NodeId, v: NodeId) -> Option<Score> {
        let &(w, b) = self.list.get(&key(u, v))?;
        Some(bounds::similarity_score_from(w, self.norms[u], self.norms[v], b))
    }

    /// Scores everything whose inputs changed since the previous pass and
    /// returns the relations it certifies, plus the cached weak pairs.
    pub fn classify(&mut self, g: &SkGraph, weak_ngs: bool) -> ClassifiedRelations {
        let dirty: Vec<(NodeId, NodeId)> = if self.all_dirty {
            self.list.keys().copied().collect()
        } else {
            let mut d: BTreeSet<(NodeId, NodeId)> = self.fresh.clone();
            for &t in &self.touched {
                d.extend(self.at[t].iter().map(|&v| key(t, v)));
            }
            d.into_iter().collect()
        };
        let mut rel = ClassifiedRelations::default();
        for &(u, v) in &dirty {
            let w = g.weight(u, v);
            let (_, b) = self.list[&(u, v)];
            self.work += 1;
            let class = bounds::classify_pair_from(u, v, w, self.norms[u], self.norms[v], || b);
            self.weak.remove(&(u, v));
            match class.kind {
                PairKind::Ng => rel.ngs.push(alloc::vec![u, v]),
                PairKind::Antipolar => rel.antipolar.push((u, v)),
                PairKind::WeaklyNg => {
                    self.weak.insert((u, v));
                }
                PairKind::Unknown => {}
            }
        }
        let mut triples: Vec<[NodeId; 3]> = Vec::new();
        for &(u, v) in &dirty {
            for z in g.neighbors(u).chain(g.neighbors(v)).map(|(z, _)| z) {
                if z != u && z != v {
                    triples.push([u, v, z]);
                }
            }
        }
        if !self.all_dirty {
            for &t in &self.touched {
                if !g.is_live(t) {
                    continue;
                }
                for (u, _) in g.neighbors(t) {
                    for &v in &self.at[u] {
                        if v != t {
                            triples.push([u, v, t]);
                        }
                    }
                }
            }
        }
        for x in triples {
            self.work += 1;
            let norms = &self.norms;
            let Ok(tc) = bounds::triangle_score_with(g, x, |u| norms[u]) else {
                continue;
            };
            if !tc.positive {
                continue;
            }
            match tc.flip_set.first() {
                None => rel.ngs.push(tc.x.to_vec()),
                Some(&a) => {
                    let rest: Vec<NodeId> = tc.x.iter().copied().filter(|&y| y != a).collect();
                    rel.antipolar.extend(rest.iter().map(|&y| (a, y)));
                    rel.ngs.push(rest);
                }
            }
        }
        if weak_ngs {
            rel.weak_ngs = self.weak.iter().map(|&(u, v)| alloc::vec![u, v]).collect();
        }
        self.touched.clear();
        self.fresh.clear();
        self.all_dirty = false;
        rel
    }

    /// Updates norms and common-neighbour terms after `outcome`, replaces the
    /// candidates at the merged nodes and evicts down to the budget.
    fn apply_merge(&mut self, g: &SkGraph, m: &MergeOutcome) {
        let (z, d) = (m.kept, m.dropped);
        let change: BTreeMap<NodeId, usize> =
            m.changes.iter().enumerate().map(|(i, c)| (c.node, i)).collect();
        // Weights towards z (before, after) and towards d (before) seen by `a`.
        let seen = |a: NodeId| -> (Weight, Weight, Weight) {
            match change.get(&a) {
                Some(&i) => {
                    let c = &m.changes[i];
                    (c.before_kept, c.after, c.before_dropped)
                }
                None => {
                    let w = g.weight(a, z);
                    (w, w, 0)
                }
            }
        };
        let mut updates = Vec::new();
        for c in &m.changes {
            let a = c.node;
            for &b in &self.at[a] {
                self.work += 1;
                if b == z || b == d || (b < a && change.contains_key(&b)) {
                    continue;
                }
                let k = key(a, b);
                let w_ab = g.weight(a, b);
                let (az_old, az_new, ad_old) = seen(a);
                let (bz_old, bz_new, bd_old) = seen(b);
                let term = |x: Weight, y: Weight| {
                    if x == 0 || y == 0 {
                        0
                    } else {
                        bounds::common_term(w_ab, x, y)
                    }
                };
                let delta = term(az_new, bz_new) - term(az_old, bz_old) - term(ad_old, bd_old);
                updates.push((k, delta));
            }
        }
        for (k, delta) in updates {
            if let Some(entry) = self.list.get_mut(&k) {
                entry.1 += delta;
            }
        }
        let mut norm_z = self.norms[z] - m.internal.abs();
        for c in &m.changes {
            self.norms[c.node] += c.after.abs() - c.before_kept.abs() - c.before_dropped.abs();
            norm_z += c.after.abs() - c.before_kept.abs();
        }
        self.work += m.changes.len() as u64;
        self.norms[z] = norm_z;
        self.norms[d] = 0;
        for x in [z, d] {
            let partners: Vec<NodeId> = self.at[x].iter().copied().collect();
            for y in partners {
                self.remove(x, y);
            }
        }
        self.field = g.field_node();
        let mut best: Vec<(Score, (NodeId, NodeId), NodeId)> = g
            .neighbors(z)
            .map(|(y, w)| (self.fast(z, y, w), self.rank(z, y), y))
            .collect();
        self.work += best.len() as u64;
        best.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, _, y) in best.iter().take(self.alpha) {
            self.insert(g, z, y);
        }
        while self.list.len() > self.capacity {
            self.work += self.list.len() as u64;
            let worst = self
                .list
                .iter()
                .map(|(&(u, v), &(w, _))| (self.fast(u, v, w), self.rank(u, v), (u, v)))
                .min_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                .map(|(_, _, k)| k)
                .unwrap();
            self.remove(worst.0, worst.1);
        }
        self.touched.remove(&d);
        self.touched.insert(z);
        self.touched.extend(m.changes.iter().map(|c| c.node));
    }

    /// Compares every maintained quantity with a recomputation on `g`.
    pub fn verify_against(&self, g: &SkGraph) -> core::result::Result<(), String> {
        for u in g.nodes() {
            if self.norms[u] != g.norm(u) {
                return Err(format!("A_{u} = {} but the norm is {}", self.norms[u], g.norm(u)));
            }
        }
        if self.list.len() > self.capacity {
            return Err(format!("{} candidates exceed the budget {}", self.list.len(), self.capacity));
        }
        for (&(u, v), &(w, b)) in &self.list {
            if !g.has_edge(u, v) {
                return Err(format!("candidate ({u}, {v}) is not an edge"));
            }
            if w != g.weight(u, v).abs() {
                return Err(format!("|w_{u}{v}| = {w} is stale"));
            }
            let fresh = bounds::common_neighbor_term(g, u, v);
            if b != fresh {
                return Err(format!("B_{u}{v} = {b} but recomputes to {fresh}"));
            }
            if Some(self.fast(u, v, w)) != bounds::fast_score(g, u, v).ok() {
                return Err(format!("fast score of ({u}, {v}) disagrees"));
            }
            if self.similarity_score(u, v) != bounds::similarity_score(g, u, v).ok() {
                return Err(format!("similarity score of ({u}, {v}) disagrees"));
            }
            if !self.at[u].contains(&v) || !self.at[v].contains(&u) {
                return Err(format!("partner index misses ({u}, {v})"));
            }
        }
        let indexed: usize = self.at.iter().map(BTreeSet::len).sum();
        if indexed != 2 * self.list.len() {
            return Err(String::from("partner index out of sync"));
        }
        Ok(())
    }
}

impl Observer for ScoreState {
    /// Flipping `u` changes no norm and, since the sign rule of every common
    /// term follows the flipped weights, no `B`; only the kinds of the
    /// candidates at `u` and the triples through `u` can change.
    fn flipped(&mut self, _g: &SkGraph, u: NodeId) {
        self.touched.insert(u);
    }

    fn merged(&mut self, g: &SkGraph, outcome: &MergeOutcome) {
        self.apply_merge(g, outcome);
    }
}
