//! Sufficient conditions for non-separability of pairs and triples.
//!
//! Every score is carried as twice its value so that the ½ factors stay in
//! integers; only signs and comparisons matter downstream.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{NodeId, SkGraph, Weight};

/// Largest group accepted by [`general_lower_bound`].
pub const MAX_BOUND_GROUP: usize = 20;

/// A score stored as twice its value.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score(i64);

impl Score {
    pub const fn from_twice(twice: i64) -> Self {
        Score(twice)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl core::fmt::Display for Score {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    Ng,
    WeaklyNg,
    Antipolar,
    Unknown,
}

impl PairKind {
    /// Classification of an edge of weight `w` whose best score is `witness`.
    pub fn of(w: Weight, witness: Score) -> Self {
        match (witness.0.signum(), w >= 0) {
            (1, true) => PairKind::Ng,
            (1, false) => PairKind::Antipolar,
            (0, true) => PairKind::WeaklyNg,
            _ => PairKind::Unknown,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub u: NodeId,
    pub v: NodeId,
    pub kind: PairKind,
    /// `max(ν̂_f, ν̂_s)`.
    pub witness: Score,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleClass {
    /// The three nodes in ascending order.
    pub x: [NodeId; 3],
    /// Nodes flipped to make the induced min-cut non-negative (at most one).
    pub flip_set: Vec<NodeId>,
    pub score: Score,
    pub positive: bool,
}

impl TripleClass {
    /// Parity of `x[i]` relative to the unflipped members.
    pub fn parity(&self, i: usize) -> bool {
        self.flip_set.contains(&self.x[i])
    }
}

fn edge_weight(g: &SkGraph, u: NodeId, v: NodeId) -> Result<Weight> {
    if !g.is_live(u) {
        return Err(Error::DeadNode(u));
    }
    if !g.is_live(v) {
        return Err(Error::DeadNode(v));
    }
    match g.weight(u, v) {
        0 => Err(Error::EdgeAbsent(u, v)),
        w => Ok(w),
    }
}

/// `ν̂_f` from the edge weight and the two endpoint norms.
pub fn fast_score_from(w: Weight, norm_u: i64, norm_v: i64) -> Score {
    Score(4 * w.abs() - 2 * norm_u.min(norm_v))
}

/// `ν̂_f(u, v) = 2|w_uv| − min(‖w^(u)‖, ‖w^(v)‖)`.
pub fn fast_score(g: &SkGraph, u: NodeId, v: NodeId) -> Result<Score> {
    let w = edge_weight(g, u, v)?;
    Ok(fast_score_from(w, g.norm(u), g.norm(v)))
}

/// `|a ∓ b| − |a| − |b|`, minus when `w_uv ≥ 0`.
pub fn common_term(w_uv: Weight, a: Weight, b: Weight) -> i64 {
    let joined = if w_uv >= 0 { a - b } else { a + b };
    joined.abs() - a.abs() - b.abs()
}

/// `B_uv`: sum of [`common_term`] over the common neighbours of `u` and `v`.
pub fn common_neighbor_term(g: &SkGraph, u: NodeId, v: NodeId) -> i64 {
    let w = g.weight(u, v);
    let (small, large) = if g.degree(u) <= g.degree(v) { (u, v) } else { (v, u) };
    g.neighbors(small)
        .filter(|&(z, _)| z != large)
        .map(|(z, a)| (a, g.weight(large, z)))
        .filter(|&(_, b)| b != 0)
        .map(|(a, b)| common_term(w, a, b))
        .sum()
}

/// `ν̂_s` from the edge weight, both norms and `B_uv`.
pub fn similarity_score_from(w: Weight, norm_u: i64, norm_v: i64, common: i64) -> Score {
    Score(4 * w.abs() - (norm_u + norm_v + common))
}

/// `ν̂_s(u, v) = 2|w_uv| − ½‖w^(u) ∓ w^(v)‖` over full-length weight vectors.
pub fn similarity_score(g: &SkGraph, u: NodeId, v: NodeId) -> Result<Score> {
    let w = edge_weight(g, u, v)?;
    Ok(similarity_score_from(
        w,
        g.norm(u),
        g.norm(v),
        common_neighbor_term(g, u, v),
    ))
}

/// Pair classification given maintained norms; `common` is only evaluated
/// when the fast score does not already decide.
pub fn classify_pair_from(
    u: NodeId,
    v: NodeId,
    w: Weight,
    norm_u: i64,
    norm_v: i64,
    common: impl FnOnce() -> i64,
) -> PairClass {
    let fast = fast_score_from(w, norm_u, norm_v);
    let witness = if fast.is_positive() {
        fast
    } else {
        fast.max(similarity_score_from(w, norm_u, norm_v, common()))
    };
    PairClass {
        u,
        v,
        kind: PairKind::of(w, witness),
        witness,
    }
}

pub fn classify_pair(g: &SkGraph, u: NodeId, v: NodeId) -> Result<PairClass> {
    let w = edge_weight(g, u, v)?;
    Ok(classify_pair_from(u, v, w, g.norm(u), g.norm(v), || {
        common_neighbor_term(g, u, v)
    }))
}

/// Sorted triple and its internal weights on edges `(x0,x1), (x0,x2), (x1,x2)`.
fn triple(g: &SkGraph, x: [NodeId; 3]) -> Result<([NodeId; 3], [Weight; 3])> {
    let mut x = x;
    x.sort_unstable();
    if x[0] == x[1] || x[1] == x[2] {
        return Err(Error::SameNode(x[1]));
    }
    if let Some(&u) = x.iter().find(|&&u| !g.is_live(u)) {
        return Err(Error::DeadNode(u));
    }
    let w = [g.weight(x[0], x[1]), g.weight(x[0], x[2]), g.weight(x[1], x[2])];
    if w.iter().filter(|&&w| w != 0).count() < 2 {
        return Err(Error::SparseTriple);
    }
    Ok((x, w))
}

/// Internal edges touched by flipping `x[i]`.
const INCIDENT: [[usize; 2]; 3] = [[0, 1], [0, 2], [1, 2]];

fn flipped(w: [Weight; 3], flip: Option<usize>) -> [Weight; 3] {
    let mut w = w;
    if let Some(i) = flip {
        for e in INCIDENT[i] {
            w[e] = -w[e];
        }
    }
    w
}

/// Index of the member to flip (`None` for no flip).
fn flip_choice(w: [Weight; 3]) -> Option<usize> {
    const CHOICES: [Option<usize>; 4] = [None, Some(0), Some(1), Some(2)];
    if let Some(&c) = CHOICES
        .iter()
        .find(|&&c| flipped(w, c).iter().all(|&w| w >= 0))
    {
        return c;
    }
    // Odd number of negative edges: all three edges exist and exactly one
    // must stay negative, the lightest one.
    let lightest = (0..3).min_by_key(|&e| (w[e].abs(), e)).unwrap();
    *CHOICES
        .iter()
        .find(|&&c| {
            let f = flipped(w, c);
            (0..3).all(|e| (f[e] < 0) == (e == lightest))
        })
        .unwrap()
}

/// `X̃`: at most one node of the triple whose flip leaves no negative internal
/// edge, or only the lightest one.
pub fn triangle_flip_set(g: &SkGraph, x: [NodeId; 3]) -> Result<Vec<NodeId>> {
    let (x, w) = triple(g, x)?;
    Ok(flip_choice(w).map(|i| x[i]).into_iter().collect())
}

/// `ν̂_t` given a norm lookup (maintained or fresh).
pub fn triangle_score_with(
    g: &SkGraph,
    x: [NodeId; 3],
    norm: impl Fn(NodeId) -> i64,
) -> Result<TripleClass> {
    let (x, w) = triple(g, x)?;
    let flip = flip_choice(w);
    let wt = flipped(w, flip);
    // internal edge indices at each member
    let abs_inside = |i: usize| INCIDENT[i].iter().map(|&e| w[e].abs()).sum::<i64>();
    let slack: [i64; 3] = core::array::from_fn(|i| norm(x[i]) - abs_inside(i));
    let score = (0..3)
        .map(|i| {
            let inside: i64 = INCIDENT[i].iter().map(|&e| wt[e]).sum();
            let others: i64 = (0..3).filter(|&j| j != i).map(|j| slack[j]).sum();
            inside - slack[i].min(others)
        })
        .min()
        .unwrap();
    let score = Score(2 * score);
    Ok(TripleClass {
        x,
        flip_set: flip.map(|i| x[i]).into_iter().collect(),
        score,
        positive: score.is_positive(),
    })
}

/// `ν̂_t(X)` for a triple with at least two internal edges.
pub fn triangle_score(g: &SkGraph, x: [NodeId; 3]) -> Result<TripleClass> {
    triangle_score_with(g, x, |u| g.norm(u))
}

/// Lower bound `ν̂_G(X)` on the non-separability index (twice its value),
/// by enumeration over the proper non-empty subsets `Z` of `X`.
pub fn general_lower_bound(g: &SkGraph, x: &[NodeId]) -> Result<Score> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    let k = x.len();
    if k < 2 {
        return Err(Error::GroupTooSmall(k));
    }
    if k > MAX_BOUND_GROUP {
        return Err(Error::TooLarge {
            size: k,
            limit: MAX_BOUND_GROUP,
        });
    }
    if let Some(&u) = x.iter().find(|&&u| !g.is_live(u)) {
        return Err(Error::DeadNode(u));
    }
    let inner: Vec<Vec<Weight>> = x
        .iter()
        .map(|&u| x.iter().map(|&v| g.weight(u, v)).collect())
        .collect();
    // For every outside neighbour y: its weights towards each member of X.
    let mut outside: Vec<(NodeId, Vec<Weight>)> = Vec::new();
    for (i, &u) in x.iter().enumerate() {
        for (y, w) in g.neighbors(u) {
            if x.binary_search(&y).is_ok() {
                continue;
            }
            match outside.iter_mut().find(|(z, _)| *z == y) {
                Some((_, ws)) => ws[i] = w,
                None => {
                    let mut ws = alloc::vec![0; k];
                    ws[i] = w;
                    outside.push((y, ws));
                }
            }
        }
    }
    let mut best = i64::MAX;
    for z in 1u32..(1u32 << k) - 1 {
        let inside = |i: usize| z >> i & 1 == 1;
        let mut cut = 0;
        for (i, row) in inner.iter().enumerate() {
            for (j, &w) in row.iter().enumerate().skip(i + 1) {
                if inside(i) != inside(j) {
                    cut += w;
                }
            }
        }
        let (mut diff, mut abs_in, mut abs_out) = (0, 0, 0);
        for (_, ws) in &outside {
            let mut d = 0;
            for (i, &w) in ws.iter().enumerate() {
                if inside(i) {
                    d += w;
                    abs_in += w.abs();
                } else {
                    d -= w;
                    abs_out += w.abs();
                }
            }
            diff += d.abs();
        }
        let penalty = diff.min(2 * abs_in).min(2 * abs_out);
        best = best.min(2 * cut - penalty);
    }
    Ok(Score(best))
}
