//! Exhaustive ground truth for small instances.
//!
//! Everything here is exponential and exists to check the polynomial-time
//! machinery. Cut enumeration keeps the field node on the `V∖S` side, which
//! covers every cut up to complement (capacities are complement-invariant).

use alloc::vec::Vec;

use crate::compress::Reduction;
use crate::error::{Error, Result};
use crate::model::{Cut, IsingHamiltonian, NodeId, SkGraph, SpinConfiguration, Weight};

/// Largest graph accepted by the cut enumerators.
pub const MAX_CUT_NODES: usize = 24;
/// Largest Hamiltonian accepted by the ground-state enumerators.
pub const MAX_GROUND_SPINS: usize = 22;
/// Largest number of minimisers materialised in a result.
pub const MAX_STORED_MINIMIZERS: usize = 1 << 20;

/// Non-field live nodes with neighbour lists in bit positions.
struct CutSpace {
    nodes: Vec<NodeId>,
    /// `(position, weight)`; position `None` is the field node.
    adj: Vec<Vec<(Option<usize>, Weight)>>,
}

impl CutSpace {
    fn new(g: &SkGraph) -> Result<Self> {
        if g.node_count() > MAX_CUT_NODES {
            return Err(Error::TooLarge {
                size: g.node_count(),
                limit: MAX_CUT_NODES,
            });
        }
        let field = g.field_node();
        let nodes: Vec<NodeId> = g.nodes().filter(|&u| u != field).collect();
        let pos = |v: NodeId| nodes.iter().position(|&u| u == v);
        let adj = nodes
            .iter()
            .map(|&u| g.neighbors(u).map(|(v, w)| (pos(v), w)).collect())
            .collect();
        Ok(CutSpace { nodes, adj })
    }

    /// Visits every cut (as a bitmask over `nodes`) with its capacity, in
    /// Gray-code order starting from the empty cut.
    fn for_each(&self, mut visit: impl FnMut(u32, i64)) {
        let k = self.nodes.len();
        let mut mask = 0u32;
        let mut cap = 0i64;
        visit(mask, cap);
        for step in 1u64..(1u64 << k) {
            let p = step.trailing_zeros() as usize;
            let inside = mask >> p & 1 == 1;
            for &(q, w) in &self.adj[p] {
                let q_inside = q.is_some_and(|q| mask >> q & 1 == 1);
                // the edge becomes cut iff both endpoints were on the same side
                if q_inside == inside {
                    cap += w;
                } else {
                    cap -= w;
                }
            }
            mask ^= 1 << p;
            visit(mask, cap);
        }
    }

    fn mask_of(&self, x: &[NodeId]) -> (u32, bool) {
        let mut m = 0;
        let mut has_field = false;
        for &u in x {
            match self.nodes.iter().position(|&v| v == u) {
                Some(p) => m |= 1 << p,
                None => has_field = true,
            }
        }
        (m, has_field)
    }
}

/// Minimum capacity over all cuts and every cut attaining it.
#[derive(Clone, Debug)]
pub struct MinCutResult {
    pub min_capacity: i64,
    total_weight: i64,
    nodes: Vec<NodeId>,
    argmin: Vec<u32>,
}

impl MinCutResult {
    /// Ground energy of the Hamiltonian behind the graph: `2·MC − W`.
    pub fn ground_energy(&self) -> i64 {
        crate::model::CUT_ENERGY_SCALE * self.min_capacity - self.total_weight
    }

    pub fn num_minimizers(&self) -> usize {
        self.argmin.len()
    }

    /// Minimising cuts with the field node outside `S`.
    pub fn argmin_cuts(&self) -> impl Iterator<Item = Cut> + '_ {
        self.argmin.iter().map(move |&m| {
            self.nodes
                .iter()
                .enumerate()
                .filter(|(p, _)| m >> p & 1 == 1)
                .map(|(_, &u)| u)
                .collect()
        })
    }

    fn side(&self, mask: u32, u: NodeId) -> bool {
        self.nodes
            .iter()
            .position(|&v| v == u)
            .is_some_and(|p| mask >> p & 1 == 1)
    }

    fn together(&self, mask: u32, x: &[NodeId]) -> bool {
        x.windows(2)
            .all(|p| self.side(mask, p[0]) == self.side(mask, p[1]))
    }

    /// `x` lies on one side of every minimum cut.
    pub fn together_in_all(&self, x: &[NodeId]) -> bool {
        self.argmin.iter().all(|&m| self.together(m, x))
    }

    /// `x` lies on one side of at least one minimum cut.
    pub fn together_in_some(&self, x: &[NodeId]) -> bool {
        self.argmin.iter().any(|&m| self.together(m, x))
    }

    /// `u` and `v` are separated by every minimum cut.
    pub fn opposite_in_all(&self, u: NodeId, v: NodeId) -> bool {
        self.argmin
            .iter()
            .all(|&m| self.side(m, u) != self.side(m, v))
    }
}

/// Exhaustive weighted min-cut, empty cut included.
pub fn exact_min_cut(g: &SkGraph) -> Result<MinCutResult> {
    let space = CutSpace::new(g)?;
    let mut best = i64::MAX;
    space.for_each(|_, c| best = best.min(c));
    let mut argmin = Vec::new();
    let mut overflow = false;
    space.for_each(|m, c| {
        if c == best {
            if argmin.len() == MAX_STORED_MINIMIZERS {
                overflow = true;
            } else {
                argmin.push(m);
            }
        }
    });
    if overflow {
        return Err(Error::TooManyMinimizers {
            limit: MAX_STORED_MINIMIZERS,
        });
    }
    Ok(MinCutResult {
        min_capacity: best,
        total_weight: g.total_weight(),
        nodes: space.nodes,
        argmin,
    })
}

/// `ν(X) = min_{S separates X} c(S) − min_{S does not separate X} c(S)`.
pub fn exact_nonseparability_index(g: &SkGraph, x: &[NodeId]) -> Result<i64> {
    let mut group: Vec<NodeId> = x.to_vec();
    group.sort_unstable();
    group.dedup();
    if group.len() < 2 {
        return Err(Error::GroupTooSmall(group.len()));
    }
    if let Some(&u) = group.iter().find(|&&u| !g.is_live(u)) {
        return Err(Error::DeadNode(u));
    }
    let space = CutSpace::new(g)?;
    let (xmask, has_field) = space.mask_of(&group);
    let mut sep = i64::MAX;
    let mut nonsep = i64::MAX;
    space.for_each(|m, c| {
        let inside = m & xmask;
        let separates = if has_field {
            inside != 0
        } else {
            inside != 0 && inside != xmask
        };
        if separates {
            sep = sep.min(c);
        } else {
            nonsep = nonsep.min(c);
        }
    });
    Ok(sep - nonsep)
}

/// All minimum-energy configurations of a small Hamiltonian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundStates {
    pub energy: i64,
    pub states: Vec<SpinConfiguration>,
}

fn for_each_energy(h: &IsingHamiltonian, mut visit: impl FnMut(u64, i64)) -> Result<()> {
    let n = h.num_spins();
    if n > MAX_GROUND_SPINS {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_GROUND_SPINS,
        });
    }
    let adj = h.adjacency();
    let fields: Vec<Weight> = (0..n).map(|i| h.field(i)).collect();
    let mut down = 0u64;
    let mut energy = -fields.iter().sum::<i64>() - h.couplings().map(|(_, _, w)| w).sum::<i64>();
    let spin = |mask: u64, i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
    visit(down, energy);
    for step in 1u64..(1u64 << n) {
        let i = step.trailing_zeros() as usize;
        let local = fields[i] + adj[i].iter().map(|&(j, w)| w * spin(down, j)).sum::<i64>();
        energy += 2 * spin(down, i) * local;
        down ^= 1 << i;
        visit(down, energy);
    }
    Ok(())
}

/// Minimum energy by enumeration.
pub fn ground_energy(h: &IsingHamiltonian) -> Result<i64> {
    let mut best = i64::MAX;
    for_each_energy(h, |_, e| best = best.min(e))?;
    Ok(best)
}

/// Calls `visit` on every ground state without storing them; returns the
/// ground energy.
pub fn for_each_ground_state(
    h: &IsingHamiltonian,
    mut visit: impl FnMut(&SpinConfiguration),
) -> Result<i64> {
    let best = ground_energy(h)?;
    let n = h.num_spins();
    for_each_energy(h, |m, e| {
        if e == best {
            visit(&SpinConfiguration::from_down_mask(n, m));
        }
    })?;
    Ok(best)
}

pub fn exact_ground_states(h: &IsingHamiltonian) -> Result<GroundStates> {
    let mut states = Vec::new();
    let mut overflow = false;
    let energy = for_each_ground_state(h, |s| {
        if states.len() == MAX_STORED_MINIMIZERS {
            overflow = true;
        } else {
            states.push(s.clone());
        }
    })?;
    if overflow {
        return Err(Error::TooManyMinimizers {
            limit: MAX_STORED_MINIMIZERS,
        });
    }
    Ok(GroundStates { energy, states })
}

/// Outcome of checking a reduction against brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub original_min: i64,
    pub reduced_min: i64,
    pub offset: i64,
    /// Ground states of the reduced Hamiltonian that were mapped back.
    pub reduced_ground_states: u64,
    /// Of those, how many failed to reach the original minimum.
    pub failures: u64,
}

impl ReductionCheck {
    pub fn passed(&self) -> bool {
        self.original_min == self.reduced_min + self.offset && self.failures == 0
    }
}

/// Checks `min H = min H' + offset` and that every ground state of `H'`
/// reconstructs to a ground state of `H`.
pub fn check_reduction(original: &IsingHamiltonian, reduction: &Reduction) -> Result<ReductionCheck> {
    let original_min = ground_energy(original)?;
    let mut count = 0u64;
    let mut failures = 0u64;
    let mut error = None;
    let reduced_min = for_each_ground_state(&reduction.hamiltonian, |y| {
        count += 1;
        match reduction
            .reconstruct(y)
            .and_then(|x| original.energy(&x))
        {
            Ok(e) if e == original_min => {}
            Ok(_) => failures += 1,
            Err(e) => {
                failures += 1;
                error.get_or_insert(e);
            }
        }
    })?;
    if let Some(e) = error {
        return Err(e);
    }
    Ok(ReductionCheck {
        original_min,
        reduced_min,
        offset: reduction.offset,
        reduced_ground_states: count,
        failures,
    })
}
