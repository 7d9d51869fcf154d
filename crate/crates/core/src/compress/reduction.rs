use alloc::vec::Vec;

use super::ReductionMap;
use crate::error::{Error, Result};
use crate::model::{IsingHamiltonian, NodeId, SkGraph, Spin, SpinConfiguration};

/// How one original spin is recovered from a reduced solution.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    /// Index of the representative spin in the reduced Hamiltonian, `None`
    /// when the spin is fixed.
    pub rep: Option<usize>,
    /// `x_i = (−1)^sign · y_rep`; for fixed spins, the parity against +1.
    pub sign: bool,
    pub fixed: Option<Spin>,
}

/// A reduced Hamiltonian together with the map back to the original spins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub hamiltonian: IsingHamiltonian,
    pub offset: i64,
    pub assignments: Vec<Assignment>,
}

impl Reduction {
    /// The trivial reduction of `h` onto itself.
    pub fn identity(h: &IsingHamiltonian) -> Self {
        Reduction {
            hamiltonian: h.clone(),
            offset: 0,
            assignments: (0..h.num_spins())
                .map(|i| Assignment {
                    rep: Some(i),
                    sign: false,
                    fixed: None,
                })
                .collect(),
        }
    }

    pub fn num_original(&self) -> usize {
        self.assignments.len()
    }

    pub fn num_fixed(&self) -> usize {
        self.assignments.iter().filter(|a| a.fixed.is_some()).count()
    }

    /// Logical-qubit reduction ratio `1 − n'/n` (0 for an empty instance).
    pub fn ratio(&self) -> f64 {
        let n = self.num_original();
        if n == 0 {
            0.0
        } else {
            1.0 - self.hamiltonian.num_spins() as f64 / n as f64
        }
    }

    /// Maps a configuration of the reduced Hamiltonian back to the original.
    pub fn reconstruct(&self, y: &SpinConfiguration) -> Result<SpinConfiguration> {
        let expected = self.hamiltonian.num_spins();
        if y.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: y.len(),
            });
        }
        Ok(self
            .assignments
            .iter()
            .map(|a| match (a.fixed, a.rep) {
                (Some(s), _) => s,
                (None, Some(r)) => {
                    if a.sign {
                        -y[r]
                    } else {
                        y[r]
                    }
                }
                (None, None) => unreachable!("assignment without representative"),
            })
            .collect::<Vec<_>>()
            .into())
    }
}

/// Hamiltonian of a compressed graph: surviving non-field nodes become spins
/// `0..l` in ascending id order, edges to the field node become fields.
/// Also returns the graph node behind each reduced spin.
pub fn extract_reduced_hamiltonian(g: &SkGraph) -> Result<(IsingHamiltonian, Vec<NodeId>)> {
    let field = g.field_node();
    let survivors: Vec<NodeId> = g.nodes().filter(|&u| u != field).collect();
    let mut label = alloc::vec![usize::MAX; g.capacity()];
    for (k, &u) in survivors.iter().enumerate() {
        label[u] = k;
    }
    let mut h = IsingHamiltonian::new(survivors.len());
    for (u, v, w) in g.edges() {
        if u == field {
            h.add_field(label[v], w)?;
        } else if v == field {
            h.add_field(label[u], w)?;
        } else {
            h.add_coupling(label[u], label[v], w)?;
        }
    }
    Ok((h, survivors))
}

pub(crate) fn build(g: &SkGraph, map: &mut ReductionMap) -> Result<Reduction> {
    let (hamiltonian, survivors) = extract_reduced_hamiltonian(g)?;
    let mut label = alloc::vec![None; g.capacity()];
    for (k, &u) in survivors.iter().enumerate() {
        label[u] = Some(k);
    }
    let original_field = map.field();
    map.find(original_field);
    let (field_root, field_rel) = map.resolve(original_field);
    debug_assert_eq!(field_root, g.field_node());
    let assignments = (0..g.num_spins())
        .map(|i| {
            map.find(i);
            let (root, rel) = map.resolve(i);
            let sign = rel ^ field_rel;
            if root == field_root {
                Assignment {
                    rep: None,
                    sign,
                    fixed: Some(Spin::from_parity(sign)),
                }
            } else {
                Assignment {
                    rep: label[root],
                    sign,
                    fixed: None,
                }
            }
        })
        .collect();
    Ok(Reduction {
        hamiltonian,
        offset: map.offset(),
        assignments,
    })
}
