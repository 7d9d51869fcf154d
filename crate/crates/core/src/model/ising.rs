use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{SpinConfiguration, Weight, MAX_TOTAL_WEIGHT};
use crate::error::{Error, Result};

/// Ising Hamiltonian `H(s) = -Σ h_i s_i - Σ_{i<j} J_ij s_i s_j` over `n` spins.
///
/// Spins are indexed `0..n`. Couplings are stored once per unordered pair with
/// the combined weight `J_ij + J_ji`; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsingHamiltonian {
    n: usize,
    fields: BTreeMap<usize, Weight>,
    couplings: BTreeMap<(usize, usize), Weight>,
    total_abs: i64,
}

impl IsingHamiltonian {
    pub fn new(n: usize) -> Self {
        IsingHamiltonian {
            n,
            ..Default::default()
        }
    }

    pub fn num_spins(&self) -> usize {
        self.n
    }

    /// Adds `v` to the field on spin `i`.
    pub fn add_field(&mut self, i: usize, v: Weight) -> Result<()> {
        self.check_index(i)?;
        let old = self.fields.get(&i).copied().unwrap_or(0);
        let new = old.checked_add(v).ok_or(Error::WeightOverflow)?;
        self.account(old, new)?;
        if new == 0 {
            self.fields.remove(&i);
        } else {
            self.fields.insert(i, new);
        }
        Ok(())
    }

    /// Adds `v` to the coupling between `i` and `j` (order irrelevant).
    pub fn add_coupling(&mut self, i: usize, j: usize, v: Weight) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::SelfCoupling(i));
        }
        let key = (i.min(j), i.max(j));
        let old = self.couplings.get(&key).copied().unwrap_or(0);
        let new = old.checked_add(v).ok_or(Error::WeightOverflow)?;
        self.account(old, new)?;
        if new == 0 {
            self.couplings.remove(&key);
        } else {
            self.couplings.insert(key, new);
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn account(&mut self, old: Weight, new: Weight) -> Result<()> {
        let total = (self.total_abs as i128) - (old as i128).abs() + (new as i128).abs();
        if total > MAX_TOTAL_WEIGHT as i128 {
            return Err(Error::WeightOverflow);
        }
        self.total_abs = total as i64;
        Ok(())
    }

    pub fn field(&self, i: usize) -> Weight {
        self.fields.get(&i).copied().unwrap_or(0)
    }

    pub fn coupling(&self, i: usize, j: usize) -> Weight {
        self.couplings
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0)
    }

    /// Nonzero fields in index order.
    pub fn fields(&self) -> impl Iterator<Item = (usize, Weight)> + '_ {
        self.fields.iter().map(|(&i, &v)| (i, v))
    }

    /// Nonzero couplings `(i, j, J)` with `i < j`, in lexicographic order.
    pub fn couplings(&self) -> impl Iterator<Item = (usize, usize, Weight)> + '_ {
        self.couplings.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn num_fields(&self) -> usize {
        self.fields.len()
    }

    pub fn num_couplings(&self) -> usize {
        self.couplings.len()
    }

    pub fn is_zero(&self) -> bool {
        self.fields.is_empty() && self.couplings.is_empty()
    }

    /// Sum of `|h_i|` and `|J_ij|`.
    pub fn total_abs_weight(&self) -> i64 {
        self.total_abs
    }

    pub fn energy(&self, s: &SpinConfiguration) -> Result<i64> {
        if s.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: s.len(),
            });
        }
        let spins = s.spins();
        let mut e = 0i64;
        for (&i, &h) in &self.fields {
            e -= h * spins[i].value();
        }
        for (&(i, j), &w) in &self.couplings {
            e -= w * spins[i].value() * spins[j].value();
        }
        Ok(e)
    }

    /// Per-spin neighbour lists `(j, J_ij)`, used by the enumerators.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, Weight)>> {
        let mut adj = alloc::vec![Vec::new(); self.n];
        for (&(i, j), &w) in &self.couplings {
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        adj
    }
}
