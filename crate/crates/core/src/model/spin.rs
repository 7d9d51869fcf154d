use alloc::vec::Vec;
use core::ops::{Index, Neg};

use crate::error::{Error, Result};

/// A single Ising spin.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub fn value(self) -> i64 {
        match self {
            Spin::Down => -1,
            Spin::Up => 1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Spin::Up),
            -1 => Ok(Spin::Down),
            other => Err(Error::InvalidSpin(other)),
        }
    }

    /// `Up` for parity 0, `Down` for parity 1.
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Spin::Down
        } else {
            Spin::Up
        }
    }

    pub fn is_up(self) -> bool {
        self == Spin::Up
    }
}

impl Neg for Spin {
    type Output = Spin;

    fn neg(self) -> Spin {
        match self {
            Spin::Down => Spin::Up,
            Spin::Up => Spin::Down,
        }
    }
}

/// A vector of ±1 values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinConfiguration(Vec<Spin>);

impl SpinConfiguration {
    pub fn new(spins: Vec<Spin>) -> Self {
        SpinConfiguration(spins)
    }

    pub fn all_up(n: usize) -> Self {
        SpinConfiguration(alloc::vec![Spin::Up; n])
    }

    pub fn from_values(values: &[i64]) -> Result<Self> {
        values
            .iter()
            .map(|&v| Spin::from_value(v))
            .collect::<Result<Vec<_>>>()
            .map(SpinConfiguration)
    }

    /// Bit `i` of `mask` set means spin `i` is down.
    pub fn from_down_mask(n: usize, mask: u64) -> Self {
        SpinConfiguration((0..n).map(|i| Spin::from_parity(mask >> i & 1 == 1)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn spins(&self) -> &[Spin] {
        &self.0
    }

    pub fn values(&self) -> Vec<i64> {
        self.0.iter().map(|s| s.value()).collect()
    }

    pub fn negated(&self) -> Self {
        SpinConfiguration(self.0.iter().map(|&s| -s).collect())
    }
}

impl Index<usize> for SpinConfiguration {
    type Output = Spin;

    fn index(&self, i: usize) -> &Spin {
        &self.0[i]
    }
}

impl From<Vec<Spin>> for SpinConfiguration {
    fn from(v: Vec<Spin>) -> Self {
        SpinConfiguration(v)
    }
}
