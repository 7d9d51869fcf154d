use alloc::collections::BTreeMap;

use super::{IsingHamiltonian, Weight};
use crate::error::{Error, Result};

/// Scale applied to a QUBO when it is rewritten over spins: `4·Q(x) = H(s) + offset`.
pub const QUBO_SCALE: i64 = 4;

/// Quadratic unconstrained binary optimisation `Q(x) = Σ_{i≤j} q_ij x_i x_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuboInstance {
    n: usize,
    terms: BTreeMap<(usize, usize), Weight>,
}

impl QuboInstance {
    pub fn new(n: usize) -> Self {
        QuboInstance {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Adds `v` to `q_ij`; `i == j` is a linear term.
    pub fn add(&mut self, i: usize, j: usize, v: Weight) -> Result<()> {
        for k in [i, j] {
            if k >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    len: self.n,
                });
            }
        }
        let key = (i.min(j), i.max(j));
        let new = self
            .terms
            .get(&key)
            .copied()
            .unwrap_or(0)
            .checked_add(v)
            .ok_or(Error::WeightOverflow)?;
        if new == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, new);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Weight {
        self.terms
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Weight)> + '_ {
        self.terms.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn value(&self, x: &[bool]) -> Result<i64> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut total = 0i64;
        for (&(i, j), &q) in &self.terms {
            if x[i] && x[j] {
                total = total.checked_add(q).ok_or(Error::WeightOverflow)?;
            }
        }
        Ok(total)
    }

    /// Rewrites the QUBO over spins `s = 2x - 1`.
    ///
    /// Returns `(H, offset)` with `4·Q(x) = H(s) + offset` for every `x`.
    pub fn to_ising(&self) -> Result<(IsingHamiltonian, i64)> {
        let mut h = IsingHamiltonian::new(self.n);
        let mut offset = 0i64;
        let mul = |a: i64, b: i64| a.checked_mul(b).ok_or(Error::WeightOverflow);
        for (&(i, j), &q) in &self.terms {
            if i == j {
                // 4·q·x = 2q·s + 2q
                h.add_field(i, -mul(2, q)?)?;
                offset = offset.checked_add(mul(2, q)?).ok_or(Error::WeightOverflow)?;
            } else {
                // 4·q·x_i·x_j = q·(s_i s_j + s_i + s_j + 1)
                h.add_coupling(i, j, -q)?;
                h.add_field(i, -q)?;
                h.add_field(j, -q)?;
                offset = offset.checked_add(q).ok_or(Error::WeightOverflow)?;
            }
        }
        Ok((h, offset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SpinConfiguration;

    fn assignments(n: usize) -> impl Iterator<Item = alloc::vec::Vec<bool>> {
        (0u64..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
    }

    fn spins_of(x: &[bool]) -> SpinConfiguration {
        let v: alloc::vec::Vec<i64> = x.iter().map(|&b| if b { 1 } else { -1 }).collect();
        SpinConfiguration::from_values(&v).unwrap()
    }

    fn assert_equivalent(q: &QuboInstance) {
        let (h, off) = q.to_ising().unwrap();
        for x in assignments(q.num_vars()) {
            assert_eq!(
                QUBO_SCALE * q.value(&x).unwrap(),
                h.energy(&spins_of(&x)).unwrap() + off
            );
        }
    }

    #[test]
    fn linear_term() {
        let mut q = QuboInstance::new(1);
        q.add(0, 0, 1).unwrap();
        assert_equivalent(&q);
        // solving 4x = -h s + c over x ∈ {0, 1}: h = -2, c = 2
        let (h, off) = q.to_ising().unwrap();
        assert_eq!(h.field(0), -2);
        assert_eq!(off, 2);
    }

    #[test]
    fn empty_qubo() {
        let (h, off) = QuboInstance::new(3).to_ising().unwrap();
        assert!(h.is_zero());
        assert_eq!(off, 0);
    }

    #[test]
    fn quadratic_term() {
        let mut q = QuboInstance::new(2);
        q.add(0, 1, 4).unwrap();
        assert_equivalent(&q);
        let (h, off) = q.to_ising().unwrap();
        assert_eq!((h.coupling(0, 1), h.field(0), h.field(1), off), (-4, -4, -4, 4));
    }

    #[test]
    fn mixed_terms_match_by_enumeration() {
        let mut q = QuboInstance::new(4);
        q.add(0, 0, -3).unwrap();
        q.add(1, 0, 5).unwrap();
        q.add(2, 3, -7).unwrap();
        q.add(3, 3, 2).unwrap();
        q.add(1, 2, 1).unwrap();
        assert_equivalent(&q);
    }

    #[test]
    fn out_of_range() {
        let mut q = QuboInstance::new(2);
        assert!(q.add(0, 2, 1).is_err());
    }
}
