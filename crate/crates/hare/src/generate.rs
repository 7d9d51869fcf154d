//! Seeded random instances: Erdős–Rényi and Barabási–Albert topologies with
//! integer weights drawn uniformly from `[−W, W] ∖ {0}`.
//!
//! The stream is ChaCha8 seeded through `seed_from_u64`, so a seed names the
//! same instance on every platform.

use hare_core::model::IsingHamiltonian;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::HareError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Topology {
    /// Every pair present independently with probability `d / (n − 1)`.
    Er,
    /// Preferential attachment with `⌈d/2⌉` edges per new node.
    Sf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub topology: Topology,
    pub n: usize,
    pub avg_degree: usize,
    pub weight_bound: i64,
    pub seed: u64,
    /// Also draw a field for every spin.
    pub with_fields: bool,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<(), HareError> {
        if self.n < 2 {
            return Err(HareError::Spec(format!("need at least 2 nodes, got {}", self.n)));
        }
        if self.avg_degree == 0 || self.avg_degree >= self.n {
            return Err(HareError::Spec(format!(
                "average degree must lie in 1..{}, got {}",
                self.n, self.avg_degree
            )));
        }
        if self.weight_bound < 1 {
            return Err(HareError::Spec(format!(
                "weight bound must be positive, got {}",
                self.weight_bound
            )));
        }
        Ok(())
    }
}

fn draw_weight(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let k = rng.random_range(1..=2 * bound);
    if k <= bound {
        k - bound - 1
    } else {
        k - bound
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<IsingHamiltonian, HareError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = match spec.topology {
        Topology::Er => erdos_renyi(&mut rng, spec.n, spec.avg_degree),
        Topology::Sf => barabasi_albert(&mut rng, spec.n, spec.avg_degree.div_ceil(2)),
    };
    let mut h = IsingHamiltonian::new(spec.n);
    for (u, v) in edges {
        let w = draw_weight(&mut rng, spec.weight_bound);
        h.add_coupling(u, v, w)?;
    }
    if spec.with_fields {
        for i in 0..spec.n {
            let w = draw_weight(&mut rng, spec.weight_bound);
            h.add_field(i, w)?;
        }
    }
    Ok(h)
}

/// `G(n, p)` by geometric skips over the pairs `(i, j)`, `i < j`, in row order.
fn erdos_renyi(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<(usize, usize)> {
    let p = d as f64 / (n - 1) as f64;
    let skips = Geometric::new(p).expect("0 < p <= 1");
    let mut edges = Vec::with_capacity(n * d / 2);
    let mut skip = skips.sample(rng);
    for i in 0..n {
        let mut j = i + 1;
        loop {
            let left = (n - j) as u64;
            if skip >= left {
                skip -= left;
                break;
            }
            j += skip as usize;
            edges.push((i, j));
            j += 1;
            skip = skips.sample(rng);
        }
    }
    edges
}

/// Clique on `m + 1` seed nodes, then each new node links to `m` distinct
/// existing nodes chosen with probability proportional to degree.
fn barabasi_albert(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<(usize, usize)> {
    let m = m.min(n - 1);
    let mut edges = Vec::new();
    // every edge endpoint once: sampling an entry is sampling by degree
    let mut ends: Vec<usize> = Vec::new();
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for t in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let x = ends[rng.random_range(0..ends.len())];
            if !targets.contains(&x) {
                targets.push(x);
            }
        }
        for &x in &targets {
            edges.push((x, t));
            ends.extend([x, t]);
        }
    }
    edges
}

/// Small dense-or-sparse instance for exhaustive checking: `n` spins drawn
/// from `spins`, one density per instance from `{0.2, 0.4, 0.7, 1.0}`, fields
/// and couplings uniform in `[−bound, bound] ∖ {0}`.
pub fn small_random(
    seed: u64,
    spins: std::ops::RangeInclusive<usize>,
    bound: i64,
) -> IsingHamiltonian {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(spins);
    let density = [0.2, 0.4, 0.7, 1.0][rng.random_range(0..4)];
    let mut h = IsingHamiltonian::new(n);
    for i in 0..n {
        if rng.random_bool(density) {
            let w = draw_weight(&mut rng, bound);
            h.add_field(i, w).expect("small weights");
        }
        for j in i + 1..n {
            if rng.random_bool(density) {
                let w = draw_weight(&mut rng, bound);
                h.add_coupling(i, j, w).expect("small weights");
            }
        }
    }
    h
}
