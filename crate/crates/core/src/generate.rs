//! Seeded random instances.
//!
//! The generator is pinned so that other implementations can reproduce the
//! same instances bit for bit:
//!
//! * Pseudorandom stream: SplitMix64. The state starts at `seed`; each draw
//!   adds `0x9E3779B97F4A7C15` (wrapping) and returns
//!   `z ^ (z >> 31)` after `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9` and
//!   `z = (z ^ (z >> 27)) * 0x94D049BB133111EB` (wrapping products).
//! * Uniform real in `[0, 1)`: `(draw >> 11) * 2^-53`.
//! * Graph: for `i` in `0..n`, for `j` in `0..n`, skipping `j == i`: draw
//!   `u`; if `u < edge_probability`, draw `v` and set
//!   `w_ij = lo + (hi - lo) * v`. No self-loops are generated.
//! * Initial opinions, drawn from the same stream after the graph:
//!   `x_i = 2 u - 1` for `i` in `0..n`.
//! * [`uniform_opinions`] uses a fresh stream seeded with its own seed and
//!   the same `2 u - 1` map.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::SquareMatrix;
use crate::network::InfluenceGraph;
use crate::opinion::Opinion;

/// The SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` with 53 bits of resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform opinion on `[-1, 1)`.
    pub fn next_opinion(&mut self) -> Opinion {
        Opinion::new(2.0 * self.next_f64() - 1.0).expect("2u - 1 lies in [-1, 1)")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("n must be positive")]
    EmptyGraph,
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("weight range [{0}, {1}] must satisfy 0 < lo <= hi < inf")]
    WeightRange(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub n: usize,
    pub edge_probability: f64,
    pub weight_range: [f64; 2],
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<(), GeneratorError> {
        if self.n == 0 {
            return Err(GeneratorError::EmptyGraph);
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(GeneratorError::Probability(self.edge_probability));
        }
        let [lo, hi] = self.weight_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(GeneratorError::WeightRange(lo, hi));
        }
        Ok(())
    }
}

/// Draws a random graph and initial opinions; see the module docs for the
/// exact procedure.
pub fn generate_instance(
    spec: &GeneratorSpec,
) -> Result<(InfluenceGraph, Vec<Opinion>), GeneratorError> {
    spec.validate()?;
    let n = spec.n;
    let [lo, hi] = spec.weight_range;
    let mut rng = SplitMix64::new(spec.seed);
    let mut w = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if rng.next_f64() < spec.edge_probability {
                w.set(i, j, lo + (hi - lo) * rng.next_f64());
            }
        }
    }
    let x0 = (0..n).map(|_| rng.next_opinion()).collect();
    let graph = InfluenceGraph::new(w).expect("generated weights are positive and finite");
    Ok((graph, x0))
}

/// `n` opinions from a fresh stream.
pub fn uniform_opinions(n: usize, seed: u64) -> Vec<Opinion> {
    let mut rng = SplitMix64::new(seed);
    (0..n).map(|_| rng.next_opinion()).collect()
}
