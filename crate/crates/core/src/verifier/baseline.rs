//! Equal-weight witness for the bounded-confidence baseline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::grid::GridSpec;
use crate::bias::{BiasError, BiasFamily};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HkWitnessError {
    #[error(transparent)]
    Params(#[from] BiasError),
    #[error(
        "no equal-weight witness on the grid: the confidence band is narrower than one grid step"
    )]
    NoWitness,
}

/// Opinions `x_j` and `x_h` at equal distance from `x_i`, with `x_h` on the
/// same side as `x_i`, that receive the same bounded-confidence weight even
/// though confirmation bias calls for more weight on `x_h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HkWitness {
    /// Both differences fall inside the band; both weights equal `weight`.
    InBand {
        x_i: f64,
        x_j: f64,
        x_h: f64,
        weight: f64,
    },
    /// The canonical triple falls outside the band on both sides; both
    /// weights are 0.
    OutOfBand { x_i: f64, x_j: f64, x_h: f64 },
}

impl HkWitness {
    pub fn triple(&self) -> (f64, f64, f64) {
        match *self {
            HkWitness::InBand { x_i, x_j, x_h, .. } | HkWitness::OutOfBand { x_i, x_j, x_h } => {
                (x_i, x_j, x_h)
            }
        }
    }

    pub fn weight(&self) -> f64 {
        match *self {
            HkWitness::InBand { weight, .. } => weight,
            HkWitness::OutOfBand { .. } => 0.0,
        }
    }
}

pub const CANONICAL: (f64, f64, f64) = (0.1, -0.3, 0.5);

/// Finds a triple on which the bounded-confidence weight with band
/// `[eps_lo, eps_hi)` and level `a` cannot tell the two opinions apart.
///
/// The canonical triple `x_i = 0.1`, `x_j = -0.3`, `x_h = 0.5` is tried
/// first; it is in band whenever `0.4 < min(eps_hi, -eps_lo)`. If the band
/// splits the canonical pair, the 41-point grid is searched in lexicographic
/// order for an in-band equal-distance pair.
pub fn hk_equal_weight_witness(
    eps_lo: f64,
    eps_hi: f64,
    a: f64,
) -> Result<HkWitness, HkWitnessError> {
    let fam = BiasFamily::hk_indicator(eps_lo, eps_hi, a)?;
    let (x_i, x_j, x_h) = CANONICAL;
    let (wj, wh) = (fam.value(x_i, x_j), fam.value(x_i, x_h));
    if wj == wh {
        return Ok(if wj > 0.0 {
            HkWitness::InBand {
                x_i,
                x_j,
                x_h,
                weight: wj,
            }
        } else {
            HkWitness::OutOfBand { x_i, x_j, x_h }
        });
    }
    let grid = GridSpec::new(41).expect("valid resolution");
    let n = grid.resolution();
    for i in 0..n {
        let sign = grid.sign(i);
        if sign == 0 {
            continue;
        }
        for s in 1..=i.min(n - 1 - i) {
            // x_h on the same side of x_i, x_j on the other
            let (h, j) = if sign > 0 {
                (i + s, i - s)
            } else {
                (i - s, i + s)
            };
            let (xi, xj, xh) = (grid.value(i), grid.value(j), grid.value(h));
            let (wj, wh) = (fam.value(xi, xj), fam.value(xi, xh));
            if wj == wh && wj > 0.0 {
                return Ok(HkWitness::InBand {
                    x_i: xi,
                    x_j: xj,
                    x_h: xh,
                    weight: wj,
                });
            }
        }
    }
    Err(HkWitnessError::NoWitness)
}
