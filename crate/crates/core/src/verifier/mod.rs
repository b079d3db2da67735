//! Grid checkers for the asymmetric bias conditions.
//!
//! Every quantified condition is checked by exhaustive enumeration of grid
//! tuples. Items that fail come back with concrete witnesses that can be
//! re-evaluated by hand.
//!
//! | item | hypothesis | requirement |
//! |------|------------|-------------|
//! | `7a-1` | `|x_j - x_i| < |x_d - x_i|`, `x_j x_d > 0` | `c(x_i,x_j) > c(x_i,x_d)` |
//! | `7a-2` | `|x_j - x_i| = |x_d - x_i|`, `x_i x_j > x_i x_d` | `c(x_i,x_j) > c(x_i,x_d)` |
//! | `7a-3-existence` | `x_i x_d > 0`, `x_i x_j < 0`, `|x_j - x_i| < |x_d - x_i|` | some tuple on each side has `c(x_i,x_j) > c(x_i,x_d)` |
//! | `7b` | `a` on the grid | `c(0,a) = c(0,-a)` |
//! | `8a-1` | `|x_j - x̄| > |x_d - x̄|`, `x_j x_d > 0` | `c̄(x̄,x_j) > c̄(x̄,x_d)` |
//! | `8a-2` | `|x_j - x̄| = |x_d - x̄|`, `x̄ x_j < x̄ x_d` | `c̄(x̄,x_j) > c̄(x̄,x_d)` |
//! | `8a-3-existence` | `x̄ x_j > 0`, `x̄ x_d < 0`, `|x_d - x̄| < |x_j - x̄|` | some tuple on each side has `c̄(x̄,x_j) > c̄(x̄,x_d)` |
//! | `8b` | `a` on the grid | `c̄(0,a) = c̄(0,-a)` |
//!
//! Sign hypotheses skip points whose sign is zero (or inside the grid's
//! exclusion band).

mod baseline;
mod conditions;
mod grid;
mod report;
mod theorem;

use serde::{Deserialize, Serialize};

pub use baseline::{hk_equal_weight_witness, HkWitness, HkWitnessError};
pub use conditions::{check_confirmation, check_negativity};
pub use grid::{GridError, GridSpec};
pub use report::{ConditionReport, ItemResult, Status, Witness};
pub use theorem::{check_theorem1, check_theorem2};

/// Numerical slack used by the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Two distances within this much of each other count as equal; a
    /// distance must be shorter by more than this to count as closer.
    pub distance: f64,
    /// Margin a strict inequality must clear. `0` reads `>` literally.
    pub strict: f64,
    /// Slack for equality items (`7b`, `8b`, `11e`, `12e`) and for merging
    /// nearly identical distances in the monotonicity items.
    pub equality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            distance: 0.0,
            strict: 0.0,
            equality: 1e-12,
        }
    }
}

/// Direction of the midpoint inequalities in the theorem conditions.
///
/// `AsWritten` demands `f(x_i) < (f(x_j) + f(x_d)) / 2` for `x_i > 0`,
/// `x_j > x_d` (and the mirror for `x_i < 0`); this is what a convex-on-the-
/// positive-side map such as `x^3` satisfies. `Corrected` reverses both
/// inequalities, which is what a concave-on-the-positive-side map such as
/// `tanh` satisfies and what the equal-distance confirmation item needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    AsWritten,
    #[default]
    Corrected,
}

impl std::str::FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "as-written" => Ok(Orientation::AsWritten),
            "corrected" => Ok(Orientation::Corrected),
            other => Err(format!("unknown orientation {other:?}")),
        }
    }
}
