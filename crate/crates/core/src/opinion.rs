//! The scalar opinion type.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An opinion on the spectrum `[-1, 1]`.
///
/// Negative values support position `-1`, positive values support position
/// `+1` and `0` is neutral. The same type is used for subconscious biases and
/// sensed expectations.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Opinion(f64);

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("opinion {0} is not a finite value in [-1, 1]")]
pub struct OpinionError(pub f64);

impl Opinion {
    pub const ZERO: Opinion = Opinion(0.0);
    pub const MIN: Opinion = Opinion(-1.0);
    pub const MAX: Opinion = Opinion(1.0);

    pub fn new(value: f64) -> Result<Self, OpinionError> {
        if value.is_finite() && (-1.0..=1.0).contains(&value) {
            Ok(Opinion(value))
        } else {
            Err(OpinionError(value))
        }
    }

    #[inline]
    pub const fn get(self) -> f64 {
        self.0
    }

    /// Builds a vector of opinions, failing on the first out-of-range entry.
    pub fn vec(values: &[f64]) -> Result<Vec<Opinion>, OpinionError> {
        values.iter().map(|&v| Opinion::new(v)).collect()
    }

    /// Strips a slice of opinions back to raw values.
    pub fn values(opinions: &[Opinion]) -> Vec<f64> {
        opinions.iter().map(|o| o.0).collect()
    }
}

impl TryFrom<f64> for Opinion {
    type Error = OpinionError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Opinion::new(value)
    }
}

impl From<Opinion> for f64 {
    fn from(o: Opinion) -> f64 {
        o.0
    }
}

impl fmt::Display for Opinion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
