use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid resolution must be odd and at least 3, got {0}")]
    Resolution(usize),
    #[error("exclusion band must be finite and nonnegative, got {0}")]
    Band(f64),
}

/// Evenly spaced sample points on `[-1, 1]`, endpoints included.
///
/// Point `k` is `(2k - m) / m` with `m = resolution - 1`, so every point is a
/// correctly rounded quotient of small integers, `0` is a grid point and the
/// grid is closed under exact negation. Distances between points are compared
/// in whole steps, which keeps equal-distance hypotheses exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    resolution: usize,
    exclusion_band: f64,
    max_witnesses: usize,
}

impl GridSpec {
    pub const DEFAULT_MAX_WITNESSES: usize = 1000;

    pub fn new(resolution: usize) -> Result<Self, GridError> {
        if resolution < 3 || resolution % 2 == 0 {
            return Err(GridError::Resolution(resolution));
        }
        Ok(GridSpec {
            resolution,
            exclusion_band: 0.0,
            max_witnesses: Self::DEFAULT_MAX_WITNESSES,
        })
    }

    /// Points with `|x| <= band` count as neither sign.
    pub fn with_exclusion_band(mut self, band: f64) -> Result<Self, GridError> {
        if !(band.is_finite() && band >= 0.0) {
            return Err(GridError::Band(band));
        }
        self.exclusion_band = band;
        Ok(self)
    }

    pub fn with_max_witnesses(mut self, cap: usize) -> Self {
        self.max_witnesses = cap;
        self
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn exclusion_band(&self) -> f64 {
        self.exclusion_band
    }

    pub fn max_witnesses(&self) -> usize {
        self.max_witnesses
    }

    /// Number of intervals, `resolution - 1`.
    #[inline]
    pub(crate) fn intervals(&self) -> usize {
        self.resolution - 1
    }

    #[inline]
    pub(crate) fn center(&self) -> usize {
        self.intervals() / 2
    }

    #[inline]
    pub fn step(&self) -> f64 {
        2.0 / self.intervals() as f64
    }

    #[inline]
    pub fn value(&self, k: usize) -> f64 {
        let m = self.intervals() as f64;
        (2.0 * k as f64 - m) / m
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.resolution).map(|k| self.value(k)).collect()
    }

    /// `1`, `-1` or `0` (inside the exclusion band or exactly zero).
    #[inline]
    pub(crate) fn sign(&self, k: usize) -> i32 {
        let v = self.value(k);
        if v > self.exclusion_band {
            1
        } else if v < -self.exclusion_band {
            -1
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_must_be_odd_and_at_least_three() {
        for r in [0, 1, 2, 4, 40] {
            assert_eq!(GridSpec::new(r), Err(GridError::Resolution(r)));
        }
        assert!(GridSpec::new(3).is_ok());
        assert!(GridSpec::new(41).is_ok());
    }

    #[test]
    fn points_are_exact_and_symmetric() {
        let g = GridSpec::new(41).unwrap();
        let p = g.points();
        assert_eq!(p[0], -1.0);
        assert_eq!(p[20], 0.0);
        assert_eq!(p[40], 1.0);
        assert_eq!(p[22], 0.1);
        assert_eq!(p[30], 0.5);
        assert_eq!(p[14], -0.3);
        for k in 0..41 {
            assert_eq!(p[k], -p[40 - k]);
        }
    }

    #[test]
    fn band_excludes_signs() {
        let g = GridSpec::new(41).unwrap().with_exclusion_band(0.1).unwrap();
        assert_eq!(g.sign(20), 0);
        assert_eq!(g.sign(22), 0);
        assert_eq!(g.sign(23), 1);
        assert_eq!(g.sign(17), -1);
        assert!(GridSpec::new(5).unwrap().with_exclusion_band(-1.0).is_err());
    }
}
