//! Influence digraph and sensed expectations.
//!
//! Entry `w[i][j]` is the weight individual `i` places on individual `j` when
//! forming her expectation of what her neighbors think. Self-loops are
//! allowed. The graph only feeds the expectation; the bias weights of the
//! update rule are defined over every ordered pair of individuals.

use std::collections::HashSet;

use thiserror::Error;

use crate::matrix::SquareMatrix;
use crate::opinion::Opinion;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one individual")]
    Empty,
    #[error("weight matrix is not square")]
    NotSquare,
    #[error("weight w[{i}][{j}] = {w} must be finite and nonnegative")]
    BadWeight { i: usize, j: usize, w: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct EdgeListError {
    /// 1-based line number in the input.
    pub line: usize,
    pub kind: EdgeListErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EdgeListErrorKind {
    #[error("expected `i j w`, found {0:?}")]
    Malformed(String),
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("weight {0} must be finite and nonnegative")]
    BadWeight(f64),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("n must be positive")]
    EmptyGraph,
}

/// `n` individuals and the nonnegative expectation weights between them.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceGraph {
    weights: SquareMatrix,
}

impl InfluenceGraph {
    pub fn new(weights: SquareMatrix) -> Result<Self, GraphError> {
        let n = weights.n();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights.get(i, j);
                if !(w.is_finite() && w >= 0.0) {
                    return Err(GraphError::BadWeight { i, j, w });
                }
            }
        }
        Ok(InfluenceGraph { weights })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, GraphError> {
        if rows.is_empty() {
            return Err(GraphError::Empty);
        }
        let m = SquareMatrix::from_rows(rows).ok_or(GraphError::NotSquare)?;
        Self::new(m)
    }

    /// A graph with no edges at all.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(SquareMatrix::zeros(n))
    }

    /// Every ordered pair `(i, j)`, `i != j`, with weight 1.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.set(i, j, 1.0);
                }
            }
        }
        Self::new(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.weights.n()
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights.get(i, j)
    }

    pub fn weights(&self) -> &SquareMatrix {
        &self.weights
    }

    /// Weighted mean of the opinions `i` listens to.
    ///
    /// An individual with an all-zero row has no neighbors to sense, so her
    /// expectation is her own opinion.
    ///
    /// # Panics
    ///
    /// If `x.len() != self.n()` or `i >= self.n()`.
    pub fn sensed_expectation(&self, x: &[Opinion], i: usize) -> Opinion {
        assert_eq!(x.len(), self.n(), "opinion vector length must equal n");
        let row = self.weights.row(i);
        let mut total = 0.0;
        let mut acc = 0.0;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (&w, o) in row.iter().zip(x) {
            if w > 0.0 {
                total += w;
                acc += w * o.get();
                lo = lo.min(o.get());
                hi = hi.max(o.get());
            }
        }
        if total == 0.0 {
            return x[i];
        }
        // A weighted mean cannot leave the hull of its inputs; clamping only
        // absorbs rounding.
        Opinion::new((acc / total).clamp(lo, hi)).expect("mean of opinions is an opinion")
    }
}

/// Parses a whitespace-separated `i j w` edge list with 0-based indices.
///
/// Blank lines and lines whose first non-blank character is `#` are ignored.
/// Unlisted entries are zero. Both LF and CRLF line endings are accepted.
pub fn parse_edge_list(text: &str, n: usize) -> Result<InfluenceGraph, EdgeListError> {
    if n == 0 {
        return Err(EdgeListError {
            line: 0,
            kind: EdgeListErrorKind::EmptyGraph,
        });
    }
    let mut weights = SquareMatrix::zeros(n);
    let mut seen = HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let err = |kind| EdgeListError {
            line: line_no,
            kind,
        };
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [si, sj, sw] = fields[..] else {
            return Err(err(EdgeListErrorKind::Malformed(line.to_string())));
        };
        let malformed = || err(EdgeListErrorKind::Malformed(line.to_string()));
        let i: usize = si.parse().map_err(|_| malformed())?;
        let j: usize = sj.parse().map_err(|_| malformed())?;
        let w: f64 = sw.parse().map_err(|_| malformed())?;
        for index in [i, j] {
            if index >= n {
                return Err(err(EdgeListErrorKind::IndexOutOfRange { index, n }));
            }
        }
        if !(w.is_finite() && w >= 0.0) {
            return Err(err(EdgeListErrorKind::BadWeight(w)));
        }
        if !seen.insert((i, j)) {
            return Err(err(EdgeListErrorKind::DuplicateEdge(i, j)));
        }
        weights.set(i, j, w);
    }
    Ok(InfluenceGraph { weights })
}
