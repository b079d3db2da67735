//! The opinion update
//!
//! ```text
//! x_i(k+1) = alpha_i(k) s_i + sum_j c_ij(x(k)) x_j(k)
//! c_ij     = (1 - beta_i) c̄(x̄_i, x_j) + beta_i c(x_i, x_j)
//! ```
//!
//! where `x̄_i` is the sensed expectation from the influence graph and the
//! sum runs over every individual, `i` included.
//!
//! The resistance `alpha_i` is fixed by a normalization rule. Only the
//! weight-sum rule `alpha_i + sum_j c_ij = 1` makes the update a convex
//! combination, so that opinions stay in `[-1, 1]`. Raw bias weights sit near
//! `chi ~ 0.6` per pair, which makes that rule infeasible as soon as an
//! individual hears two people; [`Normalization::Rescale`] therefore scales
//! each row to `1 - alpha_target`, keeping the ordering of the weights.
//! [`Normalization::Literal`] keeps the constraint `alpha_i + sum_j c_ij x_j = 1`
//! exactly as printed, under which the update collapses to
//! `alpha_i s_i + 1 - alpha_i`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bias::{mix, BiasFamily};
use crate::matrix::SquareMatrix;
use crate::network::InfluenceGraph;
use crate::opinion::Opinion;

/// Rounding slack tolerated before a convex combination is declared to have
/// left `[-1, 1]`.
const BOUNDARY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("{what} has length {found}, expected {expected}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("beta[{index}] = {value} is outside [0, 1]")]
    MixingWeight { index: usize, value: f64 },
    #[error("alpha target {0} is outside [0, 1)")]
    AlphaTarget(f64),
    #[error("{which} family takes the negative value {min} on [-1, 1]^2")]
    NegativeFamily { which: &'static str, min: f64 },
    #[error("step {step}: row {row} weights sum to {sum} > 1, strict normalization is infeasible")]
    Infeasible { step: usize, row: usize, sum: f64 },
    #[error("step {step}: opinion of individual {individual} left [-1, 1] ({value})")]
    OpinionEscape {
        step: usize,
        individual: usize,
        value: f64,
    },
}

impl DynamicsError {
    /// Whether the error comes from the model rather than its configuration.
    pub fn is_infeasibility(&self) -> bool {
        matches!(
            self,
            DynamicsError::Infeasible { .. } | DynamicsError::OpinionEscape { .. }
        )
    }
}

/// How the resistance parameter `alpha_i` is fixed each step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Normalization {
    /// Use raw weights, `alpha_i = 1 - sum_j c_ij`; fails when the sum exceeds 1.
    Strict,
    /// Scale a nonzero row to sum to `1 - alpha_target`, and set `alpha_i = alpha_target`.
    /// A zero row keeps `alpha_i = 1`.
    Rescale { alpha_target: f64 },
    /// Raw weights with `alpha_i = 1 - sum_j c_ij x_j`. Diagnostic only: no
    /// boundedness guarantee.
    Literal,
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization::Rescale { alpha_target: 0.2 }
    }
}

/// Per-individual parameters of the update rule.
#[derive(Debug, Clone)]
pub struct ModelConfig {
    s: Vec<Opinion>,
    beta: Vec<f64>,
    conf: BiasFamily,
    neg: BiasFamily,
    normalization: Normalization,
    include_self: bool,
}

impl ModelConfig {
    pub fn new(
        s: Vec<Opinion>,
        beta: Vec<f64>,
        conf: BiasFamily,
        neg: BiasFamily,
        normalization: Normalization,
    ) -> Result<Self, DynamicsError> {
        if beta.len() != s.len() {
            return Err(DynamicsError::Dimension {
                what: "beta",
                expected: s.len(),
                found: beta.len(),
            });
        }
        if let Some((index, &value)) = beta
            .iter()
            .enumerate()
            .find(|(_, b)| !(0.0..=1.0).contains(*b))
        {
            return Err(DynamicsError::MixingWeight { index, value });
        }
        if let Normalization::Rescale { alpha_target } = normalization {
            if !(0.0..1.0).contains(&alpha_target) {
                return Err(DynamicsError::AlphaTarget(alpha_target));
            }
        }
        for (which, fam) in [("confirmation", &conf), ("negativity", &neg)] {
            if fam.min_on_domain() < 0.0 {
                return Err(DynamicsError::NegativeFamily {
                    which,
                    min: fam.min_on_domain(),
                });
            }
        }
        Ok(ModelConfig {
            s,
            beta,
            conf,
            neg,
            normalization,
            include_self: true,
        })
    }

    /// Drops the `j = i` term from the update sum when `false`.
    pub fn with_self_weight(mut self, include: bool) -> Self {
        self.include_self = include;
        self
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[Opinion] {
        &self.s
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn conf(&self) -> &BiasFamily {
        &self.conf
    }

    pub fn neg(&self) -> &BiasFamily {
        &self.neg
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn include_self(&self) -> bool {
        self.include_self
    }

    fn check_dims(&self, g: &InfluenceGraph, x: &[Opinion]) -> Result<(), DynamicsError> {
        if g.n() != self.n() {
            return Err(DynamicsError::Dimension {
                what: "graph",
                expected: self.n(),
                found: g.n(),
            });
        }
        if x.len() != self.n() {
            return Err(DynamicsError::Dimension {
                what: "opinion vector",
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationState {
    pub x: Vec<Opinion>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// `x(0) ... x(K)`.
    pub states: Vec<SimulationState>,
    /// `alphas[k]` is the resistance vector used to go from `x(k)` to `x(k+1)`.
    pub alphas: Vec<Vec<f64>>,
    /// `weights[k]` is the (normalized) weight matrix used at step `k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<SquareMatrix>>,
    /// First `k` with `max_i |x_i(k+1) - x_i(k)| <= conv_tol`.
    pub converged_at: Option<usize>,
}

impl Trajectory {
    pub fn last(&self) -> &SimulationState {
        self.states
            .last()
            .expect("a trajectory holds at least x(0)")
    }
}

/// Raw weights `c_ij(x)` for every ordered pair.
pub fn compute_weight_matrix(
    cfg: &ModelConfig,
    g: &InfluenceGraph,
    x: &[Opinion],
) -> Result<SquareMatrix, DynamicsError> {
    cfg.check_dims(g, x)?;
    let n = cfg.n();
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        let beta = cfg.beta[i];
        // the expectation is only observable when the negativity term is used
        let xbar = if beta < 1.0 {
            g.sensed_expectation(x, i).get()
        } else {
            x[i].get()
        };
        let xi = x[i].get();
        let row = m.row_mut(i);
        for (j, w) in row.iter_mut().enumerate() {
            if j == i && !cfg.include_self {
                continue;
            }
            *w = mix(beta, &cfg.conf, &cfg.neg, xi, xbar, x[j].get());
        }
    }
    Ok(m)
}

/// One normalized row of the update.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedRow {
    /// `None` in literal mode, where `alpha_i` depends on the opinions.
    pub alpha: Option<f64>,
    pub weights: Vec<f64>,
}

/// Applies a normalization rule to row `index` of the raw weight matrix at
/// step `step`.
pub fn normalize_row(
    step: usize,
    index: usize,
    row: &[f64],
    mode: Normalization,
) -> Result<NormalizedRow, DynamicsError> {
    let sum: f64 = row.iter().sum();
    match mode {
        Normalization::Strict => {
            let alpha = 1.0 - sum;
            if alpha < 0.0 {
                return Err(DynamicsError::Infeasible {
                    step,
                    row: index,
                    sum,
                });
            }
            Ok(NormalizedRow {
                alpha: Some(alpha),
                weights: row.to_vec(),
            })
        }
        Normalization::Rescale { alpha_target } => {
            if sum > 0.0 {
                let scale = (1.0 - alpha_target) / sum;
                Ok(NormalizedRow {
                    alpha: Some(alpha_target),
                    weights: row.iter().map(|w| w * scale).collect(),
                })
            } else {
                Ok(NormalizedRow {
                    alpha: Some(1.0),
                    weights: row.to_vec(),
                })
            }
        }
        Normalization::Literal => Ok(NormalizedRow {
            alpha: None,
            weights: row.to_vec(),
        }),
    }
}

/// Everything produced by a single update.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub next: SimulationState,
    pub alphas: Vec<f64>,
    pub weights: SquareMatrix,
}

/// Advances the state by one step, returning the new state along with the
/// resistances and normalized weights that produced it.
pub fn step_detailed(
    cfg: &ModelConfig,
    g: &InfluenceGraph,
    st: &SimulationState,
) -> Result<StepRecord, DynamicsError> {
    let raw = compute_weight_matrix(cfg, g, &st.x)?;
    let n = cfg.n();
    let mut weights = SquareMatrix::zeros(n);
    let mut alphas = Vec::with_capacity(n);
    let mut next = Vec::with_capacity(n);
    for i in 0..n {
        let row = normalize_row(st.k, i, raw.row(i), cfg.normalization)?;
        let xi = st.x[i].get();
        let si = cfg.s[i].get();
        let (alpha, mut value) = match row.alpha {
            // With alpha_i + sum_j c_ij = 1 the update equals
            // x_i + alpha_i (s_i - x_i) + sum_j c_ij (x_j - x_i), which keeps
            // a consensus at s exactly fixed in floating point.
            Some(alpha) => {
                let pull: f64 = row
                    .weights
                    .iter()
                    .zip(&st.x)
                    .map(|(w, x)| w * (x.get() - xi))
                    .sum();
                (alpha, xi + alpha * (si - xi) + pull)
            }
            None => {
                let social: f64 = row
                    .weights
                    .iter()
                    .zip(&st.x)
                    .map(|(w, x)| w * x.get())
                    .sum();
                let alpha = 1.0 - social;
                (alpha, alpha * si + social)
            }
        };
        if cfg.normalization != Normalization::Literal
            && value.abs() > 1.0
            && value.abs() <= 1.0 + BOUNDARY_SLACK
        {
            value = value.clamp(-1.0, 1.0);
        }
        let opinion = Opinion::new(value).map_err(|_| DynamicsError::OpinionEscape {
            step: st.k,
            individual: i,
            value,
        })?;
        weights.row_mut(i).copy_from_slice(&row.weights);
        alphas.push(alpha);
        next.push(opinion);
    }
    Ok(StepRecord {
        next: SimulationState {
            x: next,
            k: st.k + 1,
        },
        alphas,
        weights,
    })
}

pub fn step(
    cfg: &ModelConfig,
    g: &InfluenceGraph,
    st: &SimulationState,
) -> Result<SimulationState, DynamicsError> {
    step_detailed(cfg, g, st).map(|r| r.next)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Maximum number of updates `K`.
    pub steps: usize,
    pub conv_tol: f64,
    #[serde(default)]
    pub record_weights: bool,
    /// Stop right after the first converged step instead of running all `K`.
    #[serde(default)]
    pub stop_at_convergence: bool,
}

impl RunOptions {
    pub fn new(steps: usize, conv_tol: f64) -> Self {
        RunOptions {
            steps,
            conv_tol,
            record_weights: false,
            stop_at_convergence: false,
        }
    }
}

/// Iterates the update from `x0`.
pub fn run(
    cfg: &ModelConfig,
    g: &InfluenceGraph,
    x0: Vec<Opinion>,
    opts: &RunOptions,
) -> Result<Trajectory, DynamicsError> {
    cfg.check_dims(g, &x0)?;
    let mut states = vec![SimulationState { x: x0, k: 0 }];
    let mut alphas = Vec::with_capacity(opts.steps);
    let mut weights = opts.record_weights.then(Vec::new);
    let mut converged_at = None;
    for _ in 0..opts.steps {
        let cur = states.last().expect("nonempty");
        let rec = step_detailed(cfg, g, cur)?;
        let delta = cur
            .x
            .iter()
            .zip(&rec.next.x)
            .map(|(a, b)| (a.get() - b.get()).abs())
            .fold(0.0, f64::max);
        if converged_at.is_none() && delta <= opts.conv_tol {
            converged_at = Some(cur.k);
        }
        alphas.push(rec.alphas);
        if let Some(ws) = weights.as_mut() {
            ws.push(rec.weights);
        }
        states.push(rec.next);
        if opts.stop_at_convergence && converged_at.is_some() {
            break;
        }
    }
    Ok(Trajectory {
        states,
        alphas,
        weights,
        converged_at,
    })
}
