//! Opinion dynamics on weighted influence networks with asymmetric
//! confirmation and negativity bias.
//!
//! * [`bias`] holds the scalar influence-weight families and their mixture.
//! * [`network`] holds the influence graph and the sensed expectation `x̄_i`.
//! * [`dynamics`] iterates the update `x(k+1) = alpha s + C(x(k)) x(k)`.
//! * [`verifier`] checks weight functions against the bias conditions on a
//!   grid and returns concrete witnesses for every violation.
//! * [`config`], [`generate`] and [`export`] cover experiment files, seeded
//!   instances and CSV/JSON output.
//!
//! ```
//! use opinion_bias::{BiasFamily, InfluenceGraph, ModelConfig, Normalization, Opinion, RunOptions};
//!
//! let conf = BiasFamily::tanh_quadratic(0.6, 0.011).unwrap();
//! let neg = BiasFamily::neg_tanh_quadratic(0.1, 0.05).unwrap();
//! let s = Opinion::vec(&[0.5, -0.5]).unwrap();
//! let model = ModelConfig::new(s.clone(), vec![1.0, 1.0], conf, neg, Normalization::default()).unwrap();
//! let graph = InfluenceGraph::complete(2).unwrap();
//! let t = opinion_bias::dynamics::run(&model, &graph, s, &RunOptions::new(10, 1e-12)).unwrap();
//! assert!((t.states[1].x[0].get() - 0.10316).abs() < 1e-4);
//! ```

pub mod bias;
pub mod config;
pub mod dynamics;
pub mod export;
pub mod generate;
pub mod matrix;
pub mod network;
pub mod opinion;
pub mod verifier;

pub use bias::{BiasError, BiasFamily, CompositeBias, Decomposition, FamilySpec};
pub use config::{ConfigError, Experiment, ExperimentConfig};
pub use dynamics::{
    DynamicsError, ModelConfig, Normalization, RunOptions, SimulationState, Trajectory,
};
pub use generate::{generate_instance, GeneratorSpec, SplitMix64};
pub use matrix::SquareMatrix;
pub use network::{parse_edge_list, InfluenceGraph};
pub use opinion::Opinion;
pub use verifier::{ConditionReport, GridSpec, Orientation, Tolerances};
