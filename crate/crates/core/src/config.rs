//! Experiment configuration files.
//!
//! One JSON document describes one simulation:
//!
//! ```json
//! {
//!   "graph": {"edge_list": {"path": "graph.txt", "n": 2}},
//!   "model": {
//!     "s": {"values": [0.5, -0.5]},
//!     "beta": 1.0,
//!     "confirmation": {"family": "tanh-quadratic", "params": {"chi": 0.6, "gamma": 0.011}},
//!     "negativity": {"family": "neg-tanh-quadratic", "params": {"chi": 0.1, "gamma": 0.05}},
//!     "normalization": {"mode": "rescale", "alpha_target": 0.2}
//!   },
//!   "x0": {"values": [0.5, -0.5]},
//!   "run": {"steps": 50, "conv_tol": 1e-12}
//! }
//! ```
//!
//! `graph` is either `edge_list` (path relative to the config file) or
//! `generate` (a [`GeneratorSpec`]). `s` and `x0` are one of `values`,
//! `constant`, `uniform` (with a seed) or the string `"generator"`, which
//! takes the opinions drawn by the graph generator. `beta` is a scalar or one
//! value per individual. `output` names the CSV and JSON files written
//! under the output directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bias::{BiasError, BiasFamily, FamilySpec};
use crate::dynamics::{DynamicsError, ModelConfig, Normalization, RunOptions};
use crate::generate::{generate_instance, uniform_opinions, GeneratorError, GeneratorSpec};
use crate::network::{parse_edge_list, EdgeListError, InfluenceGraph};
use crate::opinion::{Opinion, OpinionError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("edge list {path}: {source}")]
    EdgeList {
        path: PathBuf,
        source: EdgeListError,
    },
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("{which} family: {source}")]
    Family {
        which: &'static str,
        source: BiasError,
    },
    #[error("{what}: {source}")]
    Opinion {
        what: &'static str,
        source: OpinionError,
    },
    #[error("{what} has {found} entries, the graph has {n} individuals")]
    Length {
        what: &'static str,
        n: usize,
        found: usize,
    },
    #[error("{0} = \"generator\" needs a generated graph")]
    NoGenerator(&'static str),
    #[error(transparent)]
    Model(#[from] DynamicsError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSource {
    EdgeList { path: PathBuf, n: usize },
    Generate(GeneratorSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpinionSource {
    Values(Vec<f64>),
    Constant(f64),
    Uniform { seed: u64 },
    Generator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaSpec {
    Scalar(f64),
    PerIndividual(Vec<f64>),
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub s: OpinionSource,
    pub beta: BetaSpec,
    pub confirmation: FamilySpec,
    pub negativity: FamilySpec,
    #[serde(default)]
    pub normalization: Normalization,
    #[serde(default = "default_true")]
    pub include_self: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default = "OutputPaths::default_csv")]
    pub csv: PathBuf,
    #[serde(default = "OutputPaths::default_json")]
    pub json: PathBuf,
}

impl OutputPaths {
    fn default_csv() -> PathBuf {
        "trajectory.csv".into()
    }

    fn default_json() -> PathBuf {
        "trajectory.json".into()
    }
}

impl Default for OutputPaths {
    fn default() -> Self {
        OutputPaths {
            csv: Self::default_csv(),
            json: Self::default_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub model: ModelSection,
    pub x0: OpinionSource,
    pub run: RunOptions,
    #[serde(default)]
    pub output: OutputPaths,
}

/// A configuration resolved into model objects.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub graph: InfluenceGraph,
    pub model: ModelConfig,
    pub x0: Vec<Opinion>,
    pub run: RunOptions,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Builds the graph, model and initial state. Relative edge-list paths
    /// are resolved against `base_dir`.
    pub fn resolve(&self, base_dir: &Path) -> Result<Experiment, ConfigError> {
        let (graph, generated) = match &self.graph {
            GraphSource::EdgeList { path, n } => {
                let full = base_dir.join(path);
                let text = std::fs::read_to_string(&full).map_err(|source| ConfigError::Io {
                    path: full.clone(),
                    source,
                })?;
                let g = parse_edge_list(&text, *n)
                    .map_err(|source| ConfigError::EdgeList { path: full, source })?;
                (g, None)
            }
            GraphSource::Generate(spec) => {
                let (g, x0) = generate_instance(spec)?;
                (g, Some(x0))
            }
        };
        let n = graph.n();
        let s = opinions("s", &self.model.s, n, generated.as_deref())?;
        let x0 = opinions("x0", &self.x0, n, generated.as_deref())?;
        let beta = match &self.model.beta {
            BetaSpec::Scalar(b) => vec![*b; n],
            BetaSpec::PerIndividual(v) => {
                if v.len() != n {
                    return Err(ConfigError::Length {
                        what: "beta",
                        n,
                        found: v.len(),
                    });
                }
                v.clone()
            }
        };
        let conf =
            BiasFamily::new(self.model.confirmation).map_err(|source| ConfigError::Family {
                which: "confirmation",
                source,
            })?;
        let neg = BiasFamily::new(self.model.negativity).map_err(|source| ConfigError::Family {
            which: "negativity",
            source,
        })?;
        let model = ModelConfig::new(s, beta, conf, neg, self.model.normalization)?
            .with_self_weight(self.model.include_self);
        Ok(Experiment {
            graph,
            model,
            x0,
            run: self.run,
        })
    }
}

fn opinions(
    what: &'static str,
    src: &OpinionSource,
    n: usize,
    generated: Option<&[Opinion]>,
) -> Result<Vec<Opinion>, ConfigError> {
    match src {
        OpinionSource::Values(v) => {
            if v.len() != n {
                return Err(ConfigError::Length {
                    what,
                    n,
                    found: v.len(),
                });
            }
            Opinion::vec(v).map_err(|source| ConfigError::Opinion { what, source })
        }
        OpinionSource::Constant(c) => {
            let o = Opinion::new(*c).map_err(|source| ConfigError::Opinion { what, source })?;
            Ok(vec![o; n])
        }
        OpinionSource::Uniform { seed } => Ok(uniform_opinions(n, *seed)),
        OpinionSource::Generator => generated
            .map(<[Opinion]>::to_vec)
            .ok_or(ConfigError::NoGenerator(what)),
    }
}
