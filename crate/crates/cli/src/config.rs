//! Serializable experiment configuration.
//!
//! Every cell of an experiment is reproducible from `(config, master_seed)`
//! alone: instance specs either pin a seed (fixed instance across trials) or
//! leave it out (a fresh instance per trial from the trial's stream).

use std::path::{Path, PathBuf};

use ocol_core::graph::Graph;
use ocol_core::instances::{self, Family, InstanceSpec};
use ocol_core::rng::SeededRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io;

/// Instance description as it appears in config files and reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum InstanceDef {
    Path { n: usize },
    Star { n: usize },
    CompleteBinaryTree { n: usize },
    Spider { legs: u32, leg_len: u32 },
    RandomLabeledTree {
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    RandomBipartite {
        n: usize,
        p: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    FromFile { path: PathBuf },
}

#[derive(Debug, Error)]
pub enum InstanceLoadError {
    #[error(transparent)]
    Generate(#[from] instances::InstanceError),
    #[error("failed to read {path}: {source}")]
    File {
        path: PathBuf,
        source: io::EdgeListError,
    },
}

impl InstanceDef {
    /// Number of vertices, when derivable without generating.
    pub fn n(&self) -> Option<usize> {
        match self {
            InstanceDef::Path { n }
            | InstanceDef::Star { n }
            | InstanceDef::CompleteBinaryTree { n }
            | InstanceDef::RandomLabeledTree { n, .. }
            | InstanceDef::RandomBipartite { n, .. } => Some(*n),
            InstanceDef::Spider { legs, leg_len } => {
                Some(1 + *legs as usize * *leg_len as usize)
            }
            InstanceDef::FromFile { .. } => None,
        }
    }

    /// True when each trial should draw its own instance (random family
    /// without a pinned seed).
    pub fn fresh_per_trial(&self) -> bool {
        matches!(
            self,
            InstanceDef::RandomLabeledTree { seed: None, .. }
                | InstanceDef::RandomBipartite { seed: None, .. }
        )
    }

    /// Short stable label used in cell ids and CSV rows.
    pub fn label(&self) -> String {
        match self {
            InstanceDef::Path { n } => format!("path-{n}"),
            InstanceDef::Star { n } => format!("star-{n}"),
            InstanceDef::CompleteBinaryTree { n } => format!("cbt-{n}"),
            InstanceDef::Spider { legs, leg_len } => format!("spider-{legs}x{leg_len}"),
            InstanceDef::RandomLabeledTree { n, .. } => format!("rtree-{n}"),
            InstanceDef::RandomBipartite { n, p, .. } => format!("rbip-{n}-p{p}"),
            InstanceDef::FromFile { path } => {
                format!("file-{}", path.file_stem().unwrap_or_default().to_string_lossy())
            }
        }
    }

    /// Generates the instance, drawing any needed seed from `rng` when the
    /// def doesn't pin one.
    pub fn realize(&self, rng: &mut SeededRng) -> Result<Graph, InstanceLoadError> {
        use rand::Rng;
        let spec = match self {
            InstanceDef::Path { n } => InstanceSpec { family: Family::Path, n: *n, seed: 0 },
            InstanceDef::Star { n } => InstanceSpec { family: Family::Star, n: *n, seed: 0 },
            InstanceDef::CompleteBinaryTree { n } => InstanceSpec {
                family: Family::CompleteBinaryTree,
                n: *n,
                seed: 0,
            },
            InstanceDef::Spider { legs, leg_len } => InstanceSpec {
                family: Family::Spider {
                    legs: *legs,
                    leg_len: *leg_len,
                },
                n: 1 + *legs as usize * *leg_len as usize,
                seed: 0,
            },
            InstanceDef::RandomLabeledTree { n, seed } => InstanceSpec {
                family: Family::RandomLabeledTree,
                n: *n,
                seed: seed.unwrap_or_else(|| rng.gen()),
            },
            InstanceDef::RandomBipartite { n, p, seed } => InstanceSpec {
                family: Family::RandomBipartite { edge_probability: *p },
                n: *n,
                seed: seed.unwrap_or_else(|| rng.gen()),
            },
            InstanceDef::FromFile { path } => {
                return io::read_edge_list(path).map_err(|source| InstanceLoadError::File {
                    path: path.clone(),
                    source,
                });
            }
        };
        Ok(instances::generate(&spec)?)
    }
}

/// Prediction error level for one cell.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ErrorLevel {
    None,
    /// Exactly `k` uniform error positions, fresh per trial.
    RandomK { k: usize },
    /// Errors at fixed vertices.
    Explicit { vertices: Vec<u32> },
}

impl ErrorLevel {
    pub fn k_requested(&self) -> Option<usize> {
        match self {
            ErrorLevel::None => Some(0),
            ErrorLevel::RandomK { k } => Some(*k),
            ErrorLevel::Explicit { vertices } => Some(vertices.len()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ErrorLevel::None => "k0".into(),
            ErrorLevel::RandomK { k } => format!("k{k}"),
            ErrorLevel::Explicit { vertices } => format!("kx{}", vertices.len()),
        }
    }
}

/// Arrival order policy for trials.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ArrivalMode {
    /// Fresh uniform order per trial.
    UniformRandom,
    /// The same fixed order every trial.
    Given { order: Vec<u32> },
}

/// A full experiment: the cross product of instances × algorithms × error
/// levels, each run for `trials` trials.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceDef>,
    pub algorithms: Vec<String>,
    pub arrival: ArrivalMode,
    /// Applied to advice-consuming algorithms; plain algorithms always run
    /// without predictions.
    pub errors: Vec<ErrorLevel>,
    pub trials: u64,
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::from_json(&text)?)
    }

    /// Stable fingerprint of the configuration (serialized form).
    ///
    /// The parallelism degree is excluded: it only schedules work and must
    /// never change what an experiment means or produces.
    pub fn config_hash(&self) -> u64 {
        let mut identity = self.clone();
        identity.jobs = None;
        let bytes = serde_json::to_vec(&identity).expect("config serializes");
        ocol_core::hash::fnv1a64(&bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_through_json() {
        let cfg = ExperimentConfig {
            instances: vec![
                InstanceDef::RandomLabeledTree { n: 100, seed: None },
                InstanceDef::Path { n: 4 },
            ],
            algorithms: vec!["first-fit".into(), "advice-first-fit".into()],
            arrival: ArrivalMode::UniformRandom,
            errors: vec![ErrorLevel::None, ErrorLevel::RandomK { k: 4 }],
            trials: 10,
            master_seed: 99,
            jobs: None,
        };
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back = ExperimentConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.config_hash(), cfg.config_hash());
    }

    #[test]
    fn parallelism_degree_does_not_change_the_config_hash() {
        let mut cfg = ExperimentConfig {
            instances: vec![InstanceDef::Path { n: 4 }],
            algorithms: vec!["first-fit".into()],
            arrival: ArrivalMode::UniformRandom,
            errors: vec![ErrorLevel::None],
            trials: 5,
            master_seed: 1,
            jobs: None,
        };
        let h = cfg.config_hash();
        cfg.jobs = Some(8);
        assert_eq!(cfg.config_hash(), h);
    }

    #[test]
    fn pinned_seed_means_fixed_instance() {
        let def = InstanceDef::RandomLabeledTree { n: 30, seed: Some(7) };
        assert!(!def.fresh_per_trial());
        let mut r1 = ocol_core::rng::seeded(1);
        let mut r2 = ocol_core::rng::seeded(2);
        assert_eq!(def.realize(&mut r1).unwrap(), def.realize(&mut r2).unwrap());
    }
}
