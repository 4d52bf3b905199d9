//! Machine-readable records emitted by the CLI.
//!
//! Field order is fixed by struct declaration order, and maps are sorted, so
//! two runs with identical seeds serialize byte-identically. Exact rationals
//! appear as numerator/denominator strings.

use num_rational::BigRational;
use ocol_core::adversary::{AdversaryOutcome, Verdict};
use ocol_core::analysis::ExactDistribution;
use ocol_core::graph::Graph;
use ocol_core::reveal::{ColoringTranscript, PredictionVector};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct RationalRecord {
    pub numerator: String,
    pub denominator: String,
}

impl From<&BigRational> for RationalRecord {
    fn from(r: &BigRational) -> Self {
        RationalRecord {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
        }
    }
}

impl From<BigRational> for RationalRecord {
    fn from(r: BigRational) -> Self {
        (&r).into()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub vertex: u32,
    pub revealed_neighbors: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub advice: Option<u8>,
    pub color: u32,
}

/// One run, with enough metadata to reproduce it.
#[derive(Clone, Debug, Serialize)]
pub struct TranscriptRecord {
    pub instance_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_seed: Option<u64>,
    pub algorithm: String,
    pub colors_used: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_min: Option<usize>,
    pub steps: Vec<StepRecord>,
}

impl TranscriptRecord {
    pub fn new(
        graph: &Graph,
        algorithm: &str,
        transcript: &ColoringTranscript,
        predictions: Option<&PredictionVector>,
        order_seed: Option<u64>,
        error_seed: Option<u64>,
    ) -> Self {
        TranscriptRecord {
            instance_hash: format!("{:016x}", graph.instance_hash()),
            order_seed,
            error_seed,
            algorithm: algorithm.to_string(),
            colors_used: transcript.colors_used(),
            k: predictions.map(PredictionVector::k),
            k_min: predictions.map(PredictionVector::k_min),
            steps: transcript
                .steps()
                .iter()
                .map(|s| StepRecord {
                    vertex: s.vertex,
                    revealed_neighbors: s.revealed_neighbors.clone(),
                    advice: s.advice.map(u8::from),
                    color: s.color,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbabilityRecord {
    pub colors: u32,
    pub orders: u64,
    pub probability: RationalRecord,
}

/// Exact distribution over all arrival orders.
#[derive(Clone, Debug, Serialize)]
pub struct ExactDistributionRecord {
    pub instance_hash: String,
    pub algorithm: String,
    pub n: usize,
    pub total_orders: u64,
    pub expectation: RationalRecord,
    pub distribution: Vec<ProbabilityRecord>,
    /// `P[X >= ell]` for `ell` up to one past the largest observed value.
    pub tail: Vec<ProbabilityRecord>,
}

impl ExactDistributionRecord {
    pub fn new(dist: &ExactDistribution) -> Self {
        let distribution = dist
            .counts()
            .iter()
            .map(|(&x, &c)| ProbabilityRecord {
                colors: x,
                orders: c,
                probability: dist.probability_eq(x).into(),
            })
            .collect();
        let max = dist.max_colors();
        let tail = (1..=max + 1)
            .map(|ell| ProbabilityRecord {
                colors: ell,
                orders: dist
                    .counts()
                    .iter()
                    .filter(|&(&x, _)| x >= ell)
                    .map(|(_, &c)| c)
                    .sum(),
                probability: dist.probability_at_least(ell).into(),
            })
            .collect();
        ExactDistributionRecord {
            instance_hash: format!("{:016x}", dist.instance_hash),
            algorithm: dist.algorithm.clone(),
            n: dist.n,
            total_orders: dist.total_orders(),
            expectation: dist.expectation().into(),
            distribution,
            tail,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    /// Expectation as a display string like "9/4".
    pub fn expectation_display(&self) -> String {
        format!(
            "{}/{}",
            self.expectation.numerator, self.expectation.denominator
        )
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum VerdictRecord {
    Forced {
        colors_forced: u32,
    },
    InconsistencyWitness {
        component_vertices: Vec<u32>,
        completion_edge_list: String,
        completion_advice: Vec<u8>,
        distinct_colors: u32,
    },
}

/// Outcome of one adversary game.
#[derive(Clone, Debug, Serialize)]
pub struct AdversaryRecord {
    pub algorithm: String,
    pub target_colors: u32,
    pub verdict: VerdictRecord,
    pub vertices_used: usize,
    pub colors_used: u32,
    pub delivered_advice: Vec<u8>,
    pub instance_hash: String,
    pub tree_edge_list: String,
    pub steps: Vec<StepRecord>,
}

impl AdversaryRecord {
    pub fn new(target: u32, algorithm: &str, outcome: &AdversaryOutcome) -> Self {
        let verdict = match &outcome.verdict {
            Verdict::Forced { colors } => VerdictRecord::Forced {
                colors_forced: *colors,
            },
            Verdict::Inconsistent(w) => VerdictRecord::InconsistencyWitness {
                component_vertices: w.component_vertices.clone(),
                completion_edge_list: crate::io::format_edge_list(&w.completion),
                completion_advice: w.completion_advice.clone(),
                distinct_colors: w.distinct_colors,
            },
        };
        AdversaryRecord {
            algorithm: algorithm.to_string(),
            target_colors: target,
            verdict,
            vertices_used: outcome.vertices_used,
            colors_used: outcome.transcript.colors_used(),
            delivered_advice: outcome.delivered_advice.clone(),
            instance_hash: format!("{:016x}", outcome.graph.instance_hash()),
            tree_edge_list: crate::io::format_edge_list(&outcome.graph),
            steps: outcome
                .transcript
                .steps()
                .iter()
                .map(|s| StepRecord {
                    vertex: s.vertex,
                    revealed_neighbors: s.revealed_neighbors.clone(),
                    advice: s.advice.map(u8::from),
                    color: s.color,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}
