//! Transcript witness checkers.
//!
//! Both checkers rebuild the oriented reach tree of every relevant vertex
//! from the graph and the arrival times alone and run a longest-path dynamic
//! program over its in-edges, so they are independent of the algorithm code
//! whose transcripts they judge.

use alloc::vec::Vec;
use core::fmt;

use crate::analysis::reach::reach_tree;
use crate::graph::{Graph, Vertex};
use crate::reveal::{Color, ColoringTranscript, PredictionVector};

/// One failed witness obligation, with the DP table for diagnosis.
#[derive(Clone, Debug)]
pub struct WitnessViolation {
    pub vertex: Vertex,
    pub color: Color,
    pub required: u32,
    pub achieved: u32,
    /// Best-path value per reach-tree member, in arrival order.
    pub dp_table: Vec<(Vertex, u32)>,
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vertex {} colored {} needs a path witness of {} but best is {}",
            self.vertex, self.color, self.required, self.achieved
        )
    }
}

/// Outcome of checking every vertex of a transcript.
#[derive(Clone, Debug, Default)]
pub struct WitnessReport {
    pub vertices_checked: usize,
    pub violations: Vec<WitnessViolation>,
}

impl WitnessReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every vertex colored `ell` by a greedy first-fit run has an
/// arrival-increasing path of at least `ell` vertices ending at it.
///
/// DP over the reach tree of `v`: `best(u) = 1 + max over in-neighbors`,
/// processed in arrival order so tails are finished before heads.
pub fn check_increasing_path_witness(
    transcript: &ColoringTranscript,
    graph: &Graph,
) -> WitnessReport {
    let time = transcript.arrival_times();
    let mut report = WitnessReport::default();
    let mut best = alloc::vec![0u32; graph.vertex_count()];

    for v in 0..graph.vertex_count() as Vertex {
        let color = transcript.color_of(v);
        report.vertices_checked += 1;
        let tree = reach_tree(graph, time, v);
        for &u in tree.members_by_arrival() {
            let sub = tree
                .in_neighbors(u)
                .iter()
                .map(|&w| best[w as usize])
                .max()
                .unwrap_or(0);
            best[u as usize] = 1 + sub;
        }
        let achieved = best[v as usize];
        if achieved < color {
            report.violations.push(WitnessViolation {
                vertex: v,
                color,
                required: color,
                achieved,
                dp_table: tree
                    .members_by_arrival()
                    .iter()
                    .map(|&u| (u, best[u as usize]))
                    .collect(),
            });
        }
    }
    report
}

/// Checks that every vertex colored `ell` by a parity-respecting run has a
/// reach-tree path ending at it with at least `floor((ell - 1) / 4)`
/// incorrectly predicted vertices.
///
/// Colors up to 4 require zero errors and can never violate (the DP value is
/// nonnegative), so only vertices colored 5 or more are examined.
pub fn check_error_path_witness(
    transcript: &ColoringTranscript,
    graph: &Graph,
    predictions: &PredictionVector,
) -> WitnessReport {
    let time = transcript.arrival_times();
    let mut report = WitnessReport::default();
    let mut best = alloc::vec![0u32; graph.vertex_count()];

    for v in 0..graph.vertex_count() as Vertex {
        let color = transcript.color_of(v);
        report.vertices_checked += 1;
        if color < 5 {
            continue;
        }
        let required = (color - 1) / 4;
        let tree = reach_tree(graph, time, v);
        for &u in tree.members_by_arrival() {
            let err = u32::from(predictions.delivered(u) != predictions.truth(u));
            let sub = tree
                .in_neighbors(u)
                .iter()
                .map(|&w| best[w as usize])
                .max()
                .unwrap_or(0);
            best[u as usize] = err + sub;
        }
        let achieved = best[v as usize];
        if achieved < required {
            report.violations.push(WitnessViolation {
                vertex: v,
                color,
                required,
                achieved,
                dp_table: tree
                    .members_by_arrival()
                    .iter()
                    .map(|&u| (u, best[u as usize]))
                    .collect(),
            });
        }
    }
    report
}
