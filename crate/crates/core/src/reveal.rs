//! The online reveal engine.
//!
//! The referee owns the instance, the arrival order, and the prediction
//! vector. It feeds an [`OnlineColorer`] one vertex at a time — together with
//! the already-revealed neighbors and their colors, and an advice bit when
//! predictions are in play — and records every step in a
//! [`ColoringTranscript`]. Algorithms never see the graph, its size, or
//! anything about the future; the interface shape enforces that.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::index;
use rand::seq::SliceRandom;

use crate::graph::{Bipartition, Graph, Vertex};
use crate::rng::seeded;

/// Colors are the positive integers 1, 2, 3, …
pub type Color = u32;

/// How an arrival order came to be; recorded for reproducibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderProvenance {
    Given,
    UniformRandom { seed: u64 },
}

/// A permutation of `[0, n)`: the order in which vertices are revealed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrivalOrder {
    order: Vec<Vertex>,
    provenance: OrderProvenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotAPermutation {
    pub detail: &'static str,
}

impl fmt::Display for NotAPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order is not a permutation: {}", self.detail)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NotAPermutation {}

impl ArrivalOrder {
    /// Wraps an externally supplied order, verifying it is a bijection on
    /// `[0, n)` where `n = order.len()`.
    pub fn given(order: Vec<Vertex>) -> Result<Self, NotAPermutation> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if (v as usize) >= n {
                return Err(NotAPermutation {
                    detail: "vertex id out of range",
                });
            }
            if seen[v as usize] {
                return Err(NotAPermutation {
                    detail: "vertex id repeated",
                });
            }
            seen[v as usize] = true;
        }
        Ok(ArrivalOrder {
            order,
            provenance: OrderProvenance::Given,
        })
    }

    pub fn identity(n: usize) -> Self {
        ArrivalOrder {
            order: (0..n as Vertex).collect(),
            provenance: OrderProvenance::Given,
        }
    }

    /// Uniform random permutation of `[0, n)` via Fisher–Yates, seeded.
    /// Deterministic in the seed.
    pub fn sample(n: usize, seed: u64) -> Self {
        let mut rng = seeded(seed);
        Self::sample_with(n, &mut rng, OrderProvenance::UniformRandom { seed })
    }

    /// Same as [`ArrivalOrder::sample`] but drawing from a caller-owned
    /// generator (used by the harness for per-trial streams).
    pub fn sample_from(n: usize, rng: &mut crate::rng::SeededRng) -> Self {
        Self::sample_with(n, rng, OrderProvenance::Given)
    }

    fn sample_with(
        n: usize,
        rng: &mut crate::rng::SeededRng,
        provenance: OrderProvenance,
    ) -> Self {
        let mut order: Vec<Vertex> = (0..n as Vertex).collect();
        order.shuffle(rng);
        ArrivalOrder { order, provenance }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.order
    }

    pub fn provenance(&self) -> &OrderProvenance {
        &self.provenance
    }

    /// Inverse permutation: `positions()[v]` is the step at which `v`
    /// arrives.
    pub fn positions(&self) -> Vec<u32> {
        let mut pos = vec![0u32; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        pos
    }
}

/// Sampling shorthand matching the referee's operation vocabulary.
pub fn sample_order(n: usize, seed: u64) -> ArrivalOrder {
    ArrivalOrder::sample(n, seed)
}

/// Ground-truth bits, delivered bits, and the error bookkeeping between
/// them.
///
/// Truth is the canonical 2-coloring: `truth(v) = 1` iff `v` has side 1.
/// `k` counts delivered bits that differ from truth; `k_min` counts them
/// after the best per-component flip of the reference coloring (flipping a
/// whole component's truth yields the other valid 2-coloring, so `k_min` is
/// the flip-invariant error count).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionVector {
    truth: Vec<u8>,
    delivered: Vec<u8>,
    error_set: Vec<Vertex>,
    k: usize,
    k_min: usize,
}

/// How prediction errors are injected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorMode {
    /// Error-free advice: delivered = truth.
    None,
    /// Exactly `k` distinct error positions chosen uniformly.
    RandomK { k: usize, seed: u64 },
    /// Errors at exactly the given vertices.
    ExplicitSet(Vec<Vertex>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredictionError {
    TooManyErrors { k: usize, n: usize },
    VertexOutOfRange { vertex: Vertex, n: usize },
    DuplicateVertex { vertex: Vertex },
}

impl fmt::Display for PredictionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictionError::TooManyErrors { k, n } => {
                write!(f, "requested k = {k} errors on {n} vertices")
            }
            PredictionError::VertexOutOfRange { vertex, n } => {
                write!(f, "error position {vertex} outside [0, {n})")
            }
            PredictionError::DuplicateVertex { vertex } => {
                write!(f, "error position {vertex} listed twice")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PredictionError {}

impl PredictionVector {
    pub fn truth(&self, v: Vertex) -> u8 {
        self.truth[v as usize]
    }

    pub fn delivered(&self, v: Vertex) -> u8 {
        self.delivered[v as usize]
    }

    pub fn delivered_bits(&self) -> &[u8] {
        &self.delivered
    }

    /// Vertices where delivered differs from truth, sorted.
    pub fn error_set(&self) -> &[Vertex] {
        &self.error_set
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn k_min(&self) -> usize {
        self.k_min
    }

    pub fn len(&self) -> usize {
        self.delivered.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delivered.is_empty()
    }

    /// Builds a vector from bits delivered by an external source (e.g. the
    /// adversary game), deriving the error bookkeeping against the canonical
    /// truth.
    pub fn from_delivered(bipartition: &Bipartition, delivered: Vec<u8>) -> Self {
        assert_eq!(delivered.len(), bipartition.vertex_count());
        let truth: Vec<u8> = bipartition.sides().to_vec();
        let error_set: Vec<Vertex> = (0..truth.len() as Vertex)
            .filter(|&v| delivered[v as usize] != truth[v as usize])
            .collect();
        let k = error_set.len();
        let k_min = k_min_of(bipartition, &error_set);
        PredictionVector {
            truth,
            delivered,
            error_set,
            k,
            k_min,
        }
    }
}

fn k_min_of(bipartition: &Bipartition, error_set: &[Vertex]) -> usize {
    let comps = bipartition.component_count();
    let mut size = vec![0usize; comps];
    for v in 0..bipartition.vertex_count() as Vertex {
        size[bipartition.component_of(v) as usize] += 1;
    }
    let mut flips = vec![0usize; comps];
    for &v in error_set {
        flips[bipartition.component_of(v) as usize] += 1;
    }
    flips
        .iter()
        .zip(&size)
        .map(|(&f, &s)| f.min(s - f))
        .sum()
}

/// Builds a prediction vector over a canonical bipartition: truth from the
/// sides, delivered = truth flipped on exactly the chosen error set.
pub fn make_predictions(
    bipartition: &Bipartition,
    mode: &ErrorMode,
) -> Result<PredictionVector, PredictionError> {
    let n = bipartition.vertex_count();
    let error_set: Vec<Vertex> = match mode {
        ErrorMode::None => Vec::new(),
        ErrorMode::RandomK { k, seed } => {
            if *k > n {
                return Err(PredictionError::TooManyErrors { k: *k, n });
            }
            let mut rng = seeded(*seed);
            let mut set: Vec<Vertex> = index::sample(&mut rng, n, *k)
                .into_iter()
                .map(|i| i as Vertex)
                .collect();
            set.sort_unstable();
            set
        }
        ErrorMode::ExplicitSet(set) => {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(PredictionError::DuplicateVertex { vertex: pair[0] });
                }
            }
            if let Some(&v) = sorted.iter().find(|&&v| (v as usize) >= n) {
                return Err(PredictionError::VertexOutOfRange { vertex: v, n });
            }
            sorted
        }
    };
    let mut delivered: Vec<u8> = bipartition.sides().to_vec();
    for &v in &error_set {
        delivered[v as usize] ^= 1;
    }
    Ok(PredictionVector::from_delivered(bipartition, delivered))
}

/// Draws exactly `k` uniform error positions from a caller-owned generator
/// (per-trial streams in the harness).
pub fn make_predictions_from(
    bipartition: &Bipartition,
    k: usize,
    rng: &mut crate::rng::SeededRng,
) -> Result<PredictionVector, PredictionError> {
    let n = bipartition.vertex_count();
    if k > n {
        return Err(PredictionError::TooManyErrors { k, n });
    }
    let mut delivered: Vec<u8> = bipartition.sides().to_vec();
    let mut set: Vec<Vertex> = index::sample(rng, n, k)
        .into_iter()
        .map(|i| i as Vertex)
        .collect();
    set.sort_unstable();
    for &v in &set {
        delivered[v as usize] ^= 1;
    }
    Ok(PredictionVector::from_delivered(bipartition, delivered))
}

/// One referee step: the revealed vertex, its already-revealed neighbors,
/// the advice bit it came with (if any), and the color the algorithm chose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptStep {
    pub vertex: Vertex,
    pub revealed_neighbors: Vec<Vertex>,
    pub advice: Option<bool>,
    pub color: Color,
}

/// Full record of one run: per-step data, per-vertex colors and arrival
/// times, and `X`, the number of colors used (the maximum assigned color).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringTranscript {
    steps: Vec<TranscriptStep>,
    colors: Vec<Color>,
    arrival_time: Vec<u32>,
    colors_used: Color,
}

impl ColoringTranscript {
    pub(crate) fn from_steps(steps: Vec<TranscriptStep>, n: usize) -> Self {
        let mut colors = vec![0; n];
        let mut arrival_time = vec![0; n];
        let mut colors_used = 0;
        for (i, step) in steps.iter().enumerate() {
            colors[step.vertex as usize] = step.color;
            arrival_time[step.vertex as usize] = i as u32;
            colors_used = colors_used.max(step.color);
        }
        ColoringTranscript {
            steps,
            colors,
            arrival_time,
            colors_used,
        }
    }

    pub fn steps(&self) -> &[TranscriptStep] {
        &self.steps
    }

    /// `X`: the maximum color assigned during the run.
    pub fn colors_used(&self) -> Color {
        self.colors_used
    }

    pub fn color_of(&self, v: Vertex) -> Color {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Step index at which each vertex arrived.
    pub fn arrival_times(&self) -> &[u32] {
        &self.arrival_time
    }

    pub fn distinct_color_count(&self) -> usize {
        let mut seen = alloc::collections::BTreeSet::new();
        for step in &self.steps {
            seen.insert(step.color);
        }
        seen.len()
    }
}

/// The behavioral contract every online coloring algorithm implements.
///
/// The referee calls [`OnlineColorer::reset`] once per run, then
/// [`OnlineColorer::color_next`] once per vertex with only past data: the
/// vertex id, the already-revealed neighbors with their colors, and the
/// advice bit when predictions are in play. Implementations keep whatever
/// private state they need between calls within one run.
pub trait OnlineColorer {
    fn reset(&mut self);

    /// Returns the chosen color (a positive integer differing from every
    /// revealed neighbor's color).
    fn color_next(
        &mut self,
        vertex: Vertex,
        revealed_neighbors: &[(Vertex, Color)],
        advice: Option<bool>,
    ) -> Result<Color, ColorerError>;
}

/// Errors an algorithm itself can raise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorerError {
    /// An advice-consuming algorithm ran without a prediction vector.
    MissingAdvice,
    /// The revealed subgraph is not 2-colorable (CBip family only).
    NonBipartiteInput,
}

impl fmt::Display for ColorerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorerError::MissingAdvice => {
                write!(f, "algorithm requires advice but none was delivered")
            }
            ColorerError::NonBipartiteInput => write!(f, "revealed subgraph is not bipartite"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ColorerError {}

/// Referee failures for one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunError {
    OrderLengthMismatch { order_len: usize, n: usize },
    PredictionLengthMismatch { predictions_len: usize, n: usize },
    /// The algorithm echoed a revealed neighbor's color (or returned 0).
    ProtocolViolation {
        step: usize,
        vertex: Vertex,
        color: Color,
        conflicting_neighbor: Option<Vertex>,
    },
    Colorer {
        step: usize,
        vertex: Vertex,
        error: ColorerError,
    },
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::OrderLengthMismatch { order_len, n } => {
                write!(f, "order covers {order_len} vertices, graph has {n}")
            }
            RunError::PredictionLengthMismatch { predictions_len, n } => {
                write!(f, "predictions cover {predictions_len} vertices, graph has {n}")
            }
            RunError::ProtocolViolation {
                step,
                vertex,
                color,
                conflicting_neighbor,
            } => match conflicting_neighbor {
                Some(u) => write!(
                    f,
                    "protocol violation at step {step}: vertex {vertex} colored {color}, same as revealed neighbor {u}"
                ),
                None => write!(
                    f,
                    "protocol violation at step {step}: vertex {vertex} got non-positive color {color}"
                ),
            },
            RunError::Colorer { step, vertex, error } => {
                write!(f, "algorithm error at step {step} (vertex {vertex}): {error}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RunError {}

/// Drives `algorithm` through `graph` in the given arrival order, delivering
/// advice bits from `predictions` when present (`None` advice otherwise),
/// checking properness at every step, and recording the transcript.
pub fn run(
    graph: &Graph,
    order: &ArrivalOrder,
    predictions: Option<&PredictionVector>,
    algorithm: &mut dyn OnlineColorer,
) -> Result<ColoringTranscript, RunError> {
    let n = graph.vertex_count();
    if order.len() != n {
        return Err(RunError::OrderLengthMismatch {
            order_len: order.len(),
            n,
        });
    }
    if let Some(p) = predictions {
        if p.len() != n {
            return Err(RunError::PredictionLengthMismatch {
                predictions_len: p.len(),
                n,
            });
        }
    }

    algorithm.reset();
    let mut colors: Vec<Color> = vec![0; n];
    let mut steps = Vec::with_capacity(n);
    let mut revealed_neighbors: Vec<(Vertex, Color)> = Vec::new();

    for (step, &v) in order.as_slice().iter().enumerate() {
        revealed_neighbors.clear();
        for &u in graph.neighbors(v) {
            let c = colors[u as usize];
            if c != 0 {
                revealed_neighbors.push((u, c));
            }
        }
        let advice = predictions.map(|p| p.delivered(v) == 1);
        let color = algorithm
            .color_next(v, &revealed_neighbors, advice)
            .map_err(|error| RunError::Colorer { step, vertex: v, error })?;
        if color == 0 {
            return Err(RunError::ProtocolViolation {
                step,
                vertex: v,
                color,
                conflicting_neighbor: None,
            });
        }
        if let Some(&(u, _)) = revealed_neighbors.iter().find(|&&(_, c)| c == color) {
            return Err(RunError::ProtocolViolation {
                step,
                vertex: v,
                color,
                conflicting_neighbor: Some(u),
            });
        }
        colors[v as usize] = color;
        steps.push(TranscriptStep {
            vertex: v,
            revealed_neighbors: revealed_neighbors.iter().map(|&(u, _)| u).collect(),
            advice,
            color,
        });
    }

    Ok(ColoringTranscript::from_steps(steps, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::FirstFit;
    use crate::graph::bipartition;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| ((i - 1) as Vertex, i as Vertex))).unwrap()
    }

    #[test]
    fn sample_order_single_vertex() {
        assert_eq!(ArrivalOrder::sample(1, 99).as_slice(), &[0]);
    }

    #[test]
    fn sample_order_deterministic() {
        let a = ArrivalOrder::sample(10, 42);
        let b = ArrivalOrder::sample(10, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn sample_order_is_uniform_over_s3() {
        // 6e4 samples of S_3; each of the 6 permutations expected 1e4 times,
        // sigma = sqrt(N p (1-p)) ≈ 91.3, so a 5-sigma window is ±457.
        let mut counts = [0u32; 6];
        for seed in 0..60_000u64 {
            let o = ArrivalOrder::sample(3, seed);
            let s = o.as_slice();
            let idx = (s[0] as usize) * 2 + usize::from(s[1] > s[2]);
            counts[idx] += 1;
        }
        for &c in &counts {
            assert!(
                (c as i64 - 10_000).abs() <= 457,
                "permutation count {c} outside 5 sigma"
            );
        }
    }

    #[test]
    fn given_order_must_be_permutation() {
        assert!(ArrivalOrder::given(vec![0, 1, 2]).is_ok());
        assert!(ArrivalOrder::given(vec![0, 1, 1]).is_err());
        assert!(ArrivalOrder::given(vec![0, 3]).is_err());
    }

    #[test]
    fn predictions_none_mode() {
        let g = path(3);
        let b = bipartition(&g).unwrap();
        let p = make_predictions(&b, &ErrorMode::None).unwrap();
        assert_eq!(p.k(), 0);
        assert_eq!(p.delivered_bits(), b.sides());
    }

    #[test]
    fn predictions_explicit_flip() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let b = bipartition(&g).unwrap();
        assert_eq!(b.sides(), &[1, 0]);
        let p = make_predictions(&b, &ErrorMode::ExplicitSet(vec![0])).unwrap();
        assert_eq!(p.delivered_bits(), &[0, 0]);
        assert_eq!(p.k(), 1);
        assert_eq!(p.k_min(), 1);
    }

    #[test]
    fn flipping_whole_component_has_zero_k_min() {
        let g = path(3);
        let b = bipartition(&g).unwrap();
        let p = make_predictions(&b, &ErrorMode::ExplicitSet(vec![0, 1, 2])).unwrap();
        assert_eq!(p.k(), 3);
        assert_eq!(p.k_min(), 0);
    }

    #[test]
    fn random_k_draws_exactly_k_distinct() {
        let g = path(50);
        let b = bipartition(&g).unwrap();
        let p = make_predictions(&b, &ErrorMode::RandomK { k: 7, seed: 5 }).unwrap();
        assert_eq!(p.k(), 7);
        assert_eq!(p.error_set().len(), 7);
        assert!(p.error_set().windows(2).all(|w| w[0] < w[1]));
        let err = make_predictions(&b, &ErrorMode::RandomK { k: 51, seed: 5 });
        assert!(matches!(err, Err(PredictionError::TooManyErrors { .. })));
    }

    #[test]
    fn run_single_edge_first_fit() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let order = ArrivalOrder::given(vec![0, 1]).unwrap();
        let mut alg = FirstFit::new();
        let t = run(&g, &order, None, &mut alg).unwrap();
        assert_eq!(t.color_of(0), 1);
        assert_eq!(t.color_of(1), 2);
        assert_eq!(t.colors_used(), 2);
    }

    #[test]
    fn run_p4_order_forcing_three_colors() {
        // Path a-b-c-d as 0-1-2-3, order (a, b, d, c): c sees colors {2, 1}
        // and is forced to 3.
        let g = path(4);
        let order = ArrivalOrder::given(vec![0, 1, 3, 2]).unwrap();
        let mut alg = FirstFit::new();
        let t = run(&g, &order, None, &mut alg).unwrap();
        assert_eq!(t.color_of(0), 1);
        assert_eq!(t.color_of(1), 2);
        assert_eq!(t.color_of(3), 1);
        assert_eq!(t.color_of(2), 3);
        assert_eq!(t.colors_used(), 3);
    }

    #[test]
    fn echoing_algorithm_is_caught() {
        struct Echo;
        impl OnlineColorer for Echo {
            fn reset(&mut self) {}
            fn color_next(
                &mut self,
                _v: Vertex,
                nbrs: &[(Vertex, Color)],
                _advice: Option<bool>,
            ) -> Result<Color, ColorerError> {
                Ok(nbrs.first().map(|&(_, c)| c).unwrap_or(1))
            }
        }
        let g = path(3);
        let order = ArrivalOrder::identity(3);
        let err = run(&g, &order, None, &mut Echo).unwrap_err();
        assert!(matches!(
            err,
            RunError::ProtocolViolation {
                step: 1,
                vertex: 1,
                ..
            }
        ));
    }

    #[test]
    fn transcript_neighbors_match_definition() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let order = ArrivalOrder::given(vec![3, 4, 0, 2, 1]).unwrap();
        let mut alg = FirstFit::new();
        let t = run(&g, &order, None, &mut alg).unwrap();
        let pos = order.positions();
        for (i, step) in t.steps().iter().enumerate() {
            let mut expected: Vec<Vertex> = g
                .neighbors(step.vertex)
                .iter()
                .copied()
                .filter(|&u| (pos[u as usize] as usize) < i)
                .collect();
            expected.sort_unstable();
            assert_eq!(step.revealed_neighbors, expected);
        }
    }

    #[test]
    fn replay_is_deterministic() {
        let g = path(20);
        let order = ArrivalOrder::sample(20, 3);
        let b = bipartition(&g).unwrap();
        let p = make_predictions(&b, &ErrorMode::RandomK { k: 4, seed: 9 }).unwrap();
        let mut a1 = crate::algorithms::AdviceFirstFit::new();
        let mut a2 = crate::algorithms::AdviceFirstFit::new();
        let t1 = run(&g, &order, Some(&p), &mut a1).unwrap();
        let t2 = run(&g, &order, Some(&p), &mut a2).unwrap();
        assert_eq!(t1, t2);
    }
}
