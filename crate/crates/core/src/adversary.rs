//! The adaptive lower-bound game against advice-consuming colorers.
//!
//! The adversary reveals vertices (each with an advice bit of its choosing)
//! and watches the algorithm's colors. Isolated probe vertices are presented
//! in pairs with distinct advice bits. Any algorithm that wants to stay
//! consistent must keep each advice group monochromatic and the two groups
//! distinct — otherwise two punishing vertices complete the probes into a
//! tree that error-free advice describes perfectly, on which the algorithm
//! has already burned three colors (an inconsistency witness).
//!
//! While the pattern holds, the adversary plays the recursive construction:
//! to force `ell` colors it builds disjoint subtrees forcing `3..ell`
//! colors, picks in each a representative carrying a color fresh outside
//! `{probe colors, earlier picks}` (the construction guarantees one exists),
//! and reveals a final vertex adjacent to both probes and all
//! representatives. The result is a tree on exactly `3 * 2^(ell-3)`
//! vertices on which the algorithm used at least `ell` colors.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, Vertex};
use crate::reveal::{Color, ColorerError, ColoringTranscript, OnlineColorer, TranscriptStep};

/// How a completed game ended.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// The algorithm used at least `colors` colors on the built tree.
    Forced { colors: u32 },
    /// The algorithm broke the isolated-probe pattern; the witness shows
    /// more than two colors on an instance completable with error-free
    /// advice.
    Inconsistent(InconsistencyWitness),
}

/// The punished component, extracted as a standalone instance.
#[derive(Clone, Debug)]
pub struct InconsistencyWitness {
    /// Vertices of the gadget component, original game ids, sorted.
    pub component_vertices: Vec<Vertex>,
    /// The component reindexed over `0..len`: always a tree.
    pub completion: Graph,
    /// Advice delivered on the component (reindexed); matches one of the
    /// completion's proper 2-colorings exactly, so its flip-invariant error
    /// count is zero.
    pub completion_advice: Vec<u8>,
    /// Distinct colors the algorithm used on the component; always > 2.
    pub distinct_colors: u32,
}

/// Result of a finished game: the revealed instance, everything the
/// algorithm was shown and answered, and the verdict.
#[derive(Clone, Debug)]
pub struct AdversaryOutcome {
    pub graph: Graph,
    pub delivered_advice: Vec<u8>,
    pub transcript: ColoringTranscript,
    pub verdict: Verdict,
    pub vertices_used: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdversaryError {
    /// The construction starts at three colors.
    TargetTooSmall { ell: u32 },
    AlgorithmFailed { step: usize, error: ColorerError },
    /// The algorithm echoed a revealed neighbor's color or returned 0.
    ProtocolViolation { step: usize, vertex: Vertex, color: Color },
    /// A construction invariant failed; indicates a bug, not an input error.
    Internal(&'static str),
}

impl fmt::Display for AdversaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversaryError::TargetTooSmall { ell } => {
                write!(f, "target color count must be at least 3, got {ell}")
            }
            AdversaryError::AlgorithmFailed { step, error } => {
                write!(f, "algorithm failed at step {step}: {error}")
            }
            AdversaryError::ProtocolViolation { step, vertex, color } => {
                write!(f, "improper color {color} for vertex {vertex} at step {step}")
            }
            AdversaryError::Internal(msg) => write!(f, "internal adversary error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AdversaryError {}

/// Outcome of one probe pair.
#[derive(Clone, Debug)]
pub enum ProbeOutcome {
    /// Pattern intact: the colors answered for the advice-1 and advice-0
    /// probes (distinct, and consistent with all earlier probes).
    Pair(ProbePair),
    Inconsistent(InconsistencyWitness),
}

#[derive(Clone, Debug)]
pub struct ProbePair {
    pub advice1: (Vertex, Color),
    pub advice0: (Vertex, Color),
}

enum Built {
    Tree(Subtree),
    Halted(InconsistencyWitness),
}

struct Subtree {
    /// Vertices in reveal order.
    vertices: Vec<Vertex>,
}

/// A live game against one algorithm instance.
pub struct AdversaryGame<'a> {
    alg: &'a mut dyn OnlineColorer,
    colors: Vec<Color>,
    advice: Vec<u8>,
    edges: Vec<(Vertex, Vertex)>,
    steps: Vec<TranscriptStep>,
    /// Still-isolated probes by advice bit.
    isolated: [Vec<Vertex>; 2],
    /// Established group colors (first probe of each bit pins them).
    group_color: [Option<Color>; 2],
    budget: Option<usize>,
}

impl<'a> AdversaryGame<'a> {
    pub fn new(algorithm: &'a mut dyn OnlineColorer) -> Self {
        algorithm.reset();
        AdversaryGame {
            alg: algorithm,
            colors: Vec::new(),
            advice: Vec::new(),
            edges: Vec::new(),
            steps: Vec::new(),
            isolated: [Vec::new(), Vec::new()],
            group_color: [None, None],
            budget: None,
        }
    }

    pub fn vertices_used(&self) -> usize {
        self.colors.len()
    }

    /// Reveals a fresh vertex adjacent to `neighbors` with the given advice
    /// bit and records the algorithm's answer.
    fn reveal(&mut self, neighbors: &[Vertex], advice_bit: bool) -> Result<Vertex, AdversaryError> {
        let step = self.colors.len();
        if let Some(b) = self.budget {
            if step >= b {
                return Err(AdversaryError::Internal("vertex budget exceeded"));
            }
        }
        let v = step as Vertex;
        let mut revealed: Vec<(Vertex, Color)> = neighbors
            .iter()
            .map(|&u| (u, self.colors[u as usize]))
            .collect();
        revealed.sort_unstable_by_key(|&(u, _)| u);
        let color = self
            .alg
            .color_next(v, &revealed, Some(advice_bit))
            .map_err(|error| AdversaryError::AlgorithmFailed { step, error })?;
        if color == 0 || revealed.iter().any(|&(_, c)| c == color) {
            return Err(AdversaryError::ProtocolViolation { step, vertex: v, color });
        }
        self.colors.push(color);
        self.advice.push(u8::from(advice_bit));
        for &u in neighbors {
            self.edges.push((u.min(v), u.max(v)));
        }
        self.steps.push(TranscriptStep {
            vertex: v,
            revealed_neighbors: revealed.iter().map(|&(u, _)| u).collect(),
            advice: Some(advice_bit),
            color,
        });
        Ok(v)
    }

    /// Presents one isolated probe per advice bit (1 first, then 0) and
    /// checks the global probe pattern. A violation escalates to the
    /// punishing pair of vertices and ends the game with a witness.
    pub fn probe_isolated(&mut self) -> Result<ProbeOutcome, AdversaryError> {
        let v1 = self.reveal(&[], true)?;
        self.isolated[1].push(v1);
        if self.pattern_broken(v1, 1) {
            return Ok(ProbeOutcome::Inconsistent(self.escalate()?));
        }
        let v0 = self.reveal(&[], false)?;
        self.isolated[0].push(v0);
        if self.pattern_broken(v0, 0) {
            return Ok(ProbeOutcome::Inconsistent(self.escalate()?));
        }
        Ok(ProbeOutcome::Pair(ProbePair {
            advice1: (v1, self.colors[v1 as usize]),
            advice0: (v0, self.colors[v0 as usize]),
        }))
    }

    /// True if this probe's color conflicts with the established pattern
    /// (same-group probes must share a color; the two groups must differ).
    /// Pins the group color on first sight.
    fn pattern_broken(&mut self, v: Vertex, bit: usize) -> bool {
        let c = self.colors[v as usize];
        if let Some(other) = self.group_color[bit ^ 1] {
            if other == c {
                return true;
            }
        }
        match self.group_color[bit] {
            Some(own) => own != c,
            None => {
                self.group_color[bit] = Some(c);
                false
            }
        }
    }

    /// Reveals the punishing vertices: one adjacent to every still-isolated
    /// advice-0 probe, one adjacent to every still-isolated advice-1 probe
    /// and to the first. Their advice bits complete the gadget component
    /// into an error-free-advised tree.
    fn escalate(&mut self) -> Result<InconsistencyWitness, AdversaryError> {
        let iso0 = self.isolated[0].clone();
        let iso1 = self.isolated[1].clone();
        if iso0.is_empty() || iso1.is_empty() {
            // Probes come in pairs, so both groups are populated whenever a
            // later probe can conflict with an established color.
            return Err(AdversaryError::Internal("gadget requires both probe groups"));
        }
        let prior_budget = self.budget.take();
        let w0 = self.reveal(&iso0, true)?;
        let mut nbrs1 = iso1.clone();
        nbrs1.push(w0);
        let w1 = self.reveal(&nbrs1, false)?;
        self.budget = prior_budget;

        let mut component: Vec<Vertex> = iso0;
        component.extend_from_slice(&iso1);
        component.push(w0);
        component.push(w1);
        component.sort_unstable();

        let mut index_of = alloc::collections::BTreeMap::new();
        for (i, &v) in component.iter().enumerate() {
            index_of.insert(v, i as Vertex);
        }
        let sub_edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .filter(|(u, v)| index_of.contains_key(u) && index_of.contains_key(v))
            .map(|(u, v)| (index_of[u], index_of[v]))
            .collect();
        let completion = Graph::from_edges(component.len(), sub_edges)
            .map_err(|_| AdversaryError::Internal("gadget component is not simple"))?;
        let completion_advice: Vec<u8> =
            component.iter().map(|&v| self.advice[v as usize]).collect();
        let distinct: BTreeSet<Color> = component
            .iter()
            .map(|&v| self.colors[v as usize])
            .collect();
        if distinct.len() < 3 {
            return Err(AdversaryError::Internal("gadget failed to force three colors"));
        }
        Ok(InconsistencyWitness {
            component_vertices: component,
            completion,
            completion_advice,
            distinct_colors: distinct.len() as u32,
        })
    }

    /// Builds a subtree on which the algorithm uses at least `level` colors
    /// (or halts with a witness).
    fn build(&mut self, level: u32) -> Result<Built, AdversaryError> {
        let pair = match self.probe_isolated()? {
            ProbeOutcome::Pair(p) => p,
            ProbeOutcome::Inconsistent(w) => return Ok(Built::Halted(w)),
        };
        let (v1, c1) = pair.advice1;
        let (v0, c0) = pair.advice0;
        let mut vertices = vec![v1, v0];
        let mut representatives = vec![v1, v0];
        let mut excluded: BTreeSet<Color> = [c1, c0].into_iter().collect();

        for sub_level in 3..level {
            match self.build(sub_level)? {
                Built::Halted(w) => return Ok(Built::Halted(w)),
                Built::Tree(sub) => {
                    // The subtree carries at least `sub_level` distinct
                    // colors while only `sub_level - 1` are excluded, so a
                    // fresh color exists; take the smallest, represented by
                    // its earliest-revealed vertex.
                    let fresh = sub
                        .vertices
                        .iter()
                        .map(|&v| self.colors[v as usize])
                        .filter(|c| !excluded.contains(c))
                        .min()
                        .ok_or(AdversaryError::Internal("no fresh color in subtree"))?;
                    let rep = *sub
                        .vertices
                        .iter()
                        .find(|&&v| self.colors[v as usize] == fresh)
                        .expect("fresh color has a carrier");
                    excluded.insert(fresh);
                    representatives.push(rep);
                    vertices.extend_from_slice(&sub.vertices);
                }
            }
        }

        let w = self.reveal(&representatives, false)?;
        vertices.push(w);
        self.isolated[1].retain(|&p| p != v1);
        self.isolated[0].retain(|&p| p != v0);
        Ok(Built::Tree(Subtree { vertices }))
    }

    fn finish(self, verdict: Verdict) -> Result<AdversaryOutcome, AdversaryError> {
        let n = self.colors.len();
        let graph = Graph::from_edges(n, self.edges)
            .map_err(|_| AdversaryError::Internal("built instance is not simple"))?;
        let transcript = ColoringTranscript::from_steps(self.steps, n);
        Ok(AdversaryOutcome {
            graph,
            delivered_advice: self.advice,
            transcript,
            verdict,
            vertices_used: n,
        })
    }
}

/// Plays the full game for a target of `ell >= 3` colors.
///
/// Against any properly-coloring algorithm this returns either
/// `Forced(ell)` — a tree on exactly `3 * 2^(ell-3)` vertices on which the
/// algorithm used at least `ell` colors — or an inconsistency witness.
pub fn force(ell: u32, algorithm: &mut dyn OnlineColorer) -> Result<AdversaryOutcome, AdversaryError> {
    if ell < 3 {
        return Err(AdversaryError::TargetTooSmall { ell });
    }
    let expected = 3usize << (ell - 3);
    let mut game = AdversaryGame::new(algorithm);
    game.budget = Some(expected);
    match game.build(ell)? {
        Built::Tree(sub) => {
            if game.vertices_used() != expected {
                return Err(AdversaryError::Internal("vertex budget mismatch"));
            }
            let distinct: BTreeSet<Color> = sub
                .vertices
                .iter()
                .map(|&v| game.colors[v as usize])
                .collect();
            if distinct.len() < ell as usize {
                return Err(AdversaryError::Internal("construction forced too few colors"));
            }
            game.finish(Verdict::Forced { colors: ell })
        }
        Built::Halted(witness) => game.finish(Verdict::Inconsistent(witness)),
    }
}
