//! Immutable simple undirected graphs and canonical 2-colorings.
//!
//! Vertices are dense ids `0..n`. A [`Graph`] is validated at construction
//! and never mutated afterwards, so it is safe to share across threads.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::hash::Fnv1a64;
use crate::reveal::Color;

/// Vertex identifier, dense in `[0, n)`.
pub type Vertex = u32;

/// An immutable simple undirected graph stored as a sorted edge list plus
/// per-vertex sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
}

/// A single defect in a proposed edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfLoop { vertex: Vertex },
    DuplicateEdge { u: Vertex, v: Vertex },
    EndpointOutOfRange { u: Vertex, v: Vertex, vertex_count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Violation::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            Violation::EndpointOutOfRange { u, v, vertex_count } => write!(
                f,
                "edge ({u}, {v}) has an endpoint outside [0, {vertex_count})"
            ),
        }
    }
}

/// All defects found in an edge list, in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// The first violated invariant, the one named by error messages.
    pub fn first(&self) -> &Violation {
        &self.violations[0]
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid graph: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ValidationReport {}

/// Checks that an edge list describes a simple graph on `vertex_count`
/// vertices: endpoints in range, no self-loops, no duplicate edges
/// (regardless of endpoint order).
pub fn validate_edges(
    vertex_count: usize,
    edges: &[(Vertex, Vertex)],
) -> Result<(), ValidationReport> {
    let mut violations = Vec::new();
    let mut seen = alloc::collections::BTreeSet::new();
    for &(u, v) in edges {
        if u == v {
            violations.push(Violation::SelfLoop { vertex: u });
            continue;
        }
        if (u as usize) >= vertex_count || (v as usize) >= vertex_count {
            violations.push(Violation::EndpointOutOfRange { u, v, vertex_count });
            continue;
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            violations.push(Violation::DuplicateEdge { u: key.0, v: key.1 });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ValidationReport { violations })
    }
}

impl Graph {
    /// Builds a validated graph. Edge endpoint order does not matter; edges
    /// are stored as `(min, max)` sorted lexicographically.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, ValidationReport> {
        let raw: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        validate_edges(vertex_count, &raw)?;
        let mut edges: Vec<(Vertex, Vertex)> =
            raw.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0 as Vertex];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.vertex_count > 0
            && self.edge_count() == self.vertex_count - 1
            && self.is_connected()
    }

    /// Stable content fingerprint over `(n, m, sorted edges)`; identical
    /// graphs hash identically across runs and platforms.
    pub fn instance_hash(&self) -> u64 {
        let mut h = Fnv1a64::new();
        h.write_u64(self.vertex_count as u64);
        h.write_u64(self.edges.len() as u64);
        for &(u, v) in &self.edges {
            h.write_u32(u);
            h.write_u32(v);
        }
        h.finish()
    }
}

/// A 2-coloring of a bipartite graph with per-vertex component ids.
///
/// Canonical choice: within each connected component the lowest vertex id
/// gets side 1, propagated by breadth-first traversal. This pins down the
/// "fixed optimal coloring" that prediction bits refer to, so error counts
/// are reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<u8>,
    component: Vec<u32>,
    component_count: usize,
}

impl Bipartition {
    pub fn side(&self, v: Vertex) -> u8 {
        self.side[v as usize]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side
    }

    pub fn component_of(&self, v: Vertex) -> u32 {
        self.component[v as usize]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn vertex_count(&self) -> usize {
        self.side.len()
    }

    /// The 2-coloring as colors `1` (side 1) and `2` (side 0).
    pub fn coloring(&self) -> Vec<Color> {
        self.side.iter().map(|&s| if s == 1 { 1 } else { 2 }).collect()
    }
}

/// An odd cycle returned when a graph is not 2-colorable. The sequence lists
/// the cycle's vertices; consecutive entries (and last-to-first) are edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycleWitness {
    pub cycle: Vec<Vertex>,
}

impl fmt::Display for OddCycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph is not bipartite; odd cycle: ")?;
        for (i, v) in self.cycle.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OddCycleWitness {}

/// Computes the canonical bipartition, or an odd-cycle witness if the graph
/// is not bipartite. Deterministic: the same graph always yields the same
/// sides.
pub fn bipartition(graph: &Graph) -> Result<Bipartition, OddCycleWitness> {
    let n = graph.vertex_count();
    const UNSET: u8 = u8::MAX;
    let mut side = vec![UNSET; n];
    let mut component = vec![0u32; n];
    let mut parent = vec![u32::MAX; n];
    let mut depth = vec![0u32; n];
    let mut component_count = 0u32;
    let mut queue = alloc::collections::VecDeque::new();

    for start in 0..n as Vertex {
        if side[start as usize] != UNSET {
            continue;
        }
        // `start` is the lowest id in its component: all smaller ids are
        // already colored.
        side[start as usize] = 1;
        component[start as usize] = component_count;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if side[w as usize] == UNSET {
                    side[w as usize] = 1 - side[u as usize];
                    component[w as usize] = component_count;
                    parent[w as usize] = u;
                    depth[w as usize] = depth[u as usize] + 1;
                    queue.push_back(w);
                } else if side[w as usize] == side[u as usize] {
                    return Err(OddCycleWitness {
                        cycle: odd_cycle(u, w, &parent, &depth),
                    });
                }
            }
        }
        component_count += 1;
    }

    Ok(Bipartition {
        side,
        component,
        component_count: component_count as usize,
    })
}

/// Reconstructs the odd cycle closed by the non-tree edge `(u, w)` from BFS
/// parent pointers, then canonicalizes it (smallest vertex first, smaller
/// second element).
fn odd_cycle(u: Vertex, w: Vertex, parent: &[u32], depth: &[u32]) -> Vec<Vertex> {
    let mut path_u = vec![u];
    let mut path_w = vec![w];
    let (mut a, mut b) = (u, w);
    while depth[a as usize] > depth[b as usize] {
        a = parent[a as usize];
        path_u.push(a);
    }
    while depth[b as usize] > depth[a as usize] {
        b = parent[b as usize];
        path_w.push(b);
    }
    while a != b {
        a = parent[a as usize];
        path_u.push(a);
        b = parent[b as usize];
        path_w.push(b);
    }
    // path_u ends at the common ancestor; append path_w reversed without it.
    path_w.pop();
    path_u.extend(path_w.into_iter().rev());

    let min_pos = path_u
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    path_u.rotate_left(min_pos);
    if path_u.len() > 2 && path_u[1] > *path_u.last().unwrap() {
        path_u[1..].reverse();
    }
    path_u
}

/// True iff every edge has distinctly colored endpoints.
///
/// `colors` must assign a color to every vertex (length `n`).
pub fn is_proper_coloring(graph: &Graph, colors: &[Color]) -> bool {
    assert_eq!(
        colors.len(),
        graph.vertex_count(),
        "colors must cover all vertices"
    );
    graph
        .edges()
        .iter()
        .all(|&(u, v)| colors[u as usize] != colors[v as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_valid_graph() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn self_loop_rejected() {
        let err = Graph::from_edges(1, [(0, 0)]).unwrap_err();
        assert_eq!(err.first(), &Violation::SelfLoop { vertex: 0 });
    }

    #[test]
    fn out_of_range_rejected() {
        let err = Graph::from_edges(3, [(0, 5)]).unwrap_err();
        assert_eq!(
            err.first(),
            &Violation::EndpointOutOfRange {
                u: 0,
                v: 5,
                vertex_count: 3
            }
        );
    }

    #[test]
    fn duplicate_rejected_regardless_of_orientation() {
        let err = Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err.first(), &Violation::DuplicateEdge { u: 0, v: 1 });
    }

    #[test]
    fn all_violations_reported() {
        let err = Graph::from_edges(2, [(0, 0), (0, 5), (0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err.violations.len(), 3);
    }

    #[test]
    fn path_bipartition_is_canonical() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let b = bipartition(&g).unwrap();
        assert_eq!(b.sides(), &[1, 0, 1]);
        assert_eq!(b.component_count(), 1);
    }

    #[test]
    fn triangle_yields_odd_cycle() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let w = bipartition(&g).unwrap_err();
        assert_eq!(w.cycle, vec![0, 1, 2]);
    }

    #[test]
    fn components_canonicalized_independently() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let b = bipartition(&g).unwrap();
        assert_eq!(b.sides(), &[1, 0, 1, 0]);
        assert_eq!(b.component_count(), 2);
        assert_eq!(b.component_of(0), b.component_of(1));
        assert_ne!(b.component_of(1), b.component_of(2));
    }

    #[test]
    fn five_cycle_witness_is_odd() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let w = bipartition(&g).unwrap_err();
        assert_eq!(w.cycle.len() % 2, 1);
        // Every consecutive pair (and the closing pair) must be an edge.
        for i in 0..w.cycle.len() {
            let a = w.cycle[i];
            let b = w.cycle[(i + 1) % w.cycle.len()];
            assert!(g.has_edge(a, b), "cycle step {a}-{b} is not an edge");
        }
    }

    #[test]
    fn proper_coloring_checks() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(is_proper_coloring(&g, &[1, 2]));
        assert!(!is_proper_coloring(&g, &[1, 1]));
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(is_proper_coloring(&p3, &[1, 2, 3]));
    }

    #[test]
    fn bipartition_coloring_is_proper() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)]).unwrap();
        let b = bipartition(&g).unwrap();
        assert!(is_proper_coloring(&g, &b.coloring()));
    }

    #[test]
    fn instance_hash_stable_under_edge_order() {
        let a = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, [(2, 3), (1, 0), (2, 1)]).unwrap();
        assert_eq!(a.instance_hash(), b.instance_hash());
    }
}
