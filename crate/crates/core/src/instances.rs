//! Instance generators for the experiment harness.
//!
//! Generation is a pure function of `(family, parameters, seed)`: the same
//! spec always yields a byte-identical graph. Random labeled trees are drawn
//! via uniform Prüfer sequences, which are in bijection with labeled trees,
//! so every labeled tree on `n` vertices is equally likely.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use rand::Rng;

use crate::graph::{Graph, Vertex};
use crate::rng::{seeded, SeededRng};

/// Instance family plus family-specific parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path,
    Star,
    /// Requires `n = 2^h - 1`.
    CompleteBinaryTree,
    /// A center vertex with `legs` paths of `leg_len` vertices each;
    /// requires `n = 1 + legs * leg_len`.
    Spider { legs: u32, leg_len: u32 },
    RandomLabeledTree,
    /// Fixed shores of sizes `ceil(n/2)` and `floor(n/2)`; each cross edge
    /// present independently with the given probability.
    RandomBipartite { edge_probability: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceError {
    EmptyInstance,
    NotCompleteBinarySize { n: usize },
    SpiderSizeMismatch { n: usize, legs: u32, leg_len: u32 },
    ProbabilityOutOfRange { p: f64 },
    PruferLengthMismatch { expected: usize, got: usize },
    PruferLabelOutOfRange { index: usize, label: Vertex, n: usize },
    NotATree,
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::EmptyInstance => write!(f, "instance size n must be at least 1"),
            InstanceError::NotCompleteBinarySize { n } => {
                write!(f, "complete binary tree needs n = 2^h - 1, got n = {n}")
            }
            InstanceError::SpiderSizeMismatch { n, legs, leg_len } => write!(
                f,
                "spider with {legs} legs of length {leg_len} has {} vertices, got n = {n}",
                1 + (*legs as usize) * (*leg_len as usize)
            ),
            InstanceError::ProbabilityOutOfRange { p } => {
                write!(f, "edge probability must be in [0, 1], got {p}")
            }
            InstanceError::PruferLengthMismatch { expected, got } => {
                write!(f, "Prüfer sequence must have length n - 2 = {expected}, got {got}")
            }
            InstanceError::PruferLabelOutOfRange { index, label, n } => {
                write!(f, "Prüfer label {label} at position {index} outside [0, {n})")
            }
            InstanceError::NotATree => write!(f, "graph is not a tree"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InstanceError {}

/// Generates an instance from its spec. Trees are connected with exactly
/// `n - 1` edges; random bipartite graphs are bipartite by construction.
pub fn generate(spec: &InstanceSpec) -> Result<Graph, InstanceError> {
    let n = spec.n;
    if n == 0 {
        return Err(InstanceError::EmptyInstance);
    }
    match spec.family {
        Family::Path => {
            Ok(build(n, (1..n).map(|i| ((i - 1) as Vertex, i as Vertex))))
        }
        Family::Star => Ok(build(n, (1..n).map(|i| (0, i as Vertex)))),
        Family::CompleteBinaryTree => {
            if !(n + 1).is_power_of_two() {
                return Err(InstanceError::NotCompleteBinarySize { n });
            }
            let edges = (1..n).map(|child| (((child - 1) / 2) as Vertex, child as Vertex));
            Ok(build(n, edges))
        }
        Family::Spider { legs, leg_len } => {
            if n != 1 + (legs as usize) * (leg_len as usize) {
                return Err(InstanceError::SpiderSizeMismatch { n, legs, leg_len });
            }
            let mut edges = Vec::with_capacity(n - 1);
            for leg in 0..legs as usize {
                let base = 1 + leg * leg_len as usize;
                edges.push((0, base as Vertex));
                for i in 1..leg_len as usize {
                    edges.push(((base + i - 1) as Vertex, (base + i) as Vertex));
                }
            }
            Ok(build(n, edges))
        }
        Family::RandomLabeledTree => {
            let mut rng = seeded(spec.seed);
            Ok(random_labeled_tree(n, &mut rng))
        }
        Family::RandomBipartite { edge_probability } => {
            if !(0.0..=1.0).contains(&edge_probability) {
                return Err(InstanceError::ProbabilityOutOfRange {
                    p: edge_probability,
                });
            }
            let mut rng = seeded(spec.seed);
            Ok(random_bipartite(n, edge_probability, &mut rng))
        }
    }
}

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid graph")
}

/// Uniform random labeled tree on `n` vertices via a uniform Prüfer
/// sequence.
pub fn random_labeled_tree(n: usize, rng: &mut SeededRng) -> Graph {
    if n <= 1 {
        return build(n, []);
    }
    if n == 2 {
        return build(2, [(0, 1)]);
    }
    let sequence: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n as Vertex)).collect();
    prufer_decode(&sequence, n).expect("uniform sequence is always valid")
}

/// Random bipartite graph: shores `[0, ceil(n/2))` and `[ceil(n/2), n)`,
/// each cross edge present independently with probability `p`.
pub fn random_bipartite(n: usize, p: f64, rng: &mut SeededRng) -> Graph {
    let split = n.div_ceil(2);
    let mut edges = Vec::new();
    for u in 0..split {
        for v in split..n {
            if rng.gen_bool(p) {
                edges.push((u as Vertex, v as Vertex));
            }
        }
    }
    build(n, edges)
}

/// Decodes a Prüfer sequence into the unique labeled tree with that
/// sequence. The sequence must have length `n - 2` with labels in `[0, n)`.
pub fn prufer_decode(sequence: &[Vertex], n: usize) -> Result<Graph, InstanceError> {
    if n < 2 {
        return Err(InstanceError::PruferLengthMismatch {
            expected: 0,
            got: sequence.len(),
        });
    }
    if sequence.len() != n - 2 {
        return Err(InstanceError::PruferLengthMismatch {
            expected: n - 2,
            got: sequence.len(),
        });
    }
    for (index, &label) in sequence.iter().enumerate() {
        if (label as usize) >= n {
            return Err(InstanceError::PruferLabelOutOfRange { index, label, n });
        }
    }

    let mut degree = vec![1u32; n];
    for &a in sequence {
        degree[a as usize] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> = (0..n as Vertex)
        .filter(|&v| degree[v as usize] == 1)
        .map(Reverse)
        .collect();

    let mut edges = Vec::with_capacity(n - 1);
    for &a in sequence {
        let Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf, a));
        degree[leaf as usize] -= 1;
        degree[a as usize] -= 1;
        if degree[a as usize] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().expect("two vertices remain");
    let Reverse(v) = leaves.pop().expect("two vertices remain");
    edges.push((u, v));

    Ok(build(n, edges))
}

/// Encodes a labeled tree into its Prüfer sequence: repeatedly remove the
/// smallest leaf and record its neighbor. Inverse of [`prufer_decode`];
/// implemented independently so the pair cross-checks itself.
pub fn prufer_encode(graph: &Graph) -> Result<Vec<Vertex>, InstanceError> {
    if !graph.is_tree() {
        return Err(InstanceError::NotATree);
    }
    let n = graph.vertex_count();
    if n < 2 {
        return Err(InstanceError::NotATree);
    }
    let mut degree: Vec<u32> = (0..n as Vertex).map(|v| graph.degree(v) as u32).collect();
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<Vertex>> = (0..n as Vertex)
        .filter(|&v| degree[v as usize] == 1)
        .map(Reverse)
        .collect();

    let mut sequence = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let Reverse(leaf) = leaves.pop().expect("tree always has a leaf");
        removed[leaf as usize] = true;
        let neighbor = *graph
            .neighbors(leaf)
            .iter()
            .find(|&&w| !removed[w as usize])
            .expect("a non-removed neighbor exists");
        sequence.push(neighbor);
        degree[neighbor as usize] -= 1;
        if degree[neighbor as usize] == 1 {
            leaves.push(Reverse(neighbor));
        }
    }
    Ok(sequence)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_two_is_single_edge() {
        let g = generate(&InstanceSpec {
            family: Family::Path,
            n: 2,
            seed: 0,
        })
        .unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn star_of_four() {
        let g = generate(&InstanceSpec {
            family: Family::Star,
            n: 4,
            seed: 0,
        })
        .unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn complete_binary_tree_size_check() {
        assert!(matches!(
            generate(&InstanceSpec {
                family: Family::CompleteBinaryTree,
                n: 6,
                seed: 0
            }),
            Err(InstanceError::NotCompleteBinarySize { n: 6 })
        ));
        let g = generate(&InstanceSpec {
            family: Family::CompleteBinaryTree,
            n: 7,
            seed: 0,
        })
        .unwrap();
        assert!(g.is_tree());
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn spider_shape() {
        let g = generate(&InstanceSpec {
            family: Family::Spider { legs: 3, leg_len: 2 },
            n: 7,
            seed: 0,
        })
        .unwrap();
        assert!(g.is_tree());
        assert_eq!(g.degree(0), 3);
        assert!(matches!(
            generate(&InstanceSpec {
                family: Family::Spider { legs: 3, leg_len: 2 },
                n: 8,
                seed: 0
            }),
            Err(InstanceError::SpiderSizeMismatch { .. })
        ));
    }

    #[test]
    fn prufer_decode_two_vertices() {
        let g = prufer_decode(&[], 2).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn prufer_decode_star_center_zero() {
        // Hand execution: degrees (3,1,1,1); leaves 1,2,3 joined to 0 in
        // order, then the final pair (0,3).
        let g = prufer_decode(&[0, 0], 4).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn prufer_decode_star_center_one() {
        let g = prufer_decode(&[1, 1], 4).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn prufer_rejects_bad_input() {
        assert!(matches!(
            prufer_decode(&[0], 4),
            Err(InstanceError::PruferLengthMismatch { expected: 2, got: 1 })
        ));
        assert!(matches!(
            prufer_decode(&[4, 0], 4),
            Err(InstanceError::PruferLabelOutOfRange { index: 0, label: 4, n: 4 })
        ));
    }

    #[test]
    fn random_tree_is_tree_and_deterministic() {
        let spec = InstanceSpec {
            family: Family::RandomLabeledTree,
            n: 100,
            seed: 12345,
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert!(a.is_tree());
    }

    #[test]
    fn random_bipartite_is_bipartite() {
        let spec = InstanceSpec {
            family: Family::RandomBipartite {
                edge_probability: 0.3,
            },
            n: 40,
            seed: 7,
        };
        let g = generate(&spec).unwrap();
        assert!(crate::graph::bipartition(&g).is_ok());
    }

    #[test]
    fn probability_domain_checked() {
        assert!(matches!(
            generate(&InstanceSpec {
                family: Family::RandomBipartite {
                    edge_probability: 1.5
                },
                n: 4,
                seed: 0
            }),
            Err(InstanceError::ProbabilityOutOfRange { .. })
        ));
    }
}
