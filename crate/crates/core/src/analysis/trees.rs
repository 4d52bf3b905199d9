//! Exhaustive enumeration of small trees.
//!
//! Rooted trees are generated as canonical level sequences with the classic
//! constant-time successor rule (start from the path sequence
//! `1, 2, …, n`; repeatedly find the last entry greater than 2 and re-copy
//! the block starting at its parent). Free trees are obtained by
//! deduplicating the rooted ones under a centroid-rooted canonical form.
//! Counts are pinned in tests against the known sequences for rooted
//! (1, 1, 2, 4, 9, 20, 48, 115, 286, 719, …) and free
//! (1, 1, 1, 2, 3, 6, 11, 23, 47, 106, …) trees.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};

/// All canonical level sequences of rooted trees on `n` vertices
/// (root at level 1).
pub fn rooted_level_sequences(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut level: Vec<u32> = (1..=n as u32).collect();
    loop {
        out.push(level.clone());
        // Last position with level > 2; if none the current sequence is the
        // star and the enumeration is complete.
        let Some(p) = level.iter().rposition(|&l| l > 2) else {
            break;
        };
        // Parent position of p: last position before p one level up.
        let q = level[..p]
            .iter()
            .rposition(|&l| l == level[p] - 1)
            .expect("parent exists for level > 2");
        for i in p..n {
            level[i] = level[i - (p - q)];
        }
    }
    out
}

/// Converts a rooted level sequence into the corresponding free tree
/// (vertices in preorder, so vertex 0 is the root).
pub fn level_sequence_to_graph(level: &[u32]) -> Graph {
    let n = level.len();
    let mut latest_at_level = vec![0 as Vertex; n + 2];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (i, &l) in level.iter().enumerate() {
        if l > 1 {
            edges.push((latest_at_level[(l - 1) as usize], i as Vertex));
        }
        latest_at_level[l as usize] = i as Vertex;
    }
    Graph::from_edges(n, edges).expect("level sequence yields a valid tree")
}

/// Centroid(s) of a tree: the one or two vertices minimizing the largest
/// component left after their removal.
fn centroids(graph: &Graph) -> Vec<Vertex> {
    let n = graph.vertex_count();
    if n == 1 {
        return vec![0];
    }
    // Iterative post-order from vertex 0 to get subtree sizes.
    let mut parent = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0 as Vertex];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in graph.neighbors(u) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                parent[w as usize] = u;
                stack.push(w);
            }
        }
    }
    let mut subtree = vec![1usize; n];
    for &u in order.iter().rev() {
        if parent[u as usize] != u32::MAX {
            subtree[parent[u as usize] as usize] += subtree[u as usize];
        }
    }
    let mut best = n;
    let mut cents = Vec::new();
    for v in 0..n as Vertex {
        let mut largest = n - subtree[v as usize];
        for &w in graph.neighbors(v) {
            if parent[w as usize] == v {
                largest = largest.max(subtree[w as usize]);
            }
        }
        if largest < best {
            best = largest;
            cents.clear();
            cents.push(v);
        } else if largest == best {
            cents.push(v);
        }
    }
    cents
}

/// Canonical rooted encoding: `(` sorted child codes `)`.
fn rooted_code(graph: &Graph, root: Vertex, parent: Vertex) -> Vec<u8> {
    let mut child_codes: Vec<Vec<u8>> = graph
        .neighbors(root)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(graph, w, root))
        .collect();
    child_codes.sort();
    let mut code = Vec::with_capacity(2 + child_codes.iter().map(Vec::len).sum::<usize>());
    code.push(b'(');
    for c in child_codes {
        code.extend_from_slice(&c);
    }
    code.push(b')');
    code
}

/// Isomorphism-invariant canonical form of a free tree: the smallest
/// centroid-rooted encoding.
pub fn canonical_form(graph: &Graph) -> Vec<u8> {
    debug_assert!(graph.is_tree());
    centroids(graph)
        .into_iter()
        .map(|c| rooted_code(graph, c, u32::MAX))
        .min()
        .expect("tree has a centroid")
}

/// All pairwise non-isomorphic (free) trees on `n` vertices.
pub fn nonisomorphic_trees(n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for level in rooted_level_sequences(n) {
        let g = level_sequence_to_graph(&level);
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out
}
