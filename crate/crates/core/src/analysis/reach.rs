//! Oriented reach trees.
//!
//! Orient every edge of a tree from the earlier-arriving endpoint to the
//! later one. The reach tree of `v` is the subtree of edges pointing towards
//! `v`: a vertex `w` belongs to it exactly when arrival times strictly
//! increase along the path from `w` to `v`. Rebuilt here from the graph and
//! the arrival times alone, independent of any algorithm internals, so it
//! can sit in judgment over transcripts.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};

/// The subtree of edges oriented towards `root`, for one arrival order.
#[derive(Clone, Debug)]
pub struct OrientedReachTree {
    root: Vertex,
    member: Vec<bool>,
    /// Members sorted by arrival time (so in-neighbors precede their heads).
    members_by_arrival: Vec<Vertex>,
    /// Per vertex: the members pointing at it (its children towards `root`
    /// in the rooted view that arrived earlier).
    in_neighbors: Vec<Vec<Vertex>>,
}

impl OrientedReachTree {
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.member[v as usize]
    }

    /// Member vertices ordered by arrival time, root last.
    pub fn members_by_arrival(&self) -> &[Vertex] {
        &self.members_by_arrival
    }

    pub fn member_count(&self) -> usize {
        self.members_by_arrival.len()
    }

    /// In-edges of `v` inside the reach tree (tails arrived before `v`).
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_neighbors[v as usize]
    }
}

/// Builds the reach tree of `root` for a tree (or forest) instance.
///
/// `arrival_time` must be the per-vertex step indices of one run, i.e. a
/// permutation of `0..n`.
pub fn reach_tree(graph: &Graph, arrival_time: &[u32], root: Vertex) -> OrientedReachTree {
    let n = graph.vertex_count();
    debug_assert_eq!(arrival_time.len(), n);

    // Root the tree at `root`; a vertex is a member iff its parent is and it
    // arrived strictly before its parent. BFS order guarantees parents are
    // classified first.
    let mut member = vec![false; n];
    let mut visited = vec![false; n];
    let mut in_neighbors = vec![Vec::new(); n];
    let mut members_by_arrival = vec![root];
    member[root as usize] = true;
    visited[root as usize] = true;

    let mut queue = VecDeque::new();
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        for &w in graph.neighbors(u) {
            if visited[w as usize] {
                continue;
            }
            visited[w as usize] = true;
            if member[u as usize] && arrival_time[w as usize] < arrival_time[u as usize] {
                member[w as usize] = true;
                in_neighbors[u as usize].push(w);
                members_by_arrival.push(w);
            }
            queue.push_back(w);
        }
    }

    members_by_arrival.sort_unstable_by_key(|&v| arrival_time[v as usize]);

    OrientedReachTree {
        root,
        member,
        members_by_arrival,
        in_neighbors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| ((i - 1) as Vertex, i as Vertex))).unwrap()
    }

    #[test]
    fn star_center_arriving_first_is_alone() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = reach_tree(&g, &[0, 1, 2, 3], 0);
        assert_eq!(t.members_by_arrival(), &[0]);
        assert!(t.in_neighbors(0).is_empty());
    }

    #[test]
    fn fully_increasing_path() {
        let g = path(3);
        let t = reach_tree(&g, &[0, 1, 2], 2);
        assert_eq!(t.member_count(), 3);
        assert!(t.contains(0) && t.contains(1) && t.contains(2));
        assert_eq!(t.in_neighbors(2), &[1]);
        assert_eq!(t.in_neighbors(1), &[0]);
    }

    #[test]
    fn broken_orientation_cuts_membership() {
        // Path a-b-c with times (3, 1, 2): b -> c increases, a does not.
        let g = path(3);
        let t = reach_tree(&g, &[2, 0, 1], 2);
        assert!(!t.contains(0));
        assert!(t.contains(1));
        assert_eq!(t.members_by_arrival(), &[1, 2]);
    }

    #[test]
    fn membership_matches_definition_on_random_trees() {
        use crate::instances::random_labeled_tree;
        use crate::reveal::ArrivalOrder;
        use crate::rng::seeded;

        let mut rng = seeded(404);
        for _ in 0..50 {
            let g = random_labeled_tree(30, &mut rng);
            let order = ArrivalOrder::sample_from(30, &mut rng);
            let time = order.positions();
            for root in 0..30 as Vertex {
                let t = reach_tree(&g, &time, root);
                for w in 0..30 as Vertex {
                    assert_eq!(
                        t.contains(w),
                        increases_toward(&g, &time, w, root),
                        "root {root}, w {w}"
                    );
                }
            }
        }
    }

    /// Independent membership oracle: walk the unique tree path from `w` to
    /// `root` and check times strictly increase.
    fn increases_toward(graph: &Graph, time: &[u32], w: Vertex, root: Vertex) -> bool {
        if w == root {
            return true;
        }
        // Parents when rooted at `root` via DFS.
        let n = graph.vertex_count();
        let mut parent = vec![u32::MAX; n];
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        seen[root as usize] = true;
        while let Some(u) = stack.pop() {
            for &x in graph.neighbors(u) {
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    parent[x as usize] = u;
                    stack.push(x);
                }
            }
        }
        let mut cur = w;
        while cur != root {
            let p = parent[cur as usize];
            if p == u32::MAX || time[cur as usize] >= time[p as usize] {
                return false;
            }
            cur = p;
        }
        true
    }
}
