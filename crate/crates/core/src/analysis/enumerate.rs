//! Exact distribution of the color count over all `n!` arrival orders.
//!
//! Small instances only: `n!` runs with exact integer counting, so
//! probabilities and expectations are exact rationals (denominators divide
//! `n!`). Enumeration walks permutations in lexicographic order and can be
//! restricted to a rank range, so disjoint blocks can run on separate
//! threads and merge commutatively.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algorithms::Registry;
use crate::graph::{Graph, Vertex};
use crate::reveal::{Color, OnlineColorer, PredictionVector, RunError};

/// Default refusal threshold for exhaustive enumeration (9! = 362880 runs).
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// Exact distribution of `X` (colors used) over all arrival orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDistribution {
    pub instance_hash: u64,
    pub algorithm: String,
    pub n: usize,
    counts: BTreeMap<Color, u64>,
    total: u64,
}

impl ExactDistribution {
    /// Orders examined (the full distribution has `total = n!`).
    pub fn total_orders(&self) -> u64 {
        self.total
    }

    /// Count of orders per value of `X`.
    pub fn counts(&self) -> &BTreeMap<Color, u64> {
        &self.counts
    }

    pub fn probability_eq(&self, x: Color) -> BigRational {
        ratio(self.counts.get(&x).copied().unwrap_or(0), self.total)
    }

    /// `P[X >= ell]`, which for a max-of-colors variable is exactly
    /// `P[some vertex gets a color >= ell]`.
    pub fn probability_at_least(&self, ell: Color) -> BigRational {
        let c = self
            .counts
            .iter()
            .filter(|&(&x, _)| x >= ell)
            .map(|(_, &k)| k)
            .sum::<u64>();
        ratio(c, self.total)
    }

    /// Exact expectation of `X`.
    pub fn expectation(&self) -> BigRational {
        if self.total == 0 {
            return BigRational::new(BigInt::from(0), BigInt::from(1));
        }
        let weighted: BigInt = self
            .counts
            .iter()
            .map(|(&x, &k)| BigInt::from(x) * BigInt::from(k))
            .sum();
        BigRational::new(weighted, BigInt::from(self.total))
    }

    pub fn max_colors(&self) -> Color {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Folds a partial distribution (same instance, algorithm, and
    /// predictions) into this one.
    pub fn merge(&mut self, other: &ExactDistribution) {
        assert_eq!(self.instance_hash, other.instance_hash);
        assert_eq!(self.algorithm, other.algorithm);
        for (&x, &k) in &other.counts {
            *self.counts.entry(x).or_insert(0) += k;
        }
        self.total += other.total;
    }
}

fn ratio(num: u64, den: u64) -> BigRational {
    if den == 0 {
        return BigRational::new(BigInt::from(0), BigInt::from(1));
    }
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq)]
pub enum EnumerationError {
    OverCap { n: usize, cap: usize },
    UnknownAlgorithm(String),
    Run(RunError),
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationError::OverCap { n, cap } => write!(
                f,
                "refusing to enumerate {n}! orders (cap n <= {cap}); use Monte Carlo instead"
            ),
            EnumerationError::UnknownAlgorithm(name) => write!(f, "unknown algorithm {name:?}"),
            EnumerationError::Run(e) => write!(f, "run failed during enumeration: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EnumerationError {}

/// `n!` for small `n` (fits u64 up to n = 20).
pub fn small_factorial(n: usize) -> u64 {
    assert!(n <= 20, "factorial overflows u64");
    (1..=n as u64).product()
}

/// Runs `algorithm` under every arrival order of `graph` and returns the
/// exact distribution of `X`. Refuses `n > cap`.
pub fn enumerate_orders(
    graph: &Graph,
    registry: &Registry,
    algorithm: &str,
    predictions: Option<&PredictionVector>,
    cap: usize,
) -> Result<ExactDistribution, EnumerationError> {
    let n = graph.vertex_count();
    let cap = cap.min(20); // beyond 20, n! overflows u64 anyway
    if n > cap {
        return Err(EnumerationError::OverCap { n, cap });
    }
    enumerate_orders_in_rank_range(graph, registry, algorithm, predictions, cap, 0..small_factorial(n))
}

/// Enumerates only the orders with lexicographic ranks in `ranks`. Partial
/// results merge with [`ExactDistribution::merge`]; the union of disjoint
/// rank blocks covering `0..n!` equals the full enumeration.
pub fn enumerate_orders_in_rank_range(
    graph: &Graph,
    registry: &Registry,
    algorithm: &str,
    predictions: Option<&PredictionVector>,
    cap: usize,
    ranks: Range<u64>,
) -> Result<ExactDistribution, EnumerationError> {
    let n = graph.vertex_count();
    let cap = cap.min(20);
    if n > cap {
        return Err(EnumerationError::OverCap { n, cap });
    }
    let mut alg = registry
        .create(algorithm)
        .ok_or_else(|| EnumerationError::UnknownAlgorithm(String::from(algorithm)))?;

    let total = small_factorial(n);
    let start = ranks.start.min(total);
    let end = ranks.end.min(total);

    let mut counts: BTreeMap<Color, u64> = BTreeMap::new();
    let mut order = vec![0 as Vertex; n];
    let mut colors = vec![0 as Color; n];
    let mut neighbors: Vec<(Vertex, Color)> = Vec::new();
    if start < end {
        unrank_permutation(n, start, &mut order);
        for _ in start..end {
            let x = run_colors_only(graph, &order, predictions, alg.as_mut(), &mut colors, &mut neighbors)
                .map_err(EnumerationError::Run)?;
            *counts.entry(x).or_insert(0) += 1;
            if !next_permutation(&mut order) {
                break;
            }
        }
    }

    Ok(ExactDistribution {
        instance_hash: graph.instance_hash(),
        algorithm: String::from(algorithm),
        n,
        counts,
        total: end.saturating_sub(start),
    })
}

/// Minimal referee loop: no transcript, just the maximum color, with the
/// same properness checks as the full referee.
fn run_colors_only(
    graph: &Graph,
    order: &[Vertex],
    predictions: Option<&PredictionVector>,
    alg: &mut dyn OnlineColorer,
    colors: &mut [Color],
    neighbors: &mut Vec<(Vertex, Color)>,
) -> Result<Color, RunError> {
    alg.reset();
    colors.fill(0);
    let mut max_color = 0;
    for (step, &v) in order.iter().enumerate() {
        neighbors.clear();
        for &u in graph.neighbors(v) {
            let c = colors[u as usize];
            if c != 0 {
                neighbors.push((u, c));
            }
        }
        let advice = predictions.map(|p| p.delivered(v) == 1);
        let color = alg
            .color_next(v, neighbors, advice)
            .map_err(|error| RunError::Colorer { step, vertex: v, error })?;
        if color == 0 || neighbors.iter().any(|&(_, c)| c == color) {
            return Err(RunError::ProtocolViolation {
                step,
                vertex: v,
                color,
                conflicting_neighbor: neighbors
                    .iter()
                    .find(|&&(_, c)| c == color)
                    .map(|&(u, _)| u),
            });
        }
        colors[v as usize] = color;
        max_color = max_color.max(color);
    }
    Ok(max_color)
}

/// Writes the permutation of `[0, n)` with the given lexicographic rank
/// (factorial number system).
pub fn unrank_permutation(n: usize, mut rank: u64, out: &mut [Vertex]) {
    debug_assert_eq!(out.len(), n);
    let mut pool: Vec<Vertex> = (0..n as Vertex).collect();
    for (i, slot) in out.iter_mut().enumerate() {
        let f = small_factorial(n - 1 - i);
        let idx = (rank / f) as usize;
        rank %= f;
        *slot = pool.remove(idx);
    }
}

/// Advances to the next permutation in lexicographic order; returns false
/// after the last one.
pub fn next_permutation(perm: &mut [Vertex]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::FIRST_FIT;
    use num_traits::One;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| ((i - 1) as Vertex, i as Vertex))).unwrap()
    }

    #[test]
    fn unrank_and_next_agree() {
        let n = 5;
        let mut by_rank = vec![0 as Vertex; n];
        let mut walker: Vec<Vertex> = (0..n as Vertex).collect();
        for rank in 0..small_factorial(n) {
            unrank_permutation(n, rank, &mut by_rank);
            assert_eq!(by_rank, walker, "rank {rank}");
            next_permutation(&mut walker);
        }
    }

    #[test]
    fn single_edge_always_two_colors() {
        let g = path(2);
        let r = Registry::standard();
        let d = enumerate_orders(&g, &r, FIRST_FIT, None, 9).unwrap();
        assert!(d.probability_eq(2).is_one());
        assert_eq!(d.expectation(), ratio(2, 1));
    }

    #[test]
    fn p3_never_needs_three_colors() {
        // The middle vertex never sees two distinct colors: its two
        // neighbors are leaves of each other only through it.
        let g = path(3);
        let r = Registry::standard();
        let d = enumerate_orders(&g, &r, FIRST_FIT, None, 9).unwrap();
        assert!(d.probability_eq(2).is_one());
    }

    #[test]
    fn p4_exact_distribution() {
        // Hand enumeration of the 24 orders: exactly 6 force a third color.
        let g = path(4);
        let r = Registry::standard();
        let d = enumerate_orders(&g, &r, FIRST_FIT, None, 9).unwrap();
        assert_eq!(d.total_orders(), 24);
        assert_eq!(d.probability_eq(3), ratio(6, 24));
        assert_eq!(d.expectation(), ratio(9, 4));
        assert_eq!(d.probability_at_least(3), ratio(1, 4));
    }

    #[test]
    fn rank_blocks_merge_to_full_distribution() {
        let g = path(5);
        let r = Registry::standard();
        let full = enumerate_orders(&g, &r, FIRST_FIT, None, 9).unwrap();
        let mut merged =
            enumerate_orders_in_rank_range(&g, &r, FIRST_FIT, None, 9, 0..37).unwrap();
        let rest =
            enumerate_orders_in_rank_range(&g, &r, FIRST_FIT, None, 9, 37..120).unwrap();
        merged.merge(&rest);
        assert_eq!(merged, full);
    }

    #[test]
    fn cap_is_enforced() {
        let g = path(10);
        let r = Registry::standard();
        assert!(matches!(
            enumerate_orders(&g, &r, FIRST_FIT, None, 9),
            Err(EnumerationError::OverCap { n: 10, cap: 9 })
        ));
    }

    #[test]
    fn probabilities_sum_to_one() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let r = Registry::standard();
        let d = enumerate_orders(&g, &r, FIRST_FIT, None, 9).unwrap();
        let sum: BigRational = d
            .counts()
            .keys()
            .map(|&x| d.probability_eq(x))
            .sum();
        assert!(sum.is_one());
    }
}
