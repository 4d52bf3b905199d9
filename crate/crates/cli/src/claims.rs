//! The verification suite behind `verify-claims`.
//!
//! Each claim pins one quantitative guarantee of the library — exact tail
//! inequalities, witness obligations, mean bounds, adversary forcing,
//! oracle/Monte-Carlo agreement, numeric inequalities, and determinism —
//! with fixed seeds, fixed workloads, and tolerances written directly into
//! the checks. A claim fails loudly with the offending numbers in its
//! details; nothing is sampled lazily or re-calibrated at run time.

use num_bigint::BigInt;
use num_rational::BigRational;
use ocol_core::adversary::{force, Verdict};
use ocol_core::algorithms::{Registry, ADVICE_CBIP, ADVICE_FIRST_FIT, CBIP, FIRST_FIT, PARITY_FIRST_FIT};
use ocol_core::analysis::bounds::{factorial, factorial_power_check, factorial_tail_sum_holds};
use ocol_core::analysis::{
    check_error_path_witness, check_increasing_path_witness, enumerate_orders,
    nonisomorphic_trees,
};
use ocol_core::graph::{bipartition, Graph, Vertex};
use ocol_core::instances::{random_bipartite, random_labeled_tree};
use ocol_core::reveal::{make_predictions, make_predictions_from, run, ArrivalOrder, ErrorMode};
use ocol_core::rng::{stream, RNG_ALGORITHM};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClaimResult {
    pub id: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimsReport {
    pub rng: String,
    pub version: String,
    pub all_pass: bool,
    pub claims: Vec<ClaimResult>,
}

impl ClaimsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs every claim, including the determinism claim (which replays the
/// whole suite a second time and compares bytes).
pub fn run_all(registry: &Registry) -> ClaimsReport {
    let first = run_once(registry);
    let second = run_once(registry);
    let bytes_a = serde_json::to_vec(&first).expect("serializes");
    let bytes_b = serde_json::to_vec(&second).expect("serializes");
    let identical = bytes_a == bytes_b;
    let mut claims = first;
    claims.push(ClaimResult {
        id: "C10",
        name: "repeat-run-determinism",
        pass: identical,
        details: format!(
            "two full runs serialized to {} bytes each; byte-identical: {} (fnv64 {:016x} vs {:016x})",
            bytes_a.len(),
            identical,
            ocol_core::hash::fnv1a64(&bytes_a),
            ocol_core::hash::fnv1a64(&bytes_b),
        ),
    });
    let all_pass = claims.iter().all(|c| c.pass);
    ClaimsReport {
        rng: RNG_ALGORITHM.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        all_pass,
        claims,
    }
}

/// Claims 1 through 9 in order.
pub fn run_once(registry: &Registry) -> Vec<ClaimResult> {
    vec![
        claim_exact_tail_on_small_trees(registry),
        claim_increasing_path_witness(registry),
        claim_random_order_mean(registry),
        claim_advice_first_fit(registry),
        claim_adversary_forcing(registry),
        claim_bipartite_bounds(registry),
        claim_parity_error_witness(registry),
        claim_oracle_monte_carlo_agreement(registry),
        claim_numeric_inequalities(),
    ]
}

fn result(id: &'static str, name: &'static str, pass: bool, details: String) -> ClaimResult {
    ClaimResult { id, name, pass, details }
}

/// Runs one algorithm and reports referee/algorithm errors as claim
/// failures instead of panicking, so deliberately broken algorithms surface
/// as FAIL lines.
fn run_colors(
    registry: &Registry,
    name: &str,
    graph: &Graph,
    order: &ArrivalOrder,
    predictions: Option<&ocol_core::reveal::PredictionVector>,
) -> Result<u32, String> {
    let mut alg = registry
        .create(name)
        .ok_or_else(|| format!("unknown algorithm {name:?}"))?;
    run(graph, order, predictions, alg.as_mut())
        .map(|t| t.colors_used())
        .map_err(|e| format!("{name}: {e}"))
}

/// C1: exhaustive enumeration over every tree with n <= 7 — for every ell,
/// `P[X >= ell] <= n^2/ell!` holds with exact rational arithmetic.
pub fn claim_exact_tail_on_small_trees(registry: &Registry) -> ClaimResult {
    let mut trees_checked = 0usize;
    let mut comparisons = 0usize;
    let mut failures = Vec::new();
    for n in 1..=7usize {
        for tree in nonisomorphic_trees(n) {
            trees_checked += 1;
            let dist = match enumerate_orders(&tree, registry, FIRST_FIT, None, 9) {
                Ok(d) => d,
                Err(e) => {
                    return result(
                        "C1",
                        "first-fit-tail-exact-small-trees",
                        false,
                        format!("enumeration failed: {e}"),
                    )
                }
            };
            let n_sq = BigInt::from((n * n) as u64);
            for ell in 1..=(n as u32 + 2) {
                comparisons += 1;
                let p = dist.probability_at_least(ell);
                let bound = BigRational::new(n_sq.clone(), BigInt::from(factorial(ell)));
                if p > bound {
                    failures.push(format!("n={n} ell={ell}: {p} > {bound}"));
                }
            }
        }
    }
    result(
        "C1",
        "first-fit-tail-exact-small-trees",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{trees_checked} trees, {comparisons} exact comparisons, 0 violations")
        } else {
            failures.join("; ")
        },
    )
}

/// C2: 1e4 first-fit runs on random trees (n <= 200, uniform orders); every
/// vertex colored ell has an arrival-increasing path of >= ell vertices.
pub fn claim_increasing_path_witness(registry: &Registry) -> ClaimResult {
    const SEED: u64 = 0xC2;
    const RUNS: u64 = 10_000;
    let outcomes: Vec<Result<(u32, usize), String>> = (0..RUNS)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream(SEED, 0, trial);
            let n = rng.gen_range(2..=200usize);
            let g = random_labeled_tree(n, &mut rng);
            let order = ArrivalOrder::sample_from(n, &mut rng);
            let mut alg = registry
                .create(FIRST_FIT)
                .ok_or_else(|| "first-fit not registered".to_string())?;
            let t = run(&g, &order, None, alg.as_mut()).map_err(|e| e.to_string())?;
            let report = check_increasing_path_witness(&t, &g);
            Ok((t.colors_used(), report.violations.len()))
        })
        .collect();
    let mut violations = 0usize;
    let mut max_x = 0u32;
    let mut errors = Vec::new();
    for o in outcomes {
        match o {
            Ok((x, v)) => {
                violations += v;
                max_x = max_x.max(x);
            }
            Err(e) => errors.push(e),
        }
    }
    result(
        "C2",
        "first-fit-increasing-path-witness",
        violations == 0 && errors.is_empty(),
        if errors.is_empty() {
            format!("{RUNS} runs, max colors {max_x}, {violations} witness violations")
        } else {
            format!("{} run errors: {}", errors.len(), errors[0])
        },
    )
}

/// C3: first-fit on random labeled trees under uniform random order — the
/// sample mean of X stays below `4.262 log n / log log n + 3` at
/// n = 1e3, 1e4, 1e5, and at n = 1e5 it also undercuts the
/// adversarial-order bound `log n + 1`.
pub fn claim_random_order_mean(registry: &Registry) -> ClaimResult {
    const SEED: u64 = 0xC3;
    const TRIALS: u64 = 200;
    let mut pass = true;
    let mut parts = Vec::new();
    for (cell, &n) in [1_000usize, 10_000, 100_000].iter().enumerate() {
        let xs: Vec<u32> = (0..TRIALS)
            .into_par_iter()
            .map(|trial| {
                let mut rng = stream(SEED, cell as u64, trial);
                let g = random_labeled_tree(n, &mut rng);
                let order = ArrivalOrder::sample_from(n, &mut rng);
                let mut alg = registry.create(FIRST_FIT).expect("registered");
                run(&g, &order, None, alg.as_mut())
                    .expect("first-fit never fails")
                    .colors_used()
            })
            .collect();
        let mean = xs.iter().map(|&x| f64::from(x)).sum::<f64>() / TRIALS as f64;
        let ln = (n as f64).log2();
        let bound = 4.262 * ln / ln.log2() + 3.0;
        let ok = mean <= bound;
        pass &= ok;
        parts.push(format!("n={n}: mean {mean:.3} vs bound {bound:.3}"));
        if n == 100_000 {
            let adversarial = ln + 1.0;
            let improved = mean < adversarial;
            pass &= improved;
            parts.push(format!(
                "n={n}: mean {mean:.3} vs adversarial-order bound {adversarial:.3}"
            ));
        }
    }
    result("C3", "first-fit-random-order-mean", pass, parts.join("; "))
}

/// C4: advice-first-fit is consistent (error-free advice yields exactly two
/// colors on nontrivial trees, under random, adversarial, and — for n <= 8 —
/// all orders) and robust (max colors <= log k + 3 for k errors, and
/// <= log n + 3 - log 3 under any advice).
pub fn claim_advice_first_fit(registry: &Registry) -> ClaimResult {
    const SEED: u64 = 0xC4;
    let mut failures = Vec::new();

    // Consistency on 1e3 random nontrivial trees, several orders each.
    let bad_consistency: usize = (0..1_000u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream(SEED, 0, trial);
            let n = rng.gen_range(2..=128usize);
            let g = random_labeled_tree(n, &mut rng);
            let bip = bipartition(&g).expect("tree");
            let p = make_predictions(&bip, &ErrorMode::None).expect("k=0");
            let mut orders = vec![
                ArrivalOrder::sample_from(n, &mut rng),
                ArrivalOrder::identity(n),
                ArrivalOrder::given((0..n as Vertex).rev().collect()).expect("permutation"),
                bfs_order(&g),
            ];
            let reversed: Vec<Vertex> =
                orders[3].as_slice().iter().rev().copied().collect();
            orders.push(ArrivalOrder::given(reversed).expect("permutation"));
            let mut bad = 0;
            for order in &orders {
                match run_colors(registry, ADVICE_FIRST_FIT, &g, order, Some(&p)) {
                    Ok(2) => {}
                    Ok(_) | Err(_) => bad += 1,
                }
            }
            bad
        })
        .sum();
    if bad_consistency > 0 {
        failures.push(format!("{bad_consistency} error-free runs used != 2 colors"));
    }

    // Exhaustive orders for all trees on up to 8 vertices.
    let mut exhaustive_trees = 0;
    for n in 2..=8usize {
        for tree in nonisomorphic_trees(n) {
            exhaustive_trees += 1;
            let bip = bipartition(&tree).expect("tree");
            let p = make_predictions(&bip, &ErrorMode::None).expect("k=0");
            match enumerate_orders(&tree, registry, ADVICE_FIRST_FIT, Some(&p), 9) {
                Ok(d) => {
                    if d.max_colors() != 2 {
                        failures.push(format!(
                            "n={n}: some order reached {} colors with error-free advice",
                            d.max_colors()
                        ));
                    }
                }
                Err(e) => failures.push(format!("enumeration failed: {e}")),
            }
        }
    }

    // Robustness sweep at n = 1000.
    const N: usize = 1_000;
    let size_bound = (N as f64).log2() + 3.0 - 3f64.log2();
    let mut sweep_summary = Vec::new();
    for (cell, &k) in [1usize, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1_000]
        .iter()
        .enumerate()
    {
        let xs: Vec<Result<u32, String>> = (0..50u64)
            .into_par_iter()
            .map(|trial| {
                let mut rng = stream(SEED, 1 + cell as u64, trial);
                let g = random_labeled_tree(N, &mut rng);
                let bip = bipartition(&g).expect("tree");
                let p = make_predictions_from(&bip, k, &mut rng).expect("k <= n");
                let order = ArrivalOrder::sample_from(N, &mut rng);
                run_colors(registry, ADVICE_FIRST_FIT, &g, &order, Some(&p))
            })
            .collect();
        let mut max = 0u32;
        for x in xs {
            match x {
                Ok(x) => max = max.max(x),
                Err(e) => failures.push(e),
            }
        }
        if k <= 256 {
            let error_bound = (k as f64).log2() + 3.0;
            if f64::from(max) > error_bound {
                failures.push(format!("k={k}: max {max} > log2(k)+3 = {error_bound:.3}"));
            }
            sweep_summary.push(format!("k={k}:max{max}"));
        }
        if f64::from(max) > size_bound {
            failures.push(format!("k={k}: max {max} > size bound {size_bound:.3}"));
        }
    }

    result(
        "C4",
        "advice-first-fit-consistency-robustness",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "1000 trees x 5 orders error-free, {exhaustive_trees} trees exhaustively, sweep {} (size bound {size_bound:.3})",
                sweep_summary.join(" ")
            )
        } else {
            failures.join("; ")
        },
    )
}

fn bfs_order(graph: &Graph) -> ArrivalOrder {
    let n = graph.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n as Vertex {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in graph.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    ArrivalOrder::given(order).expect("BFS emits a permutation")
}

/// C5: the adversary forces ell colors from both advice algorithms on
/// exactly 3 * 2^(ell-3) vertices for ell = 3..9, with equality in the color
/// count for advice-first-fit.
pub fn claim_adversary_forcing(registry: &Registry) -> ClaimResult {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for name in [ADVICE_FIRST_FIT, ADVICE_CBIP] {
        for ell in 3u32..=9 {
            let mut alg = registry.create(name).expect("registered");
            match force(ell, alg.as_mut()) {
                Ok(out) => {
                    let expected = 3usize << (ell - 3);
                    let forced = matches!(out.verdict, Verdict::Forced { colors } if colors == ell);
                    if !forced {
                        failures.push(format!("{name} ell={ell}: not forced"));
                    }
                    if out.vertices_used != expected {
                        failures.push(format!(
                            "{name} ell={ell}: used {} vertices, expected {expected}",
                            out.vertices_used
                        ));
                    }
                    if !out.graph.is_tree() {
                        failures.push(format!("{name} ell={ell}: instance is not a tree"));
                    }
                    if out.transcript.colors_used() < ell {
                        failures.push(format!(
                            "{name} ell={ell}: only {} colors",
                            out.transcript.colors_used()
                        ));
                    }
                    if name == ADVICE_FIRST_FIT && out.transcript.colors_used() != ell {
                        failures.push(format!(
                            "{name} ell={ell}: expected exactly {ell} colors, saw {}",
                            out.transcript.colors_used()
                        ));
                    }
                    if ell == 9 {
                        summary.push(format!("{name}: ell=9 on {} vertices", out.vertices_used));
                    }
                }
                Err(e) => failures.push(format!("{name} ell={ell}: {e}")),
            }
        }
    }
    result(
        "C5",
        "adversary-forces-targets-on-exact-budget",
        failures.is_empty(),
        if failures.is_empty() {
            format!("ell=3..9 both algorithms; {}", summary.join("; "))
        } else {
            failures.join("; ")
        },
    )
}

/// C6: on random bipartite instances (n up to 2000, p in {.01, .1, .5}),
/// advice-cbip respects the error-free, error-count, and size bounds, and
/// cbip respects its size bound; zero violations.
pub fn claim_bipartite_bounds(registry: &Registry) -> ClaimResult {
    const SEED: u64 = 0xC6;
    const TRIALS: u64 = 20;
    let ns = [10usize, 100, 500, 2_000];
    let ps = [0.01f64, 0.1, 0.5];
    let ks = [0usize, 1, 2, 4, 16, 64];

    let cells: Vec<(usize, f64, u64)> = ns
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| {
            ps.iter()
                .enumerate()
                .map(move |(j, &p)| (n, p, (i * ps.len() + j) as u64))
        })
        .collect();

    let failures: Vec<String> = cells
        .par_iter()
        .flat_map(|&(n, p, cell)| {
            let advice_size_bound = 2.0 * ((n + 2) as f64).log2() + 3.0 - 2.0 * 5f64.log2();
            let cbip_bound = 2.0 * ((n + 2) as f64).log2() - 2.0;
            (0..TRIALS)
                .into_par_iter()
                .flat_map(move |trial| {
                    let mut rng = stream(SEED, cell, trial);
                    let g = random_bipartite(n, p, &mut rng);
                    let bip = bipartition(&g).expect("bipartite by construction");
                    let mut local = Vec::new();

                    let order = ArrivalOrder::sample_from(n, &mut rng);
                    match run_colors(registry, CBIP, &g, &order, None) {
                        Ok(x) if f64::from(x) > cbip_bound => {
                            local.push(format!("cbip n={n} p={p}: {x} > {cbip_bound:.3}"));
                        }
                        Ok(_) => {}
                        Err(e) => local.push(e),
                    }

                    for &k in ks.iter().filter(|&&k| k <= n) {
                        let preds =
                            make_predictions_from(&bip, k, &mut rng).expect("k <= n");
                        let order = ArrivalOrder::sample_from(n, &mut rng);
                        let x = match run_colors(registry, ADVICE_CBIP, &g, &order, Some(&preds))
                        {
                            Ok(x) => x,
                            Err(e) => {
                                local.push(e);
                                continue;
                            }
                        };
                        if k == 0 && x > 2 {
                            local.push(format!("advice-cbip n={n} p={p} k=0: {x} > 2"));
                        }
                        if k >= 1 {
                            let err_bound = 2.0 * (k as f64).log2() + 4.0;
                            if f64::from(x) > err_bound {
                                local.push(format!(
                                    "advice-cbip n={n} p={p} k={k}: {x} > {err_bound:.3}"
                                ));
                            }
                        }
                        if f64::from(x) > advice_size_bound {
                            local.push(format!(
                                "advice-cbip n={n} p={p} k={k}: {x} > size {advice_size_bound:.3}"
                            ));
                        }
                    }
                    local
                })
                .collect::<Vec<_>>()
        })
        .collect();

    result(
        "C6",
        "bipartite-shore-rule-bounds",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{} cells x {TRIALS} trials, k in {ks:?}, 0 violations",
                cells.len()
            )
        } else {
            failures.join("; ")
        },
    )
}

/// C7: 1e4 parity-first-fit runs (random trees n <= 500, k in 0..=32):
/// every vertex colored ell has a reach-tree path with at least
/// floor((ell-1)/4) mispredicted vertices, and error-free runs stay within
/// two colors. The combined-model mean bound is recorded as a non-violation
/// (it is far from tight at this scale).
pub fn claim_parity_error_witness(registry: &Registry) -> ClaimResult {
    const SEED: u64 = 0xC7;
    const RUNS: u64 = 10_000;
    let outcomes: Vec<Result<(u32, usize, usize), String>> = (0..RUNS)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream(SEED, 0, trial);
            let n = rng.gen_range(2..=500usize);
            let k = rng.gen_range(0..=32usize).min(n);
            let g = random_labeled_tree(n, &mut rng);
            let bip = bipartition(&g).expect("tree");
            let p = make_predictions_from(&bip, k, &mut rng).expect("k <= n");
            let order = ArrivalOrder::sample_from(n, &mut rng);
            let mut alg = registry
                .create(PARITY_FIRST_FIT)
                .ok_or_else(|| "parity-first-fit not registered".to_string())?;
            let t = run(&g, &order, Some(&p), alg.as_mut()).map_err(|e| e.to_string())?;
            let report = check_error_path_witness(&t, &g, &p);
            Ok((t.colors_used(), report.violations.len(), k))
        })
        .collect();
    let mut violations = 0usize;
    let mut max_x = 0u32;
    let mut error_free_overruns = 0usize;
    let mut errors = Vec::new();
    for o in outcomes {
        match o {
            Ok((x, v, k)) => {
                violations += v;
                max_x = max_x.max(x);
                if k == 0 && x > 2 {
                    error_free_overruns += 1;
                }
            }
            Err(e) => errors.push(e),
        }
    }
    // Mean bound at the smallest in-domain k: 4c log k / log log k + 71.
    let mean_bound_k3 = {
        let lk = 3f64.log2();
        4.0 * 4.262 * lk / lk.log2() + 71.0
    };
    let recorded = f64::from(max_x) <= mean_bound_k3;
    let pass = violations == 0 && recorded && error_free_overruns == 0 && errors.is_empty();
    result(
        "C7",
        "parity-first-fit-error-path-witness",
        pass,
        if errors.is_empty() {
            format!(
                "{RUNS} runs, max colors {max_x}, {violations} witness violations, {error_free_overruns} error-free runs above two colors; combined-model mean bound at k=3 is {mean_bound_k3:.1} (recorded non-violation: {recorded})"
            )
        } else {
            format!("{} run errors: {}", errors.len(), errors[0])
        },
    )
}

/// C8: the exact oracle gives P[X = 3] = 6/24 and E[X] = 9/4 for first-fit
/// on the 4-path; a 24000-trial Monte Carlo estimate lands within 3 sigma.
pub fn claim_oracle_monte_carlo_agreement(registry: &Registry) -> ClaimResult {
    const SEED: u64 = 0xC8;
    const TRIALS: u64 = 24_000;
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).expect("path");
    let dist = match enumerate_orders(&g, registry, FIRST_FIT, None, 9) {
        Ok(d) => d,
        Err(e) => {
            return result("C8", "oracle-vs-monte-carlo", false, format!("oracle failed: {e}"))
        }
    };
    let exact_p3 = BigRational::new(BigInt::from(6), BigInt::from(24));
    let exact_mean = BigRational::new(BigInt::from(9), BigInt::from(4));
    let oracle_ok = dist.probability_eq(3) == exact_p3 && dist.expectation() == exact_mean;

    let hits: u64 = (0..TRIALS)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream(SEED, 0, trial);
            let order = ArrivalOrder::sample_from(4, &mut rng);
            match run_colors(registry, FIRST_FIT, &g, &order, None) {
                Ok(x) => u64::from(x == 3),
                Err(_) => 0,
            }
        })
        .sum();
    let freq = hits as f64 / TRIALS as f64;
    let sigma = (0.25 * 0.75 / TRIALS as f64).sqrt();
    let mc_ok = (freq - 0.25).abs() <= 3.0 * sigma;

    result(
        "C8",
        "oracle-vs-monte-carlo",
        oracle_ok && mc_ok,
        format!(
            "oracle P[X=3] = {} (expected 1/4), E[X] = {} (expected 9/4); Monte Carlo freq {freq:.5} within 3 sigma ({:.5}) of 0.25: {mc_ok}",
            dist.probability_eq(3),
            dist.expectation(),
            3.0 * sigma
        ),
    )
}

/// C9: the factorial tail-sum inequality holds for s = 1..50 with exact
/// rationals plus a rigorous remainder bound, and the factorial-growth
/// inequality holds on the pinned (c, n) grid.
pub fn claim_numeric_inequalities() -> ClaimResult {
    let mut failures = Vec::new();
    for s in 1..=50u32 {
        if !factorial_tail_sum_holds(s) {
            failures.push(format!("tail sum fails at s={s}"));
        }
    }
    for &c in &[std::f64::consts::E, 4.262, 6.0] {
        for &n in &[1u64 << 10, 1 << 16, 1 << 20] {
            match factorial_power_check(c, n) {
                Ok(chk) if chk.holds => {}
                Ok(chk) => failures.push(format!(
                    "factorial power fails at c={c}, n={n}: {}! < {}",
                    chk.ell, chk.rhs
                )),
                Err(e) => failures.push(format!("c={c}, n={n}: {e}")),
            }
        }
    }
    result(
        "C9",
        "numeric-inequalities",
        failures.is_empty(),
        if failures.is_empty() {
            "tail sum s=1..50 exact; factorial power on 3x3 (c, n) grid".to_string()
        } else {
            failures.join("; ")
        },
    )
}
