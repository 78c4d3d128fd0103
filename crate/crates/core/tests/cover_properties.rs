use proptest::prelude::*;

use thetaline::cover::{case3_partitions, check_cover_graph, Component, CoverGraph, CoverViolation};
use thetaline::Error;

fn graph_strategy() -> impl Strategy<Value = CoverGraph> {
    (1usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(0u32..4, n),
            prop::collection::vec((0..n as i64, 0..n as i64), 0..12),
        )
            .prop_map(|(genera, edges)| CoverGraph {
                components: genera.into_iter().enumerate().map(|(i, genus)| Component { id: i as i64, genus }).collect(),
                edges: edges.into_iter().map(|(a, b)| [a, b]).collect(),
            })
    })
}

fn connected(g: &CoverGraph) -> bool {
    let n = g.components.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for [a, b] in &g.edges {
            let (a, b) = (*a as usize, *b as usize);
            for (from, to) in [(a, b), (b, a)] {
                if from == v && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Unordered splits `{S, S^c}` with both sides nonempty, and the nodes joining them.
fn split_crossings(g: &CoverGraph) -> Vec<usize> {
    let n = g.components.len();
    let mut out = Vec::new();
    for side in 1u32..(1 << n) - 1 {
        // count each unordered split once: the side without component 0
        if side & 1 == 1 {
            continue;
        }
        let inside = |i: i64| side >> i & 1 == 1;
        out.push(g.edges.iter().filter(|[a, b]| inside(*a) != inside(*b)).count());
    }
    out
}

fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p[n]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn split_violations_match_enumeration(g in graph_strategy()) {
        if !connected(&g) {
            prop_assert_eq!(check_cover_graph(&g, false), Err(Error::Disconnected));
            return Ok(());
        }
        let report = check_cover_graph(&g, false).unwrap();
        let mut expected: Vec<usize> = split_crossings(&g).into_iter().filter(|&c| c < 4 || c % 2 == 1).collect();
        let mut got: Vec<usize> = report
            .violations
            .iter()
            .filter_map(|v| match v {
                CoverViolation::CrossingBelowFour { crossing, .. } | CoverViolation::OddCrossing { crossing, .. } => {
                    Some(*crossing)
                }
                _ => None,
            })
            .collect();
        expected.sort_unstable();
        got.sort_unstable();
        prop_assert_eq!(got, expected);

        // first Betti number of the dual graph plus the component genera
        let betti = g.edges.len() as i64 - g.components.len() as i64 + 1;
        let genus_sum: i64 = g.components.iter().map(|c| c.genus as i64).sum();
        prop_assert_eq!(report.arithmetic_genus, genus_sum + betti);

        for c in &report.components {
            prop_assert_eq!(c.degree, 2 * c.genus - 2 + c.b);
        }
        // degrees add up to the degree of the dualizing sheaf
        let total: i64 = report.components.iter().map(|c| c.degree).sum();
        prop_assert_eq!(total, 2 * report.arithmetic_genus - 2);
    }
}

#[test]
fn partition_lists() {
    for n in 2..=20u32 {
        let parts = case3_partitions(n, 1).unwrap();
        assert_eq!(parts.len(), partition_count(n as usize) - 1, "n = {n}");
        for p in &parts {
            assert_eq!(p.iter().sum::<u32>(), n);
            assert!(p.len() >= 2);
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
        assert!(parts.windows(2).all(|w| w[0] > w[1]), "not in reverse lexicographic order");
    }
}
