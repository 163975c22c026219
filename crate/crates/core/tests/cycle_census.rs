use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use genus_core::census::random_connected;
use genus_core::cycles::{count_cycles_up_to, find_cycles_of_length};
use genus_core::Graph;

/// Counts cycles as edge subsets in which every touched vertex has degree
/// two and the touched part is connected.
fn subset_oracle(g: &Graph) -> BTreeMap<usize, u64> {
    let m = g.m();
    assert!(m <= 20);
    let mut out = BTreeMap::new();
    for mask in 1u32..1 << m {
        let chosen: Vec<(usize, usize)> = (0..m)
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| g.edges()[e])
            .collect();
        let mut deg = vec![0; g.n()];
        for &(u, v) in &chosen {
            deg[u] += 1;
            deg[v] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        // walk from one vertex and check every edge is reached
        let start = chosen[0].0;
        let mut seen = vec![false; chosen.len()];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for (i, &(u, v)) in chosen.iter().enumerate() {
                if !seen[i] && (u == x || v == x) {
                    seen[i] = true;
                    stack.push(if u == x { v } else { u });
                }
            }
        }
        if seen.iter().all(|&s| s) {
            *out.entry(chosen.len()).or_insert(0) += 1;
        }
    }
    out
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (any::<u64>(), 3usize..=7, 0usize..=8).prop_map(|(seed, n, extra)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_connected(&mut rng, n, 4, extra)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn counts_match_subset_oracle(g in small_graph()) {
        prop_assume!(g.m() <= 16);
        let expected = subset_oracle(&g);
        let counted = count_cycles_up_to(&g, g.n());
        prop_assert_eq!(&counted, &expected);
        for (&len, &count) in &expected {
            let listed: Vec<_> = find_cycles_of_length(&g, len).collect();
            prop_assert_eq!(listed.len() as u64, count);
            let mut dedup = listed.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), listed.len());
        }
    }

    #[test]
    fn listed_cycles_are_simple_and_closed(g in small_graph(), k in 3usize..=7) {
        for c in find_cycles_of_length(&g, k) {
            prop_assert_eq!(c.len(), k);
            let mut vs = c.vertices().to_vec();
            vs.sort_unstable();
            vs.dedup();
            prop_assert_eq!(vs.len(), k);
            for i in 0..k {
                let (a, b) = (c.vertices()[i], c.vertices()[(i + 1) % k]);
                let (u, v) = g.edges()[c.edges()[i]];
                prop_assert!((u, v) == (a, b) || (u, v) == (b, a));
            }
        }
    }
}

#[test]
fn multigraph_bigons() {
    let g = Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 0), (1, 2)]).unwrap();
    let expected = subset_oracle(&g);
    assert_eq!(count_cycles_up_to(&g, 3), expected);
    assert_eq!(expected[&2], 2);
    assert_eq!(expected[&3], 4);
}
