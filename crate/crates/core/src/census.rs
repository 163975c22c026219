//! Small-graph test corpora: every connected graph on a few vertices up to
//! isomorphism, and seeded random connected graphs of bounded degree.

use std::collections::HashSet;

use rand::Rng;

use crate::graph::Graph;

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

fn is_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = n;
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                parts -= 1;
            }
        }
    }
    parts == 1
}

/// One representative of every isomorphism class of connected simple graphs
/// on exactly `n` vertices (`2 <= n <= 7`), ordered by edge bitmask.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((2..=7).contains(&n), "census supports 2..=7 vertices");
    let pairs = pair_index(n);
    let slot = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let perms: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| slot(p[u], p[v])).collect())
        .collect();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    for mask in 1u64..1 << pairs.len() {
        if seen.contains(&mask) || !is_connected(n, &pairs, mask) {
            continue;
        }
        for image in &perms {
            let mut m = 0u64;
            for (i, &j) in image.iter().enumerate() {
                m |= (mask >> i & 1) << j;
            }
            seen.insert(m);
        }
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        out.push(Graph::new(n, edges).expect("connected by construction"));
    }
    out
}

/// A random connected simple graph on `n` vertices with every degree at
/// most `max_degree`: a random tree plus up to `extra` further edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, max_degree: usize, extra: usize) -> Graph {
    assert!(n >= 2 && max_degree >= 2);
    let mut degree = vec![0usize; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| degree[u] < max_degree).collect();
        let u = open[rng.gen_range(0..open.len())];
        edges.push((u, v));
        degree[u] += 1;
        degree[v] += 1;
    }
    for _ in 0..extra {
        let free: Vec<(usize, usize)> = pair_index(n)
            .into_iter()
            .filter(|&(u, v)| {
                degree[u] < max_degree
                    && degree[v] < max_degree
                    && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u, v))
            })
            .collect();
        if free.is_empty() {
            break;
        }
        let (u, v) = free[rng.gen_range(0..free.len())];
        edges.push((u, v));
        degree[u] += 1;
        degree[v] += 1;
    }
    Graph::new(n, edges).expect("spanning tree keeps it connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (2..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 21, 112]);
    }

    #[test]
    fn random_respects_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let n = rng.gen_range(2..=8);
            let g = random_connected(&mut rng, n, 4, 10);
            assert!(g.max_degree() <= 4);
            assert!(!g.has_parallel_edges());
        }
    }
}
