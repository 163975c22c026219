//! Simple cycle enumeration by length.
//!
//! Cycles are grown as paths from their minimum vertex through strictly
//! larger vertices and closed back to the start. A cycle is reported once,
//! in canonical form: the minimum vertex first and `v[1] < v[k-1]`. Bigons
//! (length 2, only in multigraphs) are canonical when the outgoing edge id is
//! smaller than the returning one.

use std::collections::BTreeMap;

use crate::error::CapacityExceeded;
use crate::graph::{Dart, Graph};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleCycle {
    vertices: Vec<usize>,
    /// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % k]`.
    edges: Vec<usize>,
}

impl SimpleCycle {
    pub fn new(vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        debug_assert_eq!(vertices.len(), edges.len());
        SimpleCycle { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Darts traversed in the canonical direction (`reverse = false`) or the
    /// opposite one. The reversed walk starts at the same vertex.
    pub fn darts(&self, g: &Graph, reverse: bool) -> Vec<Dart> {
        let k = self.len();
        let forward = (0..k).map(|i| {
            let e = self.edges[i];
            Dart::new(e, g.edges()[e].0 != self.vertices[i])
        });
        if reverse {
            let mut out: Vec<Dart> = forward.map(Dart::reversed).collect();
            out.reverse();
            out
        } else {
            forward.collect()
        }
    }

    /// Vertex sequence of the chosen orientation, starting at `vertices[0]`.
    pub fn oriented_vertices(&self, reverse: bool) -> Vec<usize> {
        if reverse {
            let mut out = Vec::with_capacity(self.len());
            out.push(self.vertices[0]);
            out.extend(self.vertices[1..].iter().rev());
            out
        } else {
            self.vertices.clone()
        }
    }
}

/// Streaming enumerator of the simple cycles of one length.
pub struct CycleFinder<'g> {
    g: &'g Graph,
    k: usize,
    start: usize,
    path: Vec<usize>,
    path_edges: Vec<usize>,
    cursor: Vec<usize>,
    on_path: Vec<bool>,
    pending: Vec<SimpleCycle>,
}

/// Streams every simple cycle of length `k` exactly once, in canonical form
/// and lexicographic order of vertex sequence.
pub fn find_cycles_of_length(g: &Graph, k: usize) -> CycleFinder<'_> {
    let mut finder = CycleFinder {
        g,
        k,
        start: 0,
        path: Vec::with_capacity(k),
        path_edges: Vec::with_capacity(k),
        cursor: Vec::with_capacity(k),
        on_path: vec![false; g.n()],
        pending: Vec::new(),
    };
    let feasible = k >= 3 || (k == 2 && g.has_parallel_edges());
    if !feasible || k > g.n() {
        finder.start = g.n();
    } else {
        finder.begin(0);
    }
    finder
}

impl CycleFinder<'_> {
    fn begin(&mut self, s: usize) {
        self.start = s;
        self.path.clear();
        self.path_edges.clear();
        self.cursor.clear();
        if s < self.g.n() {
            self.path.push(s);
            self.cursor.push(0);
            self.on_path[s] = true;
        }
    }

    fn close(&mut self) {
        let s = self.start;
        let last = *self.path.last().unwrap();
        let k = self.k;
        if k >= 3 && self.path[1] > self.path[k - 1] {
            return;
        }
        for dart in self.g.darts_between(last, s) {
            let e = dart.edge();
            if k == 2 && e <= self.path_edges[0] {
                continue;
            }
            let mut edges = self.path_edges.clone();
            edges.push(e);
            self.pending.push(SimpleCycle::new(self.path.clone(), edges));
        }
        // darts_between yields ascending edge ids; pop() must see the smallest first
        self.pending.reverse();
    }
}

impl Iterator for CycleFinder<'_> {
    type Item = SimpleCycle;

    fn next(&mut self) -> Option<SimpleCycle> {
        loop {
            if let Some(c) = self.pending.pop() {
                return Some(c);
            }
            if self.start >= self.g.n() {
                return None;
            }
            if self.path.is_empty() {
                let s = self.start;
                self.on_path[s] = false;
                self.begin(s + 1);
                continue;
            }
            let depth = self.path.len();
            let last = self.path[depth - 1];
            if depth == self.k {
                self.close();
                self.on_path[last] = false;
                self.path.pop();
                self.path_edges.pop();
                self.cursor.pop();
                continue;
            }
            let list = self.g.neighbors(last);
            let c = self.cursor[depth - 1];
            if c >= list.len() {
                self.cursor.pop();
                self.path.pop();
                if depth > 1 {
                    self.on_path[last] = false;
                    self.path_edges.pop();
                }
                continue;
            }
            self.cursor[depth - 1] += 1;
            let inc = list[c];
            if inc.neighbor > self.start && !self.on_path[inc.neighbor] {
                self.on_path[inc.neighbor] = true;
                self.path.push(inc.neighbor);
                self.path_edges.push(inc.edge);
                self.cursor.push(0);
            }
        }
    }
}

/// Exact number of simple cycles for each length in `2..=max_len` (lengths
/// with no cycles are omitted).
pub fn count_cycles_up_to(g: &Graph, max_len: usize) -> BTreeMap<usize, u64> {
    let n = g.n();
    let max_len = max_len.min(n);
    let mut twice = vec![0u64; max_len + 1];
    let mut to_start = vec![0u32; n];
    let mut on_path = vec![false; n];
    let mut stack: Vec<(usize, usize)> = Vec::with_capacity(max_len);
    for s in 0..n {
        for inc in g.neighbors(s) {
            to_start[inc.neighbor] += 1;
        }
        on_path[s] = true;
        stack.push((s, 0));
        while let Some(&(v, cursor)) = stack.last() {
            let depth = stack.len();
            let list = g.neighbors(v);
            if cursor >= list.len() || depth == max_len {
                on_path[v] = false;
                stack.pop();
                continue;
            }
            stack[depth - 1].1 += 1;
            let w = list[cursor].neighbor;
            if w <= s || on_path[w] {
                continue;
            }
            // path now has depth + 1 vertices; closing back to s makes a cycle of that length
            let closes = to_start[w] as u64 - u64::from(depth == 1);
            twice[depth + 1] += closes;
            on_path[w] = true;
            stack.push((w, 0));
        }
        on_path[s] = false;
        for inc in g.neighbors(s) {
            to_start[inc.neighbor] -= 1;
        }
    }
    twice
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| (k, c / 2))
        .collect()
}

/// Cycle census over all lengths.
pub fn count_cycles_by_length(g: &Graph) -> BTreeMap<usize, u64> {
    count_cycles_up_to(g, g.n())
}

/// Reference to a cycle stored in a [`CycleIndex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleRef {
    pub length: usize,
    pub index: usize,
}

/// Cycles of selected lengths, reachable by length and by vertex.
#[derive(Clone, Debug, Default)]
pub struct CycleIndex {
    by_length: BTreeMap<usize, Vec<SimpleCycle>>,
    by_vertex: Vec<Vec<CycleRef>>,
}

impl CycleIndex {
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_length.keys().copied()
    }

    pub fn covers(&self, length: usize) -> bool {
        self.by_length.contains_key(&length)
    }

    pub fn cycles(&self, length: usize) -> &[SimpleCycle] {
        self.by_length.get(&length).map_or(&[], Vec::as_slice)
    }

    pub fn through(&self, v: usize) -> &[CycleRef] {
        &self.by_vertex[v]
    }

    pub fn get(&self, r: CycleRef) -> &SimpleCycle {
        &self.by_length[&r.length][r.index]
    }

    pub fn counts(&self) -> BTreeMap<usize, usize> {
        self.by_length.iter().map(|(&k, v)| (k, v.len())).collect()
    }

    pub fn total(&self) -> usize {
        self.by_length.values().map(Vec::len).sum()
    }

    /// Adds every cycle of `length` unless already present, failing when the
    /// index would hold more than `budget` cycles in total.
    pub fn extend_with(
        &mut self,
        g: &Graph,
        length: usize,
        budget: usize,
    ) -> Result<(), CapacityExceeded> {
        if self.by_length.contains_key(&length) {
            return Ok(());
        }
        if self.by_vertex.is_empty() {
            self.by_vertex = vec![Vec::new(); g.n()];
        }
        let already = self.total();
        let mut found = Vec::new();
        for c in find_cycles_of_length(g, length) {
            found.push(c);
            if already + found.len() > budget {
                return Err(CapacityExceeded {
                    needed: already + found.len(),
                    budget,
                });
            }
        }
        found.sort_unstable();
        for (index, c) in found.iter().enumerate() {
            for &v in c.vertices() {
                self.by_vertex[v].push(CycleRef { length, index });
            }
        }
        for list in &mut self.by_vertex {
            list.sort_unstable_by(|a, b| {
                (a.length, a.index).cmp(&(b.length, b.index))
            });
        }
        self.by_length.insert(length, found);
        Ok(())
    }
}

/// Builds an index over exactly the requested lengths.
pub fn build_cycle_index(
    g: &Graph,
    lengths: impl IntoIterator<Item = usize>,
    budget: usize,
) -> Result<CycleIndex, CapacityExceeded> {
    let mut index = CycleIndex {
        by_length: BTreeMap::new(),
        by_vertex: vec![Vec::new(); g.n()],
    };
    for k in lengths {
        index.extend_with(g, k, budget)?;
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle};
    use crate::parse::parse_graph6;

    #[test]
    fn k4_triangles() {
        let g = complete(4).unwrap();
        let tri: Vec<_> = find_cycles_of_length(&g, 3).collect();
        assert_eq!(tri.len(), 4);
        assert_eq!(tri[0].vertices(), &[0, 1, 2]);
    }

    #[test]
    fn bipartite_has_no_triangles() {
        let g = complete_bipartite(3, 3).unwrap();
        assert_eq!(find_cycles_of_length(&g, 3).count(), 0);
        assert_eq!(find_cycles_of_length(&g, 4).count(), 9);
    }

    #[test]
    fn census_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(
            count_cycles_by_length(&k4),
            BTreeMap::from([(3, 4), (4, 3)])
        );
        let c6 = cycle(6).unwrap();
        assert_eq!(count_cycles_by_length(&c6), BTreeMap::from([(6, 1)]));
        let petersen = parse_graph6("IheA@GUAo").unwrap();
        assert_eq!(
            count_cycles_by_length(&petersen),
            BTreeMap::from([(5, 12), (6, 10), (8, 15), (9, 20)])
        );
    }

    #[test]
    fn canonical_form() {
        let g = complete(5).unwrap();
        for k in 3..=5 {
            for c in find_cycles_of_length(&g, k) {
                let v = c.vertices();
                assert_eq!(v[0], *v.iter().min().unwrap());
                assert!(v[1] < v[k - 1]);
            }
        }
    }

    #[test]
    fn darts_follow_vertices() {
        let g = complete(4).unwrap();
        for c in find_cycles_of_length(&g, 4) {
            for reverse in [false, true] {
                let vs = c.oriented_vertices(reverse);
                let ds = c.darts(&g, reverse);
                for (i, d) in ds.iter().enumerate() {
                    assert_eq!(g.tail(*d), vs[i]);
                    assert_eq!(g.head(*d), vs[(i + 1) % vs.len()]);
                }
            }
        }
    }

    #[test]
    fn bigons_in_multigraph() {
        // triangle with one doubled edge
        let g = Graph::new(3, vec![(0, 1), (1, 0), (1, 2), (2, 0)]).unwrap();
        let bigons: Vec<_> = find_cycles_of_length(&g, 2).collect();
        assert_eq!(bigons.len(), 1);
        assert_eq!(bigons[0].edges(), &[0, 1]);
        assert_eq!(find_cycles_of_length(&g, 3).count(), 2);
        assert_eq!(
            count_cycles_by_length(&g),
            BTreeMap::from([(2, 1), (3, 2)])
        );
        let simple = complete(4).unwrap();
        assert_eq!(find_cycles_of_length(&simple, 2).count(), 0);
    }

    #[test]
    fn index_by_vertex() {
        let g = complete(4).unwrap();
        let idx = build_cycle_index(&g, [3], 1000).unwrap();
        for v in 0..4 {
            assert_eq!(idx.through(v).len(), 3);
        }
        let k33 = complete_bipartite(3, 3).unwrap();
        let idx = build_cycle_index(&k33, [4, 6], 1000).unwrap();
        for v in 0..6 {
            let fours = idx.through(v).iter().filter(|r| r.length == 4).count();
            assert_eq!(fours, 6);
        }
        assert_eq!(idx.counts(), BTreeMap::from([(4, 9), (6, 6)]));
    }

    #[test]
    fn index_budget() {
        let g = complete(6).unwrap();
        let err = build_cycle_index(&g, [3, 4], 25).unwrap_err();
        assert_eq!(err.budget, 25);
    }
}
