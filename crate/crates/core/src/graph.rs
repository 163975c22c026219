//! Immutable connected multigraph with dense vertex labels and dart indexing.
//!
//! Every undirected edge `e = {u, v}` (stored as `(u, v)`) yields two darts:
//! `2e` runs `u -> v` and `2e + 1` runs `v -> u`. Each vertex keeps its
//! incidences sorted by `(neighbor, edge)`; the position of an incidence in
//! that list is its *slot*, which is what rotations and corner maps permute.

use std::collections::VecDeque;
use std::fmt;

use crate::error::GraphError;

/// A directed edge, encoded as `2 * edge + orientation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn new(edge: usize, reversed: bool) -> Self {
        Dart((edge * 2 + reversed as usize) as u32)
    }

    #[inline]
    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn reversed(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One entry of a vertex's adjacency list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub neighbor: usize,
    pub edge: usize,
    /// The dart leaving the owning vertex along `edge`.
    pub out: Dart,
}

/// Expanded view of a dart: which edge, where it starts and where it ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectedEdge {
    pub edge_id: usize,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<Incidence>>,
    /// `tail_slot[d]` is the slot of `d`'s edge in the adjacency of `d`'s tail.
    tail_slot: Vec<u32>,
    parallel: bool,
}

impl Graph {
    /// Builds a graph over vertices `0..n`. Parallel edges are kept as
    /// distinct edges; self-loops and disconnected input are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        let mut adjacency: Vec<Vec<Incidence>> = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push(Incidence {
                neighbor: v,
                edge: e,
                out: Dart::new(e, false),
            });
            adjacency[v].push(Incidence {
                neighbor: u,
                edge: e,
                out: Dart::new(e, true),
            });
        }
        let mut parallel = false;
        for list in &mut adjacency {
            list.sort_by_key(|inc| (inc.neighbor, inc.edge));
            parallel |= list.windows(2).any(|w| w[0].neighbor == w[1].neighbor);
        }
        let mut tail_slot = vec![0u32; 2 * edges.len()];
        for list in &adjacency {
            for (slot, inc) in list.iter().enumerate() {
                tail_slot[inc.out.index()] = slot as u32;
            }
        }
        let graph = Graph {
            n,
            edges,
            adjacency,
            tail_slot,
            parallel,
        };
        let components = graph.component_count();
        if components != 1 {
            return Err(GraphError::DisconnectedGraph { components });
        }
        Ok(graph)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[Incidence] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.parallel
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> usize {
        let (u, v) = self.edges[d.edge()];
        if d.0 & 1 == 0 {
            u
        } else {
            v
        }
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.reversed())
    }

    pub fn directed_edge(&self, d: Dart) -> DirectedEdge {
        DirectedEdge {
            edge_id: d.edge(),
            tail: self.tail(d),
            head: self.head(d),
        }
    }

    /// Slot of the dart's edge at the dart's tail.
    #[inline]
    pub fn tail_slot(&self, d: Dart) -> usize {
        self.tail_slot[d.index()] as usize
    }

    /// Slot of the dart's edge at the dart's head.
    #[inline]
    pub fn head_slot(&self, d: Dart) -> usize {
        self.tail_slot[d.reversed().index()] as usize
    }

    /// All darts `u -> v`, one per parallel copy, in edge-id order.
    pub fn darts_between(&self, u: usize, v: usize) -> impl Iterator<Item = Dart> + '_ {
        let list = &self.adjacency[u];
        let start = list.partition_point(|inc| inc.neighbor < v);
        list[start..]
            .iter()
            .take_while(move |inc| inc.neighbor == v)
            .map(|inc| inc.out)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.darts_between(u, v).next().is_some()
    }

    /// Length of a shortest cycle, or `None` for a forest. Parallel edges
    /// give girth 2.
    pub fn girth(&self) -> Option<usize> {
        if self.parallel {
            return Some(2);
        }
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent_edge = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for inc in &self.adjacency[u] {
                    if inc.edge == parent_edge[u] {
                        continue;
                    }
                    let w = inc.neighbor;
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent_edge[w] = inc.edge;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
            parent_edge.iter_mut().for_each(|p| *p = usize::MAX);
        }
        (best != usize::MAX).then_some(best)
    }

    fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut components = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for inc in &self.adjacency[u] {
                    if !seen[inc.neighbor] {
                        seen[inc.neighbor] = true;
                        stack.push(inc.neighbor);
                    }
                }
            }
        }
        components
    }

    /// Edge list with each pair normalized to `(min, max)` and sorted.
    pub fn normalized_edges(&self) -> Vec<(usize, usize)> {
        let mut list: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        list.sort_unstable();
        list
    }

    /// The subgraph spanned by `edge_ids`, relabeled densely in order of
    /// first appearance. Returns the subgraph with its local-to-global
    /// vertex and edge maps.
    pub fn edge_subgraph(
        &self,
        edge_ids: &[usize],
    ) -> Result<(Graph, Vec<usize>, Vec<usize>), GraphError> {
        let mut local = vec![usize::MAX; self.n];
        let mut vertices = Vec::new();
        let mut edges = Vec::with_capacity(edge_ids.len());
        for &e in edge_ids {
            let (u, v) = self.edges[e];
            for w in [u, v] {
                if local[w] == usize::MAX {
                    local[w] = vertices.len();
                    vertices.push(w);
                }
            }
            edges.push((local[u], local[v]));
        }
        let sub = Graph::new(vertices.len(), edges)?;
        Ok((sub, vertices, edge_ids.to_vec()))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}
