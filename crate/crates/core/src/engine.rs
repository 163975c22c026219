//! Exact genus computation.
//!
//! The graph is split into blocks. Each 2-connected block is searched level
//! by level: a level is a face count `F`, tried from the largest count the
//! girth allows downwards, skipping counts of the wrong Euler parity. Inside
//! a level, distributions are taken in increasing order of their longest
//! part. The first level with a realizable distribution fixes the block's
//! genus. Block rotations are then joined at cut vertices and the faces of
//! the whole graph are traced to produce a certificate.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::blocks::biconnected_components;
use crate::certificate::{euler_parity_ok, genus_from_face_count, EmbeddingCertificate};
use crate::cycles::{count_cycles_up_to, CycleIndex};
use crate::distribution::{
    generate_distributions_filtered, CycleDistribution, DistributionFilter,
    DEFAULT_DISTRIBUTION_BUDGET,
};
use crate::error::CapacityExceeded;
use crate::graph::{Dart, Graph};
use crate::oracle::{trace_faces, RotationSystem};
use crate::search::{search_with, Budget, CandidateTable, SearchConfig, SearchControl, SearchResult};

pub const DEFAULT_CYCLE_BUDGET: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub search: SearchConfig,
    pub budget: Budget,
    /// Most cycles held in the index at once.
    pub cycle_budget: usize,
    /// Most distributions of one longest-part class sorted in memory.
    pub distribution_budget: usize,
    /// Node interval for progress lines, if any.
    pub progress_every: Option<u64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            search: SearchConfig::default(),
            budget: Budget::unlimited(),
            cycle_budget: DEFAULT_CYCLE_BUDGET,
            distribution_budget: DEFAULT_DISTRIBUTION_BUDGET,
            progress_every: None,
        }
    }
}

impl EngineConfig {
    pub fn control(&self) -> SearchControl {
        let control = SearchControl::new(self.budget);
        match self.progress_every {
            Some(every) => control.with_progress(every),
            None => control,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("budget exhausted with genus in [{lower}, {upper}]")]
    BudgetExceeded {
        lower: usize,
        upper: usize,
    },
    #[error(
        "block {block} has no set of simple-cycle faces at any face count; \
         its embeddings all need a face that repeats a vertex"
    )]
    NoSimpleCycleEmbedding { block: usize },
    #[error(transparent)]
    Capacity(#[from] CapacityExceeded),
}

/// Outcome of deciding one face-count level of a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelOutcome {
    Found,
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSolution {
    pub genus: usize,
    pub distribution: CycleDistribution,
    /// Faces as darts of the parent graph.
    pub faces: Vec<Vec<Dart>>,
}

/// Level-by-level solver for one 2-connected block.
#[derive(Debug)]
pub struct BlockSolver {
    graph: Graph,
    edge_ids: Vec<usize>,
    girth: usize,
    counts: BTreeMap<usize, u64>,
    counted_to: usize,
    index: CycleIndex,
    table: Option<CandidateTable>,
    levels: Vec<usize>,
    next_level: usize,
    solution: Option<BlockSolution>,
}

/// Face counts worth trying for a graph of this size and girth, descending.
pub fn face_count_levels(n: usize, m: usize, girth: usize) -> Vec<usize> {
    let top = (2 * m / girth).min((m + 2).saturating_sub(n));
    (1..=top)
        .rev()
        .filter(|&f| euler_parity_ok(n, m, f))
        .collect()
}

impl BlockSolver {
    /// `graph` must be 2-connected; `edge_ids` maps its edges to the parent.
    pub fn new(graph: Graph, edge_ids: Vec<usize>) -> Self {
        let girth = graph.girth().expect("a 2-connected block has a cycle");
        let levels = face_count_levels(graph.n(), graph.m(), girth);
        BlockSolver {
            graph,
            edge_ids,
            girth,
            counts: BTreeMap::new(),
            counted_to: 0,
            index: CycleIndex::default(),
            table: None,
            levels,
            next_level: 0,
            solution: None,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    pub fn solution(&self) -> Option<&BlockSolution> {
        self.solution.as_ref()
    }

    /// The next face count to decide, if any remain.
    pub fn current_level(&self) -> Option<usize> {
        if self.solution.is_some() {
            return None;
        }
        self.levels.get(self.next_level).copied()
    }

    pub fn levels_left(&self) -> bool {
        self.current_level().is_some()
    }

    /// Largest genus an embedding could need: one face.
    pub fn euler_upper(&self) -> usize {
        (self.graph.m() + 2 - self.graph.n()) / 2
    }

    /// Every level above the current one is exhausted, so the genus is at
    /// least the genus of the current level.
    pub fn lower(&self) -> usize {
        if let Some(sol) = &self.solution {
            return sol.genus;
        }
        match self.current_level() {
            Some(f) => genus_from_face_count(self.graph.n(), self.graph.m(), f),
            None => self.euler_upper(),
        }
    }

    pub fn cycle_counts(&mut self, up_to: usize) -> &BTreeMap<usize, u64> {
        if up_to > self.counted_to {
            self.counts = count_cycles_up_to(&self.graph, up_to);
            self.counted_to = up_to;
        }
        &self.counts
    }

    fn ensure_lengths(&mut self, dist: &CycleDistribution, budget: usize) -> Result<(), CapacityExceeded> {
        let mut grew = false;
        for &l in dist.parts().keys() {
            if !self.index.covers(l) {
                self.index.extend_with(&self.graph, l, budget)?;
                grew = true;
            }
        }
        if grew || self.table.is_none() {
            self.table = Some(CandidateTable::new(&self.graph, &self.index));
        }
        Ok(())
    }

    /// Distributions of the level with `face_count` faces whose longest part
    /// is exactly `longest`, in search order.
    fn class(&mut self, face_count: usize, longest: usize, budget: usize) -> Vec<CycleDistribution> {
        let s = 2 * self.graph.m();
        let population: Vec<(usize, usize)> = self
            .cycle_counts(longest)
            .range(..=longest)
            .map(|(&l, &c)| (l, 2 * c as usize))
            .collect();
        let filter = DistributionFilter {
            face_count: Some(face_count),
            max_part: Some(longest),
        };
        let mut out = Vec::new();
        let mut sorted = true;
        for d in generate_distributions_filtered(&population, s, filter) {
            out.push(d);
            if out.len() > budget {
                sorted = false;
            }
        }
        if sorted {
            out.sort_by_cached_key(CycleDistribution::sorted_parts);
        } else {
            log::info!(
                "{} distributions with {face_count} faces and longest part {longest}; \
                 keeping generation order",
                out.len()
            );
        }
        out
    }

    /// Decides the current level. `Exhausted` moves on to the next level.
    pub fn step(
        &mut self,
        config: &EngineConfig,
        control: &SearchControl,
    ) -> Result<LevelOutcome, CapacityExceeded> {
        let Some(f) = self.current_level() else {
            return Ok(LevelOutcome::Exhausted);
        };
        control.set_target_faces(f);
        let s = 2 * self.graph.m();
        let shortest_longest = s.div_ceil(f).max(self.girth);
        let longest_max = s - (f - 1) * self.girth;
        for longest in shortest_longest..=longest_max {
            if self.cycle_counts(longest).get(&longest).copied().unwrap_or(0) == 0 {
                continue;
            }
            for dist in self.class(f, longest, config.distribution_budget) {
                self.ensure_lengths(&dist, config.cycle_budget)?;
                let table = self.table.as_ref().expect("table built");
                match search_with(&self.graph, table, &dist, &config.search, control) {
                    SearchResult::Found(cycles) => {
                        log::debug!("found {dist} ({} faces)", dist.face_count());
                        let faces = cycles
                            .iter()
                            .map(|c| {
                                c.darts
                                    .iter()
                                    .map(|d| Dart::new(self.edge_ids[d.edge()], d.0 & 1 == 1))
                                    .collect()
                            })
                            .collect();
                        self.solution = Some(BlockSolution {
                            genus: genus_from_face_count(self.graph.n(), self.graph.m(), f),
                            distribution: dist,
                            faces,
                        });
                        return Ok(LevelOutcome::Found);
                    }
                    SearchResult::Exhausted => {}
                    SearchResult::BudgetExceeded => return Ok(LevelOutcome::BudgetExceeded),
                }
            }
        }
        log::debug!("no face set with {f} faces");
        self.next_level += 1;
        Ok(LevelOutcome::Exhausted)
    }
}

/// A graph split into bridges and 2-connected block solvers.
#[derive(Debug)]
pub struct BlockDecomposition {
    pub bridges: Vec<usize>,
    pub solvers: Vec<BlockSolver>,
}

impl BlockDecomposition {
    pub fn new(g: &Graph) -> Self {
        let mut bridges = Vec::new();
        let mut solvers = Vec::new();
        for block in biconnected_components(g) {
            if block.len() == 1 {
                bridges.push(block[0]);
            } else {
                let (sub, _, ids) = g
                    .edge_subgraph(&block)
                    .expect("a block is connected and loop-free");
                solvers.push(BlockSolver::new(sub, ids));
            }
        }
        BlockDecomposition { bridges, solvers }
    }

    pub fn lower(&self) -> usize {
        self.solvers.iter().map(BlockSolver::lower).sum()
    }

    pub fn is_solved(&self) -> bool {
        self.solvers.iter().all(|s| s.solution.is_some())
    }

    /// Joins the block rotations at cut vertices and traces the faces.
    pub fn certificate(&self, g: &Graph) -> Option<EmbeddingCertificate> {
        let faces: Vec<&Vec<Dart>> = self
            .solvers
            .iter()
            .map(|s| s.solution.as_ref().map(|sol| &sol.faces))
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let rotation = merge_rotations(g, &faces, &self.bridges);
        let walks = trace_faces(g, &rotation);
        let cert = EmbeddingCertificate::from_dart_faces(g, &walks);
        debug_assert_eq!(
            cert.claimed_genus,
            self.solvers.iter().map(|s| s.solution.as_ref().unwrap().genus).sum::<usize>()
        );
        Some(cert)
    }
}

/// Builds a rotation whose restriction to each block is that block's, by
/// listing the block orbits at each vertex one after another.
pub fn merge_rotations(g: &Graph, faces: &[&Vec<Dart>], bridges: &[usize]) -> RotationSystem {
    let mut succ: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![usize::MAX; g.degree(v)]).collect();
    for walk in faces {
        let k = walk.len();
        for i in 0..k {
            let (din, dout) = (walk[i], walk[(i + 1) % k]);
            succ[g.head(din)][g.head_slot(din)] = g.tail_slot(dout);
        }
    }
    for &e in bridges {
        let d = Dart::new(e, false);
        succ[g.tail(d)][g.tail_slot(d)] = g.tail_slot(d);
        succ[g.head(d)][g.head_slot(d)] = g.head_slot(d);
    }
    let orders = succ
        .iter()
        .map(|next| {
            let mut seen = vec![false; next.len()];
            let mut order = Vec::with_capacity(next.len());
            for start in 0..next.len() {
                let mut s = start;
                while !seen[s] {
                    seen[s] = true;
                    order.push(s);
                    s = next[s];
                }
            }
            order
        })
        .collect();
    RotationSystem::new(g, orders).expect("every slot lies on exactly one block orbit")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub genus: usize,
    pub certificate: EmbeddingCertificate,
    /// Winning distribution of each 2-connected block.
    pub block_distributions: Vec<CycleDistribution>,
    pub nodes: u64,
    pub distributions_tried: u64,
}

/// Computes the genus of `g` with a certificate.
pub fn compute_genus(g: &Graph, config: &EngineConfig) -> Result<GenusReport, EngineError> {
    let control = config.control();
    let mut blocks = BlockDecomposition::new(g);
    for i in 0..blocks.solvers.len() {
        loop {
            let solver = &mut blocks.solvers[i];
            if solver.solution.is_some() {
                break;
            }
            if !solver.levels_left() {
                return Err(EngineError::NoSimpleCycleEmbedding { block: i });
            }
            match solver.step(config, &control)? {
                LevelOutcome::Found | LevelOutcome::Exhausted => {}
                LevelOutcome::BudgetExceeded => {
                    let upper = blocks
                        .solvers
                        .iter()
                        .map(|s| s.solution.as_ref().map_or(s.euler_upper(), |sol| sol.genus))
                        .sum();
                    return Err(EngineError::BudgetExceeded {
                        lower: blocks.lower(),
                        upper,
                    });
                }
            }
        }
    }
    let certificate = blocks.certificate(g).expect("all blocks solved");
    Ok(GenusReport {
        genus: certificate.claimed_genus,
        certificate,
        block_distributions: blocks
            .solvers
            .iter()
            .map(|s| s.solution.as_ref().unwrap().distribution.clone())
            .collect(),
        nodes: control.nodes(),
        distributions_tried: control.distributions_tried(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use crate::generators::{complete, complete_bipartite, cycle, generate, path};

    fn genus(g: &Graph) -> usize {
        let r = compute_genus(g, &EngineConfig::default()).unwrap();
        assert!(verify_certificate(g, &r.certificate).unwrap().is_valid());
        r.genus
    }

    #[test]
    fn levels() {
        // K4: top = min(4, 4) = 4
        assert_eq!(face_count_levels(4, 6, 3), vec![4, 2]);
        // Petersen: 6 has the wrong parity
        assert_eq!(face_count_levels(10, 15, 5)[0], 5);
    }

    #[test]
    fn small_genera() {
        assert_eq!(genus(&cycle(5).unwrap()), 0);
        assert_eq!(genus(&complete(4).unwrap()), 0);
        assert_eq!(genus(&complete(5).unwrap()), 1);
        assert_eq!(genus(&complete_bipartite(3, 3).unwrap()), 1);
        assert_eq!(genus(&generate("petersen").unwrap()), 1);
    }

    #[test]
    fn trees_and_cut_vertices() {
        assert_eq!(genus(&path(4).unwrap()), 0);
        let bowtie = Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(genus(&bowtie), 0);
        // two K5s sharing vertex 0, plus a pendant edge
        let mut edges = Vec::new();
        for base in [0usize, 4] {
            let vs: Vec<usize> = std::iter::once(0).chain(base + 1..base + 5).collect();
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((vs[i], vs[j]));
                }
            }
        }
        edges.push((8, 9));
        let g = Graph::new(10, edges).unwrap();
        assert_eq!(genus(&g), 2);
    }

    #[test]
    fn multigraph() {
        let g = Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(genus(&g), 0);
    }

    #[test]
    fn budget_gives_bracket() {
        let config = EngineConfig {
            budget: Budget::nodes(0),
            ..EngineConfig::default()
        };
        match compute_genus(&complete(5).unwrap(), &config) {
            Err(EngineError::BudgetExceeded { lower, upper }) => {
                assert_eq!((lower, upper), (1, 3));
            }
            other => panic!("{other:?}"),
        }
    }
}
