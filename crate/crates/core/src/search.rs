//! Backtracking search for a set of oriented simple cycles realizing a cycle
//! distribution as the faces of an embedding.
//!
//! Every dart must be covered exactly once. Choosing a face through vertex
//! `v` fixes one corner of `v`'s rotation: the slot it enters through maps to
//! the slot it leaves through. The search keeps that partial map and rejects
//! a candidate as soon as some vertex's map would close an orbit shorter than
//! the vertex degree.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::cycles::{CycleIndex, CycleRef};
use crate::distribution::CycleDistribution;
use crate::graph::{Dart, Graph};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reverse,
}

/// One corner of a face: at `vertex`, global slot `from` is followed by `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub vertex: u32,
    pub from: u32,
    pub to: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedCycle {
    pub base: CycleRef,
    pub orientation: Orientation,
    pub darts: Vec<Dart>,
    corners: Vec<Corner>,
}

impl OrientedCycle {
    pub fn new(g: &Graph, index: &CycleIndex, base: CycleRef, orientation: Orientation) -> Self {
        let darts = index
            .get(base)
            .darts(g, orientation == Orientation::Reverse);
        let offsets = slot_offsets(g);
        let k = darts.len();
        let corners = (0..k)
            .map(|i| {
                let din = darts[i];
                let dout = darts[(i + 1) % k];
                let v = g.head(din);
                Corner {
                    vertex: v as u32,
                    from: (offsets[v] + g.head_slot(din)) as u32,
                    to: (offsets[v] + g.tail_slot(dout)) as u32,
                }
            })
            .collect();
        OrientedCycle {
            base,
            orientation,
            darts,
            corners,
        }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    /// Vertices in traversal order, starting at the tail of the first dart.
    pub fn vertices(&self, g: &Graph) -> Vec<usize> {
        self.darts.iter().map(|&d| g.tail(d)).collect()
    }
}

fn slot_offsets(g: &Graph) -> Vec<usize> {
    let mut out = Vec::with_capacity(g.n() + 1);
    let mut acc = 0;
    for v in 0..g.n() {
        out.push(acc);
        acc += g.degree(v);
    }
    out.push(acc);
    out
}

/// All oriented cycles of the indexed lengths, with per-dart lists ordered by
/// length, then canonical cycle order, forward before reverse.
#[derive(Clone, Debug)]
pub struct CandidateTable {
    candidates: Vec<OrientedCycle>,
    by_dart: Vec<Vec<u32>>,
}

impl CandidateTable {
    pub fn new(g: &Graph, index: &CycleIndex) -> Self {
        let mut candidates = Vec::new();
        let mut by_dart = vec![Vec::new(); g.dart_count()];
        for length in index.lengths() {
            for i in 0..index.cycles(length).len() {
                for orientation in [Orientation::Forward, Orientation::Reverse] {
                    let c = OrientedCycle::new(g, index, CycleRef { length, index: i }, orientation);
                    let id = candidates.len() as u32;
                    for d in &c.darts {
                        by_dart[d.index()].push(id);
                    }
                    candidates.push(c);
                }
            }
        }
        CandidateTable {
            candidates,
            by_dart,
        }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn get(&self, id: usize) -> &OrientedCycle {
        &self.candidates[id]
    }

    pub fn through_dart(&self, d: Dart) -> impl Iterator<Item = &OrientedCycle> + '_ {
        self.by_dart[d.index()]
            .iter()
            .map(|&id| &self.candidates[id as usize])
    }
}

/// Which optional clauses of the fit test are active. Dart disjointness is
/// always checked; the final rotation check always runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneConfig {
    pub quota: bool,
    pub corners: bool,
}

impl Default for PruneConfig {
    fn default() -> Self {
        PruneConfig {
            quota: true,
            corners: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchState {
    used: Vec<bool>,
    used_count: usize,
    quota: Vec<u32>,
    degree: Vec<u32>,
    offset: Vec<u32>,
    succ: Vec<u32>,
    pred: Vec<u32>,
    remaining: Vec<u32>,
    chosen: Vec<OrientedCycle>,
    prune: PruneConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("every vertex already has all its faces")]
pub struct NoUnsatisfiedVertex;

impl SearchState {
    pub fn new(g: &Graph, dist: &CycleDistribution) -> Self {
        let degree: Vec<u32> = (0..g.n()).map(|v| g.degree(v) as u32).collect();
        let offset = slot_offsets(g).into_iter().map(|o| o as u32).collect();
        let max_len = dist.max_part().unwrap_or(0);
        let mut remaining = vec![0; max_len + 1];
        for (&l, &c) in dist.parts() {
            remaining[l] = c as u32;
        }
        SearchState {
            used: vec![false; g.dart_count()],
            used_count: 0,
            quota: degree.clone(),
            degree,
            offset,
            succ: vec![NONE; 2 * g.m()],
            pred: vec![NONE; 2 * g.m()],
            remaining,
            chosen: Vec::new(),
            prune: PruneConfig::default(),
        }
    }

    pub fn with_prune(mut self, prune: PruneConfig) -> Self {
        self.prune = prune;
        self
    }

    pub fn is_used(&self, d: Dart) -> bool {
        self.used[d.index()]
    }

    pub fn used_count(&self) -> usize {
        self.used_count
    }

    pub fn remaining_quota(&self, v: usize) -> usize {
        self.quota[v] as usize
    }

    pub fn remaining_parts(&self, length: usize) -> usize {
        self.remaining.get(length).copied().unwrap_or(0) as usize
    }

    pub fn chosen(&self) -> &[OrientedCycle] {
        &self.chosen
    }

    /// Slot following local slot `slot` at `v`, if fixed.
    pub fn corner(&self, v: usize, slot: usize) -> Option<usize> {
        let s = self.succ[(self.offset[v] as usize) + slot];
        (s != NONE).then(|| (s - self.offset[v]) as usize)
    }

    /// Sets the remaining quotas directly. Test helper for the branching rule.
    pub fn set_quotas(&mut self, quota: &[usize]) {
        self.quota = quota.iter().map(|&q| q as u32).collect();
    }

    /// Does adding `corner` leave every orbit at its vertex either open or
    /// of full length?
    fn corner_ok(&self, c: Corner) -> bool {
        let d = self.degree[c.vertex as usize];
        let mut len = 1;
        let mut x = c.to;
        loop {
            if x == c.from {
                return len == d;
            }
            let y = self.succ[x as usize];
            if y == NONE {
                return true;
            }
            x = y;
            len += 1;
        }
    }

    fn apply(&mut self, cand: &OrientedCycle) {
        for d in &cand.darts {
            self.used[d.index()] = true;
        }
        self.used_count += cand.len();
        for c in &cand.corners {
            self.quota[c.vertex as usize] -= 1;
            self.succ[c.from as usize] = c.to;
            self.pred[c.to as usize] = c.from;
        }
        self.remaining[cand.len()] -= 1;
        self.chosen.push(cand.clone());
    }

    fn undo(&mut self) {
        let cand = self.chosen.pop().expect("undo without apply");
        for d in &cand.darts {
            self.used[d.index()] = false;
        }
        self.used_count -= cand.len();
        for c in &cand.corners {
            self.quota[c.vertex as usize] += 1;
            self.succ[c.from as usize] = NONE;
            self.pred[c.to as usize] = NONE;
        }
        self.remaining[cand.len()] += 1;
    }
}

/// Can `candidate` join the current face set?
pub fn potential_max_fit(state: &SearchState, candidate: &OrientedCycle) -> bool {
    if state.remaining_parts(candidate.len()) == 0 {
        return false;
    }
    if candidate.darts.iter().any(|d| state.used[d.index()]) {
        return false;
    }
    if state.prune.quota
        && candidate
            .corners
            .iter()
            .any(|c| state.quota[c.vertex as usize] == 0)
    {
        return false;
    }
    if state.prune.corners && !candidate.corners.iter().all(|&c| state.corner_ok(c)) {
        return false;
    }
    true
}

/// The partially satisfied vertex with the least remaining quota (smallest
/// id on ties), else the smallest unsatisfied vertex.
pub fn select_branch_vertex(state: &SearchState) -> Result<usize, NoUnsatisfiedVertex> {
    let mut best: Option<(u32, usize)> = None;
    let mut fresh = None;
    for (v, (&q, &d)) in state.quota.iter().zip(&state.degree).enumerate() {
        if q == 0 {
            continue;
        }
        if q < d {
            if best.is_none_or(|(bq, _)| q < bq) {
                best = Some((q, v));
            }
        } else if fresh.is_none() {
            fresh = Some(v);
        }
    }
    best.map(|(_, v)| v).or(fresh).ok_or(NoUnsatisfiedVertex)
}

/// Is every vertex's corner map one cycle through all its slots?
pub fn verify_rotation(state: &SearchState) -> bool {
    (0..state.degree.len()).all(|v| {
        let lo = state.offset[v];
        let d = state.degree[v];
        if d == 0 {
            return true;
        }
        let mut x = lo;
        for step in 1..=d {
            let y = state.succ[x as usize];
            if y == NONE || y < lo || y >= lo + d {
                return false;
            }
            x = y;
            if x == lo {
                return step == d;
            }
        }
        false
    })
}

/// Node and wall-clock limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

/// Shared counters for one run. Node counts and the deadline span every
/// search started with the same control.
#[derive(Debug)]
pub struct SearchControl {
    nodes: AtomicU64,
    exceeded: AtomicBool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    progress_every: Option<u64>,
    distributions: AtomicU64,
    target_faces: AtomicUsize,
}

impl SearchControl {
    pub fn new(budget: Budget) -> Self {
        SearchControl {
            nodes: AtomicU64::new(0),
            exceeded: AtomicBool::new(false),
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|t| Instant::now() + t),
            progress_every: None,
            distributions: AtomicU64::new(0),
            target_faces: AtomicUsize::new(0),
        }
    }

    /// Emit a progress line on stderr every `every` nodes.
    pub fn with_progress(mut self, every: u64) -> Self {
        self.progress_every = Some(every.max(1));
        self
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn exceeded(&self) -> bool {
        self.exceeded.load(Ordering::Relaxed)
    }

    pub fn distributions_tried(&self) -> u64 {
        self.distributions.load(Ordering::Relaxed)
    }

    pub fn set_target_faces(&self, f: usize) {
        self.target_faces.store(f, Ordering::Relaxed);
    }

    pub fn out_of_time(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn progress_line(&self) -> String {
        format!(
            "PROGRESS dist={} target_F={} nodes={}",
            self.distributions_tried(),
            self.target_faces.load(Ordering::Relaxed),
            self.nodes()
        )
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(every) = self.progress_every {
            if n.is_multiple_of(every) {
                eprintln!("{}", self.progress_line());
            }
        }
        let over = self.max_nodes.is_some_and(|m| n > m) || (n.is_multiple_of(1024) && self.out_of_time());
        if over {
            self.exceeded.store(true, Ordering::Relaxed);
        }
        !over && !self.exceeded()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub prune: PruneConfig,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            prune: PruneConfig::default(),
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(Vec<OrientedCycle>),
    Exhausted,
    BudgetExceeded,
}

impl SearchResult {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchResult::Found(_))
    }
}

enum Flow {
    Continue,
    Found,
    Stop,
}

struct Worker<'a> {
    table: &'a CandidateTable,
    control: &'a SearchControl,
    cancel: &'a AtomicBool,
    state: SearchState,
    incident: &'a [Vec<Dart>],
}

impl Worker<'_> {
    /// Picks the unused dart at `v` with the fewest fitting candidates.
    /// `None` means some dart has no candidate left.
    fn branch_dart(&self, v: usize) -> Option<Dart> {
        let mut best: Option<(usize, Dart)> = None;
        for &d in &self.incident[v] {
            if self.state.used[d.index()] {
                continue;
            }
            let limit = best.map_or(usize::MAX, |(c, _)| c);
            let count = self
                .table
                .through_dart(d)
                .filter(|c| potential_max_fit(&self.state, c))
                .take(limit)
                .count();
            if count == 0 {
                return None;
            }
            if count < limit {
                best = Some((count, d));
            }
        }
        best.map(|(_, d)| d)
    }

    fn dfs(&mut self) -> Flow {
        if !self.control.tick() || self.cancel.load(Ordering::Relaxed) {
            return Flow::Stop;
        }
        let v = match select_branch_vertex(&self.state) {
            Ok(v) => v,
            Err(NoUnsatisfiedVertex) => {
                return if verify_rotation(&self.state) {
                    Flow::Found
                } else {
                    Flow::Continue
                };
            }
        };
        let Some(d) = self.branch_dart(v) else {
            return Flow::Continue;
        };
        let table = self.table;
        for cand in table.through_dart(d) {
            if !potential_max_fit(&self.state, cand) {
                continue;
            }
            self.state.apply(cand);
            match self.dfs() {
                Flow::Continue => self.state.undo(),
                other => return other,
            }
        }
        Flow::Continue
    }
}

fn incident_darts(g: &Graph) -> Vec<Vec<Dart>> {
    (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .flat_map(|inc| [inc.out, inc.out.reversed()])
                .collect()
        })
        .collect()
}

/// Searches for faces realizing `dist` with its own fresh budget.
pub fn search(
    g: &Graph,
    index: &CycleIndex,
    dist: &CycleDistribution,
    budget: Budget,
) -> SearchResult {
    let table = CandidateTable::new(g, index);
    let control = SearchControl::new(budget);
    search_with(g, &table, dist, &SearchConfig::default(), &control)
}

/// Searches for faces realizing `dist`, drawing candidates from `table`.
///
/// With more than one thread the candidates at the first branch are dealt
/// round-robin to workers, and the first worker to succeed stops the rest.
pub fn search_with(
    g: &Graph,
    table: &CandidateTable,
    dist: &CycleDistribution,
    config: &SearchConfig,
    control: &SearchControl,
) -> SearchResult {
    assert_eq!(dist.edge_sum(), g.dart_count(), "distribution must cover every dart");
    control.distributions.fetch_add(1, Ordering::Relaxed);
    let incident = incident_darts(g);
    let cancel = AtomicBool::new(false);
    let state = SearchState::new(g, dist).with_prune(config.prune);
    let mut root = Worker {
        table,
        control,
        cancel: &cancel,
        state,
        incident: &incident,
    };
    if config.threads <= 1 {
        return match root.dfs() {
            Flow::Found => SearchResult::Found(root.state.chosen),
            Flow::Continue => SearchResult::Exhausted,
            Flow::Stop => SearchResult::BudgetExceeded,
        };
    }

    if !control.tick() {
        return SearchResult::BudgetExceeded;
    }
    let v = select_branch_vertex(&root.state).expect("a non-empty graph has unsatisfied vertices");
    let Some(d) = root.branch_dart(v) else {
        return SearchResult::Exhausted;
    };
    let roots: Vec<&OrientedCycle> = table
        .through_dart(d)
        .filter(|c| potential_max_fit(&root.state, c))
        .collect();
    let threads = config.threads.min(roots.len()).max(1);
    let cancel = &cancel;
    let outcomes: Vec<(Flow, SearchState)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let mut worker = Worker {
                    table,
                    control,
                    cancel,
                    state: root.state.clone(),
                    incident: &incident,
                };
                let mine: Vec<&OrientedCycle> =
                    roots.iter().skip(w).step_by(threads).copied().collect();
                scope.spawn(move || {
                    for cand in mine {
                        worker.state.apply(cand);
                        match worker.dfs() {
                            Flow::Continue => worker.state.undo(),
                            Flow::Found => {
                                cancel.store(true, Ordering::Relaxed);
                                return (Flow::Found, worker.state);
                            }
                            Flow::Stop => return (Flow::Stop, worker.state),
                        }
                    }
                    (Flow::Continue, worker.state)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut stopped = false;
    for (flow, state) in outcomes {
        match flow {
            Flow::Found => return SearchResult::Found(state.chosen),
            Flow::Stop => stopped = true,
            Flow::Continue => {}
        }
    }
    if stopped {
        SearchResult::BudgetExceeded
    } else {
        SearchResult::Exhausted
    }
}
