//! Progressive genus brackets.
//!
//! The lower bound rises one exhausted face-count level at a time; the upper
//! bound falls whenever an embedding is certified, either by the exact
//! search or by random rotation sampling.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificate::{genus_from_face_count, EmbeddingCertificate};
use crate::engine::{BlockDecomposition, EngineConfig, EngineError, LevelOutcome};
use crate::graph::Graph;
use crate::oracle::{trace_faces, RotationSystem};
use crate::search::Budget;

/// Girth-based Euler lower bound and the one-face upper bound.
pub fn initial_bounds(g: &Graph) -> (usize, usize) {
    let (n, m) = (g.n() as i64, g.m() as i64);
    let upper = ((m - n + 2) / 2).max(0) as usize;
    let lower = match g.girth() {
        None => 0,
        Some(girth) => {
            let excess = m - n + 2 - (2 * m) / girth as i64;
            // ceil of excess / 2
            (excess + 1).div_euclid(2).max(0) as usize
        }
    };
    log::info!(
        "lower bound from vertex count alone would be {}",
        (3 * m - 4 * n + 6).div_euclid(6)
    );
    (lower.min(upper), upper)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRecord {
    pub iteration: usize,
    pub lower: usize,
    pub upper: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsState {
    pub lower: usize,
    pub upper: usize,
    pub iteration: usize,
    pub history: Vec<BoundsRecord>,
}

impl BoundsState {
    pub fn is_closed(&self) -> bool {
        self.lower == self.upper
    }

    pub fn width(&self) -> usize {
        self.upper - self.lower
    }
}

/// Samples `tries` uniformly random rotation systems and keeps the one with
/// the most faces.
pub fn heuristic_upper_bound(
    g: &Graph,
    tries: usize,
    seed: u64,
) -> Option<(usize, EmbeddingCertificate)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Vec<Vec<crate::graph::Dart>>> = None;
    for _ in 0..tries {
        let orders = (0..g.n())
            .map(|v| {
                let mut order: Vec<usize> = (0..g.degree(v)).collect();
                order.shuffle(&mut rng);
                order
            })
            .collect();
        let rot = RotationSystem::new(g, orders).expect("shuffled slots form a permutation");
        let faces = trace_faces(g, &rot);
        if best.as_ref().is_none_or(|b| faces.len() > b.len()) {
            best = Some(faces);
        }
    }
    best.map(|faces| {
        (
            genus_from_face_count(g.n(), g.m(), faces.len()),
            EmbeddingCertificate::from_dart_faces(g, &faces),
        )
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefineOutcome {
    /// A level was decided or a block closed.
    Progress,
    /// The budget ran out before the current level was decided.
    BudgetExceeded,
    /// Nothing left to do.
    Closed,
}

/// A bracket together with the block solvers that tighten it.
#[derive(Debug)]
pub struct BoundsSession {
    graph: Graph,
    blocks: BlockDecomposition,
    state: BoundsState,
    config: EngineConfig,
    certificate: Option<EmbeddingCertificate>,
    start: Instant,
}

impl BoundsSession {
    pub fn new(g: &Graph, config: EngineConfig) -> Self {
        let (lower, upper) = initial_bounds(g);
        let mut session = BoundsSession {
            graph: g.clone(),
            blocks: BlockDecomposition::new(g),
            state: BoundsState {
                lower,
                upper,
                iteration: 0,
                history: Vec::new(),
            },
            config,
            certificate: None,
            start: Instant::now(),
        };
        session.tighten();
        session.record();
        session
    }

    pub fn state(&self) -> &BoundsState {
        &self.state
    }

    pub fn certificate(&self) -> Option<&EmbeddingCertificate> {
        self.certificate.as_ref()
    }

    fn record(&mut self) {
        self.state.history.push(BoundsRecord {
            iteration: self.state.iteration,
            lower: self.state.lower,
            upper: self.state.upper,
            elapsed: self.start.elapsed(),
        });
    }

    fn offer_upper(&mut self, genus: usize, cert: Option<EmbeddingCertificate>) {
        if genus < self.state.upper {
            self.state.upper = genus;
            if cert.is_some() {
                self.certificate = cert;
            }
        } else if self.certificate.is_none() && genus == self.state.upper {
            self.certificate = cert;
        }
    }

    /// Pulls in whatever the block solvers currently know.
    fn tighten(&mut self) {
        let lower = self.blocks.lower();
        if lower > self.state.lower {
            self.state.lower = lower;
        }
        if let Some(cert) = self.blocks.certificate(&self.graph) {
            self.offer_upper(cert.claimed_genus, Some(cert));
        } else {
            let upper = self
                .blocks
                .solvers
                .iter()
                .map(|s| s.solution().map_or(s.euler_upper(), |sol| sol.genus))
                .sum();
            self.offer_upper(upper, None);
        }
        debug_assert!(self.state.lower <= self.state.upper);
    }

    /// Tries random rotations for a better upper bound.
    pub fn sample_upper(&mut self, tries: usize, seed: u64) {
        if tries == 0 {
            return;
        }
        if let Some((genus, cert)) = heuristic_upper_bound(&self.graph, tries, seed) {
            self.offer_upper(genus, Some(cert));
            self.record();
        }
    }

    /// Decides one face-count level of the first open block.
    pub fn refine(&mut self, budget: Budget) -> Result<RefineOutcome, EngineError> {
        self.state.iteration += 1;
        if self.state.is_closed() {
            self.record();
            return Ok(RefineOutcome::Closed);
        }
        let config = EngineConfig {
            budget,
            ..self.config
        };
        let control = config.control();
        let open = self
            .blocks
            .solvers
            .iter()
            .position(|s| s.solution().is_none());
        let Some(i) = open else {
            self.record();
            return Ok(RefineOutcome::Closed);
        };
        if !self.blocks.solvers[i].levels_left() {
            self.record();
            return Err(EngineError::NoSimpleCycleEmbedding { block: i });
        }
        let outcome = self.blocks.solvers[i].step(&config, &control)?;
        if outcome != LevelOutcome::BudgetExceeded {
            self.tighten();
        }
        self.record();
        Ok(match outcome {
            LevelOutcome::BudgetExceeded => RefineOutcome::BudgetExceeded,
            _ if self.state.is_closed() => RefineOutcome::Closed,
            _ => RefineOutcome::Progress,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use crate::generators::{complete, complete_bipartite, cycle};

    #[test]
    fn initial_examples() {
        assert_eq!(initial_bounds(&complete(4).unwrap()), (0, 2));
        assert_eq!(initial_bounds(&complete_bipartite(3, 3).unwrap()), (1, 2));
        assert_eq!(initial_bounds(&cycle(6).unwrap()), (0, 1));
    }

    #[test]
    fn k33_closes() {
        let g = complete_bipartite(3, 3).unwrap();
        let mut s = BoundsSession::new(&g, EngineConfig::default());
        while s.refine(Budget::unlimited()).unwrap() == RefineOutcome::Progress {}
        assert_eq!((s.state().lower, s.state().upper), (1, 1));
        let cert = s.certificate().unwrap();
        assert!(verify_certificate(&g, cert).unwrap().is_valid());
    }

    #[test]
    fn zero_budget_only_records() {
        let g = complete(5).unwrap();
        let mut s = BoundsSession::new(&g, EngineConfig::default());
        let before = (s.state().lower, s.state().upper);
        assert_eq!(s.refine(Budget::nodes(0)).unwrap(), RefineOutcome::BudgetExceeded);
        assert_eq!((s.state().lower, s.state().upper), before);
        assert_eq!(s.state().history.len(), 2);
    }

    #[test]
    fn heuristic_cycle_and_k4() {
        let (g, _) = heuristic_upper_bound(&cycle(7).unwrap(), 1, 3).unwrap();
        assert_eq!(g, 0);
        let k4 = complete(4).unwrap();
        let (genus, cert) = heuristic_upper_bound(&k4, 50, 11).unwrap();
        assert_eq!(genus, 0);
        assert!(verify_certificate(&k4, &cert).unwrap().is_valid());
        let k7 = complete(7).unwrap();
        let (genus, cert) = heuristic_upper_bound(&k7, 1, 0).unwrap();
        assert!(genus >= 1);
        assert!(verify_certificate(&k7, &cert).unwrap().is_valid());
    }
}
