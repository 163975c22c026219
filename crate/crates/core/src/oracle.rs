//! Brute-force genus by exhaustive rotation-system enumeration.
//!
//! This is the ground truth the search engine is tested against. It only
//! depends on the graph representation.

use std::time::Instant;

use thiserror::Error;

use crate::certificate::{euler_parity_ok, genus_from_face_count};
use crate::graph::{Dart, Graph};

/// Per-vertex cyclic order of incidence slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    orders: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("vertex {vertex}: order is not a permutation of its {degree} slots")]
    NotAPermutation { vertex: usize, degree: usize },
    #[error("rotation covers {got} vertices, graph has {want}")]
    WrongVertexCount { got: usize, want: usize },
}

impl RotationSystem {
    pub fn new(g: &Graph, orders: Vec<Vec<usize>>) -> Result<Self, RotationError> {
        if orders.len() != g.n() {
            return Err(RotationError::WrongVertexCount {
                got: orders.len(),
                want: g.n(),
            });
        }
        for (v, order) in orders.iter().enumerate() {
            let d = g.degree(v);
            let mut seen = vec![false; d];
            let ok = order.len() == d
                && order
                    .iter()
                    .all(|&s| s < d && !std::mem::replace(&mut seen[s], true));
            if !ok {
                return Err(RotationError::NotAPermutation {
                    vertex: v,
                    degree: d,
                });
            }
        }
        Ok(RotationSystem { orders })
    }

    /// Every vertex uses its adjacency order.
    pub fn identity(g: &Graph) -> Self {
        RotationSystem {
            orders: (0..g.n()).map(|v| (0..g.degree(v)).collect()).collect(),
        }
    }

    pub fn order(&self, v: usize) -> &[usize] {
        &self.orders[v]
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    /// Successor table: `succ[v][slot]` is the slot after `slot` at `v`.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        self.orders
            .iter()
            .map(|order| {
                let mut succ = vec![0; order.len()];
                for (i, &s) in order.iter().enumerate() {
                    succ[s] = order[(i + 1) % order.len()];
                }
                succ
            })
            .collect()
    }

    /// Neighbor sequence at `v` in rotation order.
    pub fn neighbor_cycle(&self, g: &Graph, v: usize) -> Vec<usize> {
        self.orders[v]
            .iter()
            .map(|&s| g.neighbors(v)[s].neighbor)
            .collect()
    }
}

/// Partitions the darts into face orbits: after `(u, v)` comes `(v, w)`
/// where `w` follows `u` in the rotation at `v`.
pub fn trace_faces(g: &Graph, rot: &RotationSystem) -> Vec<Vec<Dart>> {
    let succ = rot.successors();
    let mut seen = vec![false; g.dart_count()];
    let mut faces = Vec::new();
    for start in 0..g.dart_count() {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = Dart(start as u32);
        while !seen[d.index()] {
            seen[d.index()] = true;
            face.push(d);
            let v = g.head(d);
            let out = succ[v][g.head_slot(d)];
            d = g.neighbors(v)[out].out;
        }
        faces.push(face);
    }
    faces
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{needed} rotation systems exceed the cap of {cap}")]
    CapExceeded { needed: u128, cap: u128 },
}

pub const DEFAULT_ORACLE_CAP: u128 = 100_000_000;

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// All cyclic orders of `0..d`, each listed starting from slot 0, in
/// lexicographic order. With `mirror_free` only one of each mirror pair is kept.
fn cyclic_orders(d: usize, mirror_free: bool) -> Vec<Vec<usize>> {
    if d <= 1 {
        return vec![(0..d).collect()];
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..d).collect();
    loop {
        if !mirror_free || d < 3 || rest[0] < rest[d - 2] {
            let mut order = vec![0];
            order.extend_from_slice(&rest);
            out.push(order);
        }
        // next lexicographic permutation
        let Some(i) = (0..rest.len().saturating_sub(1)).rev().find(|&i| rest[i] < rest[i + 1]) else {
            break;
        };
        let j = (i + 1..rest.len()).rev().find(|&j| rest[j] > rest[i]).unwrap();
        rest.swap(i, j);
        rest[i + 1..].reverse();
    }
    out
}

/// Number of rotation systems [`brute_force_genus`] enumerates.
pub fn rotation_count(g: &Graph) -> u128 {
    let total: u128 = (0..g.n())
        .map(|v| factorial(g.degree(v).saturating_sub(1)))
        .product();
    if g.max_degree() >= 3 {
        total / 2
    } else {
        total
    }
}

/// Minimum genus over all rotation systems, with a witness.
///
/// Mirror images have equal genus, so one maximum-degree vertex only takes
/// one order from each mirror pair. The search stops early once it meets the
/// girth-based Euler bound.
pub fn brute_force_genus(g: &Graph, cap: u128) -> Result<(usize, RotationSystem), OracleError> {
    let needed = rotation_count(g);
    if needed > cap {
        return Err(OracleError::CapExceeded { needed, cap });
    }
    let n = g.n();
    let pivot = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
    let choices: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| cyclic_orders(g.degree(v), v == pivot))
        .collect();

    // the best conceivable face count, given the girth
    let best_possible = match g.girth() {
        None => 1,
        Some(girth) => {
            let mut f = (2 * g.m() / girth).min(g.m() + 2 - n.min(g.m() + 2));
            while f > 1 && !euler_parity_ok(n, g.m(), f) {
                f -= 1;
            }
            f.max(1)
        }
    };

    let offsets: Vec<usize> = (0..n)
        .scan(0, |acc, v| {
            let o = *acc;
            *acc += g.degree(v);
            Some(o)
        })
        .collect();
    let mut succ = vec![0usize; 2 * g.m()];
    let set_vertex = |succ: &mut [usize], v: usize, order: &[usize]| {
        for (i, &s) in order.iter().enumerate() {
            succ[offsets[v] + s] = order[(i + 1) % order.len()];
        }
    };
    let mut pick = vec![0usize; n];
    for (v, options) in choices.iter().enumerate() {
        set_vertex(&mut succ, v, &options[0]);
    }
    let mut stamp = vec![0u32; g.dart_count()];
    let mut generation = 0u32;
    let mut best_faces = 0usize;
    let mut best_pick = pick.clone();
    loop {
        generation += 1;
        let mut faces = 0;
        for start in 0..g.dart_count() {
            if stamp[start] == generation {
                continue;
            }
            faces += 1;
            let mut d = Dart(start as u32);
            while stamp[d.index()] != generation {
                stamp[d.index()] = generation;
                let v = g.head(d);
                let out = succ[offsets[v] + g.head_slot(d)];
                d = g.neighbors(v)[out].out;
            }
        }
        if faces > best_faces {
            best_faces = faces;
            best_pick.clone_from(&pick);
            if faces >= best_possible {
                break;
            }
        }
        // odometer, last vertex fastest
        let mut advanced = false;
        for v in (0..n).rev() {
            pick[v] += 1;
            if pick[v] < choices[v].len() {
                set_vertex(&mut succ, v, &choices[v][pick[v]]);
                advanced = true;
                break;
            }
            pick[v] = 0;
            set_vertex(&mut succ, v, &choices[v][0]);
        }
        if !advanced {
            break;
        }
    }
    let orders = (0..n).map(|v| choices[v][best_pick[v]].clone()).collect();
    Ok((
        genus_from_face_count(n, g.m(), best_faces),
        RotationSystem { orders },
    ))
}

/// Like [`brute_force_genus`] but logs how long it took.
pub fn brute_force_genus_timed(
    g: &Graph,
    cap: u128,
) -> Result<(usize, RotationSystem), OracleError> {
    let t = Instant::now();
    let out = brute_force_genus(g, cap);
    log::debug!(
        "oracle on n={} m={} took {:.3}s",
        g.n(),
        g.m(),
        t.elapsed().as_secs_f64()
    );
    out
}
