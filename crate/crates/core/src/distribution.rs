//! Cycle distributions: multisets of face lengths summing to the number of
//! darts `2m`, each length used at most as often as it is available.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use crate::certificate::genus_from_face_count;
use crate::error::CapacityExceeded;

/// Default number of distributions held in memory for global ordering.
pub const DEFAULT_DISTRIBUTION_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleDistribution {
    parts: BTreeMap<usize, usize>,
}

impl CycleDistribution {
    /// Zero multiplicities are dropped.
    pub fn new(parts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        CycleDistribution {
            parts: parts.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }

    /// Length -> multiplicity, ascending by length.
    pub fn parts(&self) -> &BTreeMap<usize, usize> {
        &self.parts
    }

    pub fn multiplicity(&self, length: usize) -> usize {
        self.parts.get(&length).copied().unwrap_or(0)
    }

    pub fn face_count(&self) -> usize {
        self.parts.values().sum()
    }

    pub fn edge_sum(&self) -> usize {
        self.parts.iter().map(|(l, c)| l * c).sum()
    }

    pub fn max_part(&self) -> Option<usize> {
        self.parts.keys().next_back().copied()
    }

    pub fn min_part(&self) -> Option<usize> {
        self.parts.keys().next().copied()
    }

    /// Every part listed with repetition, ascending.
    pub fn sorted_parts(&self) -> Vec<usize> {
        self.parts
            .iter()
            .flat_map(|(&l, &c)| std::iter::repeat_n(l, c))
            .collect()
    }

    /// Genus an embedding with these faces would have.
    pub fn genus_candidate(&self, n: usize, m: usize) -> usize {
        genus_from_face_count(n, m, self.face_count())
    }
}

impl fmt::Display for CycleDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .parts
            .iter()
            .map(|(l, c)| format!("{c}×{l}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Extra restrictions on generated distributions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DistributionFilter {
    /// Exact number of faces.
    pub face_count: Option<usize>,
    /// Exact largest part (it must occur at least once).
    pub max_part: Option<usize>,
}

/// Streaming enumerator; see [`generate_distributions`].
pub struct DistributionIter {
    /// Lengths in decreasing order with their availability.
    lengths: Vec<usize>,
    avail: Vec<usize>,
    /// Minimum multiplicity per position (1 for a forced max part).
    min_mult: Vec<usize>,
    /// `cap[i]`: the largest sum reachable from positions `i..`.
    cap: Vec<usize>,
    /// `fcap[i]`: the most faces available from positions `i..`.
    fcap: Vec<usize>,
    counts: Vec<usize>,
    remaining: usize,
    faces_left: Option<usize>,
    started: bool,
    done: bool,
}

/// Enumerates every distribution over `population` (pairs of `(length,
/// available count)`) whose parts sum to `s`. Lengths are decided in
/// decreasing order with remaining-sum feasibility pruning.
pub fn generate_distributions(population: &[(usize, usize)], s: usize) -> DistributionIter {
    generate_distributions_filtered(population, s, DistributionFilter::default())
}

pub fn generate_distributions_filtered(
    population: &[(usize, usize)],
    s: usize,
    filter: DistributionFilter,
) -> DistributionIter {
    let mut pop: Vec<(usize, usize)> = population
        .iter()
        .copied()
        .filter(|&(l, c)| l > 0 && c > 0)
        .filter(|&(l, _)| filter.max_part.is_none_or(|mx| l <= mx))
        .collect();
    pop.sort_unstable_by_key(|&(l, _)| Reverse(l));
    pop.dedup_by(|b, a| {
        if a.0 == b.0 {
            a.1 += b.1;
            true
        } else {
            false
        }
    });
    let mut done = false;
    let mut min_mult = vec![0; pop.len()];
    if let Some(mx) = filter.max_part {
        if pop.first().map(|p| p.0) == Some(mx) {
            min_mult[0] = 1;
        } else {
            done = true;
        }
    }
    let lengths: Vec<usize> = pop.iter().map(|p| p.0).collect();
    let avail: Vec<usize> = pop.iter().map(|p| p.1).collect();
    let p = lengths.len();
    let mut cap = vec![0usize; p + 1];
    let mut fcap = vec![0usize; p + 1];
    for i in (0..p).rev() {
        cap[i] = cap[i + 1].saturating_add(lengths[i].saturating_mul(avail[i]));
        fcap[i] = fcap[i + 1].saturating_add(avail[i]);
    }
    if s == 0 {
        done = true;
    }
    DistributionIter {
        lengths,
        avail,
        min_mult,
        cap,
        fcap,
        counts: Vec::with_capacity(p),
        remaining: s,
        faces_left: filter.face_count,
        started: false,
        done,
    }
}

impl DistributionIter {
    /// Whether positions `from..` can absorb exactly `r` with `f` faces.
    fn feasible(&self, from: usize, r: usize, f: Option<usize>) -> bool {
        let p = self.lengths.len();
        if from == p {
            return r == 0 && f.is_none_or(|f| f == 0);
        }
        if r > self.cap[from] {
            return false;
        }
        match f {
            None => true,
            Some(f) => {
                let longest = self.lengths[from];
                let shortest = self.lengths[p - 1];
                f <= self.fcap[from] && f * shortest <= r && r <= f * longest
            }
        }
    }

    /// Largest feasible multiplicity `<= upper` at position `d`, if any.
    fn choose(&self, d: usize, upper: usize) -> Option<usize> {
        let l = self.lengths[d];
        let mut hi = upper.min(self.avail[d]).min(self.remaining / l);
        if let Some(f) = self.faces_left {
            hi = hi.min(f);
        }
        let lo = self.min_mult[d];
        (lo..=hi).rev().find(|&c| {
            self.feasible(
                d + 1,
                self.remaining - c * l,
                self.faces_left.map(|f| f - c),
            )
        })
    }

    fn push(&mut self, c: usize) {
        let d = self.counts.len();
        self.remaining -= c * self.lengths[d];
        if let Some(f) = self.faces_left.as_mut() {
            *f -= c;
        }
        self.counts.push(c);
    }

    fn pop(&mut self) -> Option<usize> {
        let c = self.counts.pop()?;
        let d = self.counts.len();
        self.remaining += c * self.lengths[d];
        if let Some(f) = self.faces_left.as_mut() {
            *f += c;
        }
        Some(c)
    }

    /// Moves to the next sibling of the deepest frame that has one.
    fn backtrack(&mut self) -> bool {
        while let Some(c) = self.pop() {
            if c > 0 {
                let d = self.counts.len();
                if let Some(next) = self.choose(d, c - 1) {
                    self.push(next);
                    return true;
                }
            }
        }
        false
    }

    fn descend(&mut self) -> bool {
        while self.counts.len() < self.lengths.len() {
            let d = self.counts.len();
            match self.choose(d, usize::MAX) {
                Some(c) => self.push(c),
                None => return false,
            }
        }
        true
    }

    fn current(&self) -> CycleDistribution {
        CycleDistribution::new(self.lengths.iter().copied().zip(self.counts.iter().copied()))
    }
}

impl Iterator for DistributionIter {
    type Item = CycleDistribution;

    fn next(&mut self) -> Option<CycleDistribution> {
        if self.done {
            return None;
        }
        loop {
            let advanced = if self.started {
                self.backtrack()
            } else {
                self.started = true;
                self.feasible(0, self.remaining, self.faces_left)
            };
            if !advanced {
                self.done = true;
                return None;
            }
            // choose() only admits values with a feasible completion, so a
            // full descent always lands on a valid distribution
            if self.descend() {
                return Some(self.current());
            }
        }
    }
}

/// Orders by face count (most faces first); ties go to the distribution
/// whose ascending part list is lexicographically smaller, then input order.
pub fn order_by_face_count(
    mut distributions: Vec<CycleDistribution>,
    budget: usize,
) -> Result<Vec<CycleDistribution>, CapacityExceeded> {
    if distributions.len() > budget {
        return Err(CapacityExceeded {
            needed: distributions.len(),
            budget,
        });
    }
    distributions.sort_by_cached_key(|d| (Reverse(d.face_count()), d.sorted_parts()));
    Ok(distributions)
}
