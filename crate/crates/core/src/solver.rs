//! Exact maximum general position sets by branch and bound.
//!
//! Every unordered pair `{u, v}` gets a bitset of the vertices `w` for which
//! `{u, v, w}` lies on a common geodesic. Adding `v` to a partial solution
//! `C` removes the union of the bitsets of `{u, v}`, `u in C`, from the
//! candidate pool, so the pool always holds exactly the vertices that
//! extend `C` to a general position set.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geodesy::{middle_of, verify_general_position};
use crate::graph::{DistanceMatrix, Graph};
use crate::Vertex;

pub const SOLVER_VERTEX_LIMIT: usize = 400;

/// Fixed-width bitsets stored back to back.
#[derive(Debug, Clone)]
struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(rows: usize, width: usize) -> Self {
        let words = width.div_ceil(64).max(1);
        BitRows {
            words,
            bits: vec![0; rows * words],
        }
    }

    #[inline]
    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    fn set(&mut self, r: usize, bit: usize) {
        self.bits[r * self.words + bit / 64] |= 1 << (bit % 64);
    }
}

#[inline]
fn test(set: &[u64], bit: usize) -> bool {
    set[bit / 64] >> (bit % 64) & 1 == 1
}

#[inline]
fn clear(set: &mut [u64], bit: usize) {
    set[bit / 64] &= !(1 << (bit % 64));
}

#[inline]
fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn first(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// For each ordered pair `(a, c)`, the vertices strictly between them.
#[derive(Debug, Clone)]
pub struct CollinearTriples {
    n: usize,
    between: BitRows,
}

impl CollinearTriples {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertices `b` with `d(a, c) = d(a, b) + d(b, c)`, `b` not in `{a, c}`.
    pub fn between(&self, a: Vertex, c: Vertex) -> Vec<Vertex> {
        let row = self.between.row(a * self.n + c);
        (0..self.n).filter(|&b| test(row, b)).collect()
    }

    pub fn is_between(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        test(self.between.row(a * self.n + c), b)
    }

    /// `{a, b, c}` is forbidden in a general position set.
    pub fn is_forbidden(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        self.is_between(a, b, c) || self.is_between(b, a, c) || self.is_between(a, c, b)
    }
}

pub fn enumerate_collinear_triples(d: &DistanceMatrix) -> Result<CollinearTriples> {
    let n = d.n();
    check_size(n)?;
    let mut between = BitRows::new(n * n, n);
    for a in 0..n {
        for c in a + 1..n {
            for b in 0..n {
                if d.is_between(a, b, c) {
                    between.set(a * n + c, b);
                    between.set(c * n + a, b);
                }
            }
        }
    }
    Ok(CollinearTriples { n, between })
}

fn check_size(n: usize) -> Result<()> {
    if n > SOLVER_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "general position solver",
            size: n,
            limit: SOLVER_VERTEX_LIMIT,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Vertices every solution must contain.
    pub forced: Vec<Vertex>,
    pub time_limit: Option<Duration>,
    /// Stop after this many search nodes.
    pub node_limit: Option<u64>,
    /// Size of a set known to exist; branches that cannot reach it are cut.
    pub initial_lower_bound: Option<usize>,
    /// Hint: stop as soon as a set of this size is found.
    pub known_upper: Option<usize>,
    /// Branching order; defaults to descending degree, ties by id.
    pub order: Option<Vec<Vertex>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub size: usize,
    /// Sorted vertex ids.
    pub witness: Vec<Vertex>,
    pub nodes_explored: u64,
    /// Search ended because the size given as `known_upper` was reached.
    pub stopped_at_known_upper: bool,
}

/// Descending degree, ties by id.
pub fn default_order(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

struct Search {
    conflict: BitRows,
    n: usize,
    best: Vec<usize>,
    best_len: usize,
    nodes: u64,
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    known_upper: Option<usize>,
    aborted: bool,
    hit_upper: bool,
}

impl Search {
    fn expand(&mut self, chosen: &mut Vec<usize>, mut cand: Vec<u64>) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|t| Instant::now() >= t) {
            self.aborted = true;
        }
        if self.node_limit.is_some_and(|l| self.nodes >= l) {
            self.aborted = true;
        }
        if self.aborted || self.hit_upper {
            return;
        }
        if chosen.len() > self.best_len {
            self.best_len = chosen.len();
            self.best = chosen.clone();
            if self.known_upper.is_some_and(|k| self.best_len >= k) {
                self.hit_upper = true;
                return;
            }
        }
        let mut next = vec![0u64; cand.len()];
        while let Some(v) = first(&cand) {
            if chosen.len() + count(&cand) <= self.best_len {
                return;
            }
            clear(&mut cand, v);
            next.copy_from_slice(&cand);
            for &u in chosen.iter() {
                let row = self.conflict.row(u * self.n + v);
                for (x, &c) in next.iter_mut().zip(row) {
                    *x &= !c;
                }
            }
            chosen.push(v);
            self.expand(chosen, next.clone());
            chosen.pop();
            if self.aborted || self.hit_upper {
                return;
            }
        }
    }
}

/// Maximum general position set by include-first depth-first branch and
/// bound over a fixed vertex order.
///
/// The witness is the first set of maximum size met in that order, which
/// makes the result deterministic.
pub fn max_general_position(
    g: &Graph,
    d: &DistanceMatrix,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let n = g.n();
    check_size(n)?;
    if !opts.forced.is_empty() {
        let cert = verify_general_position(d, &opts.forced)?;
        if let Some(triple) = cert.violating_triple {
            return Err(Error::ForcedNotInGeneralPosition(triple));
        }
    }
    let order = match &opts.order {
        Some(order) => {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != g.vertices().collect::<Vec<_>>() {
                return Err(Error::InvalidParameter(
                    "branching order must be a permutation of the vertices".into(),
                ));
            }
            order.clone()
        }
        None => default_order(g),
    };
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }

    // conflict sets in position space
    let mut conflict = BitRows::new(n * n, n);
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                if c != a && c != b && middle_of(d, a, b, c).is_some() {
                    let (pa, pb, pc) = (position[a], position[b], position[c]);
                    conflict.set(pa * n + pb, pc);
                    conflict.set(pb * n + pa, pc);
                }
            }
        }
    }

    let mut forced: Vec<usize> = opts.forced.iter().map(|&v| position[v]).collect();
    forced.sort_unstable();
    forced.dedup();
    let words = n.div_ceil(64).max(1);
    let mut cand = vec![0u64; words];
    for p in 0..n {
        cand[p / 64] |= 1 << (p % 64);
    }
    for &p in &forced {
        clear(&mut cand, p);
    }
    for (i, &a) in forced.iter().enumerate() {
        for &b in &forced[i + 1..] {
            for (x, &c) in cand.iter_mut().zip(conflict.row(a * n + b)) {
                *x &= !c;
            }
        }
    }

    let deadline = opts.time_limit.map(|t| Instant::now() + t);
    let run = |lower: Option<usize>, nodes_before: u64| {
        let floor = lower
            .map_or(0, |l| l.saturating_sub(1))
            .max(forced.len().saturating_sub(1));
        let mut search = Search {
            conflict: conflict.clone(),
            n,
            best: Vec::new(),
            best_len: floor,
            nodes: nodes_before,
            deadline,
            node_limit: opts.node_limit,
            known_upper: opts.known_upper,
            aborted: false,
            hit_upper: false,
        };
        let mut chosen = forced.clone();
        search.expand(&mut chosen, cand.clone());
        search
    };

    let mut search = run(opts.initial_lower_bound, 0);
    if search.best.is_empty() && !search.aborted {
        // the lower bound hint was wrong (or equalled the optimum of a forced run)
        let nodes = search.nodes;
        search = run(None, nodes);
    }
    let mut witness: Vec<Vertex> = search.best.iter().map(|&p| order[p]).collect();
    if witness.is_empty() {
        witness = opts.forced.clone();
    }
    witness.sort_unstable();
    witness.dedup();
    let status = if search.aborted {
        SolveStatus::LowerBoundOnly
    } else {
        SolveStatus::Optimal
    };
    Ok(SolveResult {
        status,
        size: witness.len(),
        witness,
        nodes_explored: search.nodes,
        stopped_at_known_upper: search.hit_upper,
    })
}

/// Scans `seed_order`, keeping each vertex that leaves the set in general
/// position.
pub fn greedy_gp_lower_bound(d: &DistanceMatrix, seed_order: &[Vertex]) -> Vec<Vertex> {
    let mut chosen: Vec<Vertex> = Vec::new();
    for &v in seed_order {
        if v >= d.n() || chosen.contains(&v) {
            continue;
        }
        let compatible = chosen.iter().enumerate().all(|(i, &a)| {
            chosen[i + 1..]
                .iter()
                .all(|&b| middle_of(d, a, b, v).is_none())
        });
        if compatible {
            chosen.push(v);
        }
    }
    chosen
}
