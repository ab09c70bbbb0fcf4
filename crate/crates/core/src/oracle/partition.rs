//! Exact minimum partition into monochromatic tight cycles.
//!
//! Two phases. First, for every colour, a memoized path search collects each
//! vertex set that carries a monochromatic Hamiltonian tight cycle (with a
//! witness order). Second, a subset DP covers `V` by such sets and by sets of
//! at most `k` vertices (degenerate cycles). Every partition is a choice of
//! parts of those two kinds, so the DP minimum is the true minimum.

use std::collections::HashSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cycle::TightCycle;
use crate::error::{Error, Result};
use crate::hypergraph::{ColouredKGraph, Colour, Vertex};

pub const PARTITION_MAX_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartPiece {
    pub cycle: TightCycle,
    /// `None` for degenerate pieces.
    pub colour: Option<Colour>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_micros: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionOracleResult {
    /// `None` when the minimum exceeds the requested limit.
    pub minimum: Option<usize>,
    pub partition: Vec<PartPiece>,
    pub stats: SearchStats,
}

/// Exact minimum number of vertex-disjoint monochromatic tight cycles
/// (degenerate ones allowed) covering `V(H)`.
pub fn min_mono_partition(h: &ColouredKGraph, limit: Option<usize>) -> Result<PartitionOracleResult> {
    let n = h.n();
    if n > PARTITION_MAX_N {
        return Err(Error::SizeGuard(format!(
            "exact partition is limited to n <= {PARTITION_MAX_N} (got n = {n}); use the greedy cover for larger inputs"
        )));
    }
    let started = Instant::now();
    let k = h.k();
    let full = (1usize << n) - 1;
    let mut nodes = 0u64;

    // witness[mask] = Hamiltonian tight cycle on mask, with its colour
    let mut witness: Vec<Option<(Vec<Vertex>, Colour)>> = vec![None; 1 << n];
    for c in 0..h.r() {
        let mut walker = CycleSets { h, colour: c, k, seen: HashSet::new(), path: Vec::new(), nodes: 0 };
        for (e, ec) in h.edges() {
            if ec != c {
                continue;
            }
            // e[0] is the least vertex of the edge; make it the cycle minimum
            for perm in itertools::Itertools::permutations(e[1..].iter().copied(), k - 1) {
                walker.path.clear();
                walker.path.push(e[0]);
                walker.path.extend(perm);
                let mask = walker.path.iter().fold(0usize, |m, &v| m | 1 << v);
                walker.walk(mask, &mut witness);
            }
        }
        nodes += walker.nodes;
    }

    // best[mask] = min parts covering exactly `mask`; choice[mask] = part used
    const INF: u32 = u32::MAX;
    let mut best = vec![INF; 1 << n];
    let mut choice = vec![0usize; 1 << n];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            nodes += 1;
            let ok = (part.count_ones() as usize) <= k || witness[part].is_some();
            if ok && best[mask ^ part] != INF && best[mask ^ part] + 1 < best[mask] {
                best[mask] = best[mask ^ part] + 1;
                choice[mask] = part;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let minimum = best[full] as usize;
    let mut partition = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let part = choice[mask];
        let vs: Vec<Vertex> = (0..n).filter(|&v| part >> v & 1 == 1).collect();
        let piece = if vs.len() <= k {
            PartPiece { cycle: TightCycle::degenerate(vs), colour: None }
        } else {
            let (order, c) = witness[part].clone().expect("non-degenerate part has a witness");
            PartPiece { cycle: TightCycle::new(order), colour: Some(c) }
        };
        partition.push(piece);
        mask ^= part;
    }
    let stats = SearchStats { nodes, elapsed_micros: started.elapsed().as_micros() };
    if limit.is_some_and(|l| minimum > l) {
        return Ok(PartitionOracleResult { minimum: None, partition: Vec::new(), stats });
    }
    Ok(PartitionOracleResult { minimum: Some(minimum), partition, stats })
}

struct CycleSets<'a> {
    h: &'a ColouredKGraph,
    colour: Colour,
    k: usize,
    /// (mask, first k−1, last k−1) states already expanded
    seen: HashSet<(usize, Vec<Vertex>, Vec<Vertex>)>,
    path: Vec<Vertex>,
    nodes: u64,
}

impl CycleSets<'_> {
    fn is_edge(&self, vs: &[Vertex]) -> bool {
        self.h.colour(vs) == Some(self.colour)
    }

    fn closes(&self) -> bool {
        let m = self.path.len();
        let k = self.k;
        let mut w = Vec::with_capacity(k);
        (m - k + 1..m).all(|s| {
            w.clear();
            w.extend((0..k).map(|j| self.path[(s + j) % m]));
            self.is_edge(&w)
        })
    }

    fn walk(&mut self, mask: usize, witness: &mut [Option<(Vec<Vertex>, Colour)>]) {
        let k = self.k;
        let m = self.path.len();
        let key = (mask, self.path[..k - 1].to_vec(), self.path[m - (k - 1)..].to_vec());
        if !self.seen.insert(key) {
            return;
        }
        self.nodes += 1;
        if m > k && witness[mask].is_none() && self.closes() {
            witness[mask] = Some((self.path.clone(), self.colour));
        }
        let start = self.path[0];
        let mut w: Vec<Vertex> = self.path[m - (k - 1)..].to_vec();
        w.push(0);
        for v in start + 1..self.h.n() {
            if mask >> v & 1 == 1 {
                continue;
            }
            w[k - 1] = v;
            if !self.is_edge(&w) {
                continue;
            }
            self.path.push(v);
            self.walk(mask | 1 << v, witness);
            self.path.pop();
        }
    }
}
