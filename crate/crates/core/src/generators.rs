//! Seeded instance generators. Every random choice comes from the
//! `GENERATOR` stream of the given seed.

use itertools::Itertools;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::blowup::{build_respecting_multigraph, RespectingOutcome, RespectingParams};
use crate::error::{input, Error, Result};
use crate::hypergraph::ColouredKGraph;
use crate::multigraph::EdgeColouredMultigraph;
use crate::partite::PartiteGraph;
use crate::rng::{rng_for, streams, sub_stream};

/// Largest number of k-sets `random_colouring` will enumerate.
pub const RANDOM_COLOURING_MAX_EDGES: u64 = 5_000_000;

/// The complete k-graph on n vertices with every edge coloured uniformly
/// from 0..r.
pub fn random_colouring(k: usize, n: usize, r: usize, seed: u64) -> Result<ColouredKGraph> {
    if k < 2 || r == 0 || n < k {
        return input(format!("need 2 ≤ k ≤ n and r ≥ 1 (got k = {k}, n = {n}, r = {r})"));
    }
    let edges = num_integer::binomial(n as u64, k as u64);
    if edges > RANDOM_COLOURING_MAX_EDGES {
        return Err(Error::SizeGuard(format!("C({n}, {k}) = {edges} edges exceeds {RANDOM_COLOURING_MAX_EDGES}")));
    }
    let mut rng = rng_for(seed, streams::GENERATOR);
    let edges = (0..n).combinations(k).map(|e| (e, rng.gen_range(0..r))).collect();
    ColouredKGraph::new(k, n, r, edges)
}

/// Each pair of a `n`-vertex multigraph gets each of `r` colours with
/// probability `p`, independently.
pub fn random_multigraph(n: usize, r: usize, p: f64, seed: u64) -> Result<EdgeColouredMultigraph> {
    if !(0.0..=1.0).contains(&p) {
        return input(format!("edge probability {p} is not in [0, 1]"));
    }
    let mut rng = rng_for(seed, streams::GENERATOR);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..r {
                if rng.gen_bool(p) {
                    edges.push((a, b, c));
                }
            }
        }
    }
    EdgeColouredMultigraph::new(n, edges)
}

/// `r` colours, each a complete graph on all `n` vertices.
pub fn complete_colours(n: usize, r: usize) -> Result<EdgeColouredMultigraph> {
    let edges = (0..r).flat_map(|c| (0..n).tuple_combinations().map(move |(a, b)| (a, b, c))).collect();
    EdgeColouredMultigraph::new(n, edges)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RespectingPair {
    pub k: usize,
    pub n: usize,
    pub colours: usize,
    pub seed: u64,
    /// Sub-stream that produced the host (0 unless earlier draws failed).
    pub attempt: u64,
    pub outcome: RespectingOutcome,
}

const RESPECTING_ATTEMPTS: u64 = 20;
const RESPECTING_DENSITY: f64 = 0.85;

/// A random one-colour k-partite host with k − 1 classes of size n and
/// `colours` colour vertices, each cell present with probability 0.85,
/// converted into a respecting multigraph. Draws that the construction
/// rejects are replaced by the next sub-stream, up to 20 times.
pub fn respecting_pair(k: usize, n: usize, colours: usize, seed: u64) -> Result<RespectingPair> {
    if k < 2 || n < 2 || colours == 0 {
        return input(format!("need k ≥ 2, n ≥ 2 and at least one colour vertex (got k = {k}, n = {n}, {colours})"));
    }
    let mut sizes = vec![n; k - 1];
    sizes.push(colours);
    let mut last = None;
    for attempt in 0..RESPECTING_ATTEMPTS {
        let mut rng = rng_for(seed, sub_stream(streams::GENERATOR, attempt));
        let mut host = PartiteGraph::empty(sizes.clone(), 1)?;
        for idx in 0..host.num_cells() {
            if rng.gen_bool(RESPECTING_DENSITY) {
                host.set_index(idx, Some(0));
            }
        }
        match build_respecting_multigraph(&host, &RespectingParams::new(1), seed) {
            Ok(outcome) => return Ok(RespectingPair { k, n, colours, seed, attempt, outcome }),
            Err(e @ Error::Failure { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::verify_respects;

    #[test]
    fn random_colouring_is_complete_and_replayable() {
        let a = random_colouring(3, 7, 2, 11).unwrap();
        assert_eq!(a.edges().count(), 35);
        assert_eq!(crate::io::write_hgraph(&a), crate::io::write_hgraph(&random_colouring(3, 7, 2, 11).unwrap()));
        assert_ne!(crate::io::write_hgraph(&a), crate::io::write_hgraph(&random_colouring(3, 7, 2, 12).unwrap()));
        assert!(random_colouring(3, 2, 2, 0).is_err());
        assert!(matches!(random_colouring(5, 200, 2, 0), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn respecting_pairs_verify() {
        for seed in 0..5 {
            let p = respecting_pair(3, 6, 4, seed).unwrap();
            assert!(verify_respects(&p.outcome.witness).ok);
            assert_eq!(p.outcome.witness.graph.colours().len(), 4);
        }
    }

    #[test]
    fn complete_colours_degrees() {
        let g = complete_colours(6, 3).unwrap();
        assert_eq!(g.edges().len(), 45);
        assert_eq!(g.degree_profile().delta_mon, Some(5));
    }

    #[test]
    fn random_multigraph_probability_checked() {
        assert!(random_multigraph(4, 2, 1.5, 0).is_err());
        assert_eq!(random_multigraph(5, 2, 1.0, 0).unwrap().edges().len(), 20);
    }
}
