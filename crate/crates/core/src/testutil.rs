use itertools::Itertools;
use rand::Rng as _;

use crate::hypergraph::ColouredKGraph;
use crate::rng::Rng;

/// Random k-graph: each k-set kept with probability `p`, uniform colour.
pub fn random_kgraph(rng: &mut Rng, k: usize, n: usize, p: f64, r: usize) -> ColouredKGraph {
    let mut edges = Vec::new();
    for e in (0..n).combinations(k) {
        if rng.gen_bool(p) {
            let c = rng.gen_range(0..r);
            edges.push((e, c));
        }
    }
    ColouredKGraph::new(k, n, r, edges).unwrap()
}
