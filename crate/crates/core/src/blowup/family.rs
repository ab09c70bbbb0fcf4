//! One respecting pair per colour from an r-coloured complete k-graph with
//! disjoint vertex sets X and Z: split X into k − 1 classes, colour-slice,
//! and build a multigraph on each colour block.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::respects::{build_respecting_multigraph, RespectingOutcome, RespectingParams};
use super::slice::{colour_slice, SlicedPartition};
use crate::cycle::TightCycle;
use crate::error::{input, Result};
use crate::hypergraph::{ColouredKGraph, Colour, Vertex};
use crate::partite::PartiteGraph;
use crate::rng::sub_stream;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColourBlock {
    pub colour: Colour,
    /// Vertex ids of the input graph for the classes X_1^j..X_{k−1}^j, Z^j,
    /// in the (relabelled) order used by the witness host.
    pub classes: Vec<Vec<Vertex>>,
    /// `None` when Z^j is empty.
    pub outcome: Option<RespectingOutcome>,
}

impl ColourBlock {
    /// Maps a tight cycle of the block's host to input vertex ids.
    pub fn to_input(&self, c: &TightCycle) -> TightCycle {
        let host = &self.outcome.as_ref().expect("non-empty block").witness.host;
        let mut place = Vec::with_capacity(host.num_vertices());
        for (class, ids) in self.classes.iter().enumerate() {
            for a in 0..ids.len() {
                debug_assert_eq!(host.global(class, a), place.len());
                place.push(ids[a]);
            }
        }
        TightCycle { order: c.order.iter().map(|&v| place[v]).collect(), degenerate: c.degenerate }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyChecks {
    /// Every block edge is an input edge of the block's colour.
    pub monochromatic: bool,
    /// φ(G^j) = Z^j, the Z^j cover Z, the other classes lie in X.
    pub colours_and_cover: bool,
    /// |V(G^j)| = n and G^j respects H^j for every non-empty block.
    pub sizes_and_respects: bool,
    /// δ_mon(G^j) ≥ (2r)^{−2^k}·n/8, reported only.
    pub delta_mon: Vec<Option<bool>>,
    /// Blocks of distinct colours share no vertex.
    pub disjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RespectingFamily {
    pub k: usize,
    pub r: usize,
    /// Common size of the classes X_i^j.
    pub n: usize,
    pub slices: SlicedPartition,
    pub blocks: Vec<ColourBlock>,
    pub checks: FamilyChecks,
}

impl FamilyChecks {
    pub fn all_hold(&self) -> bool {
        self.monochromatic && self.colours_and_cover && self.sizes_and_respects && self.disjoint
    }
}

/// Splits X (in the given order) into k − 1 consecutive classes of size
/// ⌊|X|/(k−1)⌋ (any remainder stays unused), slices by colour and builds a
/// respecting pair per colour with non-empty Z^j.
pub fn build_respecting_family(h: &ColouredKGraph, x: &[Vertex], z: &[Vertex], seed: u64) -> Result<RespectingFamily> {
    let k = h.k();
    let r = h.r();
    if k < 2 {
        return input("need k ≥ 2");
    }
    let mut seen = BTreeSet::new();
    if x.iter().chain(z).any(|&v| v >= h.n() || !seen.insert(v)) {
        return input("X and Z must be disjoint sets of vertices of the graph");
    }
    if x.len() < (k - 1) * z.len() || z.is_empty() {
        return input(format!("need |X| = {} ≥ (k − 1)|Z| = {} and Z non-empty", x.len(), (k - 1) * z.len()));
    }
    let big_n = x.len() / (k - 1);
    let mut classes: Vec<Vec<Vertex>> = x.chunks(big_n).take(k - 1).map(<[Vertex]>::to_vec).collect();
    classes.push(z.to_vec());
    let whole = PartiteGraph::from_kgraph(&restrict(h, &classes), &classes)?;
    if whole.num_edges() != whole.num_cells() {
        return input("the graph is not complete across X_1, …, X_{k−1}, Z");
    }
    let slices = colour_slice(&whole, seed)?;
    let n = slices.part_size;
    let mut blocks = Vec::with_capacity(r);
    for j in 0..r {
        let mut block_classes: Vec<Vec<Vertex>> =
            (0..k - 1).map(|i| slices.parts[i][j + 1].iter().map(|&a| classes[i][a]).collect()).collect();
        block_classes.push(slices.last[j].iter().map(|&a| z[a]).collect());
        if slices.last[j].is_empty() {
            blocks.push(ColourBlock { colour: j, classes: block_classes, outcome: None });
            continue;
        }
        let mut sizes = vec![n; k - 1];
        sizes.push(slices.last[j].len());
        let mut hj = PartiteGraph::empty(sizes, 1)?;
        for idx in 0..hj.num_cells() {
            let t = hj.tuple_of(idx);
            let e: Vec<Vertex> = t.iter().enumerate().map(|(c, &a)| block_classes[c][a]).collect();
            if h.colour(&e) == Some(j) {
                hj.set_index(idx, Some(0));
            }
        }
        let outcome = build_respecting_multigraph(&hj, &RespectingParams::new(r), sub_stream(seed, j as u64))?;
        for (c, sigma) in outcome.witness.relabel.iter().enumerate() {
            block_classes[c] = sigma.iter().map(|&a| block_classes[c][a]).collect();
        }
        blocks.push(ColourBlock { colour: j, classes: block_classes, outcome: Some(outcome) });
    }
    let checks = check_family(h, x, z, n, &blocks);
    Ok(RespectingFamily { k, r, n, slices, blocks, checks })
}

fn restrict(h: &ColouredKGraph, classes: &[Vec<Vertex>]) -> ColouredKGraph {
    let mut place = vec![usize::MAX; h.n()];
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            place[v] = c;
        }
    }
    let edges = h
        .edges()
        .filter(|(e, _)| {
            let mut hit = vec![false; classes.len()];
            e.iter().all(|&v| place[v] != usize::MAX && !std::mem::replace(&mut hit[place[v]], true))
        })
        .map(|(e, c)| (e.to_vec(), c))
        .collect();
    ColouredKGraph::new(h.k(), h.n(), h.r(), edges).expect("subgraph of a valid graph")
}

fn check_family(h: &ColouredKGraph, x: &[Vertex], z: &[Vertex], n: usize, blocks: &[ColourBlock]) -> FamilyChecks {
    let k = h.k();
    let xs: BTreeSet<Vertex> = x.iter().copied().collect();
    let mut monochromatic = true;
    let mut colours_and_cover = true;
    let mut sizes_and_respects = true;
    let mut delta_mon = Vec::with_capacity(blocks.len());
    let mut covered = BTreeSet::new();
    let mut used = BTreeSet::new();
    let mut disjoint = true;
    for b in blocks {
        for v in b.classes.iter().flatten() {
            disjoint &= used.insert(*v);
        }
        covered.extend(b.classes[k - 1].iter().copied());
        colours_and_cover &= b.classes[..k - 1].iter().flatten().all(|v| xs.contains(v));
        let Some(out) = &b.outcome else {
            delta_mon.push(None);
            continue;
        };
        let w = &out.witness;
        for t in w.host.edge_tuples() {
            let e: Vec<Vertex> = t.iter().enumerate().map(|(c, &a)| b.classes[c][a]).collect();
            monochromatic &= h.colour(&e) == Some(b.colour);
        }
        let phi: BTreeSet<Colour> = w.graph.colours();
        colours_and_cover &= phi == (0..b.classes[k - 1].len()).collect();
        sizes_and_respects &= w.n == n && super::respects::verify_respects(w).ok;
        delta_mon.push(Some(out.meets_delta_target));
    }
    colours_and_cover &= covered == z.iter().copied().collect();
    FamilyChecks { monochromatic, colours_and_cover, sizes_and_respects, delta_mon, disjoint }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::verify_mono_cycle;
    use crate::rainbow::find_rainbow_cycles;
    use crate::rng::{rng_for, streams};
    use rand::Rng;

    #[test]
    fn two_colours_three_uniform() {
        let mut rng = rng_for(5, streams::GENERATOR);
        let n = 40;
        let h = ColouredKGraph::complete(3, n, 2, |_| rng.gen_range(0..2)).unwrap();
        let x: Vec<Vertex> = (0..36).collect();
        let z: Vec<Vertex> = (36..40).collect();
        let fam = build_respecting_family(&h, &x, &z, 5).unwrap();
        assert!(fam.checks.all_hold(), "{:?}", fam.checks);
        assert_eq!(fam.n, super::super::slice::mandated_part_size(3, 2, 18));
        // rainbow cycles lift to monochromatic tight cycles of the input
        for b in fam.blocks.iter().filter(|b| b.outcome.is_some()) {
            let w = &b.outcome.as_ref().unwrap().witness;
            for c in find_rainbow_cycles(&w.graph, 4, 20) {
                let t = super::super::respects::rainbow_cycle_to_tight_cycle(w, &c).unwrap();
                assert!(verify_mono_cycle(&h, &b.to_input(&t), Some(b.colour)).ok);
            }
        }
    }

    #[test]
    fn single_colour_graph() {
        let h = ColouredKGraph::complete(2, 12, 1, |_| 0).unwrap();
        let x: Vec<Vertex> = (0..10).collect();
        let fam = build_respecting_family(&h, &x, &[10, 11], 0).unwrap();
        assert!(fam.checks.all_hold());
        assert_eq!(fam.blocks.len(), 1);
        assert_eq!(fam.checks.delta_mon, vec![Some(true)]);
    }

    #[test]
    fn rejects_bad_sets() {
        let h = ColouredKGraph::complete(3, 8, 1, |_| 0).unwrap();
        assert!(build_respecting_family(&h, &[0, 1, 2], &[3, 4], 0).is_err());
        assert!(build_respecting_family(&h, &[0, 1, 2, 3], &[3], 0).is_err());
    }
}
