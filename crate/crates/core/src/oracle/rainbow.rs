//! Exact minimum rainbow cycle system on small multigraphs.

use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::partition::SearchStats;
use crate::error::{Error, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;
use crate::rainbow::{CycleSystem, RainbowCycle};

pub const RAINBOW_MAX_N: usize = 12;
pub const RAINBOW_MAX_COLOURS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowOracleResult {
    /// `None` when no vertex-disjoint rainbow system covers φ(G).
    pub minimum: Option<usize>,
    pub system: Option<CycleSystem>,
    pub stats: SearchStats,
}

#[derive(Clone)]
enum Item {
    Edge(Vertex, Vertex, Colour),
    Cycle(RainbowCycle),
}

/// Minimum number of pieces (rainbow cycles, or single edges) in a
/// vertex-disjoint family whose union is rainbow with colour set φ(G).
pub fn min_rainbow_cycle_system(g: &EdgeColouredMultigraph) -> Result<RainbowOracleResult> {
    let colours: Vec<Colour> = g.colours().into_iter().collect();
    if g.n() > RAINBOW_MAX_N || colours.len() > RAINBOW_MAX_COLOURS {
        return Err(Error::SizeGuard(format!(
            "exact rainbow systems are limited to n <= {RAINBOW_MAX_N} and at most {RAINBOW_MAX_COLOURS} colours (got n = {}, {} colours)",
            g.n(),
            colours.len()
        )));
    }
    let started = Instant::now();
    let bit: HashMap<Colour, usize> = colours.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    // one item per (vertex mask, colour mask)
    let mut items: HashMap<(u32, u32), Item> = HashMap::new();
    for &(u, v, c) in g.edges() {
        items.entry((1 << u | 1 << v, 1 << bit[&c])).or_insert(Item::Edge(u.min(v), u.max(v), c));
    }
    let mut nodes = 0u64;
    for start in g.vertices() {
        let mut path = vec![start];
        let mut cols = Vec::new();
        cycles_from(g, &bit, start, &mut path, &mut cols, 1 << start, 0, &mut items, &mut nodes);
    }

    let mut by_low: Vec<Vec<(u32, u32, Item)>> = vec![Vec::new(); colours.len()];
    for ((vm, cm), item) in items {
        by_low[cm.trailing_zeros() as usize].push((vm, cm, item));
    }
    for list in &mut by_low {
        list.sort_by_key(|&(vm, cm, _)| (cm.count_ones(), vm, cm));
    }
    let full = (1u32 << colours.len()) - 1;
    let mut memo: HashMap<(u32, u32), Option<(u32, usize)>> = HashMap::new();
    let best = cover(full, 0, &by_low, &mut memo, &mut nodes);
    let stats = SearchStats { nodes, elapsed_micros: started.elapsed().as_micros() };
    let Some((count, _)) = best else {
        return Ok(RainbowOracleResult { minimum: None, system: None, stats });
    };
    let mut system = CycleSystem::default();
    let (mut left, mut used) = (full, 0u32);
    while left != 0 {
        let (_, idx) = memo[&(left, used)].expect("recorded optimum");
        let low = left.trailing_zeros() as usize;
        let (vm, cm, item) = &by_low[low][idx];
        match item {
            Item::Edge(u, v, c) => system.degenerate_edges.push((*u, *v, *c)),
            Item::Cycle(cy) => system.cycles.push(cy.clone()),
        }
        left &= !cm;
        used |= vm;
    }
    Ok(RainbowOracleResult { minimum: Some(count as usize), system: Some(system), stats })
}

#[allow(clippy::too_many_arguments)]
fn cycles_from(
    g: &EdgeColouredMultigraph,
    bit: &HashMap<Colour, usize>,
    start: Vertex,
    path: &mut Vec<Vertex>,
    cols: &mut Vec<Colour>,
    vmask: u32,
    cmask: u32,
    items: &mut HashMap<(u32, u32), Item>,
    nodes: &mut u64,
) {
    *nodes += 1;
    let last = *path.last().unwrap();
    for (&c, nb) in g.colour_nbrs(last) {
        let b = 1u32 << bit[&c];
        if cmask & b != 0 {
            continue;
        }
        for &w in nb {
            if w == start && path.len() >= 2 && !(path.len() == 2 && cols[0] > c) {
                let mut colours = cols.clone();
                colours.push(c);
                items
                    .entry((vmask, cmask | b))
                    .or_insert_with(|| Item::Cycle(RainbowCycle { vertices: path.clone(), colours }));
            }
            if w > start && vmask >> w & 1 == 0 {
                path.push(w);
                cols.push(c);
                cycles_from(g, bit, start, path, cols, vmask | 1 << w, cmask | b, items, nodes);
                path.pop();
                cols.pop();
            }
        }
    }
}

/// Best (count, item index) covering colours `left` avoiding vertices `used`.
fn cover(
    left: u32,
    used: u32,
    by_low: &[Vec<(u32, u32, Item)>],
    memo: &mut HashMap<(u32, u32), Option<(u32, usize)>>,
    nodes: &mut u64,
) -> Option<(u32, usize)> {
    if left == 0 {
        return Some((0, 0));
    }
    if let Some(&r) = memo.get(&(left, used)) {
        return r;
    }
    *nodes += 1;
    let low = left.trailing_zeros() as usize;
    let mut best: Option<(u32, usize)> = None;
    for (idx, (vm, cm, _)) in by_low[low].iter().enumerate() {
        if cm & !left != 0 || vm & used != 0 {
            continue;
        }
        if let Some((sub, _)) = cover(left & !cm, used | vm, by_low, memo, nodes) {
            if best.is_none_or(|(b, _)| sub + 1 < b) {
                best = Some((sub + 1, idx));
            }
        }
    }
    memo.insert((left, used), best);
    best
}
