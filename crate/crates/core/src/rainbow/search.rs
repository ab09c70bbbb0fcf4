//! Depth-first enumeration of rainbow cycles.

use std::collections::BTreeSet;

use super::types::RainbowCycle;
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;

/// Up to `limit` rainbow cycles with at most `max_len` vertices, each found
/// once per start vertex (the smallest on the cycle) and direction. Length-2
/// cycles are pairs of parallel edges with different colours.
pub fn find_rainbow_cycles(g: &EdgeColouredMultigraph, max_len: usize, limit: usize) -> Vec<RainbowCycle> {
    let mut out = Vec::new();
    if max_len < 2 || limit == 0 {
        return out;
    }
    for start in g.vertices() {
        let mut s = State { g, start, max_len, limit, path: vec![start], cols: Vec::new(), used: BTreeSet::new(), out: &mut out };
        s.grow();
        if out.len() >= limit {
            break;
        }
    }
    out
}

struct State<'a> {
    g: &'a EdgeColouredMultigraph,
    start: Vertex,
    max_len: usize,
    limit: usize,
    path: Vec<Vertex>,
    cols: Vec<Colour>,
    used: BTreeSet<Colour>,
    out: &'a mut Vec<RainbowCycle>,
}

impl State<'_> {
    fn grow(&mut self) {
        let last = *self.path.last().expect("path starts at a vertex");
        for (&c, nb) in self.g.colour_nbrs(last) {
            if self.used.contains(&c) {
                continue;
            }
            for &w in nb {
                if self.out.len() >= self.limit {
                    return;
                }
                if w == self.start && self.path.len() >= 2 {
                    // each cycle once: second vertex below last, or for
                    // 2-cycles the first colour below the second
                    let keep = if self.path.len() == 2 { self.cols[0] < c } else { self.path[1] < last };
                    if keep {
                        let mut colours = self.cols.clone();
                        colours.push(c);
                        self.out.push(RainbowCycle { vertices: self.path.clone(), colours });
                    }
                } else if w > self.start && !self.path.contains(&w) && self.path.len() < self.max_len {
                    self.path.push(w);
                    self.cols.push(c);
                    self.used.insert(c);
                    self.grow();
                    self.used.remove(&c);
                    self.cols.pop();
                    self.path.pop();
                }
            }
        }
    }
}
