//! Depth-first tight-cycle search over partial windows.

use std::collections::HashMap;
use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cycle::TightCycle;
use crate::error::{input, Result};
use crate::hypergraph::{ColouredKGraph, Colour, EdgeKey, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome {
    Found(TightCycle),
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

/// Searches for a tight cycle with exactly `length` vertices, monochromatic in
/// `colour` when given.
pub fn find_tight_cycle(h: &ColouredKGraph, length: usize, colour: Option<Colour>, budget: u64) -> Result<SearchResult> {
    find_tight_cycle_within(h, &vec![true; h.n()], length, colour, budget)
}

/// As [`find_tight_cycle`], restricted to the vertices flagged in `allowed`.
pub fn find_tight_cycle_within(
    h: &ColouredKGraph,
    allowed: &[bool],
    length: usize,
    colour: Option<Colour>,
    budget: u64,
) -> Result<SearchResult> {
    let k = h.k();
    if length < k + 1 {
        return input(format!("length {length} < k + 1 = {}; degenerate cycles need no search", k + 1));
    }
    if length > h.n() {
        return input(format!("length {length} exceeds n = {}", h.n()));
    }
    if budget == 0 {
        return input("search budget must be positive");
    }
    let mut search = Search::new(h, allowed, length, colour, budget);
    let mut found = None;
    let flow = search.run(&mut |order| {
        found = Some(TightCycle::new(order.to_vec()));
        ControlFlow::Break(())
    });
    let outcome = match (found, flow) {
        (Some(c), _) => SearchOutcome::Found(c),
        (None, Exhaust::Budget) => SearchOutcome::BudgetExhausted,
        (None, _) => SearchOutcome::NotFound,
    };
    Ok(SearchResult { outcome, nodes: search.nodes })
}

/// Every tight cycle of the given length (one representative per
/// rotation/reflection class, canonical form), found by the same search.
pub fn all_tight_cycles(h: &ColouredKGraph, length: usize, colour: Option<Colour>) -> Result<Vec<TightCycle>> {
    let k = h.k();
    if length < k + 1 || length > h.n() {
        return Ok(Vec::new());
    }
    let allowed = vec![true; h.n()];
    let mut search = Search::new(h, &allowed, length, colour, u64::MAX);
    let mut out = Vec::new();
    search.run(&mut |order| {
        out.push(TightCycle::new(order.to_vec()).canonical());
        ControlFlow::Continue(())
    });
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Exhaust {
    Done,
    Stopped,
    Budget,
}

struct Search<'a> {
    h: &'a ColouredKGraph,
    allowed: &'a [bool],
    length: usize,
    colour: Option<Colour>,
    budget: u64,
    nodes: u64,
    /// (k−1)-set -> vertices completing it to an edge (with colour).
    extend: HashMap<EdgeKey, Vec<(Vertex, Colour)>>,
    used: Vec<bool>,
    path: Vec<Vertex>,
}

impl<'a> Search<'a> {
    fn new(h: &'a ColouredKGraph, allowed: &'a [bool], length: usize, colour: Option<Colour>, budget: u64) -> Self {
        let k = h.k();
        let mut extend: HashMap<EdgeKey, Vec<(Vertex, Colour)>> = HashMap::new();
        let mut face = Vec::with_capacity(k);
        for (e, c) in h.edges() {
            if colour.is_some_and(|want| want != c) || e.iter().any(|&v| !allowed[v]) {
                continue;
            }
            for skip in 0..k {
                face.clear();
                face.extend(e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                extend.entry(EdgeKey::from_sorted(&face)).or_default().push((e[skip], c));
            }
        }
        Search {
            h,
            allowed,
            length,
            colour,
            budget,
            nodes: 0,
            extend,
            used: vec![false; h.n()],
            path: Vec::with_capacity(length),
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>) -> Exhaust {
        let k = self.h.k();
        let n = self.h.n();
        for start in 0..n {
            if !self.allowed[start] {
                continue;
            }
            let room = (start..n).filter(|&v| self.allowed[v]).count();
            if room < self.length {
                break;
            }
            let firsts: Vec<(Vec<Vertex>, Colour)> = self
                .h
                .edges()
                .filter(|(e, c)| {
                    e[0] == start && e.iter().all(|&v| self.allowed[v]) && self.colour.is_none_or(|want| want == *c)
                })
                .map(|(e, c)| (e[1..].to_vec(), c))
                .collect();
            for (rest, _) in firsts {
                for perm in rest.iter().copied().permutations(k - 1) {
                    self.path.clear();
                    self.path.push(start);
                    self.path.extend(perm.iter().copied());
                    for &v in &self.path {
                        self.used[v] = true;
                    }
                    let r = self.extend_path(visit);
                    for &v in &self.path {
                        self.used[v] = false;
                    }
                    if r != Exhaust::Done {
                        return r;
                    }
                }
            }
        }
        Exhaust::Done
    }

    fn suffix_key(&self, from: usize) -> EdgeKey {
        EdgeKey::from_unsorted(&self.path[from..])
    }

    fn closes(&self) -> bool {
        let k = self.h.k();
        let m = self.path.len();
        let mut window = Vec::with_capacity(k);
        for s in (m - k + 1)..m {
            window.clear();
            window.extend((0..k).map(|j| self.path[(s + j) % m]));
            match self.h.colour(&window) {
                Some(c) if self.colour.is_none_or(|want| want == c) => {}
                _ => return false,
            }
        }
        true
    }

    fn extend_path(&mut self, visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>) -> Exhaust {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Exhaust::Budget;
        }
        let k = self.h.k();
        let depth = self.path.len();
        let start = self.path[0];
        if depth == self.length {
            // one orientation per reflection class: second vertex below last
            if self.path[1] < self.path[depth - 1] && self.closes() {
                if let ControlFlow::Break(()) = visit(&self.path) {
                    return Exhaust::Stopped;
                }
            }
            return Exhaust::Done;
        }
        let key = self.suffix_key(depth - (k - 1));
        let Some(cands) = self.extend.get(&key) else {
            return Exhaust::Done;
        };
        let cands: Vec<Vertex> = cands
            .iter()
            .filter(|&&(v, c)| v > start && !self.used[v] && self.colour.is_none_or(|want| want == c))
            .map(|&(v, _)| v)
            .collect();
        for v in cands {
            self.path.push(v);
            self.used[v] = true;
            let r = self.extend_path(visit);
            self.used[v] = false;
            self.path.pop();
            if r != Exhaust::Done {
                return r;
            }
        }
        Exhaust::Done
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::verify_mono_cycle;
    use crate::oracle::enumerate_tight_cycles;
    use crate::rng::rng_for;
    use rand::Rng;

    fn random_graph(n: usize, p: f64, r: usize, seed: u64) -> ColouredKGraph {
        let mut rng = rng_for(seed, 0);
        let mut edges = Vec::new();
        for e in (0..n).combinations(3) {
            if rng.gen_bool(p) {
                edges.push((e, rng.gen_range(0..r)));
            }
        }
        ColouredKGraph::new(3, n, r, edges).unwrap()
    }

    #[test]
    fn complete_k5_is_hamiltonian() {
        let h = ColouredKGraph::complete(3, 5, 1, |_| 0).unwrap();
        let res = find_tight_cycle(&h, 5, None, 1000).unwrap();
        let SearchOutcome::Found(c) = res.outcome else { panic!("expected a cycle") };
        assert!(verify_mono_cycle(&h, &c, Some(0)).ok);
    }

    #[test]
    fn three_edges_cannot_close_five() {
        let h = ColouredKGraph::new(3, 5, 1, vec![(vec![0, 1, 2], 0), (vec![1, 2, 3], 0), (vec![2, 3, 4], 0)]).unwrap();
        assert_eq!(find_tight_cycle(&h, 5, None, 1000).unwrap().outcome, SearchOutcome::NotFound);
    }

    #[test]
    fn rejects_short_lengths() {
        let h = ColouredKGraph::complete(3, 5, 1, |_| 0).unwrap();
        assert!(find_tight_cycle(&h, 3, None, 10).is_err());
        assert!(find_tight_cycle(&h, 6, None, 10).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let h = ColouredKGraph::new(3, 8, 1, (0..8).combinations(3).take(30).map(|e| (e, 0)).collect()).unwrap();
        let res = find_tight_cycle(&h, 8, None, 2).unwrap();
        assert!(matches!(res.outcome, SearchOutcome::BudgetExhausted | SearchOutcome::Found(_)));
    }

    #[test]
    fn presence_matches_enumeration_oracle() {
        for seed in [3u64, 4, 5, 6] {
            let h = random_graph(10, 0.6, 1, seed);
            for length in 4..=8 {
                let oracle = enumerate_tight_cycles(&h, length).unwrap();
                let res = find_tight_cycle(&h, length, None, u64::MAX).unwrap();
                match res.outcome {
                    SearchOutcome::Found(c) => {
                        assert!(!oracle.is_empty());
                        assert!(oracle.contains(&c.canonical()));
                    }
                    SearchOutcome::NotFound => assert!(oracle.is_empty(), "seed {seed} length {length}"),
                    SearchOutcome::BudgetExhausted => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn exhaustive_mode_matches_enumeration_oracle() {
        for seed in [7u64, 8] {
            let h = random_graph(8, 0.5, 1, seed);
            for length in 4..=8 {
                assert_eq!(all_tight_cycles(&h, length, None).unwrap(), enumerate_tight_cycles(&h, length).unwrap());
            }
        }
    }

    #[test]
    fn colour_restriction_is_monochromatic() {
        let h = random_graph(9, 0.8, 2, 12);
        for c in 0..2 {
            for length in 4..=9 {
                if let SearchOutcome::Found(cy) = find_tight_cycle(&h, length, Some(c), u64::MAX).unwrap().outcome {
                    assert!(verify_mono_cycle(&h, &cy, Some(c)).ok);
                    assert_eq!(cy.len(), length);
                }
            }
        }
    }
}
