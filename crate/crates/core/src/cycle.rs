//! Tight paths and cycles, degenerate cycles, and their verification.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{ColouredKGraph, Colour, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TightPath {
    pub order: Vec<Vertex>,
}

/// A cyclically ordered vertex sequence. Degenerate cycles (at most k
/// vertices) carry no edge condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TightCycle {
    pub order: Vec<Vertex>,
    pub degenerate: bool,
}

impl TightCycle {
    pub fn new(order: Vec<Vertex>) -> Self {
        TightCycle { order, degenerate: false }
    }

    pub fn degenerate(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        TightCycle { order: vertices, degenerate: true }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.order.iter().copied().collect()
    }

    /// Lexicographically least rotation or reflection of the order.
    pub fn canonical(&self) -> TightCycle {
        if self.degenerate {
            return TightCycle::degenerate(self.order.clone());
        }
        TightCycle { order: canonical_order(&self.order), degenerate: false }
    }

    /// The cyclic k-windows of a non-degenerate cycle.
    pub fn windows(&self, k: usize) -> Vec<Vec<Vertex>> {
        let m = self.order.len();
        (0..m).map(|i| (0..k).map(|j| self.order[(i + j) % m]).collect()).collect()
    }
}

pub fn canonical_order(order: &[Vertex]) -> Vec<Vertex> {
    let m = order.len();
    if m == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<Vertex>> = None;
    let reversed: Vec<Vertex> = order.iter().rev().copied().collect();
    for seq in [order, reversed.as_slice()] {
        for s in 0..m {
            let cand: Vec<Vertex> = (0..m).map(|i| seq[(s + i) % m]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// Outcome of a structural check: `ok`, or the first offending window and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCheck {
    pub ok: bool,
    pub failing_window: Option<Vec<Vertex>>,
    pub reason: Option<String>,
}

impl CycleCheck {
    fn pass() -> Self {
        CycleCheck { ok: true, failing_window: None, reason: None }
    }

    fn fail(window: Option<Vec<Vertex>>, reason: impl Into<String>) -> Self {
        CycleCheck { ok: false, failing_window: window, reason: Some(reason.into()) }
    }
}

fn distinct_in_range(order: &[Vertex], n: usize) -> Option<CycleCheck> {
    let mut seen = BTreeSet::new();
    for &v in order {
        if v >= n {
            return Some(CycleCheck::fail(None, format!("vertex {v} outside the host")));
        }
        if !seen.insert(v) {
            return Some(CycleCheck::fail(None, format!("vertex {v} repeated")));
        }
    }
    None
}

fn check_windows(h: &ColouredKGraph, windows: impl Iterator<Item = Vec<Vertex>>, colour: Option<Colour>) -> CycleCheck {
    let mut seen_colour = colour;
    for w in windows {
        match h.colour(&w) {
            None => return CycleCheck::fail(Some(w), "window is not an edge"),
            Some(c) => match seen_colour {
                Some(want) if want != c => return CycleCheck::fail(Some(w), format!("window has colour {c}, expected {want}")),
                _ => seen_colour = Some(c),
            },
        }
    }
    CycleCheck::pass()
}

/// Checks the tight-cycle conditions in `h`.
pub fn verify_tight_cycle(h: &ColouredKGraph, c: &TightCycle) -> CycleCheck {
    verify_cycle_inner(h, c, None, false)
}

/// Checks a cycle and additionally that all its windows share one colour
/// (`colour`, when given).
pub fn verify_mono_cycle(h: &ColouredKGraph, c: &TightCycle, colour: Option<Colour>) -> CycleCheck {
    verify_cycle_inner(h, c, colour, true)
}

fn verify_cycle_inner(h: &ColouredKGraph, c: &TightCycle, colour: Option<Colour>, mono: bool) -> CycleCheck {
    if let Some(bad) = distinct_in_range(&c.order, h.n()) {
        return bad;
    }
    let k = h.k();
    if c.degenerate {
        if c.order.len() <= k {
            return CycleCheck::pass();
        }
        return CycleCheck::fail(None, format!("degenerate cycle has {} > k vertices", c.order.len()));
    }
    if c.order.len() < k + 1 {
        return CycleCheck::fail(None, format!("non-degenerate cycle needs at least {} vertices", k + 1));
    }
    if mono {
        check_windows(h, c.windows(k).into_iter(), colour)
    } else {
        for w in c.windows(k) {
            if !h.has_edge(&w) {
                return CycleCheck::fail(Some(w), "window is not an edge");
            }
        }
        CycleCheck::pass()
    }
}

pub fn verify_tight_path(h: &ColouredKGraph, p: &TightPath) -> CycleCheck {
    if let Some(bad) = distinct_in_range(&p.order, h.n()) {
        return bad;
    }
    let k = h.k();
    if p.order.len() < k {
        return CycleCheck::fail(None, format!("tight path needs at least {k} vertices"));
    }
    for w in p.order.windows(k) {
        if !h.has_edge(w) {
            return CycleCheck::fail(Some(w.to_vec()), "window is not an edge");
        }
    }
    CycleCheck::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k4() -> ColouredKGraph {
        ColouredKGraph::complete(3, 4, 1, |_| 0).unwrap()
    }

    #[test]
    fn complete_k4_cycle() {
        assert!(verify_tight_cycle(&k4(), &TightCycle::new(vec![0, 1, 2, 3])).ok);
    }

    #[test]
    fn missing_edge_reported() {
        let h = ColouredKGraph::complete(3, 4, 1, |_| 0).unwrap();
        let edges = h.edges().filter(|(e, _)| *e != [0, 1, 2]).map(|(e, c)| (e.to_vec(), c)).collect();
        let h = ColouredKGraph::new(3, 4, 1, edges).unwrap();
        let check = verify_tight_cycle(&h, &TightCycle::new(vec![0, 1, 2, 3]));
        assert!(!check.ok);
        assert_eq!(check.failing_window, Some(vec![0, 1, 2]));
    }

    #[test]
    fn degenerate_pairs_always_pass() {
        let empty = ColouredKGraph::new(3, 5, 1, vec![]).unwrap();
        for u in 0..5 {
            for v in (u + 1)..5 {
                assert!(verify_tight_cycle(&empty, &TightCycle::degenerate(vec![u, v])).ok);
            }
        }
        assert!(!verify_tight_cycle(&empty, &TightCycle::degenerate(vec![0, 1, 2, 3])).ok);
        assert!(!verify_tight_cycle(&k4(), &TightCycle::new(vec![0, 1, 2])).ok);
    }

    #[test]
    fn consecutive_windows_share_k_minus_one() {
        let c = TightCycle::new(vec![0, 1, 2, 3, 4]);
        let ws = c.windows(3);
        for i in 0..ws.len() {
            let a: BTreeSet<_> = ws[i].iter().collect();
            let b: BTreeSet<_> = ws[(i + 1) % ws.len()].iter().collect();
            assert_eq!(a.intersection(&b).count(), 2);
        }
    }

    #[test]
    fn mono_check_detects_colour_change() {
        let h = ColouredKGraph::complete(3, 4, 2, |e| usize::from(e == [0, 1, 2])).unwrap();
        let c = TightCycle::new(vec![0, 1, 2, 3]);
        assert!(verify_tight_cycle(&h, &c).ok);
        assert!(!verify_mono_cycle(&h, &c, None).ok);
    }

    proptest! {
        #[test]
        fn canonical_is_rotation_reflection_invariant(mut order in proptest::sample::subsequence((0usize..12).collect::<Vec<_>>(), 1..10).prop_shuffle(), rot in 0usize..10, flip: bool) {
            let base = canonical_order(&order);
            let m = order.len();
            order.rotate_left(rot % m);
            if flip {
                order.reverse();
            }
            prop_assert_eq!(canonical_order(&order), base);
        }
    }
}
