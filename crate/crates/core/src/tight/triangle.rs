//! The k-uniform triangle cycle: a tight cycle a_1..a_m, m = (k−1)t, with
//! absorber vertices b_1..b_t, each insertable between a_{(k−1)i} and
//! a_{(k−1)i+1}.

use std::collections::BTreeSet;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::search::{find_tight_cycle_within, SearchOutcome};
use crate::cycle::{verify_tight_cycle, verify_tight_path, TightCycle, TightPath};
use crate::error::{input, Result};
use crate::hypergraph::{ColouredKGraph, Vertex};
use crate::rng::{rng_for, streams};

/// Largest t whose absorber subsets are checked exhaustively.
pub const EXHAUSTIVE_MAX_T: usize = 12;
const SAMPLED_SUBSETS: usize = 1000;
const SUBSET_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct TriangleCycle {
    pub k: usize,
    pub t: usize,
    /// a_1..a_m are vertices 0..m−1.
    pub a: Vec<Vertex>,
    /// b_i is vertex m + i − 1.
    pub b: Vec<Vertex>,
    pub graph: ColouredKGraph,
}

impl TriangleCycle {
    pub fn m(&self) -> usize {
        self.a.len()
    }

    /// a_j for any integer j, 1-based, read mod m into 1..=m.
    fn a_at(&self, j: isize) -> Vertex {
        let m = self.m() as isize;
        self.a[((j - 1).rem_euclid(m)) as usize]
    }

    /// a_{(k−1)i−(k−2)} … a_{(k−1)i} b_i a_{(k−1)i+1} … a_{(k−1)i+(k−1)}, i in 1..=t.
    pub fn insertion_path(&self, i: usize) -> Vec<Vertex> {
        let (k, i) = (self.k as isize, i as isize);
        let mut order: Vec<Vertex> = ((k - 1) * i - (k - 2)..=(k - 1) * i).map(|j| self.a_at(j)).collect();
        order.push(self.b[i as usize - 1]);
        order.extend(((k - 1) * i + 1..=(k - 1) * i + (k - 1)).map(|j| self.a_at(j)));
        order
    }

    pub fn max_degree(&self) -> usize {
        (0..self.graph.n()).map(|v| self.graph.degree(v)).max().unwrap_or(0)
    }
}

pub fn build_triangle_cycle(k: usize, t: usize) -> Result<TriangleCycle> {
    if k < 3 || t < 2 {
        return input(format!("triangle cycles need k >= 3 and t >= 2 (got k = {k}, t = {t})"));
    }
    let m = (k - 1) * t;
    if m < k + 1 {
        return input(format!("m = (k-1)t = {m} must be at least k + 1"));
    }
    let mut tc = TriangleCycle {
        k,
        t,
        a: (0..m).collect(),
        b: (m..m + t).collect(),
        graph: ColouredKGraph::new(k, m + t, 1, vec![])?,
    };
    let mut edges: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    let windows = |order: &[Vertex], cyclic: bool| -> Vec<Vec<Vertex>> {
        let l = order.len();
        let count = if cyclic { l } else { l + 1 - k };
        (0..count)
            .map(|s| {
                let mut w: Vec<Vertex> = (0..k).map(|j| order[(s + j) % l]).collect();
                w.sort_unstable();
                w
            })
            .collect()
    };
    edges.extend(windows(&tc.a, true));
    for i in 1..=t {
        edges.extend(windows(&tc.insertion_path(i), false));
    }
    tc.graph = ColouredKGraph::new(k, m + t, 1, edges.into_iter().map(|e| (e, 0)).collect())?;
    Ok(tc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleCheck {
    pub ok: bool,
    pub failure: Option<String>,
    /// Absorber subsets were sampled rather than enumerated.
    pub sampled: bool,
    pub subsets_checked: usize,
}

/// Checks the base cycle, every insertion path, Δ = 2k, and that removing
/// any absorber subset leaves a Hamiltonian tight cycle (found by search).
pub fn verify_triangle_cycle(tc: &TriangleCycle) -> TriangleCheck {
    let fail = |msg: String, sampled, checked| TriangleCheck { ok: false, failure: Some(msg), sampled, subsets_checked: checked };
    let h = &tc.graph;
    let k = tc.k;
    let base = verify_tight_cycle(h, &TightCycle::new(tc.a.clone()));
    if !base.ok {
        return fail(format!("base cycle fails at window {:?}", base.failing_window), false, 0);
    }
    for i in 1..=tc.t {
        let p = verify_tight_path(h, &TightPath { order: tc.insertion_path(i) });
        if !p.ok {
            return fail(format!("insertion path {i} fails at window {:?}", p.failing_window), false, 0);
        }
    }
    let delta = tc.max_degree();
    if delta != 2 * k {
        return fail(format!("maximum degree {delta} != 2k = {}", 2 * k), false, 0);
    }
    let t = tc.t;
    let sampled = t > EXHAUSTIVE_MAX_T;
    let subsets: Vec<u64> = if sampled {
        let mut rng = rng_for(t as u64, streams::PATH_SAMPLES);
        (0..SAMPLED_SUBSETS).map(|_| rng.gen_range(0..1u64 << t)).collect()
    } else {
        (0..1u64 << t).collect()
    };
    for (checked, &bits) in subsets.iter().enumerate() {
        let mut allowed = vec![true; h.n()];
        for (i, &b) in tc.b.iter().enumerate() {
            if bits >> i & 1 == 1 {
                allowed[b] = false;
            }
        }
        let len = allowed.iter().filter(|&&x| x).count();
        let removed: Vec<Vertex> = tc.b.iter().copied().filter(|&b| !allowed[b]).collect();
        match find_tight_cycle_within(h, &allowed, len, None, SUBSET_BUDGET) {
            Ok(res) => match res.outcome {
                SearchOutcome::Found(_) => {}
                SearchOutcome::NotFound => return fail(format!("no tight cycle after removing {removed:?}"), sampled, checked),
                SearchOutcome::BudgetExhausted => {
                    return fail(format!("search inconclusive after removing {removed:?}"), sampled, checked)
                }
            },
            Err(e) => return fail(e.to_string(), sampled, checked),
        }
    }
    TriangleCheck { ok: true, failure: None, sampled, subsets_checked: subsets.len() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_t2_has_six_vertices_and_degree_six() {
        let tc = build_triangle_cycle(3, 2).unwrap();
        assert_eq!(tc.graph.n(), 6);
        assert_eq!(tc.max_degree(), 6);
        assert!(verify_triangle_cycle(&tc).ok);
    }

    #[test]
    fn removing_all_absorbers_leaves_base_cycle() {
        let tc = build_triangle_cycle(3, 4).unwrap();
        let keep: Vec<bool> = (0..tc.graph.n()).map(|v| v < tc.m()).collect();
        let base = TightCycle::new(tc.a.clone());
        assert!(verify_tight_cycle(&tc.graph.induced(&keep), &base).ok);
    }

    #[test]
    fn all_subsets_for_small_parameters() {
        for k in 3..=5 {
            for t in 2..=6 {
                let tc = build_triangle_cycle(k, t).unwrap();
                let check = verify_triangle_cycle(&tc);
                assert!(check.ok, "k={k} t={t}: {:?}", check.failure);
                assert_eq!(check.subsets_checked, 1 << t);
            }
        }
    }

    #[test]
    fn deleting_an_insertion_edge_is_caught() {
        let mut tc = build_triangle_cycle(3, 3).unwrap();
        let path = tc.insertion_path(2);
        let mut gone = path[1..4].to_vec();
        gone.sort_unstable();
        let edges = tc.graph.edges().filter(|(e, _)| *e != gone.as_slice()).map(|(e, c)| (e.to_vec(), c)).collect();
        tc.graph = ColouredKGraph::new(3, tc.graph.n(), 1, edges).unwrap();
        let check = verify_triangle_cycle(&tc);
        assert!(!check.ok);
        assert!(check.failure.unwrap().contains("insertion path 2"));
    }

    #[test]
    fn hand_built_k3_t3() {
        // m = 6; a_j = j − 1, b_i = 5 + i; path i: a_{2i−1} a_{2i} b_i a_{2i+1} a_{2i+2}
        let a = |j: usize| (j - 1) % 6;
        let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
        for j in 1..=6 {
            let mut w = vec![a(j), a(j % 6 + 1), a((j + 1) % 6 + 1)];
            w.sort_unstable();
            edges.insert(w);
        }
        for i in 1..=3 {
            let p = [a(2 * i - 1), a(2 * i), 5 + i, a(2 * i % 6 + 1), a((2 * i + 1) % 6 + 1)];
            for w in p.windows(3) {
                let mut w = w.to_vec();
                w.sort_unstable();
                edges.insert(w);
            }
        }
        let graph = ColouredKGraph::new(3, 9, 1, edges.into_iter().map(|e| (e, 0)).collect()).unwrap();
        let built = build_triangle_cycle(3, 3).unwrap();
        assert_eq!(built.graph, graph);
        assert!(verify_triangle_cycle(&built).ok);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_triangle_cycle(2, 5).is_err());
        assert!(build_triangle_cycle(3, 1).is_err());
    }
}
