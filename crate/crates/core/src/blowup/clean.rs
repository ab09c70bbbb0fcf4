//! Deleting 2-blow-up copies until every surviving edge lies in many of them.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::count::{copies_per_edge, equal_size, for_each_copy};
use crate::error::{assertion, input, Result};
use crate::partite::PartiteGraph;
use crate::rng::{rng_for, streams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CleanOutcome {
    /// H₀: the edges still lying in a surviving copy.
    #[serde(skip)]
    pub kept: Option<PartiteGraph>,
    pub kept_edges: usize,
    /// γn^k/2.
    pub threshold: f64,
    pub initial_copies: usize,
    pub surviving_copies: usize,
    /// Edges whose copies were deleted, in deletion order (cell indices).
    pub deleted_at: Vec<usize>,
    pub empty: bool,
    /// Smallest copy count of an H₀ edge, recounted inside H₀.
    pub min_copies_in_kept: Option<usize>,
    /// |E(H₀)| ≥ 2^k·(surviving copies)/n^k.
    pub size_bound_holds: bool,
}

impl CleanOutcome {
    pub fn kept(&self) -> &PartiteGraph {
        self.kept.as_ref().expect("outcome built in this process")
    }
}

/// Deletes, lowest edge first, all copies through an edge that lies in fewer
/// than γn^k/2 surviving copies, until no such edge remains.
pub fn clean_to_robust_subgraph(h: &PartiteGraph, gamma: f64) -> Result<CleanOutcome> {
    clean_with_order(h, gamma, None)
}

/// As [`clean_to_robust_subgraph`]; with a seed the next offending edge is
/// drawn at random. The surviving copies do not depend on the order.
pub fn clean_with_order(h: &PartiteGraph, gamma: f64, order_seed: Option<u64>) -> Result<CleanOutcome> {
    let n = equal_size(h)?;
    if !(gamma > 0.0) {
        return input(format!("gamma = {gamma} must be positive"));
    }
    let k = h.k();
    let threshold = gamma * (n as f64).powi(k as i32) / 2.0;
    let stride = 1 << k;
    let mut cells: Vec<u32> = Vec::new();
    for_each_copy(h, |c| cells.extend(c.iter().map(|&x| x as u32)))?;
    let num_copies = cells.len() / stride;
    let mut through: Vec<Vec<u32>> = vec![Vec::new(); h.num_cells()];
    for (id, copy) in cells.chunks(stride).enumerate() {
        for &c in copy {
            through[c as usize].push(id as u32);
        }
    }
    let mut alive = vec![true; num_copies];
    let mut count: Vec<usize> = through.iter().map(Vec::len).collect();
    let below = |c: usize| c > 0 && (c as f64) < threshold;
    let mut rng = order_seed.map(|s| rng_for(s, streams::CLEANING_ORDER));
    let mut deleted_at = Vec::new();
    loop {
        let offenders: Vec<usize> = (0..count.len()).filter(|&e| below(count[e])).collect();
        if offenders.is_empty() {
            break;
        }
        let e = match rng.as_mut() {
            Some(r) => offenders[r.gen_range(0..offenders.len())],
            None => offenders[0],
        };
        deleted_at.push(e);
        for &id in &through[e] {
            let id = id as usize;
            if alive[id] {
                alive[id] = false;
                for &c in &cells[id * stride..(id + 1) * stride] {
                    count[c as usize] -= 1;
                }
            }
        }
    }
    let surviving = alive.iter().filter(|&&a| a).count();
    let mut kept = h.clone();
    for (idx, &c) in count.iter().enumerate() {
        if c == 0 {
            kept.set_index(idx, None);
        }
    }
    let kept_edges = kept.num_edges();
    let recount = copies_per_edge(&kept)?;
    let min_copies_in_kept = (0..recount.len()).filter(|&i| kept.has_index(i)).map(|i| recount[i]).min();
    if let Some(m) = min_copies_in_kept {
        if (m as f64) < threshold {
            return assertion(format!("an edge of the cleaned graph lies in only {m} copies (< {threshold:.3})"));
        }
    }
    let size_bound_holds = (kept_edges as f64) * (n as f64).powi(k as i32) >= (stride * surviving) as f64;
    Ok(CleanOutcome {
        kept: Some(kept),
        kept_edges,
        threshold,
        initial_copies: num_copies,
        surviving_copies: surviving,
        deleted_at,
        empty: kept_edges == 0,
        min_copies_in_kept,
        size_bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{rng_for, streams};

    fn random_partite(k: usize, n: usize, p: f64, seed: u64) -> PartiteGraph {
        let mut rng = rng_for(seed, streams::GENERATOR);
        let mut h = PartiteGraph::empty(vec![n; k], 1).unwrap();
        for idx in 0..h.num_cells() {
            if rng.gen_bool(p) {
                h.set_index(idx, Some(0));
            }
        }
        h
    }

    #[test]
    fn complete_host_is_untouched() {
        let h = PartiteGraph::complete(vec![4; 3], 1, |_| 0).unwrap();
        let out = clean_to_robust_subgraph(&h, 0.01).unwrap();
        assert_eq!(out.kept(), &h);
        assert!(out.deleted_at.is_empty());
        assert_eq!(out.surviving_copies, 216);
    }

    #[test]
    fn lone_copy_is_cleaned_away() {
        let mut h = PartiteGraph::empty(vec![3; 3], 1).unwrap();
        for mask in 0..8usize {
            h.set(&[mask & 1, mask >> 1 & 1, mask >> 2 & 1], Some(0));
        }
        // γ n^k / 2 = 0.1 · 27 / 2 > 1
        let out = clean_to_robust_subgraph(&h, 0.1).unwrap();
        assert!(out.empty);
        assert_eq!(out.surviving_copies, 0);
        let keep = clean_to_robust_subgraph(&h, 0.05).unwrap();
        assert_eq!(keep.kept_edges, 8);
    }

    #[test]
    fn result_is_independent_of_order_and_a_fixpoint() {
        let mut partial = 0;
        for seed in 0..6 {
            let h = random_partite(3, 5, 0.75, seed);
            let gamma = [0.05, 0.1][seed as usize % 2];
            let base = clean_to_robust_subgraph(&h, gamma).unwrap();
            for order in 0..5 {
                let other = clean_with_order(&h, gamma, Some(order)).unwrap();
                assert_eq!(other.kept(), base.kept(), "seed {seed} order {order}");
                assert_eq!(other.surviving_copies, base.surviving_copies);
            }
            let again = clean_to_robust_subgraph(base.kept(), gamma).unwrap();
            assert_eq!(again.kept(), base.kept());
            assert!(again.deleted_at.is_empty());
            assert!(base.size_bound_holds);
            partial += usize::from(base.kept_edges > 0 && base.kept_edges < h.num_edges());
        }
        assert!(partial >= 3, "only {partial} runs deleted part of the host");
    }

    #[test]
    fn rejects_bad_gamma() {
        let h = PartiteGraph::complete(vec![2; 2], 1, |_| 0).unwrap();
        assert!(clean_to_robust_subgraph(&h, 0.0).is_err());
    }
}
