//! Matchings in dense bipartite graphs whose vertices keep high degree
//! inside the matched set.

use itertools::Itertools;
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{assertion, failure, input, Result};
use crate::rng::{rng_for, streams};
use crate::scalar::Scalar;

/// Bipartite graph with sides `0..left` and `0..right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    /// Sorted right-neighbours of each left vertex.
    pub adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); left];
        for (x, y) in edges {
            if x >= left || y >= right {
                return input(format!("edge ({x}, {y}) outside {left} x {right}"));
            }
            adj[x].push(y);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(BipartiteGraph { left, right, adj })
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x].binary_search(&y).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnchoredMatching {
    /// Matched pairs (x, y), x on the left.
    pub pairs: Vec<(usize, usize)>,
    /// Degree of each matched x into the matched right vertices.
    pub anchored_degrees: Vec<usize>,
    /// δ²n/8.
    pub required: f64,
    /// Sides left after peeling low degrees.
    pub peeled_sizes: (usize, usize),
    /// Common side size after equalizing.
    pub m: usize,
    pub equalize_attempts: usize,
    pub exhaustive: bool,
    /// Size of the maximum matching before restricting to reachable x.
    pub maximum_size: usize,
}

impl AnchoredMatching {
    pub fn min_degree(&self) -> usize {
        self.anchored_degrees.iter().copied().min().unwrap_or(0)
    }
}

const EQUALIZE_RETRIES: usize = 100;
const EXHAUSTIVE_MAX_N: usize = 12;

pub fn anchored_bipartite_matching<S: Scalar>(g: &BipartiteGraph, n: usize, delta: S, seed: u64) -> Result<AnchoredMatching> {
    if g.left > n || g.right > n {
        return input(format!("sides {} and {} must not exceed n = {n}", g.left, g.right));
    }
    let d = delta.to_f64();
    if !(d > 0.0 && d <= 1.0) {
        return input(format!("delta = {delta} must lie in (0, 1]"));
    }
    let nf = n as f64;
    let ns = S::from_usize(n);
    if S::from_usize(g.num_edges()) < delta.clone() * ns.clone() * ns.clone() {
        return input(format!("{} edges, fewer than delta n^2 = {:.2}", g.num_edges(), d * nf * nf));
    }
    // exact threshold tests: 2·deg < δn and 8·deg ≥ δ²n
    let below_half = |deg: usize| S::from_usize(2 * deg) < delta.clone() * ns.clone();
    let meets_required = |deg: usize| S::from_usize(8 * deg) >= delta.clone() * delta.clone() * ns.clone();

    // peel vertices of degree below δn/2
    let low = d * nf / 2.0;
    let mut alive_x = vec![true; g.left];
    let mut alive_y = vec![true; g.right];
    let mut rev = vec![Vec::new(); g.right];
    for (x, ys) in g.adj.iter().enumerate() {
        for &y in ys {
            rev[y].push(x);
        }
    }
    loop {
        let mut changed = false;
        for x in 0..g.left {
            if alive_x[x] && below_half(g.adj[x].iter().filter(|&&y| alive_y[y]).count()) {
                alive_x[x] = false;
                changed = true;
            }
        }
        for y in 0..g.right {
            if alive_y[y] && below_half(rev[y].iter().filter(|&&x| alive_x[x]).count()) {
                alive_y[y] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let xs: Vec<usize> = (0..g.left).filter(|&x| alive_x[x]).collect();
    let ys: Vec<usize> = (0..g.right).filter(|&y| alive_y[y]).collect();
    if xs.is_empty() || ys.is_empty() {
        return failure("peeling", format!("no vertices of degree at least delta n / 2 = {low:.2} survive"));
    }

    // equalize the sides, keeping min degree at least δ²n/8
    let required = d * d * nf / 8.0;
    let m = xs.len().min(ys.len());
    let min_deg = |xsub: &[usize], ysub: &[usize]| -> usize {
        let mut in_y = vec![false; g.right];
        let mut in_x = vec![false; g.left];
        ysub.iter().for_each(|&y| in_y[y] = true);
        xsub.iter().for_each(|&x| in_x[x] = true);
        let dx = xsub.iter().map(|&x| g.adj[x].iter().filter(|&&y| in_y[y]).count());
        let dy = ysub.iter().map(|&y| rev[y].iter().filter(|&&x| in_x[x]).count());
        dx.chain(dy).min().unwrap_or(0)
    };
    let shrink_x = xs.len() > m;
    let pool = if shrink_x { &xs } else { &ys };
    let pick = |chosen: &[usize]| -> (Vec<usize>, Vec<usize>) {
        let sub: Vec<usize> = chosen.iter().map(|&i| pool[i]).collect();
        if shrink_x {
            (sub, ys.clone())
        } else {
            (xs.clone(), sub)
        }
    };
    let mut attempts = 0;
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let exhaustive = pool.len() > m && n <= EXHAUSTIVE_MAX_N;
    let mut consider = |chosen: &[usize]| -> bool {
        attempts += 1;
        let (a, b) = pick(chosen);
        let deg = min_deg(&a, &b);
        if best.as_ref().is_none_or(|(bd, _, _)| deg > *bd) {
            best = Some((deg, a, b));
        }
        meets_required(deg)
    };
    if pool.len() == m {
        consider(&(0..m).collect::<Vec<_>>());
    } else if exhaustive {
        for chosen in (0..pool.len()).combinations(m) {
            if consider(&chosen) {
                break;
            }
        }
    } else {
        let mut rng = rng_for(seed, streams::EQUALIZE);
        for _ in 0..EQUALIZE_RETRIES {
            let mut chosen = sample(&mut rng, pool.len(), m).into_vec();
            chosen.sort_unstable();
            if consider(&chosen) {
                break;
            }
        }
    }
    let (best_deg, xstar, ystar) = best.expect("at least one attempt");
    if !meets_required(best_deg) {
        return failure(
            "equalize",
            format!("best of {attempts} selections of size {m} has min degree {best_deg} < delta^2 n / 8 = {required:.2}"),
        );
    }

    // maximum matching on X* ∪ Y*
    let mut in_y = vec![false; g.right];
    ystar.iter().for_each(|&y| in_y[y] = true);
    let sub_adj: Vec<Vec<usize>> = g.adj.iter().map(|ys| ys.iter().copied().filter(|&y| in_y[y]).collect()).collect();
    let mut mate_x = vec![None; g.left];
    let mut mate_y = vec![None; g.right];
    for &x in &xstar {
        let mut seen = vec![false; g.right];
        augment(x, &sub_adj, &mut mate_x, &mut mate_y, &mut seen);
    }
    let maximum_size = xstar.iter().filter(|&&x| mate_x[x].is_some()).count();

    // restrict to x reachable from unmatched x by alternating paths
    let keep: Vec<bool> = if maximum_size == m {
        vec![true; g.left]
    } else {
        let mut reach = vec![false; g.left];
        let mut stack: Vec<usize> = xstar.iter().copied().filter(|&x| mate_x[x].is_none()).collect();
        for &x in &stack {
            reach[x] = true;
        }
        while let Some(x) = stack.pop() {
            for &y in &sub_adj[x] {
                if let Some(x2) = mate_y[y] {
                    if !reach[x2] {
                        reach[x2] = true;
                        stack.push(x2);
                    }
                }
            }
        }
        reach
    };
    let pairs: Vec<(usize, usize)> =
        xstar.iter().filter(|&&x| keep[x]).filter_map(|&x| mate_x[x].map(|y| (x, y))).collect();
    let anchored_degrees = anchored_degrees(g, &pairs);
    if let Some(&bad) = anchored_degrees.iter().find(|&&dg| !meets_required(dg)) {
        return assertion(format!("anchored degree {bad} below delta^2 n / 8 = {required:.2}"));
    }
    Ok(AnchoredMatching {
        pairs,
        anchored_degrees,
        required,
        peeled_sizes: (xs.len(), ys.len()),
        m,
        equalize_attempts: attempts,
        exhaustive,
        maximum_size,
    })
}

/// Degree of each matched x into the right vertices of `pairs`.
pub fn anchored_degrees(g: &BipartiteGraph, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut in_y = vec![false; g.right];
    pairs.iter().for_each(|&(_, y)| in_y[y] = true);
    pairs.iter().map(|&(x, _)| g.adj[x].iter().filter(|&&y| in_y[y]).count()).collect()
}

fn augment(
    x: usize,
    adj: &[Vec<usize>],
    mate_x: &mut [Option<usize>],
    mate_y: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &y in &adj[x] {
        if seen[y] {
            continue;
        }
        seen[y] = true;
        if mate_y[y].is_none_or(|x2| augment(x2, adj, mate_x, mate_y, seen)) {
            mate_x[x] = Some(y);
            mate_y[y] = Some(x);
            return true;
        }
    }
    false
}

/// Maximum matching size by augmenting paths over all of `g`.
pub fn maximum_matching_size(g: &BipartiteGraph) -> usize {
    let mut mate_x = vec![None; g.left];
    let mut mate_y = vec![None; g.right];
    (0..g.left)
        .filter(|&x| {
            let mut seen = vec![false; g.right];
            augment(x, &g.adj, &mut mate_x, &mut mate_y, &mut seen)
        })
        .count()
}
