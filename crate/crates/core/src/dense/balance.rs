//! Rebalancing a fractional matching along augmenting paths of a perfect
//! matching x_i y_i.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::bipartite::BipartiteGraph;
use crate::error::{failure, input, Result};
use crate::scalar::Scalar;

/// Edge weights on a bipartite graph; edges are (x, y) pairs and zero
/// weights are not stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionalMatching<S> {
    pub n: usize,
    pub weights: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> FractionalMatching<S> {
    pub fn new(n: usize) -> Self {
        FractionalMatching { n, weights: BTreeMap::new() }
    }

    pub fn get(&self, x: usize, y: usize) -> S {
        self.weights.get(&(x, y)).cloned().unwrap_or_else(S::zero)
    }

    pub fn add(&mut self, x: usize, y: usize, w: S) {
        let v = self.get(x, y) + w;
        if v.is_zero() {
            self.weights.remove(&(x, y));
        } else {
            self.weights.insert((x, y), v);
        }
    }

    pub fn x_weight(&self, x: usize) -> S {
        self.weights.range((x, 0)..(x + 1, 0)).fold(S::zero(), |a, (_, w)| a + w.clone())
    }

    pub fn y_weights(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for (&(_, y), w) in &self.weights {
            out[y] = out[y].clone() + w.clone();
        }
        out
    }

    pub fn total(&self) -> S {
        self.weights.values().fold(S::zero(), |a, w| a + w.clone())
    }

    /// Every edge weight lies in [0, 1] and every vertex weight is at most 1.
    pub fn is_valid(&self) -> bool {
        let edges_ok = self.weights.values().all(|w| *w >= S::zero() && *w <= S::one());
        edges_ok && (0..self.n).all(|x| self.x_weight(x) <= S::one()) && self.y_weights().iter().all(|w| *w <= S::one())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BalanceInput<S> {
    pub omega_x: Vec<S>,
    pub omega_y: Vec<S>,
    pub i_plus: Vec<usize>,
    pub i_minus: Vec<usize>,
    pub c: S,
    pub mu: S,
    pub delta: S,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BalanceReport<S> {
    pub matching: FractionalMatching<S>,
    pub iterations: usize,
    /// Total weight before each iteration and at the end.
    pub weight_history: Vec<S>,
    /// Σω(x_i) − μn.
    pub target: S,
    /// The augmenting paths used, as x-indices x⁺ … x⁻.
    pub paths: Vec<Vec<usize>>,
    pub min_matching_support: S,
    /// Smallest non-zero weight off the perfect matching.
    pub min_off_matching_support: Option<S>,
}

fn check_hypotheses<S: Scalar>(g: &BipartiteGraph, inp: &BalanceInput<S>) -> Result<usize> {
    let n = g.left;
    if g.right != n || inp.omega_x.len() != n || inp.omega_y.len() != n {
        return input("sides and weightings must all have size n");
    }
    if let Some(i) = (0..n).find(|&i| !g.has_edge(i, i)) {
        return input(format!("x_{i} y_{i} missing: the perfect matching must be x_i y_i"));
    }
    let (zero, half) = (S::zero(), S::half());
    if !(inp.c > zero && inp.mu > zero && inp.c.clone() + inp.mu.clone() <= S::from_ratio(1, 8)) {
        return input("need c, mu > 0 and c + mu <= 1/8");
    }
    if !(inp.delta > zero && inp.delta <= S::one()) {
        return input("delta must lie in (0, 1]");
    }
    if let Some(i) = (0..n).find(|&i| inp.omega_y[i] != half) {
        return input(format!("omega(y_{i}) = {} is not 1/2", inp.omega_y[i]));
    }
    let mut role = vec![0u8; n];
    for &i in &inp.i_plus {
        if i >= n || role[i] != 0 {
            return input(format!("I+ index {i} out of range or repeated"));
        }
        role[i] = 1;
    }
    for &i in &inp.i_minus {
        if i >= n || role[i] != 0 {
            return input(format!("I- index {i} out of range, repeated or shared with I+"));
        }
        role[i] = 2;
    }
    let k = inp.i_plus.len();
    if k == 0 || inp.i_minus.len() != k || S::from_usize(4 * k) > inp.delta.clone() * S::from_usize(n) {
        return input(format!("|I+| = {k}, |I-| = {} must be equal, nonzero and at most delta n / 4", inp.i_minus.len()));
    }
    let lo = half.clone() - inp.c.clone();
    let hi = half.clone() + inp.c.clone();
    for (i, w) in inp.omega_x.iter().enumerate() {
        let ok = match role[i] {
            1 => *w >= half && *w <= hi,
            2 => *w >= lo && *w <= half,
            _ => *w == half,
        };
        if !ok {
            return input(format!("omega(x_{i}) = {w} violates its interval constraint"));
        }
    }
    let excess = inp.i_plus.iter().fold(S::zero(), |a, &i| a + inp.omega_x[i].clone() - inp.omega_y[i].clone());
    let deficit = inp.i_minus.iter().fold(S::zero(), |a, &i| a + inp.omega_y[i].clone() - inp.omega_x[i].clone());
    let nf = S::from_usize(n);
    if excess != deficit && (S::is_exact() || (excess.clone() - deficit.clone()).abs().to_f64() > 1e-9) {
        return input(format!("imbalance over I+ ({excess}) differs from I- ({deficit})"));
    }
    if excess >= inp.delta.pow_usize(9) * nf.clone() / S::from_usize(8) {
        return input(format!("imbalance {excess} is not below delta^9 n / 8"));
    }
    let need = inp.delta.clone() * nf;
    if let Some(x) = (0..n).find(|&x| S::from_usize(g.adj[x].len()) < need) {
        return input(format!("d(x_{x}, Y) = {} < delta n", g.adj[x].len()));
    }
    Ok(n)
}

pub fn balance_fractional_matching<S: Scalar>(g: &BipartiteGraph, inp: &BalanceInput<S>) -> Result<BalanceReport<S>> {
    let n = check_hypotheses(g, inp)?;
    let mu = inp.mu.clone();
    let quarter = S::from_ratio(1, 4);
    // ω₀*: min of endpoint weights on the matching
    let mut start = FractionalMatching::new(n);
    for i in 0..n {
        start.add(i, i, S::min_of(inp.omega_x[i].clone(), inp.omega_y[i].clone()));
    }
    let mut cur = start.clone();
    let target = inp.omega_x.iter().fold(S::zero(), |a, w| a + w.clone()) - mu.clone() * S::from_usize(n);
    let max_len = {
        let d = inp.delta.to_f64();
        ((1.0 / (d * d * d)).floor() as usize).max(2)
    };
    let mut total = cur.total();
    let mut history = vec![total.clone()];
    let mut paths = Vec::new();
    let mut x_w: Vec<S> = (0..n).map(|x| cur.x_weight(x)).collect();
    let mut y_w = cur.y_weights();
    while total < target {
        let far = |x: usize, y: usize, cur: &FractionalMatching<S>| (cur.get(x, y) - start.get(x, y)).abs() >= quarter;
        let deficient_x: Vec<usize> =
            inp.i_plus.iter().copied().filter(|&i| inp.omega_x[i].clone() - x_w[i].clone() >= mu).collect();
        let deficient_y: Vec<usize> =
            inp.i_minus.iter().copied().filter(|&i| inp.omega_y[i].clone() - y_w[i].clone() >= mu).collect();
        let mut found = None;
        'pairs: for &xp in &deficient_x {
            for &ym in &deficient_y {
                if let Some(p) = augmenting_path(g, xp, ym, max_len, |x, y| far(x, y, &cur)) {
                    found = Some(p);
                    break 'pairs;
                }
            }
        }
        let Some(path) = found else {
            return failure(
                "balance",
                format!(
                    "weight {total} below target {target} after {} iterations; deficient X+ {deficient_x:?}, Y- {deficient_y:?}, no augmenting path avoiding E0 within {max_len} vertices",
                    paths.len()
                ),
            );
        };
        let l = path.len();
        for i in 1..l - 1 {
            cur.add(path[i], path[i], -mu.clone());
        }
        for i in 0..l - 1 {
            cur.add(path[i], path[i + 1], mu.clone());
        }
        x_w[path[0]] = x_w[path[0]].clone() + mu.clone();
        y_w[path[l - 1]] = y_w[path[l - 1]].clone() + mu.clone();
        total = total + mu.clone();
        history.push(total.clone());
        paths.push(path);
    }
    let min_matching_support = (0..n).map(|i| cur.get(i, i)).fold(S::one(), S::min_of);
    let min_off_matching_support =
        cur.weights.iter().filter(|(&(x, y), _)| x != y).map(|(_, w)| w.clone()).reduce(S::min_of);
    Ok(BalanceReport {
        matching: cur,
        iterations: paths.len(),
        weight_history: history,
        target,
        paths,
        min_matching_support,
        min_off_matching_support,
    })
}

/// Shortest x⁺ → x⁻ path in the digraph x_i → x_j iff x_i y_j ∈ E, with at
/// most `max_len` x-vertices and no edge (x_i y_j or y_j x_j) in E0. The
/// path ends at the mate of `ym`.
fn augmenting_path(
    g: &BipartiteGraph,
    xp: usize,
    ym: usize,
    max_len: usize,
    in_e0: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let n = g.left;
    let mut prev = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    seen[xp] = true;
    depth[xp] = 1;
    let mut q = VecDeque::from([xp]);
    while let Some(u) = q.pop_front() {
        if depth[u] >= max_len {
            continue;
        }
        for &j in &g.adj[u] {
            if j == u || seen[j] || in_e0(u, j) || in_e0(j, j) {
                continue;
            }
            seen[j] = true;
            prev[j] = u;
            depth[j] = depth[u] + 1;
            if j == ym {
                let mut path = vec![j];
                let mut w = j;
                while w != xp {
                    w = prev[w];
                    path.push(w);
                }
                path.reverse();
                return Some(path);
            }
            q.push_back(j);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{rng_for, streams};
    use crate::Rational;
    use rand::seq::SliceRandom;
    use rand::Rng;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_ratio(a, b)
    }

    fn uniform(n: usize, i_plus: Vec<usize>, i_minus: Vec<usize>) -> BalanceInput<Rational> {
        BalanceInput {
            omega_x: vec![q(1, 2); n],
            omega_y: vec![q(1, 2); n],
            i_plus,
            i_minus,
            c: q(1, 16),
            mu: q(1, 32),
            delta: q(1, 2),
        }
    }

    fn complete(n: usize) -> BipartiteGraph {
        BipartiteGraph::new(n, n, (0..n).flat_map(|x| (0..n).map(move |y| (x, y)))).unwrap()
    }

    #[test]
    fn balanced_weights_need_no_iterations() {
        let g = complete(8);
        let out = balance_fractional_matching(&g, &uniform(8, vec![0], vec![1])).unwrap();
        assert_eq!(out.iterations, 0);
        assert_eq!(out.matching.weights.len(), 8);
        assert!(out.matching.weights.iter().all(|(&(x, y), w)| x == y && *w == q(1, 2)));
    }

    #[test]
    fn one_unit_of_imbalance_takes_one_augmentation() {
        // n = 16, δ = 3/4 (each x sees 12 of the y's), I+ = {0, 1}, I- = {2, 3}
        let n = 16;
        let edges = (0..n).flat_map(|x| (0..12).map(move |s| (x, (x + s) % n)));
        let mut g = BipartiteGraph::new(n, n, edges).unwrap();
        for x in [0, 1] {
            for y in [2, 3] {
                if !g.has_edge(x, y) {
                    g.adj[x].push(y);
                    g.adj[x].sort_unstable();
                }
            }
        }
        let mut inp = uniform(n, vec![0, 1], vec![2, 3]);
        inp.delta = q(3, 4);
        inp.mu = q(1, 130);
        inp.omega_x[0] = q(1, 2) + q(1, 16);
        inp.omega_x[1] = q(1, 2) + q(1, 16);
        inp.omega_x[2] = q(1, 2) - q(1, 16);
        inp.omega_x[3] = q(1, 2) - q(1, 16);
        let start_total = q(8, 1) - q(1, 8);
        let out = balance_fractional_matching(&g, &inp).unwrap();
        assert_eq!(out.iterations, 1);
        assert_eq!(out.weight_history, vec![start_total.clone(), start_total + q(1, 130)]);
        assert!(out.matching.total() >= out.target);
    }

    fn random_instance(seed: u64) -> (BipartiteGraph, BalanceInput<Rational>) {
        let mut rng = rng_for(seed, streams::GENERATOR);
        let n = rng.gen_range(8..=16);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        let k = rng.gen_range(1..=2);
        let (i_plus, i_minus) = (idx[..k].to_vec(), idx[k..2 * k].to_vec());
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        for x in 0..n {
            for y in 0..n {
                if rng.gen_bool(0.8) {
                    edges.push((x, y));
                }
            }
        }
        edges.extend(i_plus.iter().flat_map(|&x| i_minus.iter().map(move |&y| (x, y))));
        let g = BipartiteGraph::new(n, n, edges).unwrap();
        let min_deg = g.adj.iter().map(Vec::len).min().unwrap();
        let delta = q(min_deg as i64, n as i64);
        // excess per I+ vertex in 1/256 steps up to c, deficits mirror it
        let c = q(1, 16);
        let mut excess: Vec<Rational> = (0..k).map(|_| q(rng.gen_range(0..=16), 256)).collect();
        let bound = delta.pow_usize(9) * q(n as i64, 8);
        while excess.iter().fold(q(0, 1), |a, e| a + e) >= bound {
            excess.iter_mut().for_each(|e| *e = e.clone() / q(2, 1));
        }
        let mut deficit = excess.clone();
        deficit.shuffle(&mut rng);
        let mut omega_x = vec![q(1, 2); n];
        for (j, &i) in i_plus.iter().enumerate() {
            omega_x[i] = q(1, 2) + excess[j].clone();
        }
        for (j, &i) in i_minus.iter().enumerate() {
            omega_x[i] = q(1, 2) - deficit[j].clone();
        }
        // μ small enough that the deficit exceeds the slack μn
        let total: Rational = excess.iter().fold(q(0, 1), |a, e| a + e);
        let mu = if total == q(0, 1) { q(1, 512) } else { total / q((n * rng.gen_range(2..=8)) as i64, 1) };
        (g, BalanceInput { omega_x, omega_y: vec![q(1, 2); n], i_plus, i_minus, c, mu, delta })
    }

    #[test]
    fn random_instances_keep_all_bounds() {
        let (mut ran, mut iterated) = (0, 0);
        for seed in 0..200 {
            let (g, inp) = random_instance(seed);
            if 4 * inp.i_plus.len() > (inp.delta.clone() * q(g.left as i64, 1)).to_integer().try_into().unwrap_or(0) {
                continue;
            }
            let out = balance_fractional_matching(&g, &inp).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            ran += 1;
            iterated += usize::from(out.iterations > 0);
            let m = &out.matching;
            assert!(m.is_valid());
            assert!(m.total() >= out.target);
            let lo = q(1, 2) - inp.c.clone();
            let yw = m.y_weights();
            for i in 0..g.left {
                let xw = m.x_weight(i);
                assert!(lo <= xw && xw <= inp.omega_x[i], "seed {seed} x_{i}");
                assert!(lo <= yw[i] && yw[i] <= inp.omega_y[i], "seed {seed} y_{i}");
            }
            assert!(out.min_matching_support >= q(1, 8));
            for w in out.weight_history.windows(2) {
                assert_eq!(w[1].clone() - w[0].clone(), inp.mu);
            }
            assert!(m.weights.keys().all(|&(x, y)| g.has_edge(x, y)));
        }
        assert!(ran >= 150, "only {ran} instances were valid");
        assert!(iterated >= 100, "only {iterated} instances needed an augmentation");
    }

    #[test]
    fn float_scalar_runs_the_same_steps() {
        let (g, inp) = random_instance(7);
        let exact = balance_fractional_matching(&g, &inp).unwrap();
        let to_f = |v: &Rational| v.to_f64();
        let finp = BalanceInput {
            omega_x: inp.omega_x.iter().map(to_f).collect(),
            omega_y: inp.omega_y.iter().map(to_f).collect(),
            i_plus: inp.i_plus.clone(),
            i_minus: inp.i_minus.clone(),
            c: to_f(&inp.c),
            mu: to_f(&inp.mu),
            delta: to_f(&inp.delta),
        };
        let float = balance_fractional_matching(&g, &finp).unwrap();
        assert_eq!(exact.paths, float.paths);
    }

    #[test]
    fn hypothesis_violations_are_named() {
        let g = complete(8);
        let mut inp = uniform(8, vec![0], vec![1]);
        inp.omega_y[3] = q(1, 3);
        assert!(balance_fractional_matching(&g, &inp).unwrap_err().to_string().contains("omega(y_3)"));
        let mut inp = uniform(8, vec![0], vec![1]);
        inp.omega_x[4] = q(5, 8);
        assert!(balance_fractional_matching(&g, &inp).unwrap_err().to_string().contains("x_4"));
        let mut inp = uniform(8, vec![0], vec![1]);
        inp.c = q(1, 8);
        assert!(balance_fractional_matching(&g, &inp).is_err());
        let mut inp = uniform(8, vec![0], vec![1]);
        inp.omega_x[0] = q(9, 16);
        assert!(balance_fractional_matching(&g, &inp).unwrap_err().to_string().contains("differs"));
    }
}
