//! Digraphs, length-bounded internally disjoint paths, and robust hubs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{failure, input, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n || u == v {
                return input(format!("arc ({u}, {v}) is a loop or leaves 0..{n}"));
            }
            out[u].push(v);
        }
        for o in &mut out {
            o.sort_unstable();
            o.dedup();
        }
        Ok(Digraph { n, out })
    }

    pub fn complete(n: usize) -> Self {
        Digraph { n, out: (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect() }
    }

    pub fn cycle(n: usize) -> Self {
        Digraph { n, out: (0..n).map(|u| vec![(u + 1) % n]).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn out(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn min_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn without_vertex(&self, v: usize) -> Self {
        let out = self.out.iter().enumerate().map(|(u, o)| if u == v { Vec::new() } else { o.iter().copied().filter(|&w| w != v).collect() }).collect();
        Digraph { n: self.n, out }
    }
}

/// Internally vertex-disjoint x→y paths of bounded length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPacking {
    /// A family of this many paths is listed in `paths`.
    pub lower: usize,
    /// No family is larger than this.
    pub upper: usize,
    pub paths: Vec<Vec<usize>>,
}

impl PathPacking {
    pub fn exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Unit-capacity max flow with vertex splitting.
struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
}

impl Flow {
    fn new(nodes: usize) -> Self {
        Flow { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: i32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn run(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        loop {
            let mut prev = vec![usize::MAX; self.head.len()];
            let mut q = VecDeque::from([s]);
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            while let Some(u) = q.pop_front() {
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && !seen[v] {
                        seen[v] = true;
                        prev[v] = e;
                        q.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            total += 1;
        }
    }

    /// Follows saturated forward edges from `s`; `label` maps nodes to
    /// vertices (None for split halves and terminals).
    fn paths(&mut self, s: usize, t: usize, label: &[Option<usize>]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        loop {
            let mut path = Vec::new();
            let mut u = s;
            let mut used = Vec::new();
            while u != t {
                let Some(&e) = self.head[u].iter().find(|&&e| e % 2 == 0 && self.cap[e] == 0 && self.cap[e ^ 1] > 0) else {
                    break;
                };
                used.push(e);
                u = self.to[e];
                if let Some(v) = label[u] {
                    path.push(v);
                }
            }
            if u != t {
                return out;
            }
            for e in used {
                self.cap[e ^ 1] -= 1;
            }
            out.push(path);
        }
    }
}

/// Packs internally disjoint x→y paths with at most `max_len` arcs. Exact
/// for `max_len ≤ 4`; beyond that a greedy shortest-path packing bounded
/// above by the unrestricted vertex connectivity.
pub fn disjoint_paths(d: &Digraph, x: usize, y: usize, max_len: usize) -> PathPacking {
    assert!(x != y && x < d.n && y < d.n && max_len >= 1);
    let mut paths = Vec::new();
    if d.has_arc(x, y) {
        paths.push(vec![x, y]);
    }
    if max_len == 1 {
        let c = paths.len();
        return PathPacking { lower: c, upper: c, paths };
    }
    let into_y: Vec<bool> = (0..d.n).map(|v| v != x && d.has_arc(v, y)).collect();
    let mid: Vec<usize> = d.out[x].iter().copied().filter(|&v| v != y && into_y[v]).collect();
    paths.extend(mid.iter().map(|&v| vec![x, v, y]));
    if max_len == 2 {
        let c = paths.len();
        return PathPacking { lower: c, upper: c, paths };
    }
    if max_len <= 4 {
        let extra = layered(d, x, y, max_len, &into_y);
        paths.extend(extra);
        let c = paths.len();
        return PathPacking { lower: c, upper: c, paths };
    }
    let mut blocked = vec![false; d.n];
    for p in &paths {
        for &v in &p[1..p.len() - 1] {
            blocked[v] = true;
        }
    }
    while let Some(p) = shortest_path(d, x, y, max_len, &blocked) {
        for &v in &p[1..p.len() - 1] {
            blocked[v] = true;
        }
        paths.push(p);
    }
    let upper = vertex_connectivity(d, x, y);
    PathPacking { lower: paths.len(), upper, paths }
}

/// Paths of length 3 and 4 once the direct arc and the common neighbours
/// are taken; a shortest family never routes through those, so the layered
/// network A → (M) → B is exact.
fn layered(d: &Digraph, x: usize, y: usize, max_len: usize, into_y: &[bool]) -> Vec<Vec<usize>> {
    let n = d.n;
    let out_x: Vec<bool> = (0..n).map(|v| v != y && d.has_arc(x, v)).collect();
    let a_set: Vec<bool> = (0..n).map(|v| out_x[v] && !into_y[v]).collect();
    let b_set: Vec<bool> = (0..n).map(|v| into_y[v] && !out_x[v]).collect();
    let m_set: Vec<bool> = (0..n).map(|v| max_len == 4 && v != x && v != y && !out_x[v] && !into_y[v]).collect();
    // node 2v = v in, 2v+1 = v out; 2n source, 2n+1 sink
    let (s, t) = (2 * n, 2 * n + 1);
    let mut f = Flow::new(2 * n + 2);
    let mut label = vec![None; 2 * n + 2];
    for v in 0..n {
        if a_set[v] || b_set[v] || m_set[v] {
            f.add(2 * v, 2 * v + 1, 1);
            label[2 * v] = Some(v);
        }
        if a_set[v] {
            f.add(s, 2 * v, 1);
            for &w in &d.out[v] {
                if b_set[w] || m_set[w] {
                    f.add(2 * v + 1, 2 * w, 1);
                }
            }
        }
        if m_set[v] {
            for &w in &d.out[v] {
                if b_set[w] {
                    f.add(2 * v + 1, 2 * w, 1);
                }
            }
        }
        if b_set[v] {
            f.add(2 * v + 1, t, 1);
        }
    }
    f.run(s, t);
    f.paths(s, t, &label)
        .into_iter()
        .map(|inner| std::iter::once(x).chain(inner).chain(std::iter::once(y)).collect())
        .collect()
}

fn shortest_path(d: &Digraph, x: usize, y: usize, max_len: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; d.n];
    let mut dist = vec![usize::MAX; d.n];
    dist[x] = 0;
    let mut q = VecDeque::from([x]);
    while let Some(u) = q.pop_front() {
        if dist[u] >= max_len {
            continue;
        }
        for &v in &d.out[u] {
            if v == y && u == x {
                continue;
            }
            if v == y {
                let mut path = vec![y, u];
                let mut w = u;
                while w != x {
                    w = prev[w];
                    path.push(w);
                }
                path.reverse();
                return Some(path);
            }
            if !blocked[v] && v != x && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                prev[v] = u;
                q.push_back(v);
            }
        }
    }
    None
}

/// Maximum number of internally disjoint x→y paths of any length.
pub fn vertex_connectivity(d: &Digraph, x: usize, y: usize) -> usize {
    let n = d.n;
    let mut f = Flow::new(2 * n);
    for v in 0..n {
        if v != x && v != y {
            f.add(2 * v, 2 * v + 1, 1);
        }
        for &w in &d.out[v] {
            if !(v == x && w == y) {
                f.add(2 * v + 1, 2 * w, 1);
            }
        }
    }
    f.run(2 * x + 1, 2 * y) + usize::from(d.has_arc(x, y))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobustHub {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Certified minimum over pairs x ≠ y of the packed path count.
    pub p: usize,
    /// Path length bound ⌊c⁻³⌋, capped at n − 1.
    pub length_bound: usize,
    /// ⌈c⁶n⌉.
    pub target: usize,
    /// Every pair count was computed exactly.
    pub exact: bool,
}

pub fn robust_hub(d: &Digraph, c: f64) -> Result<RobustHub> {
    let n = d.n;
    if !(c > 0.0 && c <= 1.0) {
        return input(format!("c = {c} must lie in (0, 1]"));
    }
    if n < 2 {
        return input("a hub needs at least two vertices");
    }
    if (d.min_out_degree() as f64) < c * n as f64 {
        return input(format!("min out-degree {} < cn = {:.2}", d.min_out_degree(), c * n as f64));
    }
    let length_bound = ((1.0 / (c * c * c)).floor() as usize).clamp(1, n - 1);
    let target = (c.powi(6) * n as f64).ceil() as usize;
    let mut count = vec![vec![None; n]; n];
    let mut exact = true;
    for x in 0..n {
        for y in 0..n {
            if x != y {
                let pk = disjoint_paths(d, x, y, length_bound);
                exact &= pk.exact();
                count[x][y] = Some(pk.lower);
            }
        }
    }
    let mut alive = vec![true; n];
    loop {
        let bad = |v: usize, alive: &[bool]| {
            (0..n).filter(|&w| alive[w] && w != v).filter(|&w| count[v][w] < Some(target) || count[w][v] < Some(target)).count()
        };
        let worst = (0..n).filter(|&v| alive[v]).map(|v| (bad(v, &alive), v)).max_by_key(|&(b, v)| (b, std::cmp::Reverse(v)));
        match worst {
            Some((b, v)) if b > 0 => alive[v] = false,
            _ => break,
        }
    }
    let y: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let p = y
        .iter()
        .flat_map(|&a| y.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .filter_map(|(a, b)| count[a][b])
        .min()
        .unwrap_or(0);
    if (y.len() as f64) < c * n as f64 / 2.0 {
        return failure(
            "hub",
            format!("after peeling |Y| = {} < cn/2 = {:.2} (X = Y = {y:?}, p = {p}, target {target})", y.len(), c * n as f64 / 2.0),
        );
    }
    Ok(RobustHub { x: y.clone(), y, p, length_bound, target, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{rng_for, streams};
    use rand::Rng;

    fn random_digraph(n: usize, p: f64, seed: u64) -> Digraph {
        let mut rng = rng_for(seed, streams::GENERATOR);
        let arcs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v).filter(|_| rng.gen_bool(p)).collect();
        Digraph::new(n, arcs).unwrap()
    }

    fn tournament(n: usize, seed: u64) -> Digraph {
        let mut rng = rng_for(seed, streams::GENERATOR);
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
        Digraph::new(n, arcs).unwrap()
    }

    /// Every simple x→y path with at most `max_len` arcs, by DFS.
    fn all_paths(d: &Digraph, x: usize, y: usize, max_len: usize) -> Vec<Vec<usize>> {
        fn go(d: &Digraph, path: &mut Vec<usize>, y: usize, max_len: usize, out: &mut Vec<Vec<usize>>) {
            let u = *path.last().unwrap();
            if u == y {
                out.push(path.clone());
                return;
            }
            if path.len() > max_len {
                return;
            }
            for &v in d.out(u) {
                if !path.contains(&v) {
                    path.push(v);
                    go(d, path, y, max_len, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(d, &mut vec![x], y, max_len, &mut out);
        out
    }

    /// Largest internally disjoint subfamily, by memoized search on the
    /// used-vertex mask.
    fn brute_force(d: &Digraph, x: usize, y: usize, max_len: usize) -> usize {
        let paths = all_paths(d, x, y, max_len);
        let direct = paths.iter().any(|p| p.len() == 2);
        let masks: Vec<u32> = paths.iter().filter(|p| p.len() > 2).map(|p| p[1..p.len() - 1].iter().fold(0, |m, &v| m | 1 << v)).collect();
        fn best(used: u32, from: usize, masks: &[u32], memo: &mut std::collections::HashMap<(u32, usize), usize>) -> usize {
            if let Some(&v) = memo.get(&(used, from)) {
                return v;
            }
            let mut b = 0;
            for (i, &m) in masks.iter().enumerate().skip(from) {
                if m & used == 0 {
                    b = b.max(1 + best(used | m, i + 1, masks, memo));
                }
            }
            memo.insert((used, from), b);
            b
        }
        usize::from(direct) + best(0, 0, &masks, &mut Default::default())
    }

    fn check_family(d: &Digraph, x: usize, y: usize, max_len: usize, pk: &PathPacking) {
        assert_eq!(pk.paths.len(), pk.lower);
        let mut seen = std::collections::HashSet::new();
        for p in &pk.paths {
            assert_eq!((p[0], *p.last().unwrap()), (x, y));
            assert!(p.len() - 1 <= max_len);
            assert!(p.windows(2).all(|w| d.has_arc(w[0], w[1])));
            for &v in &p[1..p.len() - 1] {
                assert!(seen.insert(v), "vertex {v} reused");
            }
        }
    }

    #[test]
    fn exact_counts_match_brute_force() {
        for seed in 0..12 {
            let d = random_digraph(7, 0.45, seed);
            for (x, y) in [(0, 1), (2, 5), (6, 3)] {
                for len in 1..=4 {
                    let pk = disjoint_paths(&d, x, y, len);
                    check_family(&d, x, y, len, &pk);
                    assert!(pk.exact());
                    assert_eq!(pk.lower, brute_force(&d, x, y, len), "seed {seed} {x}->{y} len {len}");
                }
            }
        }
    }

    #[test]
    fn tournament_counts_match_enumeration() {
        let d = tournament(15, 4);
        for x in 0..15 {
            let y = (x * 7 + 3) % 15;
            if x == y {
                continue;
            }
            let pk = disjoint_paths(&d, x, y, 3);
            check_family(&d, x, y, 3, &pk);
            assert_eq!(pk.lower, brute_force(&d, x, y, 3), "{x}->{y}");
        }
    }

    #[test]
    fn long_paths_are_bounded_by_connectivity() {
        for seed in 0..10 {
            let d = random_digraph(9, 0.3, seed);
            let pk = disjoint_paths(&d, 0, 8, 6);
            check_family(&d, 0, 8, 6, &pk);
            assert!(pk.lower <= pk.upper);
            assert!(pk.lower <= brute_force(&d, 0, 8, 6));
            assert!(brute_force(&d, 0, 8, 8) == pk.upper, "seed {seed}");
        }
    }

    #[test]
    fn complete_digraph_hub() {
        for n in [5usize, 9] {
            let hub = robust_hub(&Digraph::complete(n), 0.5).unwrap();
            assert_eq!(hub.y.len(), n);
            assert_eq!(hub.p, n - 1);
            assert!(hub.exact);
        }
    }

    #[test]
    fn directed_cycle_has_single_paths() {
        let n = 8;
        let hub = robust_hub(&Digraph::cycle(n), 1.0 / n as f64).unwrap();
        assert_eq!(hub.p, 1);
        assert_eq!(hub.y.len(), n);
        assert_eq!(hub.length_bound, n - 1);
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    assert_eq!(disjoint_paths(&Digraph::cycle(n), x, y, n - 1).lower, 1);
                }
            }
        }
    }

    #[test]
    fn deleting_a_path_vertex_costs_at_most_one() {
        let d = Digraph::complete(7);
        let pk = disjoint_paths(&d, 0, 1, 4);
        for p in pk.paths.iter().filter(|p| p.len() > 2) {
            let after = disjoint_paths(&d.without_vertex(p[1]), 0, 1, 4);
            assert_eq!(after.lower + 1, pk.lower);
        }
        for seed in 0..10 {
            let d = random_digraph(8, 0.5, seed);
            let pk = disjoint_paths(&d, 0, 7, 4);
            for p in pk.paths.iter().filter(|p| p.len() > 2) {
                let after = disjoint_paths(&d.without_vertex(p[1]), 0, 7, 4).lower;
                assert!(after + 1 >= pk.lower && after <= pk.lower, "seed {seed}");
            }
        }
    }

    #[test]
    fn hub_preconditions() {
        assert!(robust_hub(&Digraph::cycle(6), 0.5).is_err());
        assert!(robust_hub(&Digraph::complete(4), 0.0).is_err());
    }
}
