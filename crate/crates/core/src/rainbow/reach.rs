//! U_G(v, C, W): vertices reachable from v by a rainbow path with colours
//! in C and interior in W.

use std::collections::{BTreeMap, BTreeSet};

use super::types::RainbowPath;
use crate::error::{Error, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;

/// Cap on (vertex, colour-mask) states explored by one reachability query.
pub const REACH_STATE_LIMIT: usize = 2_000_000;

/// The reachable set, with `v` itself included (the empty path). A rainbow
/// walk whose inner vertices lie in W ∪ {v} shortcuts to a rainbow path from
/// v with interior in W, so the search runs over walks and keeps, per vertex,
/// only colour masks not dominated by a smaller one already seen.
pub fn reachable(g: &EdgeColouredMultigraph, v: Vertex, colours: &BTreeSet<Colour>, waypoints: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
    let mut out = BTreeSet::new();
    if !g.contains(v) {
        return Ok(out);
    }
    if colours.len() > 128 {
        return Err(Error::SizeGuard(format!("{} colours exceed the 128-colour reachability limit", colours.len())));
    }
    let bit: BTreeMap<Colour, u32> = colours.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    out.insert(v);
    let mut seen: BTreeMap<Vertex, Vec<u128>> = BTreeMap::new();
    let mut stack = vec![(v, 0u128)];
    seen.insert(v, vec![0]);
    let mut states = 0usize;
    while let Some((x, mask)) = stack.pop() {
        states += 1;
        if states > REACH_STATE_LIMIT {
            return Err(Error::SizeGuard(format!("reachability from {v} explored over {REACH_STATE_LIMIT} states")));
        }
        for (&c, nb) in g.colour_nbrs(x) {
            let Some(&b) = bit.get(&c) else { continue };
            if mask >> b & 1 == 1 {
                continue;
            }
            let next = mask | 1 << b;
            for &y in nb {
                out.insert(y);
                if y != v && !waypoints.contains(&y) {
                    continue;
                }
                let masks = seen.entry(y).or_default();
                if masks.iter().any(|&m| m & !next == 0) {
                    continue;
                }
                masks.retain(|&m| next & !m != 0);
                masks.push(next);
                stack.push((y, next));
            }
        }
    }
    Ok(out)
}

/// A rainbow path from `v` to `target` with colours in C, interior in W, and
/// no vertex in `avoid` (the endpoints included). Lowest ids first.
pub fn rainbow_path_to(
    g: &EdgeColouredMultigraph,
    v: Vertex,
    target: Vertex,
    colours: &BTreeSet<Colour>,
    waypoints: &BTreeSet<Vertex>,
    avoid: &BTreeSet<Vertex>,
) -> Option<RainbowPath> {
    if v == target || !g.contains(v) || !g.contains(target) || avoid.contains(&v) || avoid.contains(&target) {
        return None;
    }
    let mut path = vec![v];
    let mut cols = Vec::new();
    let mut budget = REACH_STATE_LIMIT;
    if dfs(g, target, colours, waypoints, avoid, &mut path, &mut cols, &mut budget) {
        Some(RainbowPath { vertices: path, colours: cols })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &EdgeColouredMultigraph,
    target: Vertex,
    colours: &BTreeSet<Colour>,
    waypoints: &BTreeSet<Vertex>,
    avoid: &BTreeSet<Vertex>,
    path: &mut Vec<Vertex>,
    cols: &mut Vec<Colour>,
    budget: &mut usize,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let x = *path.last().expect("non-empty path");
    for (&c, nb) in g.colour_nbrs(x) {
        if !colours.contains(&c) || cols.contains(&c) {
            continue;
        }
        if nb.binary_search(&target).is_ok() {
            path.push(target);
            cols.push(c);
            return true;
        }
    }
    for (&c, nb) in g.colour_nbrs(x) {
        if !colours.contains(&c) || cols.contains(&c) {
            continue;
        }
        for &y in nb {
            if !waypoints.contains(&y) || avoid.contains(&y) || path.contains(&y) {
                continue;
            }
            path.push(y);
            cols.push(c);
            if dfs(g, target, colours, waypoints, avoid, path, cols, budget) {
                return true;
            }
            path.pop();
            cols.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rainbow::verify_rainbow_path;
    use crate::rng::rng_for;
    use rand::Rng;

    /// Definition-level oracle: enumerate simple rainbow paths.
    fn brute(g: &EdgeColouredMultigraph, v: Vertex, colours: &BTreeSet<Colour>, w: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::from([v]);
        for t in g.vertices() {
            if t != v && rainbow_path_to(g, v, t, colours, w, &BTreeSet::new()).is_some() {
                out.insert(t);
            }
        }
        out
    }

    #[test]
    fn star_reach_is_neighbourhood() {
        let g = EdgeColouredMultigraph::new(5, vec![(0, 1, 0), (0, 2, 0), (0, 3, 1), (3, 4, 0)]).unwrap();
        let u = reachable(&g, 0, &BTreeSet::from([0]), &BTreeSet::new()).unwrap();
        assert_eq!(u, BTreeSet::from([0, 1, 2]));
        // through 3 needs colour 1 then colour 0
        let u = reachable(&g, 0, &BTreeSet::from([0, 1]), &BTreeSet::from([3])).unwrap();
        assert_eq!(u, BTreeSet::from([0, 1, 2, 3, 4]));
    }

    #[test]
    fn colours_may_not_repeat() {
        let g = EdgeColouredMultigraph::new(3, vec![(0, 1, 0), (1, 2, 0)]).unwrap();
        let u = reachable(&g, 0, &BTreeSet::from([0]), &BTreeSet::from([1])).unwrap();
        assert_eq!(u, BTreeSet::from([0, 1]));
    }

    #[test]
    fn matches_path_enumeration() {
        let mut rng = rng_for(17, 0);
        for _ in 0..60 {
            let n = 8;
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    for c in 0..4 {
                        if rng.gen_bool(0.12) {
                            edges.push((a, b, c));
                        }
                    }
                }
            }
            let g = EdgeColouredMultigraph::new(n, edges).unwrap();
            let colours: BTreeSet<Colour> = (0..4).filter(|_| rng.gen_bool(0.7)).collect();
            let w: BTreeSet<Vertex> = (1..n).filter(|_| rng.gen_bool(0.4)).collect();
            let got = reachable(&g, 0, &colours, &w).unwrap();
            assert_eq!(got, brute(&g, 0, &colours, &w));
            for &t in &got {
                if let Some(p) = rainbow_path_to(&g, 0, t, &colours, &w, &BTreeSet::new()) {
                    verify_rainbow_path(&g, &p).unwrap();
                    assert!(p.interior().iter().all(|x| w.contains(x)));
                }
            }
        }
    }
}
