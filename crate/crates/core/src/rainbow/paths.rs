//! Rainbow path systems with few paths: start from a rainbow matching and
//! splice pairs of paths through a common fresh neighbour.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::matching::greedy_rainbow_matching;
use super::types::{verify_rainbow_path, RainbowPath};
use crate::error::{assertion, input, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowPathSystem {
    pub paths: Vec<RainbowPath>,
    /// Number of splices performed after the initial matching.
    pub merges: usize,
}

impl RainbowPathSystem {
    /// Which path carries each colour.
    pub fn colour_usage(&self) -> BTreeMap<Colour, usize> {
        self.paths.iter().enumerate().flat_map(|(i, p)| p.colours.iter().map(move |&c| (c, i))).collect()
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.paths.iter().flat_map(|p| p.vertices.iter().copied()).collect()
    }
}

/// Paths are rainbow, pairwise vertex-disjoint, their union is rainbow and
/// uses exactly `colours`.
pub fn verify_path_system(g: &EdgeColouredMultigraph, sys: &RainbowPathSystem, colours: &BTreeSet<Colour>) -> std::result::Result<(), String> {
    let mut seen_v = BTreeSet::new();
    let mut seen_c = BTreeSet::new();
    for p in &sys.paths {
        verify_rainbow_path(g, p)?;
        for &v in &p.vertices {
            if !seen_v.insert(v) {
                return Err(format!("vertex {v} lies on two paths"));
            }
        }
        for &c in &p.colours {
            if !seen_c.insert(c) {
                return Err(format!("colour {c} used twice"));
            }
        }
    }
    if &seen_c != colours {
        return Err(format!("path colours {seen_c:?} differ from {colours:?}"));
    }
    Ok(())
}

/// A rainbow path system covering φ(G) with at most 2n/d paths, where n is
/// the number of vertices present. Requires δ_mon(G) ≥ d ≥ 4|φ(G)|.
pub fn rainbow_path_system(g: &EdgeColouredMultigraph, d: usize) -> Result<RainbowPathSystem> {
    let phi = g.colours();
    let delta = g.degree_profile().delta_mon.unwrap_or(0);
    if !phi.is_empty() && (delta < d || d < 4 * phi.len()) {
        return input(format!("need δ_mon = {delta} ≥ d = {d} ≥ 4|φ| = {}", 4 * phi.len()));
    }
    let matching = greedy_rainbow_matching(g)?;
    let mut sys = RainbowPathSystem { paths: matching.into_iter().map(|(u, v, c)| RainbowPath::single(u, v, c)).collect(), merges: 0 };
    let n = g.num_vertices();
    // |P| > 2n/d
    while sys.paths.len() * d > 2 * n {
        let before = sys.paths.len();
        let Some(sp) = find_splice(g, &sys) else {
            return assertion(format!(
                "no splice found with {before} paths > 2n/d = {:.2} (n = {n}, d = {d}); paths {:?}",
                2.0 * n as f64 / d as f64,
                sys.paths
            ));
        };
        let merged = splice(&sys.paths, &sp);
        sys.paths.remove(sp.b);
        sys.paths.remove(sp.a);
        sys.paths.push(merged);
        sys.merges += 1;
        if sys.paths.len() + 1 != before {
            return assertion("splice did not reduce the number of paths by one");
        }
        if let Err(e) = verify_path_system(g, &sys, &phi) {
            return assertion(format!("splice broke the path system: {e}"));
        }
    }
    Ok(sys)
}

struct Splice {
    a: usize,
    flip_a: bool,
    b: usize,
    flip_b: bool,
    w: Vertex,
}

fn oriented(p: &RainbowPath, flip: bool) -> RainbowPath {
    if flip {
        p.reversed()
    } else {
        p.clone()
    }
}

/// Lowest a < b (each in either orientation) and w ∉ V(P) adjacent to the
/// second vertex of both paths in the colour of that path's first edge.
fn find_splice(g: &EdgeColouredMultigraph, sys: &RainbowPathSystem) -> Option<Splice> {
    let used = sys.vertices();
    let ends: Vec<[BTreeSet<Vertex>; 2]> = sys
        .paths
        .iter()
        .map(|p| {
            [false, true].map(|flip| {
                let q = oriented(p, flip);
                g.nbrs(q.vertices[1], q.colours[0]).iter().copied().filter(|w| !used.contains(w)).collect()
            })
        })
        .collect();
    for a in 0..ends.len() {
        for b in a + 1..ends.len() {
            for flip_a in [false, true] {
                for flip_b in [false, true] {
                    if let Some(&w) = ends[a][usize::from(flip_a)].intersection(&ends[b][usize::from(flip_b)]).next() {
                        return Some(Splice { a, flip_a, b, flip_b, w });
                    }
                }
            }
        }
    }
    None
}

/// v_q^b .. v_2^b w v_2^a .. v_q^a: both first vertices are dropped and w
/// takes over their edges' colours.
fn splice(paths: &[RainbowPath], sp: &Splice) -> RainbowPath {
    let pa = oriented(&paths[sp.a], sp.flip_a);
    let pb = oriented(&paths[sp.b], sp.flip_b).reversed();
    let mut vertices = pb.vertices[..pb.vertices.len() - 1].to_vec();
    let mut colours = pb.colours.clone();
    vertices.push(sp.w);
    vertices.extend_from_slice(&pa.vertices[1..]);
    colours.extend_from_slice(&pa.colours);
    RainbowPath { vertices, colours }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_for;
    use rand::Rng;

    #[test]
    fn single_rainbow_path_is_kept() {
        let g = EdgeColouredMultigraph::new(4, vec![(0, 1, 0), (1, 2, 1), (2, 3, 2)]).unwrap();
        // a bare path has δ_mon = 1, so d = n is refused
        assert!(rainbow_path_system(&g, 4).is_err());
        let g = EdgeColouredMultigraph::new(2, vec![(0, 1, 0)]).unwrap();
        let sys = rainbow_path_system(&g, 1).unwrap_err();
        assert!(matches!(sys, crate::Error::Input(_)));
        let sys = rainbow_path_system(&EdgeColouredMultigraph::new(2, vec![]).unwrap(), 2).unwrap();
        assert!(sys.paths.is_empty());
    }

    #[test]
    fn splice_shape() {
        let paths = vec![RainbowPath { vertices: vec![0, 1, 2], colours: vec![0, 1] }, RainbowPath::single(3, 4, 2)];
        let p = splice(&paths, &Splice { a: 0, flip_a: false, b: 1, flip_b: false, w: 9 });
        assert_eq!(p.vertices, vec![4, 9, 1, 2]);
        assert_eq!(p.colours, vec![2, 0, 1]);
    }

    #[test]
    fn disjoint_monochromatic_cliques() {
        let (r, m) = (3, 13);
        let mut edges = Vec::new();
        for c in 0..r {
            for a in 0..m {
                for b in a + 1..m {
                    edges.push((c * m + a, c * m + b, c));
                }
            }
        }
        let g = EdgeColouredMultigraph::new(r * m, edges).unwrap();
        let sys = rainbow_path_system(&g, m - 1).unwrap();
        assert_eq!(sys.merges, 0);
        verify_path_system(&g, &sys, &g.colours()).unwrap();
    }

    /// Six overlapping dense colours: 6 matching edges exceed 2n/d.
    #[test]
    fn overlapping_colours_splice() {
        let n = 60;
        let mut edges = Vec::new();
        for c in 0..6 {
            for a in 0..n {
                for b in a + 1..n {
                    if (a + b + c) % 3 != 0 {
                        edges.push((a, b, c));
                    }
                }
            }
        }
        let g = EdgeColouredMultigraph::new(n, edges).unwrap();
        let d = g.degree_profile().delta_mon.unwrap();
        let sys = rainbow_path_system(&g, d).unwrap();
        assert!(sys.merges > 0);
        assert!(sys.paths.len() * d <= 2 * n);
        verify_path_system(&g, &sys, &g.colours()).unwrap();
    }

    #[test]
    fn random_instances() {
        let mut rng = rng_for(8, 0);
        let mut ran = 0;
        while ran < 100 {
            let n = rng.gen_range(10..40);
            let r = rng.gen_range(1..=4);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    for c in 0..r {
                        if rng.gen_bool(0.85) {
                            edges.push((a, b, c));
                        }
                    }
                }
            }
            let g = EdgeColouredMultigraph::new(n, edges).unwrap();
            let delta = g.degree_profile().delta_mon.unwrap_or(0);
            let phi = g.colours().len();
            if delta < 4 * phi {
                continue;
            }
            ran += 1;
            let d = rng.gen_range(4 * phi..=delta);
            let sys = rainbow_path_system(&g, d).unwrap();
            assert!(sys.paths.len() * d <= 2 * n);
            verify_path_system(&g, &sys, &g.colours()).unwrap();
        }
    }
}
