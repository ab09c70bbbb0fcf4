//! Greedy rainbow matchings.

use std::collections::BTreeSet;

use crate::error::{assertion, input, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;

/// A rainbow matching with one edge per colour of `g`, built colour by
/// colour in id order. Each step takes the lowest uncovered vertex with a
/// neighbour of the current colour outside the matching, and its lowest such
/// neighbour.
pub fn greedy_rainbow_matching(g: &EdgeColouredMultigraph) -> Result<Vec<(Vertex, Vertex, Colour)>> {
    let colours: Vec<Colour> = g.colours().into_iter().collect();
    let need = (2 * colours.len()).saturating_sub(1);
    let delta = g.degree_profile().delta_mon.unwrap_or(0);
    if !colours.is_empty() && delta < need {
        return input(format!("δ_mon = {delta} is below 2|φ| − 1 = {need}"));
    }
    match matching_avoiding(g, &colours, &BTreeSet::new()) {
        Ok(m) => Ok(m),
        Err(c) => assertion(format!("greedy matching stuck at colour {c} although δ_mon = {delta} ≥ {need}")),
    }
}

/// The same greedy rule restricted to `colours` and to vertices outside
/// `avoid`; on failure returns the colour it got stuck on.
pub(crate) fn matching_avoiding(
    g: &EdgeColouredMultigraph,
    colours: &[Colour],
    avoid: &BTreeSet<Vertex>,
) -> std::result::Result<Vec<(Vertex, Vertex, Colour)>, Colour> {
    let mut used = vec![false; g.n()];
    for &v in avoid {
        if v < g.n() {
            used[v] = true;
        }
    }
    let mut out = Vec::with_capacity(colours.len());
    for &c in colours {
        let pick = g.vertices().filter(|&v| !used[v]).find_map(|v| g.nbrs(v, c).iter().find(|&&w| !used[w]).map(|&w| (v, w)));
        let (v, w) = pick.ok_or(c)?;
        used[v] = true;
        used[w] = true;
        out.push((v, w, c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rainbow::{verify_cycle_system, CycleSystem};
    use crate::rng::rng_for;
    use rand::Rng;

    fn check(g: &EdgeColouredMultigraph, m: Vec<(Vertex, Vertex, Colour)>) {
        let sys = CycleSystem { cycles: vec![], degenerate_edges: m };
        verify_cycle_system(g, &sys, &g.colours()).unwrap();
    }

    #[test]
    fn one_edge() {
        let g = EdgeColouredMultigraph::new(2, vec![(0, 1, 3)]).unwrap();
        assert_eq!(greedy_rainbow_matching(&g).unwrap(), vec![(0, 1, 3)]);
    }

    #[test]
    fn perfect_matching_per_colour() {
        // colour c matches 2i with 2i + 1 shifted by c
        let r = 5;
        let n = 4 * r;
        let mut edges = Vec::new();
        for c in 0..r {
            for i in 0..n / 2 {
                edges.push(((2 * i + 2 * c) % n, (2 * i + 2 * c + 1) % n, c));
            }
        }
        let g = EdgeColouredMultigraph::new(n, edges).unwrap();
        // δ_mon = 1 here, so only the greedy core applies
        let m = matching_avoiding(&g, &(0..r).collect::<Vec<_>>(), &BTreeSet::new()).unwrap();
        assert_eq!(m.len(), r);
        check(&g, m);
    }

    #[test]
    fn precondition_is_checked() {
        let g = EdgeColouredMultigraph::new(3, vec![(0, 1, 0), (1, 2, 1)]).unwrap();
        assert!(matches!(greedy_rainbow_matching(&g), Err(crate::Error::Input(_))));
    }

    #[test]
    fn sampled_up_to_forty_vertices() {
        let mut rng = rng_for(3, 0);
        let mut ran = 0;
        while ran < 200 {
            let n = rng.gen_range(4..=40);
            let r = rng.gen_range(1..=4);
            let p = rng.gen_range(0.2..0.9);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    for c in 0..r {
                        if rng.gen_bool(p) {
                            edges.push((a, b, c));
                        }
                    }
                }
            }
            let g = EdgeColouredMultigraph::new(n, edges).unwrap();
            let phi = g.colours().len();
            if g.degree_profile().delta_mon.unwrap_or(0) + 1 < 2 * phi {
                continue;
            }
            ran += 1;
            check(&g, greedy_rainbow_matching(&g).unwrap());
        }
    }
}
