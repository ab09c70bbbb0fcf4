//! Closing a rainbow path into a rainbow cycle through a bowtie.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::bowtie::{side_graph, Bowtie};
use super::partition::family_sets;
use super::reach::rainbow_path_to;
use super::types::{verify_rainbow_cycle, verify_rainbow_path, RainbowCycle, RainbowPath};
use crate::error::{assertion, failure, input, Result};
use crate::hypergraph::Vertex;
use crate::multigraph::EdgeColouredMultigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CloseMode {
    /// Replace both ends by one common neighbour inside U₂.
    SharedEnd,
    /// Reroute both ends to the centre through W₁ and W₂.
    ThroughCentre,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closing {
    pub cycle: RainbowCycle,
    pub mode: CloseMode,
    /// The counting condition that guarantees a closing vertex (or pair).
    pub guaranteed: bool,
    /// ThroughCentre only: whether U₁* = U₂*.
    pub configuration: Option<bool>,
}

/// Closes `p` (at least 3 vertices, interior inside U₂*(B|G)) into a rainbow
/// cycle of `g` avoiding `s`. SharedEnd keeps exactly φ(P); ThroughCentre
/// adds colours of φ(B) only. The two end edges of `p` are replaced, so only
/// the edges between interior vertices need to lie in `g`.
pub fn close_rainbow_path(g: &EdgeColouredMultigraph, b: &Bowtie, p: &RainbowPath, s: &BTreeSet<Vertex>, mode: CloseMode) -> Result<Closing> {
    if p.vertices.len() < 3 {
        return input("closing needs a path with at least 3 vertices");
    }
    if let Err(e) = check_path(g, p) {
        return input(format!("bad path: {e}"));
    }
    if p.vertices.iter().any(|v| s.contains(v)) {
        return input("the forbidden set meets the path");
    }
    if let Err(e) = b.check_shape(g) {
        return input(format!("bad bowtie: {e}"));
    }
    let sets = family_sets(g, std::slice::from_ref(b))?.pop().expect("one bowtie");
    if !p.interior().iter().all(|x| sets.u2_star.contains(x)) {
        return input("the interior of the path is not inside U₂*(B)");
    }
    let mut blocked: BTreeSet<Vertex> = s.clone();
    blocked.extend(p.vertices.iter().copied());
    let l = p.vertices.len();
    let (x2, xl) = (p.vertices[1], p.vertices[l - 2]);
    let (c_first, c_last) = (p.colours[0], p.colours[l - 2]);
    let into = |x: Vertex, c, set: &BTreeSet<Vertex>| -> Vec<Vertex> { g.nbrs(x, c).iter().copied().filter(|y| set.contains(y) && !blocked.contains(y)).collect() };
    match mode {
        CloseMode::SharedEnd => {
            let a = g.nbrs(x2, c_first).iter().filter(|y| sets.u2.contains(y)).count();
            let bb = g.nbrs(xl, c_last).iter().filter(|y| sets.u2.contains(y)).count();
            let guaranteed = a + bb > sets.u2.len() + blocked.len();
            let left: BTreeSet<Vertex> = into(x2, c_first, &sets.u2).into_iter().collect();
            let Some(&x) = into(xl, c_last, &sets.u2).iter().find(|y| left.contains(y)) else {
                let msg = format!("no common c{c_first}/c{c_last} neighbour of {x2} and {xl} in U₂ outside S ∪ V(P)");
                return if guaranteed { assertion(msg) } else { failure("closing", msg) };
            };
            let mut vertices = vec![x];
            vertices.extend_from_slice(&p.vertices[1..l - 1]);
            let cycle = RainbowCycle { vertices, colours: p.colours.clone() };
            finish(g, cycle, s, CloseMode::SharedEnd, guaranteed, None)
        }
        CloseMode::ThroughCentre => {
            let phi_b = b.colours();
            if p.colours.iter().any(|c| phi_b.contains(c)) {
                return input("the path uses a colour of the bowtie");
            }
            if !b.vertices().is_disjoint(&blocked) {
                return input("W(B) meets S ∪ V(P)");
            }
            let ones = into(x2, c_first, &sets.u1);
            let twos = into(xl, c_last, &sets.u2);
            let guaranteed = ones.len() >= 2 && twos.len() >= 2;
            let configuration = Some(sets.u1_star == sets.u2_star);
            let side1 = side_graph(g, b, 1);
            let side2 = side_graph(g, b, 2);
            for &y1 in &ones {
                for &y2 in twos.iter().filter(|&&y| y != y1) {
                    let mut avoid = blocked.clone();
                    avoid.insert(y2);
                    let Some(p1) = leg(&side1, b.v, y1, &b.c1, &b.w1, &avoid) else { continue };
                    avoid.remove(&y2);
                    avoid.extend(p1.vertices.iter().copied().filter(|&x| x != b.v));
                    let Some(p2) = leg(&side2, b.v, y2, &b.c2, &b.w2, &avoid) else { continue };
                    // y1 .. v .. y2 x_{ℓ−1} .. x_2
                    let mut vertices: Vec<Vertex> = p1.vertices.iter().rev().copied().collect();
                    vertices.extend_from_slice(&p2.vertices[1..]);
                    vertices.extend(p.vertices[1..l - 1].iter().rev());
                    let mut colours: Vec<_> = p1.colours.iter().rev().copied().collect();
                    colours.extend_from_slice(&p2.colours);
                    colours.push(c_last);
                    colours.extend(p.colours[1..l - 2].iter().rev());
                    colours.push(c_first);
                    let cycle = RainbowCycle { vertices, colours };
                    return finish(g, cycle, s, CloseMode::ThroughCentre, guaranteed, configuration);
                }
            }
            let msg = format!("no pair y₁ ∈ U₁, y₂ ∈ U₂ closes the path ({} and {} candidates)", ones.len(), twos.len());
            if guaranteed {
                assertion(msg)
            } else {
                failure("closing", msg)
            }
        }
    }
}

/// Distinct vertices and colours, and the interior subpath lies in `g`.
fn check_path(g: &EdgeColouredMultigraph, p: &RainbowPath) -> std::result::Result<(), String> {
    if p.colours.len() + 1 != p.vertices.len() {
        return Err("colour count does not match".into());
    }
    let vs: BTreeSet<_> = p.vertices.iter().collect();
    let cs: BTreeSet<_> = p.colours.iter().collect();
    if vs.len() != p.vertices.len() || cs.len() != p.colours.len() {
        return Err("repeated vertex or colour".into());
    }
    let l = p.vertices.len();
    if l == 3 {
        return if g.contains(p.vertices[1]) { Ok(()) } else { Err(format!("{} is not a vertex", p.vertices[1])) };
    }
    let inner = RainbowPath { vertices: p.vertices[1..l - 1].to_vec(), colours: p.colours[1..l - 2].to_vec() };
    verify_rainbow_path(g, &inner)
}

/// A rainbow path v → y with colours in C and interior in W, or the
/// one-vertex path when y = v.
fn leg(
    g: &EdgeColouredMultigraph,
    v: Vertex,
    y: Vertex,
    c: &BTreeSet<usize>,
    w: &BTreeSet<Vertex>,
    avoid: &BTreeSet<Vertex>,
) -> Option<RainbowPath> {
    if y == v {
        return Some(RainbowPath { vertices: vec![v], colours: vec![] });
    }
    let w: BTreeSet<Vertex> = w.difference(avoid).copied().collect();
    rainbow_path_to(g, v, y, c, &w, &BTreeSet::new())
}

fn finish(g: &EdgeColouredMultigraph, cycle: RainbowCycle, s: &BTreeSet<Vertex>, mode: CloseMode, guaranteed: bool, configuration: Option<bool>) -> Result<Closing> {
    if let Err(e) = verify_rainbow_cycle(g, &cycle) {
        return assertion(format!("closing produced an invalid cycle {cycle:?}: {e}"));
    }
    if cycle.vertices.iter().any(|v| s.contains(v)) {
        return assertion("closing cycle meets the forbidden set");
    }
    Ok(Closing { cycle, mode, guaranteed, configuration })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `r` colours, each a complete graph on `n` vertices.
    fn complete_colours(n: usize, r: usize) -> EdgeColouredMultigraph {
        let mut edges = Vec::new();
        for c in 0..r {
            for a in 0..n {
                for b in a + 1..n {
                    edges.push((a, b, c));
                }
            }
        }
        EdgeColouredMultigraph::new(n, edges).unwrap()
    }

    fn simple_bowtie(v: Vertex, c1: usize, c2: usize) -> Bowtie {
        Bowtie { v, c1: BTreeSet::from([c1]), w1: BTreeSet::new(), c2: BTreeSet::from([c2]), w2: BTreeSet::new() }
    }

    #[test]
    fn shared_end_keeps_colours() {
        let g = complete_colours(10, 5);
        let b = simple_bowtie(0, 0, 1);
        let p = RainbowPath { vertices: vec![3, 4, 5, 6], colours: vec![2, 3, 4] };
        let c = close_rainbow_path(&g, &b, &p, &BTreeSet::from([1, 2]), CloseMode::SharedEnd).unwrap();
        assert_eq!(c.cycle.vertices, vec![0, 4, 5]);
        let got: BTreeSet<_> = c.cycle.colours.iter().copied().collect();
        assert_eq!(got, p.colours.iter().copied().collect());
        assert!(c.guaranteed);
    }

    #[test]
    fn through_centre_stays_in_the_sandwich() {
        let g = complete_colours(10, 5);
        let b = simple_bowtie(0, 0, 1);
        let p = RainbowPath { vertices: vec![3, 4, 5, 6], colours: vec![2, 3, 4] };
        let s = BTreeSet::from([1]);
        let c = close_rainbow_path(&g, &b, &p, &s, CloseMode::ThroughCentre).unwrap();
        let got: BTreeSet<_> = c.cycle.colours.iter().copied().collect();
        let lo: BTreeSet<_> = p.colours.iter().copied().collect();
        assert!(lo.is_subset(&got));
        assert!(got.is_subset(&lo.union(&b.colours()).copied().collect()));
        assert!(c.cycle.vertices.iter().all(|v| !s.contains(v)));
        assert!(c.cycle.vertices.contains(&0));
        assert_eq!(c.configuration, Some(true));
    }

    #[test]
    fn two_vertex_path_refused() {
        let g = complete_colours(6, 3);
        let p = RainbowPath::single(2, 3, 2);
        assert!(matches!(
            close_rainbow_path(&g, &simple_bowtie(0, 0, 1), &p, &BTreeSet::new(), CloseMode::SharedEnd),
            Err(crate::Error::Input(_))
        ));
    }

    #[test]
    fn blocked_everything_is_a_failure() {
        let g = complete_colours(6, 4);
        let p = RainbowPath { vertices: vec![2, 3, 4], colours: vec![2, 3] };
        let s = BTreeSet::from([0, 1, 5]);
        match close_rainbow_path(&g, &simple_bowtie(0, 0, 1), &p, &s, CloseMode::ThroughCentre) {
            Err(crate::Error::Input(_)) => {}
            other => panic!("{other:?}"),
        }
        let s = BTreeSet::from([1, 5]);
        match close_rainbow_path(&g, &simple_bowtie(0, 0, 1), &p, &s, CloseMode::SharedEnd) {
            Ok(c) => assert_eq!(c.cycle.vertices, vec![0, 3]),
            other => panic!("{other:?}"),
        }
        let s = BTreeSet::from([0, 1, 5]);
        assert!(matches!(
            close_rainbow_path(&g, &simple_bowtie(0, 0, 1), &p, &s, CloseMode::SharedEnd),
            Err(crate::Error::Failure { .. })
        ));
    }
}
