//! U-sets: everything reachable from a root by rainbow paths with colours in
//! C and interior in W, grown until g-maximal.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::reach::reachable;
use super::types::RainbowPath;
use crate::error::{assertion, input, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;
use crate::rng::{rng_for, streams};

/// A configuration showing that U is not g-maximal. In every case `c` is a
/// colour outside C with at least g neighbours outside U at the last vertex
/// named; the other colours are the path colours, all distinct and outside C.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// u ∈ U with d_c(u, Ū) ≥ g.
    Direct { u: Vertex, c: Colour },
    /// u ∈ U, φ(uw) = c1 and d_c(w, Ū) ≥ g.
    OneStep { u: Vertex, w: Vertex, c1: Colour, c: Colour },
    /// u ∈ U, φ(uw1) = c1, φ(w1w2) = c2 and d_c(w2, Ū) ≥ g.
    TwoStep { u: Vertex, w1: Vertex, w2: Vertex, c1: Colour, c2: Colour, c: Colour },
}

/// One expansion step and the size of U before and after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionStep {
    pub violation: Violation,
    pub before: usize,
    pub after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct USet {
    pub v: Vertex,
    pub colours: BTreeSet<Colour>,
    pub waypoints: BTreeSet<Vertex>,
    /// U_G(v, C, W); contains v.
    pub reach: BTreeSet<Vertex>,
    pub g: usize,
    pub steps: Vec<ExpansionStep>,
}

impl USet {
    /// U for the given root, colours and waypoints in `graph`.
    pub fn compute(graph: &EdgeColouredMultigraph, v: Vertex, colours: BTreeSet<Colour>, waypoints: BTreeSet<Vertex>, g: usize) -> Result<Self> {
        let reach = reachable(graph, v, &colours, &waypoints)?;
        Ok(USet { v, colours, waypoints, reach, g, steps: Vec::new() })
    }

    /// g·|C| ≤ 3|U| and g·|W| ≤ 3|U|.
    pub fn size_bounds_hold(&self) -> bool {
        let u = 3 * self.reach.len();
        self.g * self.colours.len() <= u && self.g * self.waypoints.len() <= u
    }
}

/// Colours outside C with at least g neighbours outside U, per vertex.
fn heavy_colours(graph: &EdgeColouredMultigraph, colours: &BTreeSet<Colour>, reach: &BTreeSet<Vertex>, g: usize) -> Vec<Vec<Colour>> {
    (0..graph.n())
        .map(|x| {
            graph
                .colour_nbrs(x)
                .iter()
                .filter(|(c, nb)| !colours.contains(c) && nb.iter().filter(|w| !reach.contains(w)).count() >= g)
                .map(|(&c, _)| c)
                .collect()
        })
        .collect()
}

/// The lowest configuration violating g-maximality of `reach` for colour set
/// `colours`, checking the three shapes in order. Each shape ranges over all
/// vertices of the graph, so `None` means U is g-maximal.
pub fn find_violation(graph: &EdgeColouredMultigraph, colours: &BTreeSet<Colour>, reach: &BTreeSet<Vertex>, g: usize) -> Option<Violation> {
    let heavy = heavy_colours(graph, colours, reach, g);
    for &u in reach {
        if let Some(&c) = heavy[u].first() {
            return Some(Violation::Direct { u, c });
        }
    }
    let fresh = |x: Vertex| graph.colour_nbrs(x).iter().filter(|(c, _)| !colours.contains(c));
    for &u in reach {
        for (&c1, nb) in fresh(u) {
            for &w in nb {
                if let Some(&c) = heavy[w].iter().find(|&&c| c != c1) {
                    return Some(Violation::OneStep { u, w, c1, c });
                }
            }
        }
    }
    let hot: Vec<bool> = heavy.iter().map(|h| !h.is_empty()).collect();
    if !hot.iter().any(|&h| h) {
        return None;
    }
    for &u in reach {
        for (&c1, nb) in fresh(u) {
            for &w1 in nb {
                for (&c2, nb2) in fresh(w1) {
                    if c2 == c1 {
                        continue;
                    }
                    for &w2 in nb2 {
                        if !hot[w2] {
                            continue;
                        }
                        if let Some(&c) = heavy[w2].iter().find(|&&c| c != c1 && c != c2) {
                            return Some(Violation::TwoStep { u, w1, w2, c1, c2, c });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Grows (C, W) from ({c}, ∅) until U_G(v, C, W) is g-maximal. Requires
/// v ∈ V*(G), c ∈ φ_G(v) and g ≥ 1.
pub fn expand_uset(graph: &EdgeColouredMultigraph, v: Vertex, c: Colour, g: usize) -> Result<USet> {
    if !graph.contains(v) || !graph.in_vstar(v) {
        return input(format!("vertex {v} does not see two colours"));
    }
    expand_from(graph, v, c, g)
}

/// [`expand_uset`] without the V* requirement on the root.
pub(crate) fn expand_from(graph: &EdgeColouredMultigraph, v: Vertex, c: Colour, g: usize) -> Result<USet> {
    if g == 0 {
        return input("g must be positive");
    }
    if !graph.contains(v) || graph.degree(v, c) == 0 {
        return input(format!("colour {c} does not appear at vertex {v}"));
    }
    let mut u = USet::compute(graph, v, BTreeSet::from([c]), BTreeSet::new(), g)?;
    while let Some(viol) = find_violation(graph, &u.colours, &u.reach, g) {
        let before = u.reach.len();
        let (cols, verts): (Vec<Colour>, Vec<Vertex>) = match viol {
            Violation::Direct { u, c } => (vec![c], vec![u]),
            Violation::OneStep { u, w, c1, c } => (vec![c1, c], vec![u, w]),
            Violation::TwoStep { u, w1, w2, c1, c2, c } => (vec![c1, c2, c], vec![u, w1, w2]),
        };
        u.colours.extend(cols);
        u.waypoints.extend(verts.into_iter().filter(|&x| x != v));
        u.reach = reachable(graph, v, &u.colours, &u.waypoints)?;
        let after = u.reach.len();
        if after < before + g {
            return assertion(format!("expansion by {viol:?} grew U from {before} to {after}, less than g = {g}"));
        }
        u.steps.push(ExpansionStep { violation: viol, before, after });
    }
    Ok(u)
}

/// Outcome of [`check_g_maximal`]; `None` fields mean no counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GMaxReport {
    /// The stored U equals a fresh reachability computation.
    pub reach_matches: bool,
    /// W ⊆ V*(G) ∩ U and v ∉ W.
    pub waypoints_ok: bool,
    pub violation: Option<Violation>,
    pub size_bounds: bool,
    /// δ*_mon(G) > g, under which the two consequences below must hold.
    pub consequences_apply: bool,
    /// x ∈ N_{G'}[U] ∩ V*(G') and c ∈ φ(G') with d_c(x, Ū) ≥ g, G' = G − G_C.
    pub degree_escape: Option<(Vertex, Colour, usize)>,
    pub sampled_paths: usize,
    /// Sampled paths in G' whose interior meets U* = N_{G'}[U].
    pub paths_touching: usize,
    /// A rainbow path in G' whose interior meets U* without lying inside it.
    pub path_escape: Option<RainbowPath>,
}

impl GMaxReport {
    pub fn maximal(&self) -> bool {
        self.reach_matches && self.violation.is_none()
    }

    pub fn all_hold(&self) -> bool {
        self.maximal()
            && self.waypoints_ok
            && self.size_bounds
            && (!self.consequences_apply || (self.degree_escape.is_none() && self.path_escape.is_none()))
    }
}

/// N_{G − G_C}[U]: U together with its neighbours along colours outside C.
pub fn closed_shadow(graph: &EdgeColouredMultigraph, colours: &BTreeSet<Colour>, reach: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let mut out = reach.clone();
    for &u in reach {
        for (c, nb) in graph.colour_nbrs(u) {
            if !colours.contains(c) {
                out.extend(nb.iter().copied());
            }
        }
    }
    out
}

/// Exhaustive g-maximality check plus the two consequences of maximality:
/// the degree bound on the shadow and, on `samples` random rainbow paths of
/// G − G_C, that an interior meeting the shadow stays inside it.
pub fn check_g_maximal(graph: &EdgeColouredMultigraph, u: &USet, samples: usize, seed: u64) -> Result<GMaxReport> {
    let fresh = reachable(graph, u.v, &u.colours, &u.waypoints)?;
    let reach_matches = fresh == u.reach;
    let waypoints_ok = !u.waypoints.contains(&u.v) && u.waypoints.iter().all(|&w| graph.contains(w) && graph.in_vstar(w) && fresh.contains(&w));
    let violation = find_violation(graph, &u.colours, &fresh, u.g);
    let consequences_apply = graph.degree_profile().delta_star_mon.is_some_and(|d| d > u.g);
    let sub = graph.remove_colours(&u.colours);
    let shadow = closed_shadow(graph, &u.colours, &fresh);
    let mut degree_escape = None;
    'outer: for &x in &shadow {
        if !sub.contains(x) || !sub.in_vstar(x) {
            continue;
        }
        for (&c, nb) in sub.colour_nbrs(x) {
            let out = nb.iter().filter(|w| !fresh.contains(w)).count();
            if out >= u.g {
                degree_escape = Some((x, c, out));
                break 'outer;
            }
        }
    }
    let mut rng = rng_for(seed, streams::PATH_SAMPLES);
    let starts: Vec<Vertex> = sub.vertices().collect();
    let near: Vec<Vertex> = shadow.iter().copied().filter(|&x| sub.contains(x)).collect();
    let mut paths_touching = 0;
    let mut path_escape = None;
    for _ in 0..samples {
        let pool = if !near.is_empty() && rng.gen_bool(0.5) { &near } else { &starts };
        let Some(&s) = pool.choose(&mut rng) else { break };
        let len = rng.gen_range(3..=8);
        let p = random_rainbow_path(&sub, s, len, &mut rng);
        if p.vertices.len() < 3 {
            continue;
        }
        let int = p.interior();
        if int.iter().any(|x| shadow.contains(x)) {
            paths_touching += 1;
            if path_escape.is_none() && !int.iter().all(|x| shadow.contains(x)) {
                path_escape = Some(p);
            }
        }
    }
    Ok(GMaxReport {
        reach_matches,
        waypoints_ok,
        violation,
        size_bounds: u.size_bounds_hold(),
        consequences_apply,
        degree_escape,
        sampled_paths: samples,
        paths_touching,
        path_escape,
    })
}

/// A random rainbow path from `s` with up to `len` vertices, stopping early
/// when stuck.
pub(crate) fn random_rainbow_path(graph: &EdgeColouredMultigraph, s: Vertex, len: usize, rng: &mut impl Rng) -> RainbowPath {
    let mut p = RainbowPath { vertices: vec![s], colours: Vec::new() };
    while p.vertices.len() < len {
        let x = *p.vertices.last().expect("non-empty");
        let options: Vec<(Colour, Vertex)> = graph
            .colour_nbrs(x)
            .iter()
            .filter(|(c, _)| !p.colours.contains(c))
            .flat_map(|(&c, nb)| nb.iter().filter(|w| !p.vertices.contains(w)).map(move |&w| (c, w)))
            .collect();
        let Some(&(c, w)) = options.choose(rng) else { break };
        p.vertices.push(w);
        p.colours.push(c);
    }
    p
}
