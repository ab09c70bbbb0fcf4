//! Bowties (v, C₁, W₁, C₂, W₂): two U-set apparatuses sharing a centre.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::reach::reachable;
use super::uset::{expand_from, find_violation, USet};
use crate::error::{assertion, input, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bowtie {
    pub v: Vertex,
    pub c1: BTreeSet<Colour>,
    pub w1: BTreeSet<Vertex>,
    pub c2: BTreeSet<Colour>,
    pub w2: BTreeSet<Vertex>,
}

impl Bowtie {
    /// φ(B) = C₁ ∪ C₂.
    pub fn colours(&self) -> BTreeSet<Colour> {
        self.c1.union(&self.c2).copied().collect()
    }

    /// W(B) = {v} ∪ W₁ ∪ W₂.
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        let mut out: BTreeSet<Vertex> = self.w1.union(&self.w2).copied().collect();
        out.insert(self.v);
        out
    }

    /// (v, C₂, W₂, C₁, W₁).
    pub fn swapped(&self) -> Self {
        Bowtie { v: self.v, c1: self.c2.clone(), w1: self.w2.clone(), c2: self.c1.clone(), w2: self.w1.clone() }
    }

    /// (C_i, W_i) for i ∈ {1, 2}.
    pub fn side(&self, i: usize) -> (&BTreeSet<Colour>, &BTreeSet<Vertex>) {
        if i == 1 {
            (&self.c1, &self.w1)
        } else {
            (&self.c2, &self.w2)
        }
    }

    /// The definitional conditions in `g`.
    pub fn check_shape(&self, g: &EdgeColouredMultigraph) -> std::result::Result<(), String> {
        if !g.contains(self.v) {
            return Err(format!("centre {} is not a vertex", self.v));
        }
        if self.c1.is_empty() || self.c2.is_empty() || !self.c1.is_disjoint(&self.c2) {
            return Err("colour sets must be non-empty and disjoint".into());
        }
        if !self.w1.is_disjoint(&self.w2) || self.w1.contains(&self.v) || self.w2.contains(&self.v) {
            return Err("waypoint sets must be disjoint and avoid the centre".into());
        }
        if let Some(w) = self.w1.iter().chain(&self.w2).find(|&&w| !g.contains(w)) {
            return Err(format!("waypoint {w} is not a vertex"));
        }
        Ok(())
    }
}

/// G \ W_{3−i} − G_{C_{3−i}}.
pub fn side_graph(g: &EdgeColouredMultigraph, b: &Bowtie, i: usize) -> EdgeColouredMultigraph {
    let (c, w) = b.side(3 - i);
    g.deflate(w, c)
}

/// U_i(B|G).
pub fn bowtie_reach(g: &EdgeColouredMultigraph, b: &Bowtie, i: usize) -> Result<BTreeSet<Vertex>> {
    let (c, w) = b.side(i);
    reachable(&side_graph(g, b, i), b.v, c, w)
}

/// Whether U_i(B|G) is g-maximal in G \ W_{3−i} − G_{C_{3−i}} for both i.
pub fn bowtie_is_g_maximal(g: &EdgeColouredMultigraph, b: &Bowtie, gp: usize) -> Result<bool> {
    for i in [1, 2] {
        let h = side_graph(g, b, i);
        let (c, w) = b.side(i);
        let u = reachable(&h, b.v, c, w)?;
        if find_violation(&h, c, &u, gp).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BowtieBuild {
    pub bowtie: Bowtie,
    /// The two expansions: the first in G − G_{c₂}, the second in G \ W₁ − G_{C₁}.
    pub expansions: [USet; 2],
    /// U₁(B|G) and U₂(B|G).
    pub reach: [BTreeSet<Vertex>; 2],
}

/// A g-maximal bowtie at v with c_i ∈ C_i. Requires distinct c₁, c₂ with
/// d_{c_i}(v) ≥ g + 3n/g.
pub fn build_bowtie(g: &EdgeColouredMultigraph, v: Vertex, c1: Colour, c2: Colour, gp: usize) -> Result<BowtieBuild> {
    if c1 == c2 {
        return input("the two colours of a bowtie must differ");
    }
    if gp == 0 {
        return input("g must be positive");
    }
    let n = g.num_vertices();
    for c in [c1, c2] {
        let d = g.degree(v, c);
        if !g.contains(v) || d * gp < gp * gp + 3 * n {
            return input(format!("d_{c}({v}) = {d} is below g + 3n/g = {:.2}", gp as f64 + 3.0 * n as f64 / gp as f64));
        }
    }
    let first = expand_from(&g.remove_colours(&BTreeSet::from([c2])), v, c1, gp)?;
    let second = expand_from(&g.deflate(&first.waypoints, &first.colours), v, c2, gp)?;
    let bowtie = Bowtie { v, c1: first.colours.clone(), w1: first.waypoints.clone(), c2: second.colours.clone(), w2: second.waypoints.clone() };
    if let Err(e) = bowtie.check_shape(g) {
        return assertion(format!("built bowtie is malformed: {e}"));
    }
    let reach = [bowtie_reach(g, &bowtie, 1)?, bowtie_reach(g, &bowtie, 2)?];
    let gn = gp as i64;
    for (i, c) in [c1, c2].into_iter().enumerate() {
        if gn * (reach[i].len() as i64) < gn * (g.degree(v, c) as i64) - 3 * (n as i64) {
            return assertion(format!("|U_{}| = {} is below d_{c}(v) − 3n/g", i + 1, reach[i].len()));
        }
    }
    if gp * bowtie.colours().len() > 6 * n || gp * bowtie.vertices().len() > 6 * n {
        return assertion(format!(
            "|φ(B)| = {}, |W(B)| = {} exceed 6n/g = {:.2}",
            bowtie.colours().len(),
            bowtie.vertices().len(),
            6.0 * n as f64 / gp as f64
        ));
    }
    if !bowtie_is_g_maximal(g, &bowtie, gp)? {
        return assertion(format!("bowtie {bowtie:?} is not g-maximal"));
    }
    Ok(BowtieBuild { bowtie, expansions: [first, second], reach })
}
