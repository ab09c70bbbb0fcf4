//! (d, g)-partitions: bowtie families whose U₂* shadows cover the vertices
//! of the deflated graph that see two colours.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::bowtie::{build_bowtie, side_graph, Bowtie};
use super::reach::reachable;
use super::uset::find_violation;
use crate::error::{assertion, failure, input, Error, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DGPartition {
    pub bowties: Vec<Bowtie>,
    /// Lower bound on every |U_i| (P1).
    pub d: usize,
    pub g: usize,
    /// P6 holds as well as P1–P5.
    pub full: bool,
}

/// U₁, U₂ and their shadows for one bowtie of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BowtieSets {
    pub u1: BTreeSet<Vertex>,
    pub u2: BTreeSet<Vertex>,
    pub u1_star: BTreeSet<Vertex>,
    pub u2_star: BTreeSet<Vertex>,
}

impl BowtieSets {
    pub fn u(&self, i: usize) -> &BTreeSet<Vertex> {
        if i == 1 {
            &self.u1
        } else {
            &self.u2
        }
    }
}

/// Each property with the first reason it fails, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub sets: Vec<BowtieSets>,
    pub p1: Option<String>,
    pub p2: Option<String>,
    pub p3: Option<String>,
    pub p4: Option<String>,
    pub p5: Option<String>,
    pub p6: Option<String>,
    /// |𝓑|·d ≤ n.
    pub fact_bound: bool,
    /// V*(G − 𝓑) minus the union of the U₂* sets.
    pub uncovered: BTreeSet<Vertex>,
}

impl PartitionReport {
    pub fn weak(&self) -> bool {
        [&self.p1, &self.p2, &self.p3, &self.p4, &self.p5].iter().all(|p| p.is_none())
    }

    pub fn full(&self) -> bool {
        self.weak() && self.p6.is_none()
    }

    pub fn failures(&self) -> Vec<String> {
        [("P1", &self.p1), ("P2", &self.p2), ("P3", &self.p3), ("P4", &self.p4), ("P5", &self.p5), ("P6", &self.p6)]
            .iter()
            .filter_map(|(name, p)| p.as_ref().map(|m| format!("{name}: {m}")))
            .collect()
    }
}

/// G − 𝓑 for the bowties of `family` other than `except`.
pub fn family_minus(g: &EdgeColouredMultigraph, family: &[Bowtie], except: Option<usize>) -> EdgeColouredMultigraph {
    let mut vs = BTreeSet::new();
    let mut cs = BTreeSet::new();
    for (j, b) in family.iter().enumerate() {
        if Some(j) != except {
            vs.extend(b.vertices());
            cs.extend(b.colours());
        }
    }
    g.deflate(&vs, &cs)
}

/// φ(𝓑).
pub fn family_colours(family: &[Bowtie]) -> BTreeSet<Colour> {
    family.iter().flat_map(Bowtie::colours).collect()
}

/// W(𝓑).
pub fn family_vertices(family: &[Bowtie]) -> BTreeSet<Vertex> {
    family.iter().flat_map(Bowtie::vertices).collect()
}

/// U_i(B_j|G, 𝓑) and U_i*(B_j|G, 𝓑) for every bowtie.
pub fn family_sets(g: &EdgeColouredMultigraph, family: &[Bowtie]) -> Result<Vec<BowtieSets>> {
    let stripped = g.remove_colours(&family_colours(family));
    let rest = family_minus(g, family, None);
    let vstar: BTreeSet<Vertex> = rest.vstar().into_iter().collect();
    let mut out = Vec::with_capacity(family.len());
    for j in 0..family.len() {
        let gj = family_minus(g, family, Some(j));
        let b = &family[j];
        let mut us = Vec::with_capacity(2);
        for i in [1, 2] {
            let (c, w) = b.side(i);
            us.push(reachable(&side_graph(&gj, b, i), b.v, c, w)?);
        }
        let star = |u: &BTreeSet<Vertex>| -> BTreeSet<Vertex> {
            let mut s = u.clone();
            for &x in u {
                for nb in stripped.colour_nbrs(x).values() {
                    s.extend(nb.iter().copied());
                }
            }
            s.retain(|x| vstar.contains(x));
            s
        };
        let u1_star = star(&us[0]);
        let u2_star = star(&us[1]);
        let u2 = us.pop().expect("two sides");
        let u1 = us.pop().expect("two sides");
        out.push(BowtieSets { u1, u2, u1_star, u2_star });
    }
    Ok(out)
}

/// Checks P1–P6 for `family` in `g` with threshold `d` and parameter `gp`.
pub fn check_dg_partition(g: &EdgeColouredMultigraph, family: &[Bowtie], d: usize, gp: usize) -> Result<PartitionReport> {
    let sets = family_sets(g, family)?;
    let mut p1 = None;
    'p1: for (j, s) in sets.iter().enumerate() {
        for i in [1, 2] {
            if s.u(i).len() < d {
                p1 = Some(format!("|U_{i}(B_{j})| = {} < {d}", s.u(i).len()));
                break 'p1;
            }
        }
    }
    let mut p2 = None;
    let mut p3 = None;
    let mut seen_w = BTreeSet::new();
    let mut seen_c = BTreeSet::new();
    for (j, b) in family.iter().enumerate() {
        if let Err(e) = b.check_shape(g) {
            p2.get_or_insert(format!("B_{j}: {e}"));
        }
        for w in b.vertices() {
            if !g.contains(w) || !g.in_vstar(w) {
                p2.get_or_insert(format!("W(B_{j}) contains {w} outside V*(G)"));
            }
            if !seen_w.insert(w) {
                p2.get_or_insert(format!("vertex {w} lies in two bowties"));
            }
        }
        for c in b.colours() {
            if !seen_c.insert(c) {
                p3.get_or_insert(format!("colour {c} lies in two bowties"));
            }
        }
    }
    let mut p4 = None;
    'p4: for (j, b) in family.iter().enumerate() {
        let gj = family_minus(g, family, Some(j));
        for i in [1, 2] {
            let h = side_graph(&gj, b, i);
            if let Some(v) = find_violation(&h, b.side(i).0, sets[j].u(i), gp) {
                p4 = Some(format!("U_{i}(B_{j}) is not g-maximal: {v:?}"));
                break 'p4;
            }
        }
    }
    let mut p5 = None;
    let mut union = BTreeSet::new();
    for (j, s) in sets.iter().enumerate() {
        if let Some(x) = s.u2_star.iter().find(|x| union.contains(*x)) {
            p5.get_or_insert(format!("vertex {x} lies in U₂*(B_{j}) and an earlier U₂*"));
        }
        union.extend(s.u2_star.iter().copied());
    }
    let vstar: BTreeSet<Vertex> = family_minus(g, family, None).vstar().into_iter().collect();
    let uncovered: BTreeSet<Vertex> = vstar.difference(&union).copied().collect();
    let p6 = if uncovered.is_empty() && p5.is_none() {
        None
    } else if let Some(x) = uncovered.first() {
        Some(format!("{} vertices of V*(G − 𝓑) are uncovered, first {x}", uncovered.len()))
    } else {
        Some("the U₂* sets overlap".into())
    };
    let fact_bound = family.len() * d <= g.num_vertices();
    Ok(PartitionReport { sets, p1, p2, p3, p4, p5, p6, fact_bound, uncovered })
}

/// Extends a weak (⌈d/2⌉, g)-partition `seed` of `g` to a full one. All
/// hypotheses are checked: d ≥ 4g, g² ≥ 3n, g²d ≥ 12n², δ*_mon(G) ≥ d,
/// the seed is weak with |φ(𝓑₀)|, |W(𝓑₀)| ≤ 6n|𝓑₀|/g. Under them every
/// step is guaranteed, so a failing step is an assertion.
pub fn find_dg_partition(g: &EdgeColouredMultigraph, d: usize, gp: usize, seed: &[Bowtie]) -> Result<DGPartition> {
    let n = g.num_vertices();
    let (d_, g_, n_) = (d as u128, gp as u128, n as u128);
    if gp == 0 || d_ < 4 * g_ || g_ * g_ < 3 * n_ || g_ * g_ * d_ < 12 * n_ * n_ {
        return input(format!("need d ≥ 4g, g ≥ 3n/g and g ≥ 12n²/(gd); got n = {n}, d = {d}, g = {gp}"));
    }
    let ds = g.degree_profile().delta_star_mon;
    if ds.is_some_and(|x| x < d) {
        return input(format!("δ*_mon = {} is below d = {d}", ds.unwrap_or(0)));
    }
    let half = d.div_ceil(2);
    let rep = check_dg_partition(g, seed, half, gp)?;
    if !rep.weak() {
        return input(format!("seed is not a weak partition: {}", rep.failures().join("; ")));
    }
    let t = seed.len();
    if gp * family_colours(seed).len() > 6 * n * t || gp * family_vertices(seed).len() > 6 * n * t {
        return input("seed family exceeds 6n|𝓑₀|/g colours or vertices");
    }
    match extend(g, half, gp, seed.to_vec()) {
        Ok((bowties, _)) => Ok(DGPartition { bowties, d: half, g: gp, full: true }),
        Err(Error::Failure { step, detail }) => assertion(format!("{step} failed under the partition hypotheses: {detail}")),
        Err(e) => Err(e),
    }
}

/// The extension loop without hypotheses: a step that lacks what it needs
/// returns a `Failure` naming it.
pub(crate) fn extend(g: &EdgeColouredMultigraph, d: usize, gp: usize, mut family: Vec<Bowtie>) -> Result<(Vec<Bowtie>, PartitionReport)> {
    loop {
        let rep = check_dg_partition(g, &family, d, gp)?;
        if !rep.weak() {
            return failure("partition", format!("family of {} is no longer weak: {}", family.len(), rep.failures().join("; ")));
        }
        let Some(&v) = rep.uncovered.first() else {
            return Ok((family, rep));
        };
        if family.len() > g.n() {
            return assertion("more bowties than vertices");
        }
        let rest = family_minus(g, &family, None);
        let cs: Vec<Colour> = rest.colours_at(v).take(2).collect();
        match build_bowtie(&rest, v, cs[0], cs[1], gp) {
            Ok(b) => family.push(b.bowtie),
            Err(Error::Input(m)) => return failure("partition", format!("no bowtie at uncovered vertex {v}: {m}")),
            Err(e) => return Err(e),
        }
    }
}
