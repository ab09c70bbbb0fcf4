//! Edge-coloured multigraphs and their degree quantities.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::hypergraph::{Colour, Vertex};

/// A multigraph on a vertex id space `0..n`, some ids possibly absent.
/// Parallel edges are distinct records; a colour class is a simple graph
/// view (neighbourhoods are sets).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MultigraphRepr", try_from = "MultigraphRepr")]
pub struct EdgeColouredMultigraph {
    present: Vec<bool>,
    edges: Vec<(Vertex, Vertex, Colour)>,
    nbrs: Vec<BTreeMap<Colour, Vec<Vertex>>>,
}

impl EdgeColouredMultigraph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex, Colour)>) -> Result<Self> {
        Self::with_vertices(vec![true; n], edges)
    }

    pub fn with_vertices(present: Vec<bool>, edges: Vec<(Vertex, Vertex, Colour)>) -> Result<Self> {
        let n = present.len();
        for &(u, v, c) in &edges {
            if u == v {
                return input(format!("loop at vertex {u} (colour {c})"));
            }
            if u >= n || v >= n || !present[u] || !present[v] {
                return input(format!("edge ({u}, {v}) uses a vertex outside the graph"));
            }
        }
        let mut nbrs: Vec<BTreeMap<Colour, Vec<Vertex>>> = vec![BTreeMap::new(); n];
        for &(u, v, c) in &edges {
            nbrs[u].entry(c).or_default().push(v);
            nbrs[v].entry(c).or_default().push(u);
        }
        for map in &mut nbrs {
            for list in map.values_mut() {
                list.sort_unstable();
                list.dedup();
            }
        }
        Ok(EdgeColouredMultigraph { present, edges, nbrs })
    }

    /// Size of the vertex id space.
    pub fn n(&self) -> usize {
        self.present.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.present.len() && self.present[v]
    }

    pub fn present(&self) -> &[bool] {
        &self.present
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).filter(|&v| self.present[v])
    }

    pub fn edges(&self) -> &[(Vertex, Vertex, Colour)] {
        &self.edges
    }

    /// φ(G): colours carried by at least one edge.
    pub fn colours(&self) -> BTreeSet<Colour> {
        self.edges.iter().map(|e| e.2).collect()
    }

    /// φ_G(v): colours of edges at `v`.
    pub fn colours_at(&self, v: Vertex) -> impl Iterator<Item = Colour> + '_ {
        self.nbrs[v].keys().copied()
    }

    pub fn num_colours_at(&self, v: Vertex) -> usize {
        self.nbrs[v].len()
    }

    pub fn in_vstar(&self, v: Vertex) -> bool {
        self.nbrs[v].len() >= 2
    }

    /// V*(G): vertices seeing at least two colours.
    pub fn vstar(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.in_vstar(v)).collect()
    }

    /// N_c(v), sorted.
    pub fn nbrs(&self, v: Vertex, c: Colour) -> &[Vertex] {
        self.nbrs[v].get(&c).map(|l| l.as_slice()).unwrap_or(&[])
    }

    pub fn degree(&self, v: Vertex, c: Colour) -> usize {
        self.nbrs(v, c).len()
    }

    /// Per-colour neighbourhoods of `v`.
    pub fn colour_nbrs(&self, v: Vertex) -> &BTreeMap<Colour, Vec<Vertex>> {
        &self.nbrs[v]
    }

    /// d_c(v, S) for the set given by its indicator.
    pub fn degree_into(&self, v: Vertex, c: Colour, set: &[bool]) -> usize {
        self.nbrs(v, c).iter().filter(|&&u| set[u]).count()
    }

    /// Colours of the (parallel) edges joining `u` and `w`.
    pub fn colours_between(&self, u: Vertex, w: Vertex) -> Vec<Colour> {
        self.nbrs[u].iter().filter(|(_, l)| l.binary_search(&w).is_ok()).map(|(&c, _)| c).collect()
    }

    pub fn has_edge(&self, u: Vertex, w: Vertex, c: Colour) -> bool {
        self.nbrs(u, c).binary_search(&w).is_ok()
    }

    /// G \ W − G_C: delete the vertices in `remove_vertices` and every edge whose
    /// colour is in `remove_colours`.
    pub fn deflate(&self, remove_vertices: &BTreeSet<Vertex>, remove_colours: &BTreeSet<Colour>) -> Self {
        let mut present = self.present.clone();
        for &v in remove_vertices {
            if v < present.len() {
                present[v] = false;
            }
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v, c)| present[u] && present[v] && !remove_colours.contains(&c))
            .collect();
        Self::with_vertices(present, edges).expect("deflation of a valid multigraph")
    }

    pub fn remove_vertices(&self, remove: &BTreeSet<Vertex>) -> Self {
        self.deflate(remove, &BTreeSet::new())
    }

    pub fn remove_colours(&self, remove: &BTreeSet<Colour>) -> Self {
        self.deflate(&BTreeSet::new(), remove)
    }

    /// Keeps only the edges whose colour lies in `keep` (vertex set unchanged).
    pub fn keep_colours(&self, keep: &BTreeSet<Colour>) -> Self {
        let edges = self.edges.iter().copied().filter(|e| keep.contains(&e.2)).collect();
        Self::with_vertices(self.present.clone(), edges).expect("colour restriction of a valid multigraph")
    }

    /// Induced subgraph on the vertices flagged in `keep`.
    pub fn induced(&self, keep: &[bool]) -> Self {
        let remove = self.vertices().filter(|&v| !keep[v]).collect();
        self.remove_vertices(&remove)
    }

    /// Removes edges (all parallel copies of the given colour) by predicate.
    pub fn filter_edges(&self, mut keep: impl FnMut(Vertex, Vertex, Colour) -> bool) -> Self {
        let edges = self.edges.iter().copied().filter(|&(u, v, c)| keep(u, v, c)).collect();
        Self::with_vertices(self.present.clone(), edges).expect("edge subset of a valid multigraph")
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        degree_profile(self)
    }
}

#[derive(Serialize, Deserialize)]
struct MultigraphRepr {
    present: Vec<bool>,
    edges: Vec<(Vertex, Vertex, Colour)>,
}

impl From<EdgeColouredMultigraph> for MultigraphRepr {
    fn from(g: EdgeColouredMultigraph) -> Self {
        MultigraphRepr { present: g.present, edges: g.edges }
    }
}

impl TryFrom<MultigraphRepr> for EdgeColouredMultigraph {
    type Error = Error;

    fn try_from(m: MultigraphRepr) -> Result<Self> {
        EdgeColouredMultigraph::with_vertices(m.present, m.edges)
    }
}

/// Degree data of a multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// `degrees[v][c]` = d_c(v); colours with zero degree are omitted.
    pub degrees: Vec<BTreeMap<Colour, usize>>,
    /// δ_mon: minimum over colours of the minimum non-zero degree in G_c.
    pub delta_mon: Option<usize>,
    /// δ*_mon: minimum of d_c(v) over v ∈ V*, c ∈ φ(v); absent when V* = ∅.
    pub delta_star_mon: Option<usize>,
    pub vstar: Vec<bool>,
}

pub fn degree_profile(g: &EdgeColouredMultigraph) -> DegreeProfile {
    let degrees: Vec<BTreeMap<Colour, usize>> =
        (0..g.n()).map(|v| g.colour_nbrs(v).iter().map(|(&c, l)| (c, l.len())).collect()).collect();
    let vstar: Vec<bool> = (0..g.n()).map(|v| g.contains(v) && g.in_vstar(v)).collect();
    let delta_mon = degrees.iter().flat_map(|m| m.values().copied()).min();
    let delta_star_mon = degrees
        .iter()
        .zip(&vstar)
        .filter(|(_, &s)| s)
        .flat_map(|(m, _)| m.values().copied())
        .min();
    DegreeProfile { degrees, delta_mon, delta_star_mon, vstar }
}
