//! Dense k-partite k-graphs addressed by per-class indices.
//!
//! Class `i` occupies global vertex ids `offset(i) .. offset(i) + sizes[i]`.
//! A tuple `(a_0, .., a_{k-1})` picks index `a_i` in class `i`.

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::hypergraph::{ColouredKGraph, Colour, Vertex};

const NONE: u16 = u16::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PartiteRepr", try_from = "PartiteRepr")]
pub struct PartiteGraph {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    cells: Vec<u16>,
    r: usize,
}

impl PartiteGraph {
    pub fn empty(sizes: Vec<usize>, r: usize) -> Result<Self> {
        if sizes.is_empty() {
            return input("a partite graph needs at least one class");
        }
        if r >= NONE as usize {
            return input("too many colours");
        }
        let total: usize = sizes.iter().product();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &s in &sizes {
            offsets.push(acc);
            acc += s;
        }
        Ok(PartiteGraph { sizes, offsets, cells: vec![NONE; total], r })
    }

    pub fn complete(sizes: Vec<usize>, r: usize, mut colour: impl FnMut(&[usize]) -> Colour) -> Result<Self> {
        let mut g = Self::empty(sizes, r)?;
        for idx in 0..g.cells.len() {
            let t = g.tuple_of(idx);
            g.cells[idx] = colour(&t) as u16;
        }
        Ok(g)
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_vertices(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn equal_classes(&self) -> Option<usize> {
        let n = self.sizes[0];
        self.sizes.iter().all(|&s| s == n).then_some(n)
    }

    pub fn global(&self, class: usize, index: usize) -> Vertex {
        self.offsets[class] + index
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        let mut idx = 0;
        for (i, &a) in tuple.iter().enumerate() {
            debug_assert!(a < self.sizes[i]);
            idx = idx * self.sizes[i] + a;
        }
        idx
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.k()];
        for i in (0..self.k()).rev() {
            t[i] = idx % self.sizes[i];
            idx /= self.sizes[i];
        }
        t
    }

    pub fn has(&self, tuple: &[usize]) -> bool {
        self.cells[self.index_of(tuple)] != NONE
    }

    pub fn colour(&self, tuple: &[usize]) -> Option<Colour> {
        let c = self.cells[self.index_of(tuple)];
        (c != NONE).then_some(c as Colour)
    }

    pub fn has_index(&self, idx: usize) -> bool {
        self.cells[idx] != NONE
    }

    pub fn colour_at_index(&self, idx: usize) -> Option<Colour> {
        let c = self.cells[idx];
        (c != NONE).then_some(c as Colour)
    }

    pub fn set(&mut self, tuple: &[usize], colour: Option<Colour>) {
        let idx = self.index_of(tuple);
        self.cells[idx] = colour.map_or(NONE, |c| c as u16);
    }

    pub fn set_index(&mut self, idx: usize, colour: Option<Colour>) {
        self.cells[idx] = colour.map_or(NONE, |c| c as u16);
    }

    pub fn num_edges(&self) -> usize {
        self.cells.iter().filter(|&&c| c != NONE).count()
    }

    /// Edge tuples in index order.
    pub fn edge_tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.cells.len()).filter(|&i| self.cells[i] != NONE).map(|i| self.tuple_of(i))
    }

    /// Keeps the edges of one colour.
    pub fn colour_class(&self, colour: Colour) -> PartiteGraph {
        let mut g = self.clone();
        for c in &mut g.cells {
            if *c != colour as u16 {
                *c = NONE;
            }
        }
        g
    }

    /// Link of vertex `z` of the last class: a (k−1)-partite graph on the other classes.
    pub fn link_last(&self, z: usize) -> PartiteGraph {
        let k = self.k();
        let mut link = PartiteGraph::empty(self.sizes[..k - 1].to_vec(), self.r).expect("non-empty classes");
        let last = self.sizes[k - 1];
        for idx in 0..link.cells.len() {
            link.cells[idx] = self.cells[idx * last + z];
        }
        link
    }

    /// The same graph as a k-graph on global vertex ids.
    pub fn to_kgraph(&self) -> ColouredKGraph {
        let edges = (0..self.cells.len())
            .filter(|&i| self.cells[i] != NONE)
            .map(|i| {
                let t = self.tuple_of(i);
                let e = t.iter().enumerate().map(|(c, &a)| self.global(c, a)).collect();
                (e, self.cells[i] as Colour)
            })
            .collect();
        ColouredKGraph::new(self.k(), self.num_vertices(), self.r.max(1), edges).expect("partite graph is a valid k-graph")
    }

    /// Global vertex lists of the classes.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        (0..self.k()).map(|c| (0..self.sizes[c]).map(|a| self.global(c, a)).collect()).collect()
    }

    /// Reads a k-partite k-graph out of `h` given explicit classes (edges
    /// not crossing all classes exactly once are rejected).
    pub fn from_kgraph(h: &ColouredKGraph, classes: &[Vec<Vertex>]) -> Result<Self> {
        if classes.len() != h.k() {
            return input(format!("{} classes for a {}-graph", classes.len(), h.k()));
        }
        let mut place = vec![None; h.n()];
        for (c, class) in classes.iter().enumerate() {
            for (a, &v) in class.iter().enumerate() {
                if v >= h.n() || place[v].is_some() {
                    return input(format!("vertex {v} missing from the host or in two classes"));
                }
                place[v] = Some((c, a));
            }
        }
        let mut g = PartiteGraph::empty(classes.iter().map(|c| c.len()).collect(), h.r())?;
        for (e, colour) in h.edges() {
            let mut t = vec![usize::MAX; h.k()];
            for &v in e {
                match place[v] {
                    Some((c, a)) if t[c] == usize::MAX => t[c] = a,
                    _ => return input(format!("edge {e:?} is not transversal to the classes")),
                }
            }
            g.set(&t, Some(colour));
        }
        Ok(g)
    }
}

/// JSON form: class sizes, colour count and the edge tuples with colours.
#[derive(Serialize, Deserialize)]
struct PartiteRepr {
    sizes: Vec<usize>,
    r: usize,
    edges: Vec<(Vec<usize>, Colour)>,
}

impl From<PartiteGraph> for PartiteRepr {
    fn from(g: PartiteGraph) -> Self {
        let edges = (0..g.cells.len())
            .filter(|&i| g.cells[i] != NONE)
            .map(|i| (g.tuple_of(i), g.cells[i] as Colour))
            .collect();
        PartiteRepr { sizes: g.sizes, r: g.r, edges }
    }
}

impl TryFrom<PartiteRepr> for PartiteGraph {
    type Error = Error;

    fn try_from(p: PartiteRepr) -> Result<Self> {
        let mut g = PartiteGraph::empty(p.sizes, p.r)?;
        for (t, c) in p.edges {
            if t.len() != g.k() || t.iter().zip(&g.sizes).any(|(&a, &s)| a >= s) {
                return input(format!("edge tuple {t:?} does not fit the classes"));
            }
            if c >= g.r.max(1) {
                return input(format!("colour {c} out of range"));
            }
            g.set(&t, Some(c));
        }
        Ok(g)
    }
}
