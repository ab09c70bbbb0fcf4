//! Edge-coloured k-uniform hypergraphs.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use petgraph::unionfind::UnionFind;

use crate::error::{input, Result};

pub type Vertex = usize;
pub type Colour = usize;

/// Largest arity that fits a packed [`EdgeKey`].
pub const MAX_ARITY: usize = 8;
/// Vertex ids must stay below this bound to fit a packed [`EdgeKey`].
pub const MAX_VERTICES: usize = u16::MAX as usize;

/// A set of at most eight vertices packed into one integer (sorted, 16 bits each).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeKey(u128);

impl EdgeKey {
    pub fn from_sorted(vs: &[Vertex]) -> EdgeKey {
        debug_assert!(vs.len() <= MAX_ARITY);
        let mut key = 0u128;
        for &v in vs {
            key = (key << 16) | (v as u128 + 1);
        }
        EdgeKey(key)
    }

    pub fn from_unsorted(vs: &[Vertex]) -> EdgeKey {
        let mut buf = [0usize; MAX_ARITY];
        let buf = &mut buf[..vs.len()];
        buf.copy_from_slice(vs);
        buf.sort_unstable();
        EdgeKey::from_sorted(buf)
    }

    pub fn vertices(self) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut key = self.0;
        while key != 0 {
            out.push((key & 0xffff) as usize - 1);
            key >>= 16;
        }
        out.reverse();
        out
    }
}

/// A k-uniform hypergraph on `0..n` with every edge carrying a colour below `r`.
#[derive(Clone, Debug)]
pub struct ColouredKGraph {
    k: usize,
    n: usize,
    r: usize,
    edges: Vec<Vec<Vertex>>,
    colours: Vec<Colour>,
    index: HashMap<EdgeKey, usize>,
}

impl PartialEq for ColouredKGraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.n == other.n
            && self.r == other.r
            && self.edges == other.edges
            && self.colours == other.colours
    }
}

impl ColouredKGraph {
    /// Builds a hypergraph, sorting each edge and the edge list. Arity 1 is
    /// accepted so that link graphs of 2-graphs can be represented.
    pub fn new(k: usize, n: usize, r: usize, edges: Vec<(Vec<Vertex>, Colour)>) -> Result<Self> {
        if k == 0 || k > MAX_ARITY {
            return input(format!("arity {k} outside 1..={MAX_ARITY}"));
        }
        if n > MAX_VERTICES {
            return input(format!("{n} vertices exceeds the supported {MAX_VERTICES}"));
        }
        let mut list = Vec::with_capacity(edges.len());
        for (mut e, c) in edges {
            if e.len() != k {
                return input(format!("edge {e:?} does not have {k} vertices"));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return input(format!("edge {e:?} repeats a vertex"));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return input(format!("edge {e:?} uses vertex {v} >= n = {n}"));
            }
            if c >= r {
                return input(format!("edge {e:?} has colour {c} >= r = {r}"));
            }
            list.push((e, c));
        }
        list.sort();
        for w in list.windows(2) {
            if w[0].0 == w[1].0 {
                return input(format!("duplicate edge {:?}", w[0].0));
            }
        }
        let mut index = HashMap::with_capacity(list.len());
        let (edges, colours): (Vec<_>, Vec<_>) = list.into_iter().unzip();
        for (i, e) in edges.iter().enumerate() {
            index.insert(EdgeKey::from_sorted(e), i);
        }
        Ok(ColouredKGraph { k, n, r, edges, colours, index })
    }

    /// The complete k-graph on `n` vertices coloured by `colour`.
    pub fn complete(k: usize, n: usize, r: usize, mut colour: impl FnMut(&[Vertex]) -> Colour) -> Result<Self> {
        let edges = (0..n)
            .combinations(k)
            .map(|e| {
                let c = colour(&e);
                (e, c)
            })
            .collect();
        Self::new(k, n, r, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i]
    }

    pub fn edge_colour(&self, i: usize) -> Colour {
        self.colours[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&[Vertex], Colour)> + '_ {
        self.edges.iter().map(|e| e.as_slice()).zip(self.colours.iter().copied())
    }

    /// Index of the edge with vertex set `vs` (any order).
    pub fn edge_index(&self, vs: &[Vertex]) -> Option<usize> {
        if vs.len() != self.k {
            return None;
        }
        self.index.get(&EdgeKey::from_unsorted(vs)).copied()
    }

    pub fn colour(&self, vs: &[Vertex]) -> Option<Colour> {
        self.edge_index(vs).map(|i| self.colours[i])
    }

    pub fn has_edge(&self, vs: &[Vertex]) -> bool {
        self.edge_index(vs).is_some()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn colour_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.r];
        for &c in &self.colours {
            counts[c] += 1;
        }
        counts
    }

    /// Sub-hypergraph of edges lying inside `keep` (same vertex id space).
    pub fn induced(&self, keep: &[bool]) -> ColouredKGraph {
        let edges = self
            .edges()
            .filter(|(e, _)| e.iter().all(|&v| keep[v]))
            .map(|(e, c)| (e.to_vec(), c))
            .collect();
        Self::new(self.k, self.n, self.r, edges).expect("sub-hypergraph of a valid hypergraph")
    }

    pub fn restrict_colour(&self, colour: Colour) -> ColouredKGraph {
        let edges = self.edges().filter(|&(_, c)| c == colour).map(|(e, c)| (e.to_vec(), c)).collect();
        Self::new(self.k, self.n, self.r, edges).expect("colour class of a valid hypergraph")
    }

    /// Applies the vertex relabelling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<ColouredKGraph> {
        if perm.len() != self.n || perm.iter().collect::<BTreeSet<_>>().len() != self.n || perm.iter().any(|&p| p >= self.n) {
            return input("relabelling is not a permutation of the vertex set");
        }
        let edges = self.edges().map(|(e, c)| (e.iter().map(|&v| perm[v]).collect(), c)).collect();
        Self::new(self.k, self.n, self.r, edges)
    }

    /// Checks that every (k−1)-set lies in edges of at most `r` colours,
    /// returning a witness set otherwise.
    pub fn local_colouring_witness(&self, r: usize) -> Option<Vec<Vertex>> {
        let mut seen: HashMap<EdgeKey, BTreeSet<Colour>> = HashMap::new();
        for (e, c) in self.edges() {
            for skip in 0..self.k {
                let face: Vec<Vertex> = e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let set = seen.entry(EdgeKey::from_sorted(&face)).or_default();
                set.insert(c);
                if set.len() > r {
                    return Some(face);
                }
            }
        }
        None
    }
}

/// Tight components: classes of the transitive closure of `|e ∩ f| = k − 1`.
/// Returns edge indices, each class sorted, classes ordered by their first edge.
pub fn tight_components(h: &ColouredKGraph, restrict_colour: Option<Colour>) -> Vec<Vec<usize>> {
    let chosen: Vec<usize> = (0..h.num_edges()).filter(|&i| restrict_colour.is_none_or(|c| h.edge_colour(i) == c)).collect();
    let mut uf = UnionFind::<usize>::new(chosen.len());
    let mut face_owner: HashMap<EdgeKey, usize> = HashMap::new();
    let k = h.k();
    let mut face = Vec::with_capacity(k);
    for (slot, &i) in chosen.iter().enumerate() {
        let e = h.edge(i);
        for skip in 0..k {
            face.clear();
            face.extend(e.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
            match face_owner.entry(EdgeKey::from_sorted(&face)) {
                std::collections::hash_map::Entry::Occupied(o) => {
                    uf.union(*o.get(), slot);
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(slot);
                }
            }
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for (slot, &i) in chosen.iter().enumerate() {
        classes.entry(uf.find(slot)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// Component id per edge index (`None` for edges outside the restriction).
pub fn component_ids(h: &ColouredKGraph, components: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut ids = vec![None; h.num_edges()];
    for (cid, comp) in components.iter().enumerate() {
        for &e in comp {
            ids[e] = Some(cid);
        }
    }
    ids
}

/// Link graph H(z): the (k−1)-sets S with S ∪ {z} an edge, colours inherited.
pub fn link_graph(h: &ColouredKGraph, z: Vertex) -> Result<ColouredKGraph> {
    if z >= h.n() {
        return input(format!("vertex {z} not in a hypergraph on {} vertices", h.n()));
    }
    if h.k() < 2 {
        return input("link graph needs arity at least 2");
    }
    let edges = h
        .edges()
        .filter(|(e, _)| e.contains(&z))
        .map(|(e, c)| (e.iter().copied().filter(|&v| v != z).collect(), c))
        .collect();
    ColouredKGraph::new(h.k() - 1, h.n(), h.r(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_for;
    use rand::Rng;

    fn random_graph(k: usize, n: usize, p: f64, r: usize, seed: u64) -> ColouredKGraph {
        let mut rng = rng_for(seed, 0);
        let mut edges = Vec::new();
        for e in (0..n).combinations(k) {
            if rng.gen_bool(p) {
                edges.push((e, rng.gen_range(0..r)));
            }
        }
        ColouredKGraph::new(k, n, r, edges).unwrap()
    }

    #[test]
    fn edge_key_round_trip() {
        let key = EdgeKey::from_unsorted(&[9, 2, 40000]);
        assert_eq!(key.vertices(), vec![2, 9, 40000]);
        assert_eq!(key, EdgeKey::from_sorted(&[2, 9, 40000]));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(ColouredKGraph::new(3, 4, 1, vec![(vec![0, 1], 0)]).is_err());
        assert!(ColouredKGraph::new(3, 4, 1, vec![(vec![0, 1, 1], 0)]).is_err());
        assert!(ColouredKGraph::new(3, 4, 1, vec![(vec![0, 1, 4], 0)]).is_err());
        assert!(ColouredKGraph::new(3, 4, 1, vec![(vec![0, 1, 2], 1)]).is_err());
        assert!(ColouredKGraph::new(3, 4, 1, vec![(vec![0, 1, 2], 0), (vec![2, 1, 0], 0)]).is_err());
    }

    #[test]
    fn complete_graph_is_one_component() {
        let h = ColouredKGraph::complete(3, 5, 1, |_| 0).unwrap();
        assert_eq!(tight_components(&h, None).len(), 1);
    }

    #[test]
    fn disjoint_edges_are_separate_components() {
        let h = ColouredKGraph::new(3, 6, 1, vec![(vec![0, 1, 2], 0), (vec![3, 4, 5], 0)]).unwrap();
        assert_eq!(tight_components(&h, None).len(), 2);
    }

    fn pairwise_components(h: &ColouredKGraph) -> usize {
        let m = h.num_edges();
        let mut comp: Vec<usize> = (0..m).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..m {
                for j in 0..m {
                    let shared = h.edge(i).iter().filter(|v| h.edge(j).contains(v)).count();
                    if shared == h.k() - 1 && comp[i] != comp[j] {
                        let low = comp[i].min(comp[j]);
                        comp[i] = low;
                        comp[j] = low;
                        changed = true;
                    }
                }
            }
        }
        comp.iter().collect::<BTreeSet<_>>().len()
    }

    #[test]
    fn components_match_pairwise_oracle() {
        for seed in 1..6 {
            let h = random_graph(3, 8, 0.3, 2, seed);
            assert_eq!(tight_components(&h, None).len(), pairwise_components(&h), "seed {seed}");
            for c in 0..2 {
                let restricted = h.restrict_colour(c);
                assert_eq!(tight_components(&h, Some(c)).len(), pairwise_components(&restricted));
            }
        }
    }

    #[test]
    fn components_partition_and_are_maximal() {
        let h = random_graph(3, 9, 0.25, 1, 11);
        let comps = tight_components(&h, None);
        let mut all: Vec<usize> = comps.concat();
        all.sort();
        assert_eq!(all, (0..h.num_edges()).collect::<Vec<_>>());
        let ids = component_ids(&h, &comps);
        for i in 0..h.num_edges() {
            for j in 0..h.num_edges() {
                let shared = h.edge(i).iter().filter(|v| h.edge(j).contains(v)).count();
                if shared == 2 {
                    assert_eq!(ids[i], ids[j]);
                }
            }
        }
    }

    #[test]
    fn link_examples() {
        let k4 = ColouredKGraph::complete(3, 4, 1, |_| 0).unwrap();
        let link = link_graph(&k4, 0).unwrap();
        assert_eq!(link.k(), 2);
        assert_eq!(link.num_edges(), 3);
        assert!(link.has_edge(&[1, 2]) && link.has_edge(&[1, 3]) && link.has_edge(&[2, 3]));

        let single = ColouredKGraph::new(3, 3, 1, vec![(vec![0, 1, 2], 0)]).unwrap();
        let link = link_graph(&single, 0).unwrap();
        assert_eq!(link.edges().map(|(e, _)| e.to_vec()).collect::<Vec<_>>(), vec![vec![1, 2]]);
        assert!(link_graph(&single, 3).is_err());

        let h = random_graph(4, 9, 0.4, 3, 5);
        for z in 0..9 {
            assert_eq!(link_graph(&h, z).unwrap().num_edges(), h.degree(z));
        }
    }

    #[test]
    fn local_colouring_witness_found() {
        let h = ColouredKGraph::new(2, 3, 2, vec![(vec![0, 1], 0), (vec![0, 2], 1)]).unwrap();
        assert_eq!(h.local_colouring_witness(1), Some(vec![0]));
        assert_eq!(h.local_colouring_witness(2), None);
    }
}
