use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;

/// A path `vertices[0] .. vertices[ℓ]`; `colours[i]` is the colour of the
/// edge `vertices[i] vertices[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RainbowPath {
    pub vertices: Vec<Vertex>,
    pub colours: Vec<Colour>,
}

impl RainbowPath {
    pub fn single(u: Vertex, v: Vertex, c: Colour) -> Self {
        RainbowPath { vertices: vec![u, v], colours: vec![c] }
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut colours = self.colours.clone();
        colours.reverse();
        RainbowPath { vertices, colours }
    }

    pub fn interior(&self) -> &[Vertex] {
        let m = self.vertices.len();
        if m <= 2 {
            &[]
        } else {
            &self.vertices[1..m - 1]
        }
    }
}

/// A cycle `vertices[0] .. vertices[ℓ-1]`; `colours[i]` colours the edge
/// `vertices[i] vertices[(i+1) % ℓ]`. Length 2 uses two parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RainbowCycle {
    pub vertices: Vec<Vertex>,
    pub colours: Vec<Colour>,
}

/// A vertex-disjoint family of rainbow cycles and single edges (degenerate
/// cycles) whose union is rainbow.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSystem {
    pub cycles: Vec<RainbowCycle>,
    pub degenerate_edges: Vec<(Vertex, Vertex, Colour)>,
}

impl CycleSystem {
    pub fn len(&self) -> usize {
        self.cycles.len() + self.degenerate_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn colours(&self) -> BTreeSet<Colour> {
        self.cycles
            .iter()
            .flat_map(|c| c.colours.iter().copied())
            .chain(self.degenerate_edges.iter().map(|e| e.2))
            .collect()
    }
}

fn check_edges(g: &EdgeColouredMultigraph, pairs: impl Iterator<Item = (Vertex, Vertex, Colour)>) -> Result<(), String> {
    for (u, v, c) in pairs {
        if !g.contains(u) || !g.contains(v) || !g.has_edge(u, v, c) {
            return Err(format!("edge {u}-{v} of colour {c} is not in the graph"));
        }
    }
    Ok(())
}

fn distinct<T: Ord + Copy + std::fmt::Debug>(items: &[T], what: &str) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    for &x in items {
        if !seen.insert(x) {
            return Err(format!("{what} {x:?} repeated"));
        }
    }
    Ok(())
}

pub fn verify_rainbow_path(g: &EdgeColouredMultigraph, p: &RainbowPath) -> Result<(), String> {
    if p.vertices.len() < 2 || p.colours.len() + 1 != p.vertices.len() {
        return Err("a path needs at least one edge and one colour per edge".into());
    }
    distinct(&p.vertices, "vertex")?;
    distinct(&p.colours, "colour")?;
    check_edges(g, p.vertices.windows(2).zip(&p.colours).map(|(w, &c)| (w[0], w[1], c)))
}

pub fn verify_rainbow_cycle(g: &EdgeColouredMultigraph, c: &RainbowCycle) -> Result<(), String> {
    let m = c.vertices.len();
    if m < 2 || c.colours.len() != m {
        return Err("a cycle needs at least two vertices and one colour per edge".into());
    }
    distinct(&c.vertices, "vertex")?;
    distinct(&c.colours, "colour")?;
    check_edges(g, (0..m).map(|i| (c.vertices[i], c.vertices[(i + 1) % m], c.colours[i])))
}

/// Checks a cycle system against `g` and the required colour set.
pub fn verify_cycle_system(g: &EdgeColouredMultigraph, sys: &CycleSystem, colours: &BTreeSet<Colour>) -> Result<(), String> {
    let mut used_vertices = Vec::new();
    let mut used_colours = Vec::new();
    for c in &sys.cycles {
        verify_rainbow_cycle(g, c)?;
        used_vertices.extend(c.vertices.iter().copied());
        used_colours.extend(c.colours.iter().copied());
    }
    for &(u, v, c) in &sys.degenerate_edges {
        if u == v {
            return Err(format!("degenerate edge {u}-{v} is a loop"));
        }
        check_edges(g, std::iter::once((u, v, c)))?;
        used_vertices.extend([u, v]);
        used_colours.push(c);
    }
    distinct(&used_vertices, "vertex")?;
    distinct(&used_colours, "colour")?;
    let got: BTreeSet<Colour> = used_colours.into_iter().collect();
    if &got != colours {
        return Err(format!("system colours {got:?} differ from required {colours:?}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_system_checks() {
        let g = EdgeColouredMultigraph::new(5, vec![(0, 1, 0), (1, 2, 1), (2, 0, 2), (3, 4, 3), (0, 1, 4)]).unwrap();
        let tri = RainbowCycle { vertices: vec![0, 1, 2], colours: vec![0, 1, 2] };
        assert!(verify_rainbow_cycle(&g, &tri).is_ok());
        let two = RainbowCycle { vertices: vec![0, 1], colours: vec![0, 4] };
        assert!(verify_rainbow_cycle(&g, &two).is_ok());
        let bad = RainbowCycle { vertices: vec![0, 1], colours: vec![0, 0] };
        assert!(verify_rainbow_cycle(&g, &bad).is_err());
        let sys = CycleSystem { cycles: vec![tri.clone()], degenerate_edges: vec![(3, 4, 3)] };
        assert!(verify_cycle_system(&g, &sys, &BTreeSet::from([0, 1, 2, 3])).is_ok());
        assert!(verify_cycle_system(&g, &sys, &g.colours()).is_err());
        let clash = CycleSystem { cycles: vec![tri], degenerate_edges: vec![(0, 1, 4)] };
        assert!(verify_cycle_system(&g, &clash, &BTreeSet::from([0, 1, 2, 4])).is_err());
    }
}
