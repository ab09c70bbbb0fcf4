use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::hypergraph::{ColouredKGraph, Colour, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DenseMode {
    /// Witnesses for row i: rows j with x_{i,1}..x_{i,k−1} x_{j,k} an edge.
    Semi,
    /// Witnesses for the anchor x_{i,1}: rows j with x_{i,1} x_{j,2}..x_{j,k} an edge.
    Half,
}

/// A matching given row by row; column j of the rows is the class X_{j+1}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseMatchingCertificate {
    pub k: usize,
    pub mode: DenseMode,
    pub threshold: usize,
    pub matching: Vec<Vec<Vertex>>,
    pub witness_counts: Vec<usize>,
    /// When set, only edges of this colour count.
    pub colour: Option<Colour>,
    /// The guaranteed density factor of the construction, for comparison.
    pub delta_formula: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseCheck {
    pub ok: bool,
    pub failing_index: Option<usize>,
    pub counts: Vec<usize>,
}

pub(crate) fn validate_rows(h: &ColouredKGraph, rows: &[Vec<Vertex>]) -> Result<()> {
    let mut seen = vec![false; h.n()];
    for (i, row) in rows.iter().enumerate() {
        if row.len() != h.k() {
            return input(format!("matching row {i} has {} vertices, expected {}", row.len(), h.k()));
        }
        for &v in row {
            if v >= h.n() {
                return input(format!("matching row {i} uses vertex {v} outside the host"));
            }
            if seen[v] {
                return input(format!("vertex {v} appears twice in the matching"));
            }
            seen[v] = true;
        }
    }
    Ok(())
}

/// Witness counts for every row, recomputed from `h`.
pub fn witness_counts(h: &ColouredKGraph, rows: &[Vec<Vertex>], mode: DenseMode, colour: Option<Colour>) -> Vec<usize> {
    let k = h.k();
    let is_edge = |vs: &[Vertex]| match h.colour(vs) {
        Some(c) => colour.is_none_or(|want| want == c),
        None => false,
    };
    let mut buf = vec![0; k];
    rows.iter()
        .map(|row| {
            rows.iter()
                .filter(|other| {
                    match mode {
                        DenseMode::Semi => {
                            buf[..k - 1].copy_from_slice(&row[..k - 1]);
                            buf[k - 1] = other[k - 1];
                        }
                        DenseMode::Half => {
                            buf[0] = row[0];
                            buf[1..].copy_from_slice(&other[1..]);
                        }
                    }
                    is_edge(&buf)
                })
                .count()
        })
        .collect()
}

pub fn verify_dense_matching(h: &ColouredKGraph, cert: &DenseMatchingCertificate) -> Result<DenseCheck> {
    if cert.k != h.k() {
        return input(format!("certificate arity {} differs from host arity {}", cert.k, h.k()));
    }
    validate_rows(h, &cert.matching)?;
    let counts = witness_counts(h, &cert.matching, cert.mode, cert.colour);
    let failing_index = counts.iter().position(|&c| c < cert.threshold);
    Ok(DenseCheck { ok: failing_index.is_none(), failing_index, counts })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonoDenseReport {
    pub colour: Colour,
    pub edges: Vec<(Vertex, Vertex)>,
    pub average_degree: f64,
    /// d² / 2r².
    pub bound: f64,
    pub bound_holds: bool,
    /// A vertex seeing more than `r` colours, if the colouring is not local.
    pub non_local_witness: Option<Vertex>,
}

/// The largest colour class of a 2-graph (lowest colour on ties), with the
/// local-colouring bound d²/2r² checked against it.
pub fn mono_dense_subgraph(g: &ColouredKGraph, r: usize) -> Result<MonoDenseReport> {
    if g.k() != 2 {
        return input(format!("expected a 2-graph, got arity {}", g.k()));
    }
    if r == 0 {
        return input("r must be positive");
    }
    let counts = g.colour_counts();
    let colour = (0..counts.len()).max_by_key(|&c| (counts[c], std::cmp::Reverse(c))).unwrap_or(0);
    let edges: Vec<(Vertex, Vertex)> = g.edges().filter(|&(_, c)| c == colour).map(|(e, _)| (e[0], e[1])).collect();
    let average_degree = if g.n() == 0 { 0.0 } else { 2.0 * g.num_edges() as f64 / g.n() as f64 };
    let bound = average_degree * average_degree / (2.0 * (r * r) as f64);
    let non_local_witness = g.local_colouring_witness(r).map(|face| face[0]);
    Ok(MonoDenseReport { colour, bound_holds: edges.len() as f64 >= bound, edges, average_degree, bound, non_local_witness })
}
