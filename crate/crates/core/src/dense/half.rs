//! Semi-dense to half-dense conversion through the anchored bipartite matching.

use serde::{Deserialize, Serialize};

use super::bipartite::{anchored_bipartite_matching, AnchoredMatching, BipartiteGraph};
use super::certificate::{verify_dense_matching, witness_counts, DenseMatchingCertificate, DenseMode};
use super::semi::{find_semi_dense, SemiDenseOutcome, SemiDenseParams};
use crate::error::{input, Result};
use crate::hypergraph::ColouredKGraph;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfDenseOutcome {
    pub certificate: DenseMatchingCertificate,
    /// δ³t/2 with t = |V(R)|.
    pub target_threshold: f64,
    /// Whether the input threshold reached δt.
    pub input_meets_delta: bool,
    pub bipartite: Option<AnchoredMatching>,
}

pub fn semi_to_half<S: Scalar>(
    h: &ColouredKGraph,
    cert: &DenseMatchingCertificate,
    delta: S,
    seed: u64,
) -> Result<HalfDenseOutcome> {
    if cert.mode != DenseMode::Semi {
        return input("semi_to_half needs a semi-dense certificate");
    }
    let check = verify_dense_matching(h, cert)?;
    if let Some(i) = check.failing_index {
        return input(format!("semi certificate fails at row {i}: {} < {}", check.counts[i], cert.threshold));
    }
    let k = h.k();
    let t = h.n();
    let d = delta.to_f64();
    let target_threshold = d * d * d * t as f64 / 2.0;
    let input_meets_delta = S::from_usize(cert.threshold) >= delta.clone() * S::from_usize(t);

    if k == 2 {
        // the two notions coincide on graphs
        let counts = witness_counts(h, &cert.matching, DenseMode::Half, cert.colour);
        let certificate = DenseMatchingCertificate {
            mode: DenseMode::Half,
            threshold: counts.iter().copied().min().unwrap_or(0),
            witness_counts: counts,
            ..cert.clone()
        };
        return Ok(HalfDenseOutcome { certificate, target_threshold, input_meets_delta, bipartite: None });
    }

    // left: anchors v_{j,k}; right: rows i, joined when row_i[..k-1] + v_{j,k} is an edge
    let rows = &cert.matching;
    let ell = rows.len();
    let mut buf = vec![0; k];
    let mut edges = Vec::new();
    for (j, anchor) in rows.iter().enumerate() {
        for (i, row) in rows.iter().enumerate() {
            buf[..k - 1].copy_from_slice(&row[..k - 1]);
            buf[k - 1] = anchor[k - 1];
            if h.colour(&buf).is_some_and(|c| cert.colour.is_none_or(|want| want == c)) {
                edges.push((j, i));
            }
        }
    }
    let g = BipartiteGraph::new(ell, ell, edges)?;
    let density = S::from_ratio(cert.threshold as i64, ell as i64);
    let matched = anchored_bipartite_matching(&g, ell, density, seed)?;
    let matching: Vec<Vec<usize>> = matched
        .pairs
        .iter()
        .map(|&(j, i)| {
            let mut row = vec![rows[j][k - 1]];
            row.extend(rows[i][..k - 1].iter().rev());
            row
        })
        .collect();
    let counts = witness_counts(h, &matching, DenseMode::Half, cert.colour);
    let certificate = DenseMatchingCertificate {
        k,
        mode: DenseMode::Half,
        threshold: counts.iter().copied().min().unwrap_or(0),
        matching,
        witness_counts: counts,
        colour: cert.colour,
        delta_formula: cert.delta_formula,
    };
    Ok(HalfDenseOutcome { certificate, target_threshold, input_meets_delta, bipartite: Some(matched) })
}

/// (2^{9k}(2r)^{3·2^k})⁻¹, the half-dense density promised for locally
/// r-coloured k-graphs.
pub fn half_dense_constant(r: usize, k: usize) -> f64 {
    let log2 = 9.0 * k as f64 + 3.0 * (1u64 << k) as f64 * ((2 * r) as f64).log2();
    (-log2).exp2()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfFromKGraph {
    pub semi: SemiDenseOutcome,
    pub half: HalfDenseOutcome,
    pub constant: f64,
}

/// Semi-dense search followed by the half-dense conversion, inside the
/// monochromatic component the semi-dense step chose.
pub fn half_dense_from_kgraph(h: &ColouredKGraph, params: SemiDenseParams, seed: u64) -> Result<HalfFromKGraph> {
    let semi = find_semi_dense(h, params)?;
    let component = semi.component.as_ref().expect("semi outcome carries its component");
    let delta = semi.certificate.delta_formula.unwrap_or(0.0);
    let half = semi_to_half(component, &semi.certificate, delta, seed)?;
    Ok(HalfFromKGraph { semi, half, constant: half_dense_constant(params.r, h.k()) })
}
