//! Semi-dense matchings inside one monochromatic tight component, built by
//! recursion on the arity through boundary graphs.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::certificate::{witness_counts, DenseMatchingCertificate, DenseMode};
use crate::error::{failure, input, Result};
use crate::hypergraph::{tight_components, ColouredKGraph, Colour, EdgeKey, Vertex};
use crate::scalar::semi_dense_delta;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemiDenseParams {
    /// The host must be locally r-coloured.
    pub r: usize,
    /// The host must have at least (1 − ε)·C(t, k) edges.
    pub epsilon: f64,
}

/// One level of the recursion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemiStep {
    pub k: usize,
    pub t: usize,
    pub r: usize,
    /// |V|; the rest of the level's vertices form W.
    pub split: Option<usize>,
    pub boundary_edges: Option<usize>,
    /// Whether the boundary colouring is locally 2r²-coloured.
    pub boundary_local: Option<bool>,
    pub rows: usize,
    pub min_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemiDenseOutcome {
    pub certificate: DenseMatchingCertificate,
    /// The monochromatic tight component holding the matching.
    #[serde(skip)]
    pub component: Option<ColouredKGraph>,
    pub steps: Vec<SemiStep>,
    /// δ(r, k)·t, the size promised once t is large.
    pub promised_threshold: f64,
}

struct Level {
    rows: Vec<Vec<Vertex>>,
    /// Colour of the matching in this level's graph.
    colour: Colour,
    /// Edge indices of the tight component holding the matching.
    component: Vec<usize>,
}

pub fn find_semi_dense(h: &ColouredKGraph, params: SemiDenseParams) -> Result<SemiDenseOutcome> {
    let (k, t, r) = (h.k(), h.n(), params.r);
    if k < 2 {
        return input("semi-dense matchings need arity at least 2");
    }
    if r == 0 {
        return input("r must be positive");
    }
    if let Some(face) = h.local_colouring_witness(r) {
        return input(format!("host is not locally {r}-coloured: {face:?} sees more colours"));
    }
    let needed = (1.0 - params.epsilon) * binom(t, k);
    if (h.num_edges() as f64) < needed {
        return input(format!("host has {} edges, fewer than (1 - eps) C(t, k) = {needed:.1}", h.num_edges()));
    }
    let verts: Vec<Vertex> = (0..t).collect();
    let mut steps = Vec::new();
    let level = semi_level(h, &verts, r, &mut steps)?;
    let colour = h.edge_colour(level.component[0]);
    let comp_edges = level.component.iter().map(|&i| (h.edge(i).to_vec(), h.edge_colour(i))).collect();
    let component = ColouredKGraph::new(k, t, h.r(), comp_edges)?;
    let counts = witness_counts(&component, &level.rows, DenseMode::Semi, Some(colour));
    let delta: f64 = semi_dense_delta(r, k);
    let certificate = DenseMatchingCertificate {
        k,
        mode: DenseMode::Semi,
        threshold: counts.iter().copied().min().unwrap_or(0),
        matching: level.rows,
        witness_counts: counts,
        colour: Some(colour),
        delta_formula: Some(delta),
    };
    Ok(SemiDenseOutcome { certificate, component: Some(component), steps, promised_threshold: delta * t as f64 })
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn semi_level(h: &ColouredKGraph, verts: &[Vertex], r: usize, steps: &mut Vec<SemiStep>) -> Result<Level> {
    if h.k() == 2 {
        return base_level(h, verts, r, steps);
    }
    let k = h.k();
    let t = verts.len();
    let split = (k - 1).max(t.div_ceil(8 * r));
    if split >= t {
        return failure("split", format!("|V| = {split} leaves no room for W among {t} vertices"));
    }
    let in_v: HashSet<Vertex> = verts[..split].iter().copied().collect();
    let w_size = t - split;

    // global ids of the monochromatic tight components
    let mut comp_of = vec![0usize; h.num_edges()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for c in 0..h.r() {
        for comp in tight_components(h, Some(c)) {
            for &e in &comp {
                comp_of[e] = comps.len();
            }
            comps.push(comp);
        }
    }

    // d_T(f, W) for boundary faces f ⊆ V
    let mut deg: HashMap<Vec<Vertex>, HashMap<usize, usize>> = HashMap::new();
    for (i, (e, _)) in h.edges().enumerate() {
        let outside: Vec<&Vertex> = e.iter().filter(|v| !in_v.contains(v)).collect();
        if outside.len() != 1 {
            continue;
        }
        let face: Vec<Vertex> = e.iter().copied().filter(|v| in_v.contains(v)).collect();
        *deg.entry(face).or_default().entry(comp_of[i]).or_default() += 1;
    }
    let mut g_edges = Vec::new();
    for (face, by_comp) in deg {
        let chosen = by_comp.iter().filter(|&(_, &d)| d * 2 * r >= w_size).map(|(&c, _)| c).min();
        if let Some(c) = chosen {
            g_edges.push((face, c));
        }
    }
    if g_edges.is_empty() {
        return failure("boundary", format!("no (k-1)-set in V has |W|/2r = {:.2} extensions in one component", w_size as f64 / (2 * r) as f64));
    }
    let g = ColouredKGraph::new(k - 1, h.n(), comps.len().max(1), g_edges)?;
    let r_next = 2 * r * r;
    let boundary_local = g.local_colouring_witness(r_next).is_none();
    let step_idx = steps.len();
    steps.push(SemiStep {
        k,
        t,
        r,
        split: Some(split),
        boundary_edges: Some(g.num_edges()),
        boundary_local: Some(boundary_local),
        rows: 0,
        min_count: 0,
    });
    let inner = semi_level(&g, &verts[..split], r_next, steps)?;
    let t0 = inner.colour;

    // witnesses of the (k−1)-matching inside its component of G
    let g_comp: HashSet<EdgeKey> = inner.component.iter().map(|&i| EdgeKey::from_sorted(g.edge(i))).collect();
    let rows = &inner.rows;
    let mut buf = vec![0; k - 1];
    let mut witnesses: Vec<Vec<usize>> = rows
        .iter()
        .map(|row| {
            (0..rows.len())
                .filter(|&j| {
                    buf[..k - 2].copy_from_slice(&row[..k - 2]);
                    buf[k - 2] = rows[j][k - 2];
                    g_comp.contains(&EdgeKey::from_unsorted(&buf))
                })
                .collect()
        })
        .collect();
    let eta = witnesses.iter().map(|w| w.len()).min().unwrap_or(0);
    if eta == 0 {
        return failure("extension", "a row of the recursive matching has no witness");
    }
    // trim every witness set to the common size, dropping highest indices
    for w in &mut witnesses {
        w.truncate(eta);
    }

    let t0_edges: HashSet<EdgeKey> = comps[t0].iter().map(|&i| EdgeKey::from_sorted(h.edge(i))).collect();
    let in_t0 = |vs: &[Vertex]| t0_edges.contains(&EdgeKey::from_unsorted(vs));
    let mut used: HashSet<Vertex> = HashSet::new();
    let mut out_rows = Vec::with_capacity(rows.len());
    let mut full = vec![0; k];
    for (i, row) in rows.iter().enumerate() {
        let mut best: Option<(usize, Vertex)> = None;
        for &w in &verts[split..] {
            if used.contains(&w) {
                continue;
            }
            full[0] = w;
            full[1..].copy_from_slice(row);
            if !in_t0(&full) {
                continue;
            }
            let score = witnesses[i]
                .iter()
                .filter(|&&j| {
                    full[k - 1] = rows[j][k - 2];
                    in_t0(&full)
                })
                .count();
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, w));
            }
        }
        let Some((_, w)) = best else {
            return failure("extension", format!("no unused vertex of W extends row {i} inside the component"));
        };
        used.insert(w);
        let mut new_row = vec![w];
        new_row.extend_from_slice(row);
        out_rows.push(new_row);
    }
    let component = comps[t0].clone();
    let sub = ColouredKGraph::new(k, h.n(), h.r(), component.iter().map(|&i| (h.edge(i).to_vec(), h.edge_colour(i))).collect())?;
    let counts = witness_counts(&sub, &out_rows, DenseMode::Semi, None);
    steps[step_idx].rows = out_rows.len();
    steps[step_idx].min_count = counts.iter().copied().min().unwrap_or(0);
    Ok(Level { rows: out_rows, colour: t0, component })
}

/// Arity 2: a matching in the largest component of the densest colour,
/// oriented and peeled to raise the smallest witness count.
fn base_level(h: &ColouredKGraph, verts: &[Vertex], r: usize, steps: &mut Vec<SemiStep>) -> Result<Level> {
    let counts = h.colour_counts();
    let colour = (0..counts.len()).max_by_key(|&c| (counts[c], std::cmp::Reverse(c))).filter(|&c| counts[c] > 0);
    let Some(colour) = colour else {
        return failure("base", "the 2-graph has no edges");
    };
    let comps = tight_components(h, Some(colour));
    let component = comps.iter().max_by_key(|c| (c.len(), std::cmp::Reverse(c[0]))).expect("colour has edges").clone();
    let edge_set: HashSet<(Vertex, Vertex)> = component.iter().map(|&i| (h.edge(i)[0], h.edge(i)[1])).collect();
    let adj = |a: Vertex, b: Vertex| edge_set.contains(&(a.min(b), a.max(b)));

    let mut taken = HashSet::new();
    let mut rows: Vec<[Vertex; 2]> = Vec::new();
    for &i in &component {
        let e = h.edge(i);
        if !taken.contains(&e[0]) && !taken.contains(&e[1]) {
            taken.insert(e[0]);
            taken.insert(e[1]);
            rows.push([e[0], e[1]]);
        }
    }
    let score = |rows: &[[Vertex; 2]]| -> (usize, usize) {
        let c: Vec<usize> = rows.iter().map(|a| rows.iter().filter(|b| adj(a[0], b[1])).count()).collect();
        (c.iter().copied().min().unwrap_or(0), c.iter().sum())
    };
    let mut current = score(&rows);
    let mut improved = true;
    let mut rounds = 0;
    while improved && rounds < 4 * rows.len() + 4 {
        improved = false;
        rounds += 1;
        for i in 0..rows.len() {
            rows[i].swap(0, 1);
            let s = score(&rows);
            if s > current {
                current = s;
                improved = true;
            } else {
                rows[i].swap(0, 1);
            }
        }
    }
    // drop rows while that strictly raises the minimum
    while rows.len() > 1 {
        let c: Vec<usize> = rows.iter().map(|a| rows.iter().filter(|b| adj(a[0], b[1])).count()).collect();
        let worst = (0..rows.len()).min_by_key(|&i| (c[i], i)).unwrap();
        let mut trial = rows.clone();
        trial.remove(worst);
        if score(&trial).0 > current.0 {
            rows = trial;
            current = score(&rows);
        } else {
            break;
        }
    }
    steps.push(SemiStep {
        k: 2,
        t: verts.len(),
        r,
        split: None,
        boundary_edges: None,
        boundary_local: None,
        rows: rows.len(),
        min_count: current.0,
    });
    Ok(Level { rows: rows.into_iter().map(|r| r.to_vec()).collect(), colour, component })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::verify_dense_matching;
    use crate::rng::rng_for;
    use crate::testutil::random_kgraph;
    use crate::Error;

    fn params(r: usize) -> SemiDenseParams {
        SemiDenseParams { r, epsilon: 0.5 }
    }

    #[test]
    fn complete_monochromatic_3graph_on_12() {
        let h = ColouredKGraph::complete(3, 12, 1, |_| 0).unwrap();
        let out = find_semi_dense(&h, params(1)).unwrap();
        assert!(out.certificate.threshold >= 1);
        assert!(!out.certificate.matching.is_empty());
        assert!(verify_dense_matching(out.component.as_ref().unwrap(), &out.certificate).unwrap().ok);
        assert!(verify_dense_matching(&h, &out.certificate).unwrap().ok);
    }

    #[test]
    fn two_graph_base_case() {
        let h = ColouredKGraph::complete(2, 10, 2, |e| usize::from(e[0] % 2 == 0 && e[1] % 2 == 0)).unwrap();
        let out = find_semi_dense(&h, params(2)).unwrap();
        assert!(verify_dense_matching(&h, &out.certificate).unwrap().ok);
        assert_eq!(out.certificate.colour, Some(0));
    }

    #[test]
    fn outputs_always_verify() {
        let mut successes = 0;
        for seed in 0..10u64 {
            let mut rng = rng_for(seed, 3);
            let k = 3 + (seed as usize % 2);
            let h = random_kgraph(&mut rng, k, 14, 0.95, 2);
            match find_semi_dense(&h, SemiDenseParams { r: 2, epsilon: 0.2 }) {
                Ok(out) => {
                    let check = verify_dense_matching(out.component.as_ref().unwrap(), &out.certificate).unwrap();
                    assert!(check.ok, "seed {seed}");
                    assert_eq!(check.counts, out.certificate.witness_counts);
                    successes += 1;
                }
                Err(Error::Failure { .. }) => {}
                Err(e) => panic!("seed {seed}: {e}"),
            }
        }
        assert!(successes > 0);
    }

    #[test]
    fn preconditions_are_checked() {
        let h = ColouredKGraph::complete(3, 8, 2, |e| e[0] % 2).unwrap();
        assert!(matches!(find_semi_dense(&h, params(1)), Err(Error::Input(_))));
        let sparse = ColouredKGraph::new(3, 8, 1, vec![(vec![0, 1, 2], 0)]).unwrap();
        assert!(matches!(find_semi_dense(&sparse, params(1)), Err(Error::Input(_))));
    }
}
