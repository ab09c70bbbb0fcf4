//! The respects relation between a k-partite host and an edge-coloured
//! multigraph, its construction from a dense host, and the lift of rainbow
//! cycles to tight cycles.
//!
//! Host layout: classes 0..k−2 all have size n and index i of each stands for
//! multigraph vertex v_i; the last class holds the colour vertices, so colour
//! `z` of the multigraph is index `z` of the last class.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::clean::clean_to_robust_subgraph;
use super::permutation::permutation_slice;
use crate::cycle::{verify_tight_cycle, TightCycle};
use crate::error::{assertion, failure, input, Result};
use crate::hypergraph::{Colour, Vertex};
use crate::multigraph::EdgeColouredMultigraph;
use crate::partite::PartiteGraph;
use crate::rainbow::{verify_rainbow_cycle, RainbowCycle};
use crate::rng::{rng_for, streams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWitness {
    pub u: Vertex,
    pub v: Vertex,
    pub colour: Colour,
    /// Global host ids x_{1,u}, x_{1,v}, …, x_{k−1,u}, x_{k−1,v}.
    pub vertices: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RespectsWitness {
    pub k: usize,
    pub n: usize,
    pub host: PartiteGraph,
    pub graph: EdgeColouredMultigraph,
    pub witnesses: Vec<EdgeWitness>,
    /// `relabel[c][i]` is the input index of the vertex now at index i of
    /// class c (classes 0..k−3; the rest keep their order).
    pub relabel: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RespectsCheck {
    pub ok: bool,
    pub failing_edge: Option<(Vertex, Vertex, Colour)>,
    pub reason: Option<String>,
}

fn witness_vertices(host: &PartiteGraph, u: Vertex, v: Vertex) -> Vec<Vertex> {
    (0..host.k() - 1).flat_map(|c| [host.global(c, u), host.global(c, v)]).collect()
}

/// True when every choice of u or v per class, with `z` last, is an edge.
fn spans_blowup(host: &PartiteGraph, u: Vertex, v: Vertex, z: usize) -> bool {
    let k = host.k();
    let mut t = vec![0; k];
    t[k - 1] = z;
    (0..1usize << (k - 1)).all(|mask| {
        for (c, slot) in t.iter_mut().enumerate().take(k - 1) {
            *slot = if mask >> c & 1 == 1 { v } else { u };
        }
        host.has(&t)
    })
}

/// Re-derives every edge condition from the host.
pub fn verify_respects(w: &RespectsWitness) -> RespectsCheck {
    let fail = |e: Option<(Vertex, Vertex, Colour)>, why: String| RespectsCheck { ok: false, failing_edge: e, reason: Some(why) };
    let k = w.host.k();
    if k != w.k || k < 2 {
        return fail(None, format!("host has {k} classes, witness says k = {}", w.k));
    }
    if w.host.sizes()[..k - 1].iter().any(|&s| s != w.n) || w.graph.n() != w.n {
        return fail(None, "the first k − 1 classes and the multigraph must all have n vertices".into());
    }
    let zs = w.host.sizes()[k - 1];
    for &(u, v, z) in w.graph.edges() {
        if z >= zs {
            return fail(Some((u, v, z)), format!("colour {z} is not a vertex of the last class"));
        }
        if !spans_blowup(&w.host, u, v, z) {
            return fail(Some((u, v, z)), "some combination of the pair is missing from the link".into());
        }
    }
    for e in &w.witnesses {
        if !w.graph.has_edge(e.u, e.v, e.colour) || e.vertices != witness_vertices(&w.host, e.u, e.v) {
            return fail(Some((e.u, e.v, e.colour)), "recorded witness does not match the graph".into());
        }
    }
    RespectsCheck { ok: true, failing_edge: None, reason: None }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RespectingParams {
    pub r: usize,
    /// Defaults to (1/2r)^{2^k}/2.
    pub gamma: Option<f64>,
    pub retries: usize,
}

impl RespectingParams {
    pub fn new(r: usize) -> Self {
        RespectingParams { r, gamma: None, retries: 100 }
    }

    pub fn gamma_for(&self, k: usize) -> f64 {
        self.gamma.unwrap_or_else(|| (1.0 / (2 * self.r) as f64).powi(1 << k) / 2.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColourReport {
    pub z: usize,
    pub link_edges: usize,
    pub cleaned_edges: usize,
    /// |J^z_σ| under the chosen permutations.
    pub horizontal: usize,
    pub edges: usize,
    pub min_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RespectingOutcome {
    pub witness: RespectsWitness,
    pub gamma: f64,
    /// γ·2^{k−3}·n.
    pub horizontal_threshold: f64,
    pub per_colour: Vec<ColourReport>,
    pub sigma_attempts: usize,
    pub delta_mon: Option<usize>,
    /// (2r)^{−2^k}·n/8, reported next to δ_mon.
    pub delta_mon_target: f64,
    pub meets_delta_target: bool,
}

/// Cleans every colour vertex's link, draws shared permutations of classes
/// 0..k−3 until each link keeps enough horizontal edges and yields at least
/// one multigraph edge, relabels so the permutations are the identity, and
/// joins v_i v_{i'} in colour z when {i, i'} spans a 2-blow-up in the
/// cleaned link of z.
pub fn build_respecting_multigraph(host: &PartiteGraph, params: &RespectingParams, seed: u64) -> Result<RespectingOutcome> {
    let k = host.k();
    if k < 2 || params.r == 0 {
        return input("need k ≥ 2 and r ≥ 1");
    }
    let n = host.sizes()[0];
    if host.sizes()[..k - 1].iter().any(|&s| s != n) || n < 2 {
        return input(format!("classes {:?}: the first k − 1 need a common size ≥ 2", host.sizes()));
    }
    let zs = host.sizes()[k - 1];
    let gamma = params.gamma_for(k);
    if !(gamma > 0.0) {
        return input("gamma must be positive");
    }
    let need_link = (n as f64).powi(k as i32 - 1) / (2 * params.r) as f64;
    let mut cleaned = Vec::with_capacity(zs);
    let mut reports = Vec::with_capacity(zs);
    for z in 0..zs {
        let link = host.link_last(z);
        let link_edges = link.num_edges();
        if (link_edges as f64) < need_link {
            return failure("link density", format!("z = {z}: link has {link_edges} edges, needs {need_link:.2}"));
        }
        let clean = clean_to_robust_subgraph(&link, gamma)?;
        if clean.empty {
            return failure("cleaning", format!("z = {z}: no edge survives cleaning at gamma = {gamma:e}"));
        }
        reports.push(ColourReport { z, link_edges, cleaned_edges: clean.kept_edges, horizontal: 0, edges: 0, min_degree: None });
        cleaned.push(clean.kept.expect("built in process"));
    }

    let threshold = gamma * 2f64.powi(k as i32 - 3) * n as f64;
    let mut rng = rng_for(seed, streams::RESPECTING);
    let identity: Vec<usize> = (0..n).collect();
    let attempts_allowed = if k <= 2 { 1 } else { params.retries.max(1) };
    let mut best: Option<(usize, usize, String)> = None;
    for attempt in 1..=attempts_allowed {
        let sigmas: Vec<Vec<usize>> = (0..k - 2)
            .map(|_| {
                let mut s = identity.clone();
                s.shuffle(&mut rng);
                s
            })
            .collect();
        let relabelled: Vec<PartiteGraph> = cleaned.iter().map(|j| relabel(j, &sigmas)).collect();
        let mut good = 0;
        let mut problem = None;
        let mut counts = Vec::with_capacity(zs);
        for (z, j) in relabelled.iter().enumerate() {
            let horizontal = permutation_slice(j, &vec![identity.clone(); k - 2])?.len();
            let edges = pairs_in(j, n);
            counts.push((horizontal, edges.len()));
            if (horizontal as f64) < threshold {
                problem.get_or_insert_with(|| format!("z = {z}: {horizontal} horizontal edges < {threshold:.3}"));
            } else if edges.is_empty() {
                problem.get_or_insert_with(|| format!("z = {z}: no pair spans a 2-blow-up"));
            } else {
                good += 1;
            }
        }
        if let Some(why) = problem {
            if best.as_ref().is_none_or(|(g, _, _)| good > *g) {
                best = Some((good, attempt, why));
            }
            continue;
        }
        let relabelled_host = relabel(host, &sigmas);
        let mut edges = Vec::new();
        for (z, j) in relabelled.iter().enumerate() {
            let pairs = pairs_in(j, n);
            let mut deg = vec![0usize; n];
            for &(u, v) in &pairs {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v, z));
            }
            reports[z].horizontal = counts[z].0;
            reports[z].edges = pairs.len();
            reports[z].min_degree = deg.into_iter().filter(|&d| d > 0).min();
        }
        let graph = EdgeColouredMultigraph::new(n, edges)?;
        let witnesses = graph
            .edges()
            .iter()
            .map(|&(u, v, z)| EdgeWitness { u, v, colour: z, vertices: witness_vertices(&relabelled_host, u, v) })
            .collect();
        let witness = RespectsWitness { k, n, host: relabelled_host, graph, witnesses, relabel: sigmas };
        let check = verify_respects(&witness);
        if !check.ok {
            return assertion(format!("constructed multigraph does not respect its host: {:?}", check.reason));
        }
        let delta_mon = witness.graph.degree_profile().delta_mon;
        let delta_mon_target = (2.0 * params.r as f64).powi(-(1 << k)) * n as f64 / 8.0;
        return Ok(RespectingOutcome {
            gamma,
            horizontal_threshold: threshold,
            per_colour: reports,
            sigma_attempts: attempt,
            delta_mon,
            delta_mon_target,
            meets_delta_target: delta_mon.is_some_and(|d| d as f64 >= delta_mon_target),
            witness,
        });
    }
    let (good, attempt, why) = best.expect("at least one attempt");
    failure(
        "permutation",
        format!("no permutation met every colour; best attempt {attempt} satisfied {good} of {zs}, first miss {why}"),
    )
}

/// Puts the vertex at input index sigma_c(i) of class c at index i.
fn relabel(g: &PartiteGraph, sigmas: &[Vec<usize>]) -> PartiteGraph {
    if sigmas.is_empty() {
        return g.clone();
    }
    let inverses: Vec<Vec<usize>> = sigmas
        .iter()
        .map(|s| {
            let mut inv = vec![0; s.len()];
            for (i, &x) in s.iter().enumerate() {
                inv[x] = i;
            }
            inv
        })
        .collect();
    let mut out = PartiteGraph::empty(g.sizes().to_vec(), g.r()).expect("same shape");
    for idx in 0..g.num_cells() {
        if let Some(colour) = g.colour_at_index(idx) {
            let mut t = g.tuple_of(idx);
            for (c, inv) in inverses.iter().enumerate() {
                t[c] = inv[t[c]];
            }
            out.set(&t, Some(colour));
        }
    }
    out
}

/// Pairs i < i' such that every u/v combination across the (k−1) classes of
/// `j` is an edge.
fn pairs_in(j: &PartiteGraph, n: usize) -> Vec<(Vertex, Vertex)> {
    let m = j.k();
    let mut t = vec![0; m];
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let ok = (0..1usize << m).all(|mask| {
                for (c, slot) in t.iter_mut().enumerate() {
                    *slot = if mask >> c & 1 == 1 { v } else { u };
                }
                j.has(&t)
            });
            if ok {
                out.push((u, v));
            }
        }
    }
    out
}

/// The tight cycle x_{1,v_1} … x_{k−1,v_1} z_{c_1} x_{1,v_2} … z_{c_ℓ} in
/// the host, where c_j colours the cycle edge v_j v_{j+1}.
pub fn rainbow_cycle_to_tight_cycle(w: &RespectsWitness, c: &RainbowCycle) -> Result<TightCycle> {
    if let Err(why) = verify_rainbow_cycle(&w.graph, c) {
        return input(format!("not a rainbow cycle of the multigraph: {why}"));
    }
    let k = w.k;
    let mut order = Vec::with_capacity(k * c.vertices.len());
    for (&v, &z) in c.vertices.iter().zip(&c.colours) {
        if z >= w.host.sizes()[k - 1] {
            return input(format!("colour {z} has no vertex in the host"));
        }
        order.extend((0..k - 1).map(|class| w.host.global(class, v)));
        order.push(w.host.global(k - 1, z));
    }
    let cycle = TightCycle::new(order);
    let check = verify_tight_cycle(&w.host.to_kgraph(), &cycle);
    if !check.ok {
        return assertion(format!("lifted cycle fails at window {:?}: {:?}", check.failing_window, check.reason));
    }
    Ok(cycle)
}
