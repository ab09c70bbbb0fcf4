//! `tightpart gen`: instance generators.

use clap::Subcommand;
use serde_json::json;
use tightpart::generators::{complete_colours, random_colouring, random_multigraph, respecting_pair};
use tightpart::io::{write_hgraph, write_mgraph};
use tightpart::tight::{build_triangle_cycle, lower_bound_instance};
use tightpart::{ColouredKGraph, EdgeColouredMultigraph};

use crate::report::{to_json, CliError, CliResult, Output, EXIT_PASS};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum GenSpec {
    /// Complete k-graph on n vertices, colours uniform from 0..r (needs --seed).
    RandomColouring { k: usize, n: usize, r: usize },
    /// Complete k-graph on classes V_1..V_r coloured by the lowest class met.
    LowerBound {
        k: usize,
        r: usize,
        /// Class sizes, comma separated (default: the smallest admissible).
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
    /// The triangle cycle T with t absorbable vertices.
    TriangleCycle { k: usize, t: usize },
    /// A random one-colour k-partite host and its respecting multigraph with
    /// r colour vertices (needs --seed); written as JSON.
    RespectingPair { k: usize, n: usize, r: usize },
    /// Each pair gets each of r colours with probability p (needs --seed).
    RandomMultigraph { n: usize, r: usize, p: f64 },
    /// r colours, each complete on n vertices.
    CompleteColours { n: usize, r: usize },
}

fn need_seed(global: &Global, what: &str) -> CliResult<u64> {
    global.seed.ok_or_else(|| CliError::usage(format!("{what} is randomized: pass --seed")))
}

fn hyper_summary(h: &ColouredKGraph) -> serde_json::Value {
    json!({ "k": h.k(), "n": h.n(), "r": h.r(), "edges": h.num_edges(), "colour_counts": h.colour_counts() })
}

fn multi_summary(g: &EdgeColouredMultigraph) -> serde_json::Value {
    let p = g.degree_profile();
    json!({ "n": g.n(), "edges": g.edges().len(), "colours": g.colours().len(), "delta_mon": p.delta_mon, "delta_star_mon": p.delta_star_mon })
}

pub fn cmd_gen(spec: &GenSpec, global: &Global) -> CliResult<Output> {
    let (text, summary) = match spec {
        GenSpec::RandomColouring { k, n, r } => {
            let seed = need_seed(global, "random-colouring")?;
            let h = random_colouring(*k, *n, *r, seed)?;
            (format!("# random-colouring k={k} n={n} r={r} seed={seed}\n{}", write_hgraph(&h)), hyper_summary(&h))
        }
        GenSpec::LowerBound { k, r, sizes } => {
            let h = lower_bound_instance(*k, *r, sizes.clone())?;
            (format!("# lower-bound k={k} r={r}\n{}", write_hgraph(&h)), hyper_summary(&h))
        }
        GenSpec::TriangleCycle { k, t } => {
            let tc = build_triangle_cycle(*k, *t)?;
            let mut s = hyper_summary(&tc.graph);
            s["max_degree"] = json!(tc.max_degree());
            (format!("# triangle-cycle k={k} t={t}\n{}", write_hgraph(&tc.graph)), s)
        }
        GenSpec::RespectingPair { k, n, r } => {
            let seed = need_seed(global, "respecting-pair")?;
            let pair = respecting_pair(*k, *n, *r, seed)?;
            let s = multi_summary(&pair.outcome.witness.graph);
            (to_json(&json!({ "kind": "respecting-pair", "pair": pair })), s)
        }
        GenSpec::RandomMultigraph { n, r, p } => {
            let seed = need_seed(global, "random-multigraph")?;
            let g = random_multigraph(*n, *r, *p, seed)?;
            (format!("# random-multigraph n={n} r={r} p={p} seed={seed}\n{}", write_mgraph(&g)), multi_summary(&g))
        }
        GenSpec::CompleteColours { n, r } => {
            let g = complete_colours(*n, *r)?;
            (format!("# complete-colours n={n} r={r}\n{}", write_mgraph(&g)), multi_summary(&g))
        }
    };
    eprintln!("{}", json!({ "stage": "gen", "summary": summary }));
    Ok(Output { text, code: EXIT_PASS })
}
