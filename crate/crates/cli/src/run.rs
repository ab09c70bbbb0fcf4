//! `tightpart run`: the five pipelines, their result records and the
//! verdicts re-run by `tightpart verify`.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tightpart::blowup::{
    build_respecting_family, permutation_statistics, rainbow_cycle_to_tight_cycle, verify_respects, PermutationStats,
    RespectingFamily,
};
use tightpart::cycle::{verify_mono_cycle, verify_tight_cycle};
use tightpart::dense::{half_dense_from_kgraph, verify_dense_matching, HalfFromKGraph, SemiDenseParams};
use tightpart::oracle::{min_mono_partition, min_rainbow_cycle_system};
use tightpart::rainbow::{
    find_rainbow_cycles, greedy_rainbow_matching, rainbow_cycle_system, verify_cycle_system, AbsorptionMode, CycleSystem,
    CycleSystemParams, CycleSystemReport, RainbowCycle,
};
use tightpart::tight::{greedy_mono_cover, theorem_bound, CoverCycle, CoverReport, TheoremBound};
use tightpart::{ColouredKGraph, EdgeColouredMultigraph, Error, TightCycle, Vertex};

use crate::instance::{self, Instance};
use crate::report::{text_summary, to_json, CliError, CliResult, InstanceText, Log, Output, Report, RunConfig, Timing, Verdict};
use crate::{Format, Global};

/// Per-search node budget when --budget-nodes is absent.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
/// The bound is printed in full only up to this arity.
const BOUND_PRINT_K: usize = 5;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    Cover,
    RainbowSystem,
    DenseMatching,
    Blowup,
    OracleCompare,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Cover => "cover",
            Pipeline::RainbowSystem => "rainbow-system",
            Pipeline::DenseMatching => "dense-matching",
            Pipeline::Blowup => "blowup",
            Pipeline::OracleCompare => "oracle-compare",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        <Pipeline as ValueEnum>::from_str(s, false).ok()
    }
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct RunArgs {
    #[arg(value_enum)]
    #[serde(skip, default = "default_pipeline")]
    pub pipeline: Pipeline,
    /// Instance files (HGRAPH, MGRAPH or respecting-pair JSON).
    #[arg(required = true)]
    #[serde(skip)]
    pub instances: Vec<PathBuf>,
    /// Cover: leftover fraction. Dense-matching: allowed edge deficit.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Rainbow-system: δ₀ (default δ_mon/n).
    #[arg(long)]
    pub delta0: Option<f64>,
    /// Rainbow-system: force absorption with this d (needs --force-g).
    #[arg(long, requires = "force_g")]
    pub force_d: Option<usize>,
    #[arg(long, requires = "force_d")]
    pub force_g: Option<usize>,
    /// Rainbow-system: number of reserved levels when forcing.
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    /// Dense-matching: local colouring parameter (default: the number of colours).
    #[arg(long)]
    pub local_r: Option<usize>,
    /// Blowup: |Z|, taken from the end of the vertex order (default ⌊n/k⌋).
    #[arg(long)]
    pub z: Option<usize>,
    /// Blowup: permutation-slice samples.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Oracle-compare: also require the oracle value to equal r.
    #[arg(long)]
    pub expect_r: bool,
}

fn default_pipeline() -> Pipeline {
    Pipeline::Cover
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverResult {
    pub k: usize,
    pub n: usize,
    pub r: usize,
    pub report: CoverReport,
    pub partition: Vec<CoverCycle>,
    pub partition_size: usize,
    pub theorem_bound: Option<TheoremBound>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RainbowResult {
    pub report: CycleSystemReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DenseResult {
    pub local_r: usize,
    pub outcome: HalfFromKGraph,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lifted {
    pub colour: usize,
    pub rainbow: RainbowCycle,
    pub tight: TightCycle,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlowupResult {
    pub x: Vec<Vertex>,
    pub z: Vec<Vertex>,
    pub family: RespectingFamily,
    pub lifted: Vec<Lifted>,
    pub permutation: Option<PermutationStats>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleRow {
    pub instance: String,
    pub kind: String,
    pub n: usize,
    /// Colours of the instance.
    pub r: usize,
    pub oracle: Option<usize>,
    pub oracle_nodes: u64,
    pub pipeline: Option<usize>,
    pub pipeline_name: String,
    /// The pipeline's partition (HGRAPH rows).
    #[serde(default)]
    pub partition: Vec<CoverCycle>,
    /// The pipeline's cycle system (MGRAPH rows).
    #[serde(default)]
    pub system: Option<CycleSystem>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleResult {
    pub rows: Vec<OracleRow>,
    pub table: String,
}

/// What a pipeline hands back before verdicts are attached.
struct Ran {
    result: Value,
    verdicts: Vec<Verdict>,
    budget_exhausted: bool,
}

fn need_seed(global: &Global, what: &str) -> CliResult<u64> {
    global.seed.ok_or_else(|| CliError::usage(format!("the {what} pipeline is randomized: pass --seed")))
}

fn one_instance(texts: &[InstanceText]) -> CliResult<&str> {
    match texts {
        [one] => Ok(&one.text),
        _ => Err(CliError::usage("this pipeline takes exactly one instance")),
    }
}

pub fn cmd_run(args: &RunArgs, global: &Global) -> CliResult<Output> {
    let log = Log::new();
    let texts = args
        .instances
        .iter()
        .map(|p| Ok(InstanceText { path: p.display().to_string(), text: instance::read(p)? }))
        .collect::<CliResult<Vec<_>>>()?;
    let seed = match args.pipeline {
        Pipeline::DenseMatching | Pipeline::Blowup => Some(need_seed(global, args.pipeline.name())?),
        _ => global.seed,
    };
    let budget = global.budget_nodes;
    let ran = match args.pipeline {
        Pipeline::Cover => run_cover(one_instance(&texts)?, args, budget, &log),
        Pipeline::RainbowSystem => run_rainbow(one_instance(&texts)?, args, budget, &log),
        Pipeline::DenseMatching => run_dense(one_instance(&texts)?, args, seed.unwrap_or(0), &log),
        Pipeline::Blowup => run_blowup(one_instance(&texts)?, args, seed.unwrap_or(0), &log),
        Pipeline::OracleCompare => run_oracle(&texts, args, budget, &log),
    };
    let ran = match ran {
        Ok(r) => r,
        Err(CliError { code: crate::report::EXIT_BUDGET, message }) => {
            log.stage("budget", &message);
            Ran { result: json!({ "error": message }), verdicts: vec![], budget_exhausted: true }
        }
        Err(e) => return Err(e),
    };
    let pass = !ran.budget_exhausted && ran.verdicts.iter().all(|v| v.pass);
    let report = Report {
        kind: "report".into(),
        pipeline: args.pipeline.name().into(),
        config: RunConfig {
            pipeline: args.pipeline.name().into(),
            instances: texts.iter().map(|t| t.path.clone()).collect(),
            seed,
            budget_nodes: budget,
            options: serde_json::to_value(args)?,
            version: env!("CARGO_PKG_VERSION").into(),
        },
        instances: texts,
        result: ran.result,
        verdicts: ran.verdicts,
        budget_exhausted: ran.budget_exhausted,
        pass,
        timing: Timing { elapsed_ms: log.elapsed_ms() },
    };
    log.stage("done", if report.pass { "pass" } else { "fail" });
    let text = match global.format {
        Format::Json => to_json(&report),
        Format::Text => text_summary(&report),
    };
    Ok(Output { text, code: report.exit_code() })
}

/// Rebuilds the verdicts of a stored report from its embedded instances.
pub fn reverify(report: &Report) -> CliResult<Vec<Verdict>> {
    let pipeline = Pipeline::from_name(&report.pipeline)
        .ok_or_else(|| CliError::usage(format!("unknown pipeline {:?}", report.pipeline)))?;
    if report.budget_exhausted {
        return Ok(vec![]);
    }
    let args: Value = report.config.options.clone();
    let first = || one_instance(&report.instances);
    Ok(match pipeline {
        Pipeline::Cover => cover_verdicts(&instance::hyper(first()?)?, &serde_json::from_value(report.result.clone())?),
        Pipeline::RainbowSystem => {
            rainbow_verdicts(&instance::multi(first()?)?, &serde_json::from_value(report.result.clone())?)
        }
        Pipeline::DenseMatching => dense_verdicts(&instance::hyper(first()?)?, &serde_json::from_value(report.result.clone())?),
        Pipeline::Blowup => blowup_verdicts(&instance::hyper(first()?)?, &serde_json::from_value(report.result.clone())?),
        Pipeline::OracleCompare => {
            let res: OracleResult = serde_json::from_value(report.result.clone())?;
            let expect_r = args.get("expect_r").and_then(Value::as_bool).unwrap_or(false);
            let mut out = Vec::new();
            for (row, text) in res.rows.iter().zip(&report.instances) {
                out.extend(oracle_verdicts(&instance::parse(&text.text)?, row, expect_r));
            }
            out
        }
    })
}

// ---- cover

fn run_cover(text: &str, args: &RunArgs, budget: Option<u64>, log: &Log) -> CliResult<Ran> {
    let h = instance::hyper(text)?;
    log.stage("load", format!("k = {}, n = {}, r = {}, {} edges", h.k(), h.n(), h.r(), h.num_edges()));
    let res = cover(&h, args.epsilon, budget.unwrap_or(DEFAULT_BUDGET))?;
    for (i, s) in res.report.steps.iter().enumerate() {
        log.stage("cover", format!("step {i}: colour {} length {} ({} nodes)", s.colour, s.length, s.nodes));
    }
    let verdicts = cover_verdicts(&h, &res);
    Ok(Ran { budget_exhausted: res.report.inconclusive, result: serde_json::to_value(&res)?, verdicts })
}

fn cover(h: &ColouredKGraph, epsilon: f64, budget: u64) -> CliResult<CoverResult> {
    let report = greedy_mono_cover(h, epsilon, budget)?;
    let k = h.k();
    let bound = if (3..=BOUND_PRINT_K).contains(&k) && h.r() >= 1 { theorem_bound(k, h.r()).ok() } else { None };
    Ok(CoverResult {
        k,
        n: h.n(),
        r: h.r(),
        partition: report.to_partition(k),
        partition_size: report.partition_size(k),
        report,
        theorem_bound: bound,
    })
}

fn check_pieces(h: &ColouredKGraph, pieces: &[CoverCycle]) -> Result<(), String> {
    for (i, p) in pieces.iter().enumerate() {
        let c = p.as_cycle();
        let check = if p.degenerate { verify_tight_cycle(h, &c) } else { verify_mono_cycle(h, &c, p.colour) };
        if !check.ok {
            return Err(format!("piece {i}: {}", check.reason.unwrap_or_default()));
        }
    }
    Ok(())
}

fn check_partition(h: &ColouredKGraph, pieces: &[CoverCycle]) -> Result<(), String> {
    check_pieces(h, pieces)?;
    let mut seen = vec![false; h.n()];
    for v in pieces.iter().flat_map(|p| &p.order) {
        if *v >= h.n() || std::mem::replace(&mut seen[*v], true) {
            return Err(format!("vertex {v} is out of range or covered twice"));
        }
    }
    match seen.iter().position(|s| !s) {
        Some(v) => Err(format!("vertex {v} is not covered")),
        None => Ok(()),
    }
}

pub fn cover_verdicts(h: &ColouredKGraph, res: &CoverResult) -> Vec<Verdict> {
    let long = res.report.cycles.iter().filter(|c| !c.degenerate).all(|c| c.order.len() > h.k() && c.order.len() % h.k() == 0);
    vec![
        Verdict::check("cycles are monochromatic tight cycles", check_pieces(h, &res.report.cycles)),
        Verdict::new("cycle lengths are multiples of k above k", long, None),
        Verdict::check("partition covers every vertex once", check_partition(h, &res.partition)),
        Verdict::new("partition size matches", res.partition.len() == res.partition_size, None),
    ]
}

// ---- rainbow-system

fn run_rainbow(text: &str, args: &RunArgs, budget: Option<u64>, log: &Log) -> CliResult<Ran> {
    let g = instance::multi(text)?;
    let n = g.num_vertices();
    let delta_mon = g.degree_profile().delta_mon.unwrap_or(0);
    log.stage("load", format!("n = {n}, {} colours, δ_mon = {delta_mon}", g.colours().len()));
    let delta0 = match args.delta0 {
        Some(d) => d,
        None if n > 0 && delta_mon > 0 => delta_mon as f64 / n as f64,
        None => return Err(CliError::usage("δ_mon is zero; pass --delta0")),
    };
    let mode = match (args.force_d, args.force_g) {
        (Some(d), Some(g)) => AbsorptionMode::Force { d, g, levels: args.levels },
        _ => AbsorptionMode::Auto,
    };
    let params = CycleSystemParams { delta0, mode, budget: budget.map(|b| b as usize) };
    let report = rainbow_cycle_system(&g, &params)?;
    for l in &report.log {
        log.stage(&l.stage, &l.detail);
    }
    let res = RainbowResult { report };
    let verdicts = rainbow_verdicts(&g, &res);
    Ok(Ran { result: serde_json::to_value(&res)?, verdicts, budget_exhausted: false })
}

pub fn rainbow_verdicts(g: &EdgeColouredMultigraph, res: &RainbowResult) -> Vec<Verdict> {
    let rep = &res.report;
    let mut out = vec![Verdict::new(
        "pipeline completed",
        rep.failure.is_none(),
        rep.failure.as_ref().map(|f| format!("stage {}: {}", f.stage, f.detail)),
    )];
    if let Some(sys) = &rep.system {
        out.push(Verdict::check("cycle system is rainbow and spans φ(G)", verify_cycle_system(g, sys, &g.colours())));
    }
    if let Some(ps) = &rep.path_system {
        let bad = rep.closings.iter().find(|c| {
            let need: BTreeSet<_> = ps.paths.get(c.path).map(|p| p.colours.iter().copied().collect()).unwrap_or_default();
            let got: BTreeSet<_> = c.closing.cycle.colours.iter().copied().collect();
            !need.is_subset(&got)
        });
        out.push(Verdict::new(
            "closed cycles keep their path colours",
            bad.is_none(),
            bad.map(|c| format!("closing of path {}", c.path)),
        ));
    }
    out
}

// ---- dense-matching

fn run_dense(text: &str, args: &RunArgs, seed: u64, log: &Log) -> CliResult<Ran> {
    let h = instance::hyper(text)?;
    let local_r = args.local_r.unwrap_or(h.r());
    log.stage("load", format!("k = {}, n = {}, r = {}", h.k(), h.n(), h.r()));
    let outcome = half_dense_from_kgraph(&h, SemiDenseParams { r: local_r, epsilon: args.epsilon }, seed)?;
    log.stage("semi", format!("{} rows, threshold {}", outcome.semi.certificate.matching.len(), outcome.semi.certificate.threshold));
    log.stage("half", format!("{} rows, threshold {}", outcome.half.certificate.matching.len(), outcome.half.certificate.threshold));
    let res = DenseResult { local_r, outcome };
    let verdicts = dense_verdicts(&h, &res);
    Ok(Ran { result: serde_json::to_value(&res)?, verdicts, budget_exhausted: false })
}

pub fn dense_verdicts(h: &ColouredKGraph, res: &DenseResult) -> Vec<Verdict> {
    // Counting in the whole input only adds witnesses to those inside the
    // component, so a pass here is implied by a pass in the component.
    let check = |name: &str, cert| {
        Verdict::check(
            name,
            match verify_dense_matching(h, cert) {
                Ok(c) if c.ok => Ok(()),
                Ok(c) => Err(format!("row {} below threshold", c.failing_index.unwrap_or(0))),
                Err(e) => Err(e.to_string()),
            },
        )
    };
    vec![
        check("semi-dense certificate", &res.outcome.semi.certificate),
        check("half-dense certificate", &res.outcome.half.certificate),
    ]
}

// ---- blowup

fn run_blowup(text: &str, args: &RunArgs, seed: u64, log: &Log) -> CliResult<Ran> {
    let h = instance::hyper(text)?;
    let n = h.n();
    let zc = args.z.unwrap_or(n / h.k().max(1)).min(n);
    let x: Vec<Vertex> = (0..n - zc).collect();
    let z: Vec<Vertex> = (n - zc..n).collect();
    log.stage("load", format!("k = {}, n = {n}, r = {}, |X| = {}, |Z| = {zc}", h.k(), h.r(), x.len()));
    let family = build_respecting_family(&h, &x, &z, seed)?;
    let mut lifted = Vec::new();
    for block in &family.blocks {
        let Some(out) = &block.outcome else { continue };
        let cycles = find_rainbow_cycles(&out.witness.graph, 4, 50);
        log.stage("lift", format!("colour {}: {} rainbow cycles", block.colour, cycles.len()));
        for c in cycles {
            let t = rainbow_cycle_to_tight_cycle(&out.witness, &c)?;
            lifted.push(Lifted { colour: block.colour, tight: block.to_input(&t), rainbow: c });
        }
    }
    let permutation = family
        .blocks
        .iter()
        .find_map(|b| b.outcome.as_ref())
        .and_then(|o| permutation_statistics(&o.witness.host.link_last(0), args.samples, seed).ok());
    let res = BlowupResult { x, z, family, lifted, permutation };
    let verdicts = blowup_verdicts(&h, &res);
    Ok(Ran { result: serde_json::to_value(&res)?, verdicts, budget_exhausted: false })
}

pub fn blowup_verdicts(h: &ColouredKGraph, res: &BlowupResult) -> Vec<Verdict> {
    let bad_block = res
        .family
        .blocks
        .iter()
        .find(|b| b.outcome.as_ref().is_some_and(|o| !verify_respects(&o.witness).ok));
    let bad_lift = res.lifted.iter().position(|l| !verify_mono_cycle(h, &l.tight, Some(l.colour)).ok);
    vec![
        Verdict::new("family checks", res.family.checks.all_hold(), None),
        Verdict::new("every block respects its host", bad_block.is_none(), bad_block.map(|b| format!("colour {}", b.colour))),
        Verdict::new(
            "lifted cycles are monochromatic tight cycles of the input",
            bad_lift.is_none(),
            bad_lift.map(|i| format!("lift {i}")),
        ),
    ]
}

// ---- oracle-compare

fn run_oracle(texts: &[InstanceText], args: &RunArgs, budget: Option<u64>, log: &Log) -> CliResult<Ran> {
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    for t in texts {
        let inst = instance::parse(&t.text)?;
        let row = match &inst {
            Instance::Hyper(h) => oracle_hyper(&t.path, h, args.epsilon, budget.unwrap_or(DEFAULT_BUDGET))?,
            Instance::Multi(g) => oracle_multi(&t.path, g)?,
        };
        let cell = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        log.stage("compare", format!("{}: oracle {}, {} {}", t.path, cell(row.oracle), row.pipeline_name, cell(row.pipeline)));
        verdicts.extend(oracle_verdicts(&inst, &row, args.expect_r));
        rows.push(row);
    }
    let table = oracle_table(&rows);
    let res = OracleResult { rows, table };
    Ok(Ran { result: serde_json::to_value(&res)?, verdicts, budget_exhausted: false })
}

fn oracle_hyper(path: &str, h: &ColouredKGraph, epsilon: f64, budget: u64) -> CliResult<OracleRow> {
    let (oracle, nodes, note) = match min_mono_partition(h, None) {
        Ok(o) => (o.minimum, o.stats.nodes, None),
        Err(Error::SizeGuard(m)) => (None, 0, Some(m)),
        Err(e) => return Err(e.into()),
    };
    let res = cover(h, epsilon, budget)?;
    if res.report.inconclusive {
        return Err(CliError { code: crate::report::EXIT_BUDGET, message: format!("{path}: cover search ran out of budget") });
    }
    Ok(OracleRow {
        instance: path.into(),
        kind: "hgraph".into(),
        n: h.n(),
        r: h.r(),
        oracle,
        oracle_nodes: nodes,
        pipeline: Some(res.partition_size),
        pipeline_name: "greedy cover".into(),
        partition: res.partition,
        system: None,
        note,
    })
}

fn oracle_multi(path: &str, g: &EdgeColouredMultigraph) -> CliResult<OracleRow> {
    let (oracle, nodes, mut note) = match min_rainbow_cycle_system(g) {
        Ok(o) => (o.minimum, o.stats.nodes, None),
        Err(Error::SizeGuard(m)) => (None, 0, Some(m)),
        Err(e) => return Err(e.into()),
    };
    let n = g.num_vertices();
    let delta = g.degree_profile().delta_mon.unwrap_or(0);
    let phi = g.colours();
    let mut name = "none".to_string();
    let mut system = None;
    if n > 0 && delta > 0 {
        let params = CycleSystemParams::auto(delta as f64 / n as f64);
        match rainbow_cycle_system(g, &params) {
            Ok(rep) if rep.system.is_some() => {
                name = "rainbow-system".into();
                system = rep.system;
            }
            Ok(rep) => note = rep.failure.map(|f| format!("pipeline failed at {}: {}", f.stage, f.detail)),
            Err(Error::Input(_)) if delta + 1 >= 2 * phi.len() => {
                name = "greedy matching".into();
                system = Some(CycleSystem { cycles: vec![], degenerate_edges: greedy_rainbow_matching(g)? });
            }
            Err(Error::Input(m)) => note = Some(m),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(OracleRow {
        instance: path.into(),
        kind: "mgraph".into(),
        n,
        r: phi.len(),
        oracle,
        oracle_nodes: nodes,
        pipeline: system.as_ref().map(|s| s.len()),
        pipeline_name: name,
        partition: vec![],
        system,
        note,
    })
}

pub fn oracle_verdicts(inst: &Instance, row: &OracleRow, expect_r: bool) -> Vec<Verdict> {
    let who = &row.instance;
    let mut out = Vec::new();
    match inst {
        Instance::Hyper(h) => out.push(Verdict::check(format!("{who}: greedy partition valid"), check_partition(h, &row.partition))),
        Instance::Multi(g) => {
            if let Some(sys) = &row.system {
                out.push(Verdict::check(format!("{who}: pipeline system valid"), verify_cycle_system(g, sys, &g.colours())));
            }
        }
    }
    if let (Some(o), Some(p)) = (row.oracle, row.pipeline) {
        out.push(Verdict::new(format!("{who}: oracle ≤ pipeline"), o <= p, Some(format!("{o} vs {p}"))));
    }
    if expect_r {
        out.push(Verdict::new(
            format!("{who}: oracle equals r"),
            row.oracle == Some(row.r),
            Some(format!("oracle {:?}, r = {}", row.oracle, row.r)),
        ));
    }
    out
}

fn oracle_table(rows: &[OracleRow]) -> String {
    let cell = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    let mut s = format!("{:<32} {:>6} {:>4} {:>4} {:>7} {:>8}  {}\n", "instance", "kind", "n", "r", "oracle", "pipeline", "via");
    for r in rows {
        s.push_str(&format!(
            "{:<32} {:>6} {:>4} {:>4} {:>7} {:>8}  {}\n",
            r.instance,
            r.kind,
            r.n,
            r.r,
            cell(r.oracle),
            cell(r.pipeline),
            r.pipeline_name
        ));
    }
    s
}
