//! `tightpart verify`: re-check a stored report or a standalone witness.

use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};
use tightpart::blowup::verify_respects;
use tightpart::dense::{verify_dense_matching, DenseMatchingCertificate};
use tightpart::generators::RespectingPair;
use tightpart::io::parse_hgraph;
use tightpart::rainbow::{verify_cycle_system, CycleSystem};
use tightpart::tight::{verify_triangle_cycle, TriangleCycle};

use crate::instance;
use crate::report::{text_summary, to_json, CliError, CliResult, Output, Report, Verdict, EXIT_CHECK, EXIT_PASS};
use crate::run::reverify;
use crate::{Format, Global};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A run report, a respecting-pair file, a triangle-cycle HGRAPH, or a
    /// cycle system / dense-matching certificate (JSON, with --instance).
    pub file: PathBuf,
    /// The graph a standalone cycle system or certificate refers to.
    #[arg(long)]
    pub instance: Option<PathBuf>,
}

pub fn cmd_verify(args: &VerifyArgs, global: &Global) -> CliResult<Output> {
    let text = instance::read(&args.file)?;
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty()).unwrap_or("");
    let (what, verdicts, extra) = if first.starts_with('{') {
        let v: Value = serde_json::from_str(&text)?;
        verify_json(&v, args)?
    } else if first.starts_with("HGRAPH") {
        verify_triangle(&text)?
    } else {
        return Err(CliError::usage("expected a JSON witness or a triangle-cycle HGRAPH"));
    };
    let pass = verdicts.iter().all(|v| v.pass);
    let out = match global.format {
        Format::Json => to_json(&json!({ "kind": "verification", "subject": what, "verdicts": verdicts, "pass": pass, "extra": extra })),
        Format::Text => {
            let mut s = format!("verify {what}: {}\n", if pass { "PASS" } else { "FAIL" });
            for v in &verdicts {
                s.push_str(&format!("  {} {}", if v.pass { "ok  " } else { "FAIL" }, v.name));
                if let Some(d) = &v.detail {
                    s.push_str(&format!(": {d}"));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output { text: out, code: if pass { EXIT_PASS } else { EXIT_CHECK } })
}

type Checked = (String, Vec<Verdict>, Value);

fn verify_json(v: &Value, args: &VerifyArgs) -> CliResult<Checked> {
    match v.get("kind").and_then(Value::as_str) {
        Some("report") => {
            let rep: Report = serde_json::from_value(v.clone())?;
            let again = reverify(&rep)?;
            let mut verdicts = vec![Verdict::new(
                "recomputed verdicts match the stored ones",
                again == rep.verdicts,
                (again != rep.verdicts).then(|| "stored verdicts differ".to_string()),
            )];
            verdicts.extend(again);
            if rep.budget_exhausted {
                verdicts.push(Verdict::new("run completed within budget", false, None));
            }
            Ok((format!("{} report", rep.pipeline), verdicts, json!({ "stored": text_summary(&rep) })))
        }
        Some("respecting-pair") => {
            let pair: RespectingPair = serde_json::from_value(v["pair"].clone())?;
            let check = verify_respects(&pair.outcome.witness);
            let detail = check.reason.clone().or(check.failing_edge.map(|e| format!("edge {e:?}")));
            Ok(("respecting pair".into(), vec![Verdict::new("multigraph respects its host", check.ok, detail)], json!({})))
        }
        _ if v.get("degenerate_edges").is_some() => {
            let sys: CycleSystem = serde_json::from_value(v.clone())?;
            let g = instance::multi(&instance::read(need_instance(args)?)?)?;
            let r = verify_cycle_system(&g, &sys, &g.colours());
            Ok(("cycle system".into(), vec![Verdict::check("rainbow cycle system spanning φ(G)", r)], json!({ "size": sys.len() })))
        }
        _ if v.get("matching").is_some() && v.get("mode").is_some() => {
            let cert: DenseMatchingCertificate = serde_json::from_value(v.clone())?;
            let h = instance::hyper(&instance::read(need_instance(args)?)?)?;
            let check = verify_dense_matching(&h, &cert)?;
            let detail = check.failing_index.map(|i| format!("row {i} has {} witnesses", check.counts[i]));
            Ok(("dense matching".into(), vec![Verdict::new("every row meets the threshold", check.ok, detail)], json!({ "counts": check.counts })))
        }
        _ => Err(CliError::usage("unrecognised JSON: expected a report, respecting-pair, cycle system or certificate")),
    }
}

fn need_instance(args: &VerifyArgs) -> CliResult<&PathBuf> {
    args.instance.as_ref().ok_or_else(|| CliError::usage("this witness needs --instance"))
}

/// Reads `k` and `t` from a `# triangle-cycle k=.. t=..` header.
fn triangle_header(text: &str) -> Option<(usize, usize)> {
    let line = text.lines().find_map(|l| l.trim().strip_prefix('#')?.trim().strip_prefix("triangle-cycle"))?;
    let mut k = None;
    let mut t = None;
    for kv in line.split_whitespace() {
        match kv.split_once('=') {
            Some(("k", v)) => k = v.parse().ok(),
            Some(("t", v)) => t = v.parse().ok(),
            _ => {}
        }
    }
    Some((k?, t?))
}

fn verify_triangle(text: &str) -> CliResult<Checked> {
    let (k, t) = triangle_header(text).ok_or_else(|| CliError::usage("HGRAPH input needs a '# triangle-cycle k=.. t=..' header"))?;
    let graph = parse_hgraph(text)?;
    let m = (k - 1) * t;
    if graph.k() != k || graph.n() != m + t {
        return Err(CliError::usage(format!("header says k = {k}, t = {t} but the graph has k = {}, n = {}", graph.k(), graph.n())));
    }
    let tc = TriangleCycle { k, t, a: (0..m).collect(), b: (m..m + t).collect(), graph };
    let check = verify_triangle_cycle(&tc);
    let extra = json!({ "sampled": check.sampled, "subsets_checked": check.subsets_checked, "max_degree": tc.max_degree() });
    Ok(("triangle cycle".into(), vec![Verdict::new("triangle cycle properties", check.ok, check.failure)], extra))
}
