//! `tightpart stats`: one CSV row per report (or per compared instance)
//! plus aggregated plot data.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::{json, Value};

use crate::instance;
use crate::report::{to_json, CliError, CliResult, Output, Report, EXIT_PASS};
use crate::run::{BlowupResult, CoverResult, DenseResult, OracleResult, Pipeline, RainbowResult};
use crate::Global;

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Report files written by `tightpart run`, all from the same pipeline.
    #[arg(required = true)]
    pub reports: Vec<PathBuf>,
    /// Also write aggregated plot data (JSON) here.
    #[arg(long)]
    pub plot_out: Option<PathBuf>,
}

fn load(path: &Path) -> CliResult<Report> {
    let text = instance::read(path)?;
    if text.trim().is_empty() {
        return Err(CliError::usage(format!("{}: empty file", path.display())));
    }
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: not a run report: {e}", path.display())))
}

fn typed<T: serde::de::DeserializeOwned>(path: &str, v: &Value) -> CliResult<T> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::usage(format!("{path}: result does not match its pipeline: {e}")))
}

pub fn cmd_stats(args: &StatsArgs, _global: &Global) -> CliResult<Output> {
    let reports = args
        .reports
        .iter()
        .map(|p| Ok((p.display().to_string(), load(p)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let first = &reports[0].1.pipeline;
    let odd: Vec<&str> = reports.iter().filter(|(_, r)| &r.pipeline != first).map(|(p, _)| p.as_str()).collect();
    if !odd.is_empty() {
        return Err(CliError::usage(format!("reports mix pipelines: {} differ from {first}", odd.join(", "))));
    }
    let pipeline = Pipeline::from_name(first).ok_or_else(|| CliError::usage(format!("unknown pipeline {first:?}")))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut plot = json!({ "pipeline": first });
    let csv_err = |e: csv::Error| CliError::usage(e.to_string());
    // Budget-exhausted reports carry no typed result; they are only counted.
    let live = |r: &Report| !r.budget_exhausted;
    match pipeline {
        Pipeline::Cover => {
            w.write_record(["file", "k", "n", "r", "epsilon", "cycles", "leftover", "partition_size", "reference_count", "bound_digits", "pass"])
                .map_err(csv_err)?;
            let mut by_eps: BTreeMap<String, (f64, f64, usize)> = BTreeMap::new();
            let mut points = Vec::new();
            for (path, rep) in reports.iter().filter(|(_, r)| live(r)) {
                let res: CoverResult = typed(path, &rep.result)?;
                let digits = res.theorem_bound.as_ref().map(|b| b.value.to_string().len());
                w.write_record([
                    path.clone(),
                    res.k.to_string(),
                    res.n.to_string(),
                    res.r.to_string(),
                    res.report.epsilon.to_string(),
                    res.report.cycles.len().to_string(),
                    res.report.leftover.len().to_string(),
                    res.partition_size.to_string(),
                    format!("{:.3}", res.report.reference_count),
                    digits.map_or(String::new(), |d| d.to_string()),
                    rep.pass.to_string(),
                ])
                .map_err(csv_err)?;
                let frac = if res.n == 0 { 0.0 } else { res.report.leftover.len() as f64 / res.n as f64 };
                let e = by_eps.entry(res.report.epsilon.to_string()).or_default();
                e.0 += frac;
                e.1 += res.report.cycles.len() as f64;
                e.2 += 1;
                points.push(json!({ "r": res.r, "cycles": res.report.cycles.len(), "reference": res.report.reference_count, "bound_digits": digits }));
            }
            let leftover: Vec<Value> = by_eps
                .iter()
                .map(|(eps, (f, c, m))| json!({ "epsilon": eps.parse::<f64>().unwrap_or(0.0), "mean_leftover_fraction": f / *m as f64, "mean_cycles": c / *m as f64, "runs": m }))
                .collect();
            plot["leftover_vs_epsilon"] = json!(leftover);
            plot["cycles_vs_bound"] = json!(points);
        }
        Pipeline::RainbowSystem => {
            w.write_record(["file", "n", "colours", "delta0", "branch", "system_size", "levels", "closings", "failure_stage", "pass"])
                .map_err(csv_err)?;
            let mut points = Vec::new();
            for (path, rep) in reports.iter().filter(|(_, r)| live(r)) {
                let r: RainbowResult = typed(path, &rep.result)?;
                let r = r.report;
                let size = r.system.as_ref().map(|s| s.len());
                w.write_record([
                    path.clone(),
                    r.n.to_string(),
                    r.colours.to_string(),
                    r.delta0.to_string(),
                    format!("{:?}", r.branch).to_lowercase(),
                    size.map_or(String::new(), |s| s.to_string()),
                    r.levels.len().to_string(),
                    r.closings.len().to_string(),
                    r.failure.as_ref().map_or(String::new(), |f| f.stage.clone()),
                    rep.pass.to_string(),
                ])
                .map_err(csv_err)?;
                points.push(json!({ "colours": r.colours, "system_size": size, "bound": r.cycle_bound }));
            }
            plot["system_size_vs_colours"] = json!(points);
        }
        Pipeline::DenseMatching => {
            w.write_record(["file", "semi_rows", "semi_threshold", "promised_threshold", "half_rows", "half_threshold", "half_target", "pass"])
                .map_err(csv_err)?;
            let mut points = Vec::new();
            for (path, rep) in reports.iter().filter(|(_, r)| live(r)) {
                let r: DenseResult = typed(path, &rep.result)?;
                let (s, h) = (&r.outcome.semi, &r.outcome.half);
                w.write_record([
                    path.clone(),
                    s.certificate.matching.len().to_string(),
                    s.certificate.threshold.to_string(),
                    format!("{:.6e}", s.promised_threshold),
                    h.certificate.matching.len().to_string(),
                    h.certificate.threshold.to_string(),
                    format!("{:.6e}", h.target_threshold),
                    rep.pass.to_string(),
                ])
                .map_err(csv_err)?;
                points.push(json!({ "rows": s.certificate.matching.len(), "semi": s.certificate.threshold, "half": h.certificate.threshold }));
            }
            plot["thresholds"] = json!(points);
        }
        Pipeline::Blowup => {
            w.write_record(["file", "k", "r", "n", "blocks", "lifted", "perm_samples", "perm_mean", "perm_expectation", "perm_std_error", "pass"])
                .map_err(csv_err)?;
            let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
            for (path, rep) in reports.iter().filter(|(_, r)| live(r)) {
                let r: BlowupResult = typed(path, &rep.result)?;
                let p = r.permutation.as_ref();
                let f = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.6}"));
                w.write_record([
                    path.clone(),
                    r.family.k.to_string(),
                    r.family.r.to_string(),
                    r.family.n.to_string(),
                    r.family.blocks.iter().filter(|b| b.outcome.is_some()).count().to_string(),
                    r.lifted.len().to_string(),
                    p.map_or(String::new(), |p| p.samples.to_string()),
                    f(p.map(|p| p.mean)),
                    f(p.map(|p| p.expectation)),
                    f(p.map(|p| p.std_error)),
                    rep.pass.to_string(),
                ])
                .map_err(csv_err)?;
                for (size, count) in p.map(|p| p.histogram.clone()).unwrap_or_default() {
                    *hist.entry(size).or_default() += count;
                }
            }
            plot["permutation_histogram"] = json!(hist.into_iter().map(|(s, c)| json!({ "size": s, "count": c })).collect::<Vec<_>>());
        }
        Pipeline::OracleCompare => {
            w.write_record(["file", "instance", "kind", "n", "r", "oracle", "pipeline", "via", "pass"]).map_err(csv_err)?;
            let mut points = Vec::new();
            for (path, rep) in reports.iter().filter(|(_, r)| live(r)) {
                let r: OracleResult = typed(path, &rep.result)?;
                for row in r.rows {
                    let cell = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
                    w.write_record([
                        path.clone(),
                        row.instance.clone(),
                        row.kind.clone(),
                        row.n.to_string(),
                        row.r.to_string(),
                        cell(row.oracle),
                        cell(row.pipeline),
                        row.pipeline_name.clone(),
                        rep.pass.to_string(),
                    ])
                    .map_err(csv_err)?;
                    points.push(json!({ "r": row.r, "oracle": row.oracle, "pipeline": row.pipeline }));
                }
            }
            plot["oracle_vs_pipeline"] = json!(points);
        }
    }
    plot["reports"] = json!(reports.len());
    plot["budget_exhausted"] = json!(reports.iter().filter(|(_, r)| !live(r)).count());
    if let Some(p) = &args.plot_out {
        std::fs::write(p, to_json(&plot))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::usage(e.to_string()))?;
    Ok(Output { text, code: EXIT_PASS })
}
