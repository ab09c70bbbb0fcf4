//! Loading instance files: HGRAPH / MGRAPH text or generator JSON.

use std::path::Path;

use serde_json::Value;
use tightpart::generators::RespectingPair;
use tightpart::io::{parse_hgraph, parse_mgraph};
use tightpart::{ColouredKGraph, EdgeColouredMultigraph};

use crate::report::{CliError, CliResult};

pub enum Instance {
    Hyper(ColouredKGraph),
    Multi(EdgeColouredMultigraph),
}

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn parse(text: &str) -> CliResult<Instance> {
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty()).unwrap_or("");
    if first.starts_with("HGRAPH") {
        return Ok(Instance::Hyper(parse_hgraph(text)?));
    }
    if first.starts_with("MGRAPH") {
        return Ok(Instance::Multi(parse_mgraph(text)?.graph));
    }
    if first.starts_with('{') {
        let v: Value = serde_json::from_str(text)?;
        if v.get("kind").and_then(Value::as_str) == Some("respecting-pair") {
            let pair: RespectingPair = serde_json::from_value(v["pair"].clone())?;
            return Ok(Instance::Multi(pair.outcome.witness.graph));
        }
        return Err(CliError::usage("JSON instance must be a respecting-pair file"));
    }
    Err(CliError::usage("unrecognised instance: expected HGRAPH, MGRAPH or respecting-pair JSON"))
}

pub fn hyper(text: &str) -> CliResult<ColouredKGraph> {
    match parse(text)? {
        Instance::Hyper(h) => Ok(h),
        Instance::Multi(_) => Err(CliError::usage("this pipeline needs an HGRAPH instance")),
    }
}

pub fn multi(text: &str) -> CliResult<EdgeColouredMultigraph> {
    match parse(text)? {
        Instance::Multi(g) => Ok(g),
        Instance::Hyper(_) => Err(CliError::usage("this pipeline needs an MGRAPH or respecting-pair instance")),
    }
}
