//! Line-based interchange formats.
//!
//! ```text
//! HGRAPH k=3 n=5 r=2
//! 0 1 2 c=0
//! MGRAPH n=4
//! 0 1 c=red
//! ```
//! `#` starts a comment. Multigraph colour labels that are all non-negative
//! integers are used as colour ids directly; otherwise labels are mapped to
//! ids in sorted order and the table is returned alongside the graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{ColouredKGraph, Colour};
use crate::multigraph::EdgeColouredMultigraph;

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn header_fields(line: usize, rest: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let mut map = BTreeMap::new();
    for tok in rest.split_whitespace() {
        let Some((key, val)) = tok.split_once('=') else {
            return parse_err(line, format!("malformed header field `{tok}`"));
        };
        let Ok(val) = val.parse::<usize>() else {
            return parse_err(line, format!("header field `{key}` is not a non-negative integer"));
        };
        map.insert(key.to_string(), val);
    }
    keys.iter()
        .map(|k| match map.get(*k) {
            Some(&v) => Ok(v),
            None => parse_err(line, format!("header missing `{k}=`")),
        })
        .collect()
}

fn split_colour(line: usize, l: &str) -> Result<(Vec<&str>, &str)> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    let Some(last) = toks.last() else {
        return parse_err(line, "empty edge line");
    };
    let Some(label) = last.strip_prefix("c=") else {
        return parse_err(line, "edge line must end with `c=<colour>`");
    };
    Ok((toks[..toks.len() - 1].to_vec(), label))
}

fn parse_vertex(line: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>().or_else(|_| parse_err(line, format!("`{tok}` is not a vertex id")))
}

pub fn parse_hgraph(text: &str) -> Result<ColouredKGraph> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return parse_err(0, "missing HGRAPH header");
    };
    let Some(rest) = header.strip_prefix("HGRAPH") else {
        return parse_err(hl, "expected `HGRAPH k=<k> n=<n> r=<r>`");
    };
    let f = header_fields(hl, rest, &["k", "n", "r"])?;
    let (k, n, r) = (f[0], f[1], f[2]);
    let mut edges = Vec::new();
    for (line, l) in lines {
        let (vs, label) = split_colour(line, l)?;
        if vs.len() != k {
            return parse_err(line, format!("edge has {} vertices, expected {k}", vs.len()));
        }
        let vs = vs.iter().map(|t| parse_vertex(line, t)).collect::<Result<Vec<_>>>()?;
        let c = label.parse::<Colour>().or_else(|_| parse_err(line, format!("colour `{label}` is not an integer")))?;
        edges.push((vs, c));
    }
    ColouredKGraph::new(k, n, r, edges)
}

pub fn write_hgraph(h: &ColouredKGraph) -> String {
    let mut out = format!("HGRAPH k={} n={} r={}\n", h.k(), h.n(), h.r());
    for (e, c) in h.edges() {
        for v in e {
            let _ = write!(out, "{v} ");
        }
        let _ = writeln!(out, "c={c}");
    }
    out
}

/// Parsed multigraph plus the colour-label table (`labels[id]`).
#[derive(Clone, Debug)]
pub struct ParsedMultigraph {
    pub graph: EdgeColouredMultigraph,
    pub labels: BTreeMap<Colour, String>,
}

pub fn parse_mgraph(text: &str) -> Result<ParsedMultigraph> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return parse_err(0, "missing MGRAPH header");
    };
    let Some(rest) = header.strip_prefix("MGRAPH") else {
        return parse_err(hl, "expected `MGRAPH n=<n>`");
    };
    let n = header_fields(hl, rest, &["n"])?[0];
    let mut raw = Vec::new();
    for (line, l) in lines {
        let (vs, label) = split_colour(line, l)?;
        if vs.len() != 2 {
            return parse_err(line, "multigraph edge needs exactly two endpoints");
        }
        let u = parse_vertex(line, vs[0])?;
        let v = parse_vertex(line, vs[1])?;
        if u == v {
            return parse_err(line, format!("loop at vertex {u}"));
        }
        if u >= n || v >= n {
            return parse_err(line, format!("endpoint outside 0..{n}"));
        }
        raw.push((u, v, label.to_string()));
    }
    let numeric = raw.iter().all(|(_, _, l)| l.parse::<usize>().is_ok());
    let ids: BTreeMap<String, Colour> = if numeric {
        raw.iter().map(|(_, _, l)| (l.clone(), l.parse().unwrap())).collect()
    } else {
        let mut labels: Vec<&String> = raw.iter().map(|(_, _, l)| l).collect();
        labels.sort();
        labels.dedup();
        labels.into_iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()
    };
    let edges = raw.iter().map(|(u, v, l)| (*u, *v, ids[l])).collect();
    let labels = ids.into_iter().map(|(l, c)| (c, l)).collect();
    Ok(ParsedMultigraph { graph: EdgeColouredMultigraph::new(n, edges)?, labels })
}

pub fn write_mgraph(g: &EdgeColouredMultigraph) -> String {
    let mut out = format!("MGRAPH n={}\n", g.n());
    for &(u, v, c) in g.edges() {
        let _ = writeln!(out, "{u} {v} c={c}");
    }
    out
}
