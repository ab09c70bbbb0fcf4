//! Report envelope, verdicts, exit codes and the JSON-lines stage log.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tightpart::Error;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Parse { .. } => EXIT_USAGE,
            Error::SizeGuard(_) => EXIT_BUDGET,
            Error::Assertion(_) | Error::Failure { .. } => EXIT_CHECK,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(format!("bad JSON: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: Option<String>) -> Self {
        Verdict { name: name.into(), pass, detail }
    }

    pub fn check(name: impl Into<String>, r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => Verdict::new(name, true, None),
            Err(e) => Verdict::new(name, false, Some(e)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceText {
    pub path: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub pipeline: String,
    pub instances: Vec<String>,
    pub seed: Option<u64>,
    pub budget_nodes: Option<u64>,
    pub options: Value,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub pipeline: String,
    pub config: RunConfig,
    pub instances: Vec<InstanceText>,
    pub result: Value,
    pub verdicts: Vec<Verdict>,
    pub budget_exhausted: bool,
    pub pass: bool,
    pub timing: Timing,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.budget_exhausted {
            EXIT_BUDGET
        } else if self.pass {
            EXIT_PASS
        } else {
            EXIT_CHECK
        }
    }
}

/// JSON-lines stage log on stderr.
pub struct Log {
    start: Instant,
}

impl Log {
    pub fn new() -> Self {
        Log { start: Instant::now() }
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.start.elapsed().as_secs_f64() * 1000.0
    }

    pub fn stage(&self, stage: &str, detail: impl Into<String>) {
        let line = serde_json::json!({ "stage": stage, "detail": detail.into(), "elapsed_ms": self.elapsed_ms() });
        eprintln!("{line}");
    }
}

pub fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Verdict lines for `--format text`.
pub fn text_summary(rep: &Report) -> String {
    let mut out = format!("pipeline {}: {}\n", rep.pipeline, if rep.pass { "PASS" } else { "FAIL" });
    for v in &rep.verdicts {
        out.push_str(&format!("  {} {}", if v.pass { "ok  " } else { "FAIL" }, v.name));
        if let Some(d) = &v.detail {
            out.push_str(&format!(": {d}"));
        }
        out.push('\n');
    }
    if rep.budget_exhausted {
        out.push_str("  budget exhausted\n");
    }
    out
}
