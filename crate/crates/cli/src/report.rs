//! Input loading, digests, witness verification and the JSON report shapes
//! shared by the subcommands.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use sqham::io::{parse_any, Format};
use sqham::nonextremal::NonExtremalError;
use sqham::verify::{square_cycle_violation, Violation};
use sqham::{Graph, Parameters, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Witness,
    Ok,
    Failure,
    Precondition,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Witness | Status::Ok => 0,
            Status::Failure => 1,
            Status::Precondition => 2,
        }
    }
}

/// A command's JSON document together with the status that decides the
/// exit code.
pub struct Outcome {
    pub status: Status,
    pub body: Value,
}

impl Outcome {
    pub fn new(status: Status, body: Value) -> Self {
        Outcome { status, body }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
    pub format: &'static str,
    pub n: usize,
    pub edges: usize,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads and parses a graph file. Any failure is reported as a
/// precondition outcome naming the file and, for parse errors, the line.
pub fn load_graph(path: &Path, format: Option<Format>) -> Result<(Graph, InputInfo), Outcome> {
    let bytes = std::fs::read(path).map_err(|e| input_error(path, format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| input_error(path, "input is not UTF-8".into()))?;
    let g = parse_any(&text, format).map_err(|e| input_error(path, format!("{}: {e}", path.display())))?;
    let detected = match format {
        Some(Format::Graph6) => "graph6",
        Some(Format::EdgeList) => "edgelist",
        None if sqham::io::parse_edge_list(&text).is_ok() => "edgelist",
        None => "graph6",
    };
    let info = InputInfo {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
        format: detected,
        n: g.n(),
        edges: g.edge_count(),
    };
    Ok((g, info))
}

fn input_error(path: &Path, message: String) -> Outcome {
    Outcome::new(
        Status::Precondition,
        json!({ "status": Status::Precondition, "stage": "input", "input": path.display().to_string(), "error": message }),
    )
}

/// The first reason a claimed cycle is not a square Hamiltonian cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Problem {
    OutOfRange { index: usize, vertex: Vertex, n: usize },
    Duplicate { index: usize, vertex: Vertex, first: usize },
    Length { expected: usize, found: usize },
    MissingEdge { i: usize, j: usize, u: Vertex, v: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub length: usize,
    pub n: usize,
    pub problem: Option<Problem>,
}

/// Checks ids, then repetitions, then length, then every pair at cyclic
/// distance one or two.
pub fn verdict(g: &Graph, cycle: &[Vertex]) -> Verdict {
    let n = g.n();
    let problem = first_problem(g, cycle);
    Verdict { valid: problem.is_none(), length: cycle.len(), n, problem }
}

fn first_problem(g: &Graph, cycle: &[Vertex]) -> Option<Problem> {
    let n = g.n();
    let mut seen = vec![usize::MAX; n];
    for (index, &vertex) in cycle.iter().enumerate() {
        if vertex >= n {
            return Some(Problem::OutOfRange { index, vertex, n });
        }
        if seen[vertex] != usize::MAX {
            return Some(Problem::Duplicate { index, vertex, first: seen[vertex] });
        }
        seen[vertex] = index;
    }
    if cycle.len() != n || n < 5 {
        return Some(Problem::Length { expected: n, found: cycle.len() });
    }
    match square_cycle_violation(g, cycle) {
        Ok(None) => None,
        Ok(Some(Violation::MissingEdge { i, j, u, v })) => Some(Problem::MissingEdge { i, j, u, v }),
        // Ids and repetitions were ruled out above.
        Ok(Some(v)) => unreachable!("unexpected violation {v:?}"),
        Err(_) => Some(Problem::Length { expected: n, found: cycle.len() }),
    }
}

/// Reads a claimed cycle: a report with a `cycle` field, a bare JSON array,
/// or whitespace-separated ids.
pub fn parse_witness(text: &str) -> Result<Vec<Vertex>, String> {
    if let Ok(v) = serde_json::from_str::<Value>(text) {
        let arr = match &v {
            Value::Array(_) => &v,
            Value::Object(o) => o.get("cycle").ok_or("witness JSON has no \"cycle\" field")?,
            _ => return Err("witness JSON must be an array or an object".into()),
        };
        return serde_json::from_value(arr.clone()).map_err(|e| format!("bad cycle: {e}"));
    }
    text.split_whitespace()
        .enumerate()
        .map(|(i, t)| t.parse::<Vertex>().map_err(|_| format!("token {} ({t:?}) is not a vertex id", i + 1)))
        .collect()
}

pub fn millis(timings: &[(&'static str, Duration)]) -> BTreeMap<&'static str, f64> {
    timings.iter().map(|&(k, d)| (k, (d.as_secs_f64() * 1e6).round() / 1e3)).collect()
}

/// The failure classes: precondition violations exit with 2, everything
/// else is an honest failure.
pub fn error_status(e: &NonExtremalError) -> Status {
    if e.stage() == "precondition" {
        Status::Precondition
    } else {
        Status::Failure
    }
}

/// Structured details of a pipeline failure beyond its message.
pub fn error_diagnostic(e: &NonExtremalError) -> Option<Value> {
    match e {
        NonExtremalError::CoverStalled(d) => serde_json::to_value(d).ok(),
        NonExtremalError::ConnectorExhausted { pair, deepest } => Some(json!({ "pair": pair, "deepest_case": deepest })),
        NonExtremalError::Rebalance { block, detail } => Some(json!({ "block": block, "detail": detail })),
        NonExtremalError::Insertion { vertex, trace } => Some(json!({ "vertex": vertex, "trace": trace })),
        NonExtremalError::Block { block, source } => Some(json!({ "block": block, "detail": source.to_string() })),
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counters {
    pub coverage: usize,
    pub connectors: usize,
    pub insertions: usize,
    pub forbidden: usize,
}

/// Full pipeline report. `cycle`, when present, has been re-verified
/// against the input and the verdict sits next to it.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport<S: Serialize> {
    pub command: &'static str,
    pub input: InputInfo,
    pub parameters: Parameters,
    pub status: Status,
    /// Last stage reached: the failing one, or the final one on success.
    pub stage: &'static str,
    pub error: Option<String>,
    pub diagnostic: Option<Value>,
    pub cycle: Option<Vec<Vertex>>,
    pub verification: Option<Verdict>,
    pub stats: Option<S>,
    pub counters: Option<Counters>,
    pub timings_ms: BTreeMap<&'static str, f64>,
}
