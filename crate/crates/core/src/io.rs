//! Edge-list and graph6 formats.
//!
//! Edge list: one `u v` pair per line, 0-indexed; blank lines and `#`
//! comments are ignored. An optional header line `n <count>` fixes the vertex
//! count (otherwise it is one more than the largest id seen).

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() == 2 && toks[0] == "n" {
            if n.is_some() || !edges.is_empty() {
                return Err(GraphError::Parse { line: line_no, message: "header must precede edges".into() });
            }
            n = Some(toks[1].parse().map_err(|_| GraphError::Parse {
                line: line_no,
                message: format!("bad vertex count {:?}", toks[1]),
            })?);
            continue;
        }
        if toks.len() != 2 {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("expected two vertex ids, found {:?}", line),
            });
        }
        let parse = |t: &str| {
            t.parse::<usize>().map_err(|_| GraphError::Parse {
                line: line_no,
                message: format!("bad vertex id {t:?}"),
            })
        };
        let (u, v) = (parse(toks[0])?, parse(toks[1])?);
        if u == v {
            return Err(GraphError::Parse { line: line_no, message: format!("self-loop at {u}") });
        }
        if let Some(n) = n {
            if u >= n || v >= n {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: format!("vertex {} out of range for n = {n}", u.max(v)),
                });
            }
        }
        max_id = Some(max_id.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = n.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Graph::from_edges(n, edges)
}

/// Writes the edge list with an `n` header so isolated vertices survive.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let line = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes: Vec<u8> = line.bytes().collect();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Graph6("byte outside 63..=126".into()));
    }
    let vals: Vec<u64> = bytes.iter().map(|&b| (b - 63) as u64).collect();
    let (n, rest) = match vals.as_slice() {
        [] => return Err(GraphError::Graph6("empty input".into())),
        [63, 63, r @ ..] => {
            if r.len() < 6 {
                return Err(GraphError::Graph6("truncated 8-byte size".into()));
            }
            (r[..6].iter().fold(0, |a, &x| (a << 6) | x) as usize, &r[6..])
        }
        [63, r @ ..] => {
            if r.len() < 3 {
                return Err(GraphError::Graph6("truncated 4-byte size".into()));
            }
            (r[..3].iter().fold(0, |a, &x| (a << 6) | x) as usize, &r[3..])
        }
        [x, r @ ..] => (*x as usize, r),
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() < need {
        return Err(GraphError::Graph6(format!("expected {need} data bytes, found {}", rest.len())));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let bit = (rest[k / 6] >> (5 - k % 6)) & 1;
            if bit == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for sh in [12, 6, 0] {
            out.push(((n >> sh) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for sh in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> sh) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

/// Parses either format, guessing graph6 when the first non-empty line is a
/// single token of printable graph6 bytes that is not a number.
pub fn parse_any(text: &str, format: Option<Format>) -> Result<Graph, GraphError> {
    let fmt = format.unwrap_or_else(|| {
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        if first.starts_with(">>graph6<<")
            || (!first.contains(char::is_whitespace) && first.parse::<usize>().is_err() && !first.is_empty())
        {
            Format::Graph6
        } else {
            Format::EdgeList
        }
    });
    match fmt {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => parse_graph6(text),
    }
}
