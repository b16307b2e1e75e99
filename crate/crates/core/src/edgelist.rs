//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n 4 directed 0
//! 0 1 1
//! 1 2 2.5
//! ```
//!
//! The header must be the first non-comment line. Ids are 0-indexed and
//! weights are decimal.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fmt::sig;
use crate::graph::{Edge, FeedbackGraph};
use crate::transition::TransitionGraph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<FeedbackGraph> {
    let mut header: Option<(usize, bool)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if header.is_none() {
            match fields.as_slice() {
                ["n", count, "directed", flag] => {
                    let n = count
                        .parse::<usize>()
                        .map_err(|e| parse_err(line_no, format!("bad vertex count: {e}")))?;
                    let directed = match *flag {
                        "0" => false,
                        "1" => true,
                        other => {
                            return Err(parse_err(
                                line_no,
                                format!("directed flag must be 0 or 1, got {other:?}"),
                            ))
                        }
                    };
                    header = Some((n, directed));
                    continue;
                }
                _ => {
                    return Err(parse_err(
                        line_no,
                        "expected header `n <count> directed <0|1>`",
                    ))
                }
            }
        }
        let [u, v, w] = fields.as_slice() else {
            return Err(parse_err(
                line_no,
                format!("expected `u v w`, got {} fields", fields.len()),
            ));
        };
        let u = u
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad vertex id {u:?}: {e}")))?;
        let v = v
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad vertex id {v:?}: {e}")))?;
        let w = w
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad weight {w:?}: {e}")))?;
        edges.push(Edge::new(u, v, w));
    }
    let (n, directed) = header.ok_or_else(|| parse_err(0, "missing header line"))?;
    FeedbackGraph::new(n, edges, directed)
}

pub fn read(path: &Path) -> Result<FeedbackGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write_graph(g: &FeedbackGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n {} directed {}",
        g.vertex_count(),
        u8::from(g.is_directed())
    );
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, sig(e.w));
    }
    out
}

/// Transition graph as an arc list `u v prob base`, where `base` is the
/// feedback-graph vertex of `u`. Self-loops are included.
pub fn write_transition(t: &TransitionGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n {} directed 1", t.dup_count());
    let _ = writeln!(out, "# u v prob base");
    for u in 0..t.dup_count() {
        for (v, prob) in t.arcs(u) {
            let _ = writeln!(out, "{} {} {} {}", u, v, sig(prob), t.base_of(u));
        }
    }
    out
}
