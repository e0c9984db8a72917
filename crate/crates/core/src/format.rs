//! The `.hg` text format.
//!
//! ```text
//! # comment
//! p hg <vertex_count> <edge_count>
//! n <index> <name>
//! e <v1> <v2> ... <vk>
//! ```
//!
//! Indices in the file are 1-based; in memory they are 0-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message}, line {line}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_index(tok: &str, line: usize, count: usize) -> Result<usize, ParseError> {
    let v: usize = tok
        .parse()
        .map_err(|_| err(line, format!("invalid vertex index '{tok}'")))?;
    if v == 0 || v > count {
        return Err(err(
            line,
            format!("vertex index {v} out of range 1..={count}"),
        ));
    }
    Ok(v - 1)
}

pub fn load_hypergraph(text: &[u8]) -> Result<Hypergraph, ParseError> {
    let text = std::str::from_utf8(text).map_err(|e| {
        let line = 1 + text[..e.valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count();
        err(line, "invalid UTF-8")
    })?;

    let mut header: Option<(usize, usize)> = None;
    let mut names = BTreeMap::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, "duplicate header"));
                }
                let parts: Vec<&str> = toks.collect();
                let parsed = match parts.as_slice() {
                    ["hg", n, m] => n.parse().ok().zip(m.parse().ok()),
                    _ => None,
                };
                let (n, m) = parsed.ok_or_else(|| err(line, "malformed header"))?;
                if n > crate::hypergraph::MAX_VERTICES {
                    return Err(err(
                        line,
                        format!("vertex count {n} exceeds supported maximum"),
                    ));
                }
                header = Some((n, m));
            }
            Some("n") => {
                let (n, _) = header.ok_or_else(|| err(line, "name line before header"))?;
                let tok = toks
                    .next()
                    .ok_or_else(|| err(line, "missing vertex index"))?;
                let v = parse_index(tok, line, n)?;
                let name = trimmed[1..].trim_start()[tok.len()..].trim();
                if name.is_empty() {
                    return Err(err(line, "missing vertex name"));
                }
                if names.insert(v, name.to_string()).is_some() {
                    return Err(err(line, format!("duplicate name for vertex {}", v + 1)));
                }
            }
            Some("e") => {
                let (n, m) = header.ok_or_else(|| err(line, "edge line before header"))?;
                let mut e = Vec::new();
                for tok in toks {
                    let v = parse_index(tok, line, n)?;
                    if e.contains(&v) {
                        return Err(err(line, "duplicate vertex"));
                    }
                    e.push(v);
                }
                if e.is_empty() {
                    return Err(err(line, "empty edge"));
                }
                if edges.len() == m {
                    return Err(err(
                        line,
                        format!("edge count mismatch: more than {m} edges"),
                    ));
                }
                edges.push(e);
            }
            Some(other) => return Err(err(line, format!("unknown line type '{other}'"))),
            None => unreachable!(),
        }
    }

    let (n, m) = header.ok_or_else(|| err(last_line.max(1), "missing header"))?;
    if edges.len() != m {
        return Err(err(
            last_line.max(1),
            format!(
                "edge count mismatch: header says {m}, found {}",
                edges.len()
            ),
        ));
    }
    let h = Hypergraph::new(n, edges).map_err(|e| match e {
        HypergraphError::DuplicateEdge(i) => err(edge_line(text, i), "duplicate edge"),
        other => err(last_line, other.to_string()),
    })?;
    h.with_names(names)
        .map_err(|e| err(last_line, e.to_string()))
}

/// Line number of the `i`-th edge line, for diagnostics.
fn edge_line(text: &str, i: usize) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with("e "))
        .nth(i)
        .map(|(n, _)| n + 1)
        .unwrap_or(0)
}

/// Canonical text: header, names by index, edges in stored order.
pub fn save_hypergraph(h: &Hypergraph) -> Vec<u8> {
    let mut out = String::new();
    writeln!(out, "p hg {} {}", h.vertex_count(), h.edge_count()).unwrap();
    for (v, name) in h.names() {
        writeln!(out, "n {} {}", v + 1, name).unwrap();
    }
    for e in h.edges() {
        out.push('e');
        for &v in e {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out.into_bytes()
}
