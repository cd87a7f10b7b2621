//! Plain-text edge lists: a header line `n m`, then `m` lines `u v` for the
//! edge `u -> v`, vertices 0-based. Blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::OrientedGraph;

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn malformed(line: usize, message: impl Into<String>) -> EdgeListError {
    EdgeListError::Malformed {
        line,
        message: message.into(),
    }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize), EdgeListError> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, EdgeListError> {
        let field = fields
            .next()
            .ok_or_else(|| malformed(line_no, format!("missing {what}")))?;
        field
            .parse()
            .map_err(|_| malformed(line_no, format!("{what} `{field}` is not a nonnegative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(malformed(line_no, "expected exactly two fields"));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<OrientedGraph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_no, header) = lines.next().ok_or(EdgeListError::MissingHeader)?;
    let (n, m) = two_numbers(header_no, header)?;

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let (u, v) = two_numbers(line_no, line)?;
        if u >= n || v >= n {
            return Err(malformed(line_no, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(malformed(line_no, format!("loop at vertex {u}")));
        }
        if seen.contains(&(u, v)) {
            return Err(malformed(line_no, format!("duplicate edge {u} {v}")));
        }
        if seen.contains(&(v, u)) {
            return Err(malformed(line_no, format!("edge {u} {v} is anti-parallel to {v} {u}")));
        }
        seen.insert((u, v));
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(EdgeListError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(OrientedGraph::from_edges(n, edges).expect("edges checked while parsing"))
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<OrientedGraph, EdgeListError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| EdgeListError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text)
}

pub fn write_edge_list(g: &OrientedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
