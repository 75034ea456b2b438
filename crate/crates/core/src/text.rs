//! Plain-text edge-list format shared by every CLI command.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v        (m lines, 0 <= u < v < n, lexicographically sorted)
//! ```
//!
//! The reader accepts edges in any orientation and order; the writer is
//! canonical (sorted, single spaces, trailing newline).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn numbers(line: &str, lineno: usize) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(ParseError::Syntax {
            line: lineno,
            message: format!("expected two non-negative integers, got {line:?}"),
        }),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = numbers(header, lineno)?;
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        edges.push(numbers(line, lineno)?);
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
