//! Plain-text edge-list format.
//!
//! ```text
//! # comment
//! 3            <- vertex count (first non-comment line)
//! 0 1          <- one edge per line
//! 1 2
//! #L 2         <- leader ids
//! #C 0         <- captain ids (generator metadata)
//! ```
//!
//! Duplicate edges and self-loops are errors. Other `#` lines are comments
//! and are dropped on read.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, VertexId, VertexPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing vertex count")]
    MissingHeader,
    #[error("invalid integer {0:?}")]
    BadInteger(String),
    #[error("expected \"u v\", found {0:?}")]
    BadEdgeLine(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
}

/// A parsed edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListFile {
    pub graph: Graph,
    pub partition: VertexPartition,
    /// Captain ids from `#C` lines; empty when absent.
    pub captains: Vec<VertexId>,
}

impl EdgeListFile {
    pub fn new(graph: Graph, partition: VertexPartition) -> Self {
        EdgeListFile {
            graph,
            partition,
            captains: Vec::new(),
        }
    }
}

fn parse_id(tok: &str, line: usize) -> Result<VertexId, ParseError> {
    tok.parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::BadInteger(tok.to_string()),
    })
}

/// Parses tagged id lists such as `#L 1 2 3`. Returns `None` when the line is
/// an ordinary comment.
fn tagged_ids<'a>(body: &'a str, tag: &str) -> Option<std::str::SplitWhitespace<'a>> {
    let rest = body.strip_prefix(tag)?;
    if rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some(rest.split_whitespace())
    } else {
        None
    }
}

pub fn read_edge_list(text: &str) -> Result<EdgeListFile, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut leaders: Vec<(usize, VertexId)> = Vec::new();
    let mut captains: Vec<(usize, VertexId)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(body) = trimmed.strip_prefix('#') {
            for (tag, sink) in [("L", &mut leaders), ("C", &mut captains)] {
                if let Some(ids) = tagged_ids(body, tag) {
                    for tok in ids {
                        sink.push((line, parse_id(tok, line)?));
                    }
                }
            }
            continue;
        }
        match graph.as_mut() {
            None => {
                let n = parse_id(trimmed, line)?;
                graph = Some(Graph::new(n));
            }
            Some(g) => {
                let mut toks = trimmed.split_whitespace();
                let (a, b) = match (toks.next(), toks.next(), toks.next()) {
                    (Some(a), Some(b), None) => (parse_id(a, line)?, parse_id(b, line)?),
                    _ => {
                        return Err(ParseError {
                            line,
                            kind: ParseErrorKind::BadEdgeLine(trimmed.to_string()),
                        })
                    }
                };
                Edge::new(a, b)
                    .and_then(|e| g.add_edge(e))
                    .map_err(|err| ParseError {
                        line,
                        kind: err.into(),
                    })?;
            }
        }
    }

    let graph = graph.ok_or(ParseError {
        line: text.lines().count().max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    let n = graph.n();
    for &(line, id) in leaders.iter().chain(captains.iter()) {
        if id >= n {
            return Err(ParseError {
                line,
                kind: GraphError::OutOfRange { id, n }.into(),
            });
        }
    }
    let partition = VertexPartition::new(n, leaders.into_iter().map(|(_, id)| id))
        .expect("leader ids validated above");
    let mut captains: Vec<VertexId> = captains.into_iter().map(|(_, id)| id).collect();
    captains.sort_unstable();
    captains.dedup();
    Ok(EdgeListFile {
        graph,
        partition,
        captains,
    })
}

/// Canonical rendering: optional comment header, vertex count, `#L`, `#C`,
/// then edges in lexicographic order.
pub fn write_edge_list(file: &EdgeListFile, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let _ = writeln!(out, "{}", file.graph.n());
    write_id_line(&mut out, "#L", file.partition.leaders());
    write_id_line(&mut out, "#C", &file.captains);
    for e in file.graph.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

fn write_id_line(out: &mut String, tag: &str, ids: &[VertexId]) {
    if ids.is_empty() {
        return;
    }
    out.push_str(tag);
    for id in ids {
        let _ = write!(out, " {id}");
    }
    out.push('\n');
}
