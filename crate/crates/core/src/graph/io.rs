use std::fmt::Write;

use thiserror::Error;

use super::{Graph, GraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing header line `n <vertexCount>`")]
    MissingHeader,
    #[error("malformed header {0:?}, expected `n <vertexCount>`")]
    BadHeader(String),
    #[error("malformed edge line {0:?}, expected `u v`")]
    BadEdge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses the edge-list format:
///
/// ```text
/// # comment
/// n 3
/// 0 1
/// 1 2
/// ```
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |kind| ParseError {
            line: line_no,
            kind,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                let n = match fields.as_slice() {
                    ["n", count] => count
                        .parse::<usize>()
                        .map_err(|_| err(ParseErrorKind::BadHeader(line.to_string())))?,
                    _ => return Err(err(ParseErrorKind::BadHeader(line.to_string()))),
                };
                graph = Some(Graph::empty(n));
            }
            Some(g) => {
                let (u, v) = match fields.as_slice() {
                    [u, v] => match (u.parse::<usize>(), v.parse::<usize>()) {
                        (Ok(u), Ok(v)) => (u, v),
                        _ => return Err(err(ParseErrorKind::BadEdge(line.to_string()))),
                    },
                    _ => return Err(err(ParseErrorKind::BadEdge(line.to_string()))),
                };
                g.add_edge(u, v).map_err(|e| err(e.into()))?;
            }
        }
    }
    graph.ok_or(ParseError {
        line: last_line.max(1),
        kind: ParseErrorKind::MissingHeader,
    })
}

/// Writes the header and one `u v` line per edge with `u < v`.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Graphviz rendering; vertices in `highlight` are drawn filled.
pub fn to_dot(g: &Graph, highlight: &VertexSet) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        if highlight.contains(&v) {
            writeln!(out, "  {v} [label=\"{v}\", style=filled, fillcolor=lightblue];").unwrap();
        } else {
            writeln!(out, "  {v} [label=\"{v}\"];").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
