use anyhow::{Context, Result};
use graphqss::access::{CcScheme, QqScheme};
use graphqss::graph::{parse_edge_list, Graph, VertexSet};

use crate::{InputError, SchemeArgs};

pub fn input_error(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

pub fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {path}: {e}")))
}

pub fn load_graph(path: &str) -> Result<Graph> {
    let text = read_file(path)?;
    parse_edge_list(&text).map_err(|e| input_error(format!("{path}: {e}")))
}

/// Parses "1,2,3" (spaces and surrounding braces allowed; empty means ∅).
pub fn parse_list(s: &str) -> Result<VertexSet> {
    let body = s.trim().trim_start_matches('{').trim_end_matches('}');
    body.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| input_error(format!("invalid vertex {t:?} in list {s:?}")))
        })
        .collect()
}

pub fn fmt_set(set: &VertexSet) -> String {
    let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub enum Scheme {
    Cc(CcScheme),
    Qq(QqScheme),
}

impl Scheme {
    /// The CC scheme whose subsets are classified.
    pub fn cc(&self) -> &CcScheme {
        match self {
            Scheme::Cc(s) => s,
            Scheme::Qq(q) => q.share_scheme(),
        }
    }
}

/// Builds the scheme described by the flags. Errors from the library are
/// returned unwrapped so that callers can decide whether they are input
/// errors or failed preconditions.
pub fn build_scheme(args: &SchemeArgs) -> Result<std::result::Result<Scheme, graphqss::access::AccessError>> {
    let graph = load_graph(&args.graph)?;
    if let Some(dealer) = args.dealer {
        return Ok(QqScheme::new(graph, dealer).map(Scheme::Qq));
    }
    let a = args
        .a
        .as_deref()
        .ok_or_else(|| input_error("either --a or --dealer is required"))?;
    let a = parse_list(a)?;
    let (graph, a, labels) = match args.remove_vertex {
        Some(v) => {
            if v >= graph.n() {
                return Err(input_error(format!("--remove-vertex {v} is out of range")));
            }
            if a.contains(&v) {
                return Err(input_error(format!("A contains the removed vertex {v}")));
            }
            let del = graph.delete_vertex(v);
            let a = del.set_to_new(&a).context("A contains the removed vertex")?;
            (del.graph, a, del.new_to_old)
        }
        None => {
            let labels = (0..graph.n()).collect();
            (graph, a, labels)
        }
    };
    Ok(CcScheme::new(graph, a).map(|s| Scheme::Cc(s.with_labels(labels))))
}

/// Like [`build_scheme`] but treats every library error as bad input.
pub fn scheme_or_input_error(args: &SchemeArgs) -> Result<Scheme> {
    build_scheme(args)?.map_err(|e| input_error(e.to_string()))
}

/// A coalition in file labels, mapped to scheme vertex indices.
pub fn coalition(scheme: &CcScheme, list: &str) -> Result<(VertexSet, VertexSet)> {
    let labels = parse_list(list)?;
    let idx = scheme
        .from_labels(&labels)
        .map_err(|e| input_error(format!("--set: {e}")))?;
    Ok((labels, idx))
}
