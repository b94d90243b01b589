//! Edge-list and JSON graph formats.
//!
//! Edge list: a header line `n m` followed by `m` lines `u v` (0-based).
//! JSON: `{"name": ..., "n": ..., "edges": [[u, v], ...], "labels": [[...], ...] | null}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_edge_list(text: &str, name: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or(Error::EmptyInput)?;
    let pair = |line: &str| -> Result<(usize, usize)> {
        let mut it = line.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in line {line:?}")))
        });
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => Ok((a?, b?)),
            _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
        }
    };
    let (n, m) = pair(header)?;
    let edges = lines.map(pair).collect::<Result<Vec<_>>>()?;
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges, name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub name: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub labels: Option<Vec<Vec<i64>>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            name: g.name().to_string(),
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(Labeling::to_points),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(j.n, &edges, j.name)?;
        let labels = j.labels.map(Labeling::new).transpose()?;
        g.with_labels(labels)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON serializes")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Graph::try_from(j)
}

/// Parses either format, deciding by the first non-blank character.
pub fn parse_graph(text: &str, name: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        parse_edge_list(text, name)
    }
}
