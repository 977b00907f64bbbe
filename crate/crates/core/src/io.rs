//! Text formats: graph JSON, plain edge lists, morphism, chain and reflexive JSON.
//!
//! Graph JSON is `{"nodes": [...], "arcs": [{"id", "src", "tgt"}, ...]}`; a
//! document wrapping it as `{"graph": {...}, ...}` is accepted too, so command
//! output can be piped back in. Maps are keyed by id and written in graph order.

use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DirectedGraph, GraphBuilder, GraphError, SharedGraph};
use crate::homology::{ArcChain, HomologyError};
use crate::morphism::GraphMorphism;
use crate::reflexive::{ReflexiveError, ReflexiveGraph};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    Validation(#[from] GraphError),
    #[error("invalid reflexive graph: {0}")]
    Reflexive(#[from] ReflexiveError),
    #[error("invalid chain: {0}")]
    Chain(#[from] HomologyError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GraphFormat {
    #[default]
    Auto,
    Json,
    EdgeList,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default)]
    pub nodes: Vec<String>,
    #[serde(default)]
    pub arcs: Vec<ArcJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<IndexMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GraphDocument {
    Wrapped { graph: GraphJson },
    Bare(GraphJson),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub nodes: IndexMap<String, String>,
    pub arcs: IndexMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub coefficients: IndexMap<String, i64>,
}

impl GraphJson {
    pub fn from_graph(g: &DirectedGraph) -> Self {
        Self {
            nodes: g.node_ids().to_vec(),
            arcs: g
                .arcs()
                .map(|a| ArcJson {
                    id: g.arc_id(a).to_string(),
                    src: g.node_id(g.source(a)).to_string(),
                    tgt: g.node_id(g.target(a)).to_string(),
                })
                .collect(),
            degeneracies: None,
        }
    }

    pub fn from_reflexive(r: &ReflexiveGraph) -> Self {
        let g = r.graph();
        let mut json = Self::from_graph(g);
        json.degeneracies = Some(
            g.nodes()
                .map(|x| (g.node_id(x).to_string(), g.arc_id(r.degeneracy(x)).to_string()))
                .collect(),
        );
        json
    }

    pub fn to_graph(&self) -> Result<DirectedGraph, GraphError> {
        DirectedGraph::build(
            self.nodes.iter().map(String::as_str),
            self.arcs.iter().map(|a| (a.id.as_str(), a.src.as_str(), a.tgt.as_str())),
        )
    }
}

impl MorphismJson {
    pub fn from_morphism(f: &GraphMorphism) -> Self {
        let (x, y) = (f.domain(), f.codomain());
        Self {
            nodes: x
                .nodes()
                .map(|v| (x.node_id(v).to_string(), y.node_id(f.map_node(v)).to_string()))
                .collect(),
            arcs: x
                .arcs()
                .map(|a| (x.arc_id(a).to_string(), y.arc_id(f.map_arc(a)).to_string()))
                .collect(),
        }
    }
}

pub fn graph_from_json(text: &str) -> Result<DirectedGraph, IoError> {
    Ok(graph_json_document(text)?.to_graph()?)
}

fn graph_json_document(text: &str) -> Result<GraphJson, IoError> {
    Ok(match serde_json::from_str::<GraphDocument>(text) {
        Ok(GraphDocument::Wrapped { graph }) | Ok(GraphDocument::Bare(graph)) => graph,
        // reparse strictly for a positioned error message
        Err(_) => serde_json::from_str::<GraphJson>(text)?,
    })
}

pub fn graph_to_json(g: &DirectedGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("plain data serializes")
}

/// One `src tgt [arc_id]` per line; `#` starts a comment. Nodes appear in
/// first-mention order, unnamed arcs get `a0`, `a1`, … skipping taken ids.
pub fn graph_from_edge_list(text: &str) -> Result<DirectedGraph, IoError> {
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [s, t] => rows.push((k + 1, *s, *t, None)),
            [s, t, id] => rows.push((k + 1, *s, *t, Some(*id))),
            _ => {
                return Err(IoError::Parse {
                    line: k + 1,
                    message: format!("expected `src tgt [arc_id]`, found {} fields", fields.len()),
                })
            }
        }
    }
    let mut builder = GraphBuilder::new();
    for &(_, s, t, _) in &rows {
        builder.ensure_node(s);
        builder.ensure_node(t);
    }
    // explicit ids first so generated ones avoid them
    let mut explicit = std::collections::HashSet::new();
    for &(line, _, _, id) in &rows {
        if let Some(id) = id {
            if !explicit.insert(id) {
                return Err(IoError::Parse {
                    line,
                    message: format!("duplicate arc id `{id}`"),
                });
            }
        }
    }
    let mut counter = 0usize;
    for (_, s, t, id) in rows {
        let (s, t) = (builder.ensure_node(s), builder.ensure_node(t));
        let id = match id {
            Some(id) => id.to_string(),
            None => loop {
                let candidate = format!("a{counter}");
                counter += 1;
                if !explicit.contains(candidate.as_str()) && !builder.contains_arc_id(&candidate) {
                    break candidate;
                }
            },
        };
        builder.add_arc(id, s, t)?;
    }
    Ok(builder.build())
}

pub fn graph_to_edge_list(g: &DirectedGraph) -> String {
    let mut out = String::new();
    for a in g.arcs() {
        out.push_str(&format!("{} {} {}\n", g.node_id(g.source(a)), g.node_id(g.target(a)), g.arc_id(a)));
    }
    out
}

/// Parses `text` as JSON or an edge list; `Auto` looks for a leading `{`.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<DirectedGraph, IoError> {
    match format {
        GraphFormat::Json => graph_from_json(text),
        GraphFormat::EdgeList => graph_from_edge_list(text),
        GraphFormat::Auto if text.trim_start().starts_with('{') => graph_from_json(text),
        GraphFormat::Auto => graph_from_edge_list(text),
    }
}

/// Reads a graph file; `Auto` decides by extension, then by content.
pub fn parse_graph_file(path: &Path, format: GraphFormat) -> Result<DirectedGraph, IoError> {
    let text = read(path)?;
    let format = match (format, path.extension().and_then(|e| e.to_str())) {
        (GraphFormat::Auto, Some("json")) => GraphFormat::Json,
        (GraphFormat::Auto, Some("txt" | "edges" | "el" | "tsv")) => GraphFormat::EdgeList,
        (f, _) => f,
    };
    parse_graph(&text, format)
}

pub fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

pub fn morphism_from_json(text: &str, domain: SharedGraph, codomain: SharedGraph) -> Result<GraphMorphism, IoError> {
    let json: MorphismJson = serde_json::from_str(text)?;
    Ok(GraphMorphism::from_ids(
        domain,
        codomain,
        json.nodes.iter().map(|(k, v)| (k.as_str(), v.as_str())),
        json.arcs.iter().map(|(k, v)| (k.as_str(), v.as_str())),
    )?)
}

pub fn morphism_to_json(f: &GraphMorphism) -> String {
    serde_json::to_string_pretty(&MorphismJson::from_morphism(f)).expect("plain data serializes")
}

pub fn chain_from_json<'g>(text: &str, g: &'g DirectedGraph) -> Result<ArcChain<'g>, IoError> {
    let json: ChainJson = serde_json::from_str(text)?;
    Ok(ArcChain::from_ids(g, json.coefficients.iter().map(|(k, &v)| (k.as_str(), v)))?)
}

pub fn chain_to_json(u: &ArcChain<'_>) -> ChainJson {
    let g = u.graph();
    ChainJson {
        coefficients: g
            .arcs()
            .filter(|&a| u.coefficient(a) != 0)
            .map(|a| (g.arc_id(a).to_string(), u.coefficient(a)))
            .collect(),
    }
}

/// Graph JSON with a `"degeneracies"` map from node id to loop id.
pub fn reflexive_from_json(text: &str) -> Result<ReflexiveGraph, IoError> {
    let doc = graph_json_document(text)?;
    let g = doc.to_graph()?.into_shared();
    let Some(deg) = doc.degeneracies else {
        return Err(IoError::Parse {
            line: 1,
            message: "reflexive graph JSON needs a `degeneracies` map".into(),
        });
    };
    Ok(ReflexiveGraph::from_ids(g, deg.iter().map(|(k, v)| (k.as_str(), v.as_str())))?)
}

pub fn reflexive_to_json(r: &ReflexiveGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_reflexive(r)).expect("plain data serializes")
}
