//! JSON documents: graphs, traces and subgraphs.

use std::fs;
use std::path::Path;

use leavitt_core::algebra::{AlgebraContext, AlgebraError};
use leavitt_core::graph::{Graph, GraphError, Subgraph, VertexSet};
use leavitt_core::scalar::{FieldConfig, Scalar, ScalarError};
use leavitt_core::trace::{GraphTrace, TraceError};
use serde::{Deserialize, Serialize};
use serde_json::Map;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("trace value for {vertex}: {source}")]
    Scalar { vertex: String, source: ScalarError },
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub rng: String,
}

/// `{"vertices": [...], "edges": [{"id", "src", "rng"}], "S": [...]}`; a
/// missing `S` means every regular vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
}

/// `{"values": {"v": "1", "w": "1/2"}}`. Solver output may carry extra keys,
/// which are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub values: Map<String, serde_json::Value>,
}

/// `{"vertices": [...], "edges": [...]}` naming a subgraph by ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<String>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| InputError::Read { path: shown.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| InputError::Json { path: shown, source })
}

impl GraphDoc {
    pub fn from_graph(graph: &Graph, s: Option<&VertexSet>) -> GraphDoc {
        GraphDoc {
            vertices: graph.vertices().map(|v| graph.vertex_name(v).to_string()).collect(),
            edges: graph
                .edges()
                .map(|e| EdgeDoc {
                    id: graph.edge_name(e).to_string(),
                    src: graph.vertex_name(graph.source(e)).to_string(),
                    rng: graph.vertex_name(graph.range(e)).to_string(),
                })
                .collect(),
            s: s.map(|s| s.iter().map(|&v| graph.vertex_name(v).to_string()).collect()),
        }
    }

    pub fn build(&self) -> Result<(Graph, VertexSet), GraphError> {
        let graph = Graph::new(
            self.vertices.iter().map(String::as_str),
            self.edges.iter().map(|e| (e.id.as_str(), e.src.as_str(), e.rng.as_str())),
        )?;
        let s = match &self.s {
            Some(names) => graph.vertex_set(names.iter().map(String::as_str))?,
            None => graph.regular_vertices(),
        };
        graph.check_relative_set(&s)?;
        Ok((graph, s))
    }

    pub fn context(&self, field: FieldConfig) -> Result<AlgebraContext, GraphError> {
        let (graph, s) = self.build()?;
        AlgebraContext::new(graph, s, field)
    }
}

pub fn load_graph(path: &Path) -> Result<GraphDoc, InputError> {
    let doc: GraphDoc = read_json(path)?;
    doc.build()?;
    Ok(doc)
}

impl TraceDoc {
    pub fn from_trace(graph: &Graph, delta: &GraphTrace) -> TraceDoc {
        TraceDoc {
            values: graph
                .vertices()
                .map(|v| (graph.vertex_name(v).to_string(), delta.value(v).to_string().into()))
                .collect(),
        }
    }

    /// Values may be scalar strings or JSON integers.
    pub fn trace(&self, ctx: &AlgebraContext) -> Result<GraphTrace, InputError> {
        let mut pairs = Vec::with_capacity(self.values.len());
        for (name, value) in &self.values {
            let text = match value {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                other => {
                    return Err(InputError::Unsupported(format!("trace value for {name} must be a string, got {other}")))
                }
            };
            let c: Scalar = text.parse().map_err(|source| InputError::Scalar { vertex: name.clone(), source })?;
            if !ctx.field().admits(&c) {
                return Err(TraceError::ScalarNotInField(format!("{c} at {name}")).into());
            }
            pairs.push((name.as_str(), c));
        }
        Ok(GraphTrace::from_named(ctx.graph(), pairs)?)
    }
}

pub fn load_trace(path: &Path, ctx: &AlgebraContext) -> Result<GraphTrace, InputError> {
    read_json::<TraceDoc>(path)?.trace(ctx)
}

impl SubDoc {
    pub fn subgraph(&self, graph: &Graph) -> Result<Subgraph, GraphError> {
        let vertices = graph.vertex_set(self.vertices.iter().map(String::as_str))?;
        let edges = self
            .edges
            .iter()
            .map(|name| graph.edge_id(name).ok_or_else(|| GraphError::UnknownEdge(name.clone())))
            .collect::<Result<_, _>>()?;
        let sub = Subgraph { vertices, edges };
        sub.validate(graph)?;
        Ok(sub)
    }
}

pub fn load_sub(path: &Path, graph: &Graph) -> Result<Subgraph, InputError> {
    Ok(read_json::<SubDoc>(path)?.subgraph(graph)?)
}
