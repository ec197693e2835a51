//! The graph `E_S`: a primed sink `v'` for every regular vertex `v ∉ S`, and a
//! primed edge `e'` with `s(e') = s(e)`, `r(e') = r(e)'` for every edge whose
//! range is such a vertex.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{EdgeId, Graph, GraphError, VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOrigin {
    Original(VertexId),
    /// `v'` for the given `v ∈ R(E) ∖ S`.
    Primed(VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    Original(EdgeId),
    Primed(EdgeId),
}

#[derive(Debug, Clone)]
pub struct RelativeGraph {
    pub graph: Graph,
    /// Indexed by `E_S` vertex id. Original vertices keep their ids.
    pub vertex_origin: Vec<VertexOrigin>,
    /// Indexed by `E_S` edge id. Original edges keep their ids.
    pub edge_origin: Vec<EdgeOrigin>,
    /// `v ↦ v'` for `v ∈ R(E) ∖ S`, indexed by original vertex id.
    pub primed_vertex: Vec<Option<VertexId>>,
    pub primed_edge: Vec<Option<EdgeId>>,
}

fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let primed = format!("{base}'");
    if !taken(&primed) {
        return primed;
    }
    (1..)
        .map(|k| format!("{base}'{k}"))
        .find(|name| !taken(name))
        .expect("unbounded suffix search")
}

pub fn relative_graph(graph: &Graph, s: &VertexSet) -> Result<RelativeGraph, GraphError> {
    graph.check_relative_set(s)?;
    let mut out = graph.clone();
    let mut vertex_origin: Vec<VertexOrigin> = graph.vertices().map(VertexOrigin::Original).collect();
    let mut edge_origin: Vec<EdgeOrigin> = graph.edges().map(EdgeOrigin::Original).collect();
    let mut primed_vertex = alloc::vec![None; graph.vertex_count()];
    let mut primed_edge = alloc::vec![None; graph.edge_count()];

    for v in graph.vertices().filter(|&v| graph.is_regular(v) && !s.contains(&v)) {
        let name = fresh_name(graph.vertex_name(v), |n| out.vertex_id(n).is_some());
        let id = out.add_vertex(&name)?;
        vertex_origin.push(VertexOrigin::Primed(v));
        primed_vertex[v.index()] = Some(id);
    }
    for e in graph.edges() {
        if let Some(target) = primed_vertex[graph.range(e).index()] {
            let name = fresh_name(graph.edge_name(e), |n| out.edge_id(n).is_some());
            let id = out.add_edge(&name, graph.source(e), target)?;
            edge_origin.push(EdgeOrigin::Primed(e));
            primed_edge[e.index()] = Some(id);
        }
    }
    Ok(RelativeGraph { graph: out, vertex_origin, edge_origin, primed_vertex, primed_edge })
}
