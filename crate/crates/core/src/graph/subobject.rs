//! Complete subobjects `(F, T)` of `(E, S)`.
//!
//! `(F, T)` is complete when `T ⊆ S` and condition (C) holds: any `v ∈ S ∩ F⁰`
//! emitting at least one `F`-edge emits all of its `E`-edges in `F` and lies in `T`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{EdgeId, Graph, GraphError, VertexId, VertexSet};

/// A subgraph of an ambient graph, by vertex and edge ids of that graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subgraph {
    pub vertices: VertexSet,
    pub edges: BTreeSet<EdgeId>,
}

impl Subgraph {
    pub fn whole(graph: &Graph) -> Subgraph {
        Subgraph { vertices: graph.vertices().collect(), edges: graph.edges().collect() }
    }

    pub fn validate(&self, ambient: &Graph) -> Result<(), GraphError> {
        if let Some(v) = self.vertices.iter().find(|v| v.index() >= ambient.vertex_count()) {
            return Err(GraphError::NotSubgraph(alloc::format!("vertex index {} out of range", v.0)));
        }
        for &e in &self.edges {
            if e.index() >= ambient.edge_count() {
                return Err(GraphError::NotSubgraph(alloc::format!("edge index {} out of range", e.0)));
            }
            for end in [ambient.source(e), ambient.range(e)] {
                if !self.vertices.contains(&end) {
                    return Err(GraphError::NotSubgraph(alloc::format!(
                        "edge {} has endpoint {} outside the subgraph",
                        ambient.edge_name(e),
                        ambient.vertex_name(end)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `s⁻¹_F(v)`, in ambient insertion order.
    pub fn out_edges<'a>(&'a self, ambient: &'a Graph, v: VertexId) -> impl Iterator<Item = EdgeId> + 'a {
        ambient.out_edges(v).iter().copied().filter(move |e| self.edges.contains(e))
    }

    /// Materializes the subgraph with the ambient names, preserving order.
    pub fn to_graph(&self, ambient: &Graph) -> Graph {
        let vertices: Vec<&str> = self.vertices.iter().map(|&v| ambient.vertex_name(v)).collect();
        let edges: Vec<(&str, &str, &str)> = self
            .edges
            .iter()
            .map(|&e| (ambient.edge_name(e), ambient.vertex_name(ambient.source(e)), ambient.vertex_name(ambient.range(e))))
            .collect();
        Graph::new(vertices, edges).expect("validated subgraph")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubobjectPair {
    pub f: Subgraph,
    pub t: VertexSet,
}

/// Checks `T ⊆ S`, `T ⊆ R(F)` and condition (C). Returns the first offending vertex.
pub fn check_condition_c(
    ambient: &Graph,
    s: &VertexSet,
    f: &Subgraph,
    t: &VertexSet,
) -> Result<(), VertexId> {
    for &v in t {
        if !s.contains(&v) || f.out_edges(ambient, v).next().is_none() {
            return Err(v);
        }
    }
    for &v in s.intersection(&f.vertices) {
        let emits_in_f = f.out_edges(ambient, v).count();
        if emits_in_f > 0 && (emits_in_f != ambient.out_degree(v) || !t.contains(&v)) {
            return Err(v);
        }
    }
    Ok(())
}

/// The complete subobject generated by a subgraph `G`:
///
/// `F¹ = G¹ ∪ {e | s(e) ∈ G⁰ ∩ S and s⁻¹(s(e)) ∩ G¹ ≠ ∅}`, `F⁰ = G⁰ ∪ r(F¹ ∖ G¹)`,
/// `T = S ∩ {v ∈ F⁰ | s⁻¹(v) ∩ F¹ ≠ ∅}`.
pub fn complete_subobject(
    ambient: &Graph,
    s: &VertexSet,
    g: &Subgraph,
) -> Result<SubobjectPair, GraphError> {
    ambient.check_relative_set(s)?;
    g.validate(ambient)?;
    let mut f = g.clone();
    for &v in g.vertices.intersection(s) {
        if g.out_edges(ambient, v).next().is_some() {
            for &e in ambient.out_edges(v) {
                f.edges.insert(e);
                f.vertices.insert(ambient.range(e));
            }
        }
    }
    let t: VertexSet = f
        .vertices
        .iter()
        .copied()
        .filter(|v| s.contains(v) && f.out_edges(ambient, *v).next().is_some())
        .collect();
    check_condition_c(ambient, s, &f, &t).map_err(|v| {
        GraphError::NotSubgraph(alloc::format!("condition (C) fails at {}", ambient.vertex_name(v)))
    })?;
    Ok(SubobjectPair { f, t })
}
