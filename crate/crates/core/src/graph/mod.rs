//! Finite directed graphs with named vertices and edges, paths, vertex
//! classification and cycle/exit analysis.
//!
//! Vertex and edge identifiers are dense indices in insertion order; that order
//! is the deterministic ordering used by every set-valued output.

mod relative;
mod scc;
mod subobject;

pub use relative::{relative_graph, EdgeOrigin, RelativeGraph, VertexOrigin};
pub use scc::strongly_connected_components;
pub use subobject::{check_condition_c, complete_subobject, Subgraph, SubobjectPair};

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered vertex set; iteration follows insertion order of the graph.
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("edge {edge} has undeclared endpoint {vertex}")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("S contains non-regular vertex {0}")]
    NonRegularInS(String),
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
    #[error("edges do not compose into a path at {0}")]
    NotAPath(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    vertex_lookup: BTreeMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_lookup: BTreeMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph from vertex names and `(edge, source, range)` triples.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator,
        V::Item: AsRef<str>,
        E: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let mut graph = Graph {
            vertex_names: Vec::new(),
            vertex_lookup: BTreeMap::new(),
            edges: Vec::new(),
            edge_lookup: BTreeMap::new(),
            out_edges: Vec::new(),
            in_edges: Vec::new(),
        };
        for name in vertices {
            graph.add_vertex(name.as_ref())?;
        }
        for (name, src, rng) in edges {
            let (name, src, rng) = (name.as_ref(), src.as_ref(), rng.as_ref());
            let lookup = |v: &str| {
                graph.vertex_id(v).ok_or_else(|| GraphError::DanglingEndpoint {
                    edge: name.to_string(),
                    vertex: v.to_string(),
                })
            };
            let (source, range) = (lookup(src)?, lookup(rng)?);
            graph.add_edge(name, source, range)?;
        }
        Ok(graph)
    }

    pub(crate) fn add_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        if self.vertex_lookup.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        let id = VertexId(self.vertex_names.len() as u32);
        self.vertex_names.push(name.to_string());
        self.vertex_lookup.insert(name.to_string(), id);
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        Ok(id)
    }

    pub(crate) fn add_edge(
        &mut self,
        name: &str,
        source: VertexId,
        range: VertexId,
    ) -> Result<EdgeId, GraphError> {
        if self.edge_lookup.contains_key(name) {
            return Err(GraphError::DuplicateEdge(name.to_string()));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Edge { name: name.to_string(), source, range });
        self.edge_lookup.insert(name.to_string(), id);
        self.out_edges[source.index()].push(id);
        self.in_edges[range.index()].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    /// `s⁻¹(v)` in insertion order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    /// `r⁻¹(v)` in insertion order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v.index()].len()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.index()].is_empty()
    }

    /// Finite graphs have no infinite emitters, so regular means "not a sink".
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v)
    }

    /// `R(E)`.
    pub fn regular_vertices(&self) -> VertexSet {
        self.vertices().filter(|&v| self.is_regular(v)).collect()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn classify_vertices(&self) -> VertexClass {
        let classes = self
            .vertices()
            .map(|v| if self.is_regular(v) { VertexKind::Regular } else { VertexKind::Sink })
            .collect();
        VertexClass { classes, regular: self.regular_vertices() }
    }

    /// Vertices lying on at least one cycle: those whose strongly connected
    /// component contains an edge internal to the component.
    pub fn cycle_vertices(&self) -> VertexSet {
        let components = strongly_connected_components(self);
        let mut component_of = vec![usize::MAX; self.vertex_count()];
        for (i, comp) in components.iter().enumerate() {
            for v in comp {
                component_of[v.index()] = i;
            }
        }
        let mut on_cycle = VertexSet::new();
        for edge in &self.edges {
            if component_of[edge.source.index()] == component_of[edge.range.index()] {
                on_cycle.extend(components[component_of[edge.source.index()]].iter().copied());
            }
        }
        on_cycle
    }

    pub fn is_acyclic(&self) -> bool {
        self.cycle_vertices().is_empty()
    }

    /// No-exit: every vertex on a cycle emits exactly one edge. The certificate,
    /// when the property fails, is the first cycle vertex with out-degree ≥ 2.
    pub fn is_no_exit(&self) -> NoExit {
        let certificate = self.cycle_vertices().into_iter().find(|&v| self.out_degree(v) >= 2);
        NoExit { holds: certificate.is_none(), certificate }
    }

    /// For finite graphs every infinite path eventually runs around a cycle,
    /// and in a no-exit graph it then stays on that cycle. So the
    /// "every infinite path ends in a sink or a cycle" half of the condition is
    /// automatic and only no-exit remains. This fails for infinite graphs.
    pub fn is_locally_noetherian(&self) -> bool {
        self.is_no_exit().holds
    }

    /// A shortest cycle based at `v`, if `v` lies on one.
    pub fn shortest_cycle_at(&self, v: VertexId) -> Option<Path> {
        let mut parent: Vec<Option<EdgeId>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &e in self.out_edges(v) {
            let r = self.range(e);
            if r == v {
                return Some(Path { source: v, range: v, edges: vec![e] });
            }
            if !seen[r.index()] {
                seen[r.index()] = true;
                parent[r.index()] = Some(e);
                queue.push_back(r);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &e in self.out_edges(x) {
                let r = self.range(e);
                if r == v {
                    let mut edges = vec![e];
                    let mut cur = x;
                    while let Some(pe) = parent[cur.index()] {
                        edges.push(pe);
                        cur = self.source(pe);
                        if cur == v {
                            break;
                        }
                    }
                    edges.reverse();
                    return Some(Path { source: v, range: v, edges });
                }
                if !seen[r.index()] {
                    seen[r.index()] = true;
                    parent[r.index()] = Some(e);
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// Paths ending at `v` with at most `max_len` edges, breadth-first along
    /// reversed edges; within a level, by parent order and then edge id.
    pub fn paths_into(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::vertex(v)];
        let mut level_start = 0;
        for _ in 0..max_len {
            let level_end = out.len();
            for i in level_start..level_end {
                let (source, range) = (out[i].source, out[i].range);
                for &e in self.in_edges(source) {
                    let mut edges = Vec::with_capacity(out[i].len() + 1);
                    edges.push(e);
                    edges.extend_from_slice(&out[i].edges);
                    out.push(Path { source: self.source(e), range, edges });
                }
            }
            if out.len() == level_end {
                break;
            }
            level_start = level_end;
        }
        out
    }

    /// Checks `S ⊆ R(E)`.
    pub fn check_relative_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.iter().find(|&&v| !self.is_regular(v)) {
            Some(&v) => Err(GraphError::NonRegularInS(self.vertex_name(v).to_string())),
            None => Ok(()),
        }
    }

    pub fn vertex_set<I, S>(&self, names: I) -> Result<VertexSet, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| {
                self.vertex_id(n.as_ref())
                    .ok_or_else(|| GraphError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect()
    }

    /// Builds a path from edge names, or a vertex path when `edges` is empty.
    pub fn path(&self, source: &str, edges: &[&str]) -> Result<Path, GraphError> {
        let v = self.vertex_id(source).ok_or_else(|| GraphError::UnknownVertex(source.to_string()))?;
        let ids = edges
            .iter()
            .map(|n| self.edge_id(n).ok_or_else(|| GraphError::UnknownEdge(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(self, v, ids)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Regular,
    Sink,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    pub classes: Vec<VertexKind>,
    pub regular: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoExit {
    pub holds: bool,
    pub certificate: Option<VertexId>,
}

/// A path: its source, range and edge sequence. Vertices are the paths of
/// length zero, with `source == range`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { source: v, range: v, edges: Vec::new() }
    }

    pub fn edge(graph: &Graph, e: EdgeId) -> Path {
        Path { source: graph.source(e), range: graph.range(e), edges: vec![e] }
    }

    /// Validates that consecutive edges compose; `source` must be the source of
    /// the first edge when `edges` is nonempty.
    pub fn from_edges(graph: &Graph, source: VertexId, edges: Vec<EdgeId>) -> Result<Path, GraphError> {
        let mut at = source;
        for &e in &edges {
            if graph.source(e) != at {
                return Err(GraphError::NotAPath(graph.edge_name(e).to_string()));
            }
            at = graph.range(e);
        }
        Ok(Path { source, range: at, edges })
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_vertex()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `self · other`; `None` unless `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.range != other.source {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path { source: self.source, range: other.range, edges })
    }

    /// If `self = prefix · u`, returns `u`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.source != prefix.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path { source: prefix.range, range: self.range, edges: self.edges[prefix.len()..].to_vec() })
    }

    /// Drops the last edge; `graph` supplies the new range.
    pub fn pop(&self, graph: &Graph) -> Option<(Path, EdgeId)> {
        let (&last, rest) = self.edges.split_last()?;
        Some((Path { source: self.source, range: graph.source(last), edges: rest.to_vec() }, last))
    }

    /// Appends one edge; `None` unless it starts at `r(self)`.
    pub fn push(&self, graph: &Graph, e: EdgeId) -> Option<Path> {
        if graph.source(e) != self.range {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Some(Path { source: self.source, range: graph.range(e), edges })
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph }
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "v{}", self.source.0)
        } else {
            let ids: Vec<u32> = self.edges.iter().map(|e| e.0).collect();
            write!(f, "{:?}", ids)
        }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            return write!(f, "{}", self.graph.vertex_name(self.path.source));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.graph.edge_name(e))?;
        }
        Ok(())
    }
}
