//! Named example graphs with their default vertex set `S`.
//!
//! Graphs that are infinite in the literature appear here as finite
//! truncations; the truncation is described in each entry's `note`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub graph: Graph,
    pub s: VertexSet,
    pub note: &'static str,
}

fn leavitt(name: &'static str, graph: Graph, note: &'static str) -> CorpusEntry {
    let s = graph.regular_vertices();
    CorpusEntry { name, graph, s, note }
}

fn cohn(name: &'static str, graph: Graph, note: &'static str) -> CorpusEntry {
    CorpusEntry { name, graph, s: VertexSet::new(), note }
}

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::new(vertices.iter().copied(), edges.iter().copied()).expect("corpus graph")
}

/// `v` with a loop `e` and an exit `f: v → w`.
pub fn toeplitz() -> CorpusEntry {
    leavitt("toeplitz", build(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")]), "loop with an exit")
}

pub fn toeplitz_cohn() -> CorpusEntry {
    cohn("toeplitz-cohn", toeplitz().graph, "Toeplitz graph with S = ∅")
}

pub fn single_loop() -> CorpusEntry {
    leavitt("single-loop", build(&["v"], &[("e", "v", "v")]), "one vertex, one loop")
}

pub fn loop_cohn() -> CorpusEntry {
    cohn("loop-cohn", single_loop().graph, "single loop with S = ∅")
}

pub fn point() -> CorpusEntry {
    leavitt("point", build(&["v"], &[]), "single sink")
}

/// `e: v → w`.
pub fn a2() -> CorpusEntry {
    leavitt("a2", build(&["v", "w"], &[("e", "v", "w")]), "one edge")
}

/// `v1 → v2 → … → vn` with edges `e1, …, e(n-1)`.
pub fn chain(n: usize) -> CorpusEntry {
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> =
        (1..n).map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1))).collect();
    let graph = Graph::new(&vertices, edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())))
        .expect("chain");
    let name = match n {
        3 => "a3",
        4 => "a4",
        _ => "chain",
    };
    leavitt(name, graph, "directed chain")
}

/// `u ←e− v −f→ w`.
pub fn fork() -> CorpusEntry {
    leavitt("fork", build(&["u", "v", "w"], &[("e", "v", "u"), ("f", "v", "w")]), "two sinks")
}

pub fn two_cycle() -> CorpusEntry {
    leavitt("two-cycle", build(&["v", "w"], &[("e", "v", "w"), ("f", "w", "v")]), "cycle of length two")
}

/// Cycle `v ⇄ w` with the exit `g: w → z`.
pub fn cycle_with_tail() -> CorpusEntry {
    leavitt(
        "cycle-with-tail",
        build(&["v", "w", "z"], &[("e", "v", "w"), ("f", "w", "v"), ("g", "w", "z")]),
        "two-cycle with an exit into a sink",
    )
}

/// `f: u → v` feeding the loop `e` at `v`; no-exit but not acyclic.
pub fn loop_with_entry() -> CorpusEntry {
    leavitt("loop-with-entry", build(&["u", "v"], &[("f", "u", "v"), ("e", "v", "v")]), "edge into a loop")
}

/// Truncation of the graph `v → x1 → x2 → …` with every vertex also pointing to `w`.
pub fn infinite_path_truncated() -> CorpusEntry {
    leavitt(
        "infinite-path-truncated",
        build(
            &["v", "x1", "x2", "x3", "w"],
            &[
                ("a0", "v", "x1"),
                ("a1", "x1", "x2"),
                ("a2", "x2", "x3"),
                ("b0", "v", "w"),
                ("b1", "x1", "w"),
                ("b2", "x2", "w"),
                ("b3", "x3", "w"),
            ],
        ),
        "infinite path v→x1→x2→… cut after x3; each vertex keeps its edge to w",
    )
}

/// Truncation of two vertices joined by infinitely many parallel edges.
pub fn parallel_truncated() -> CorpusEntry {
    leavitt(
        "parallel-truncated",
        build(&["v", "w"], &[("e1", "v", "w"), ("e2", "v", "w"), ("e3", "v", "w")]),
        "infinitely many parallel edges v→w cut to three",
    )
}

/// Truncation of the ladder `v1 → v2 → …` with a rung `vn → wn` at each step.
pub fn ladder_truncated() -> CorpusEntry {
    leavitt(
        "ladder-truncated",
        build(
            &["v1", "v2", "v3", "w1", "w2"],
            &[("g1", "v1", "v2"), ("g2", "v2", "v3"), ("h1", "v1", "w1"), ("h2", "v2", "w2")],
        ),
        "ladder cut after v3, which becomes a sink; keeps delta(vn) = 2^(1-n), delta(wn) = 2^-n valid",
    )
}

/// Truncation of the graph with `n` edges `wn → v` for every `n`.
pub fn fan_truncated() -> CorpusEntry {
    leavitt(
        "fan-truncated",
        build(
            &["v", "w1", "w2", "w3"],
            &[
                ("e11", "w1", "v"),
                ("e21", "w2", "v"),
                ("e22", "w2", "v"),
                ("e31", "w3", "v"),
                ("e32", "w3", "v"),
                ("e33", "w3", "v"),
            ],
        ),
        "n parallel edges wn → v, cut after w3",
    )
}

/// Every corpus entry, in a fixed order.
pub fn all() -> Vec<CorpusEntry> {
    alloc::vec![
        toeplitz(),
        toeplitz_cohn(),
        single_loop(),
        loop_cohn(),
        point(),
        a2(),
        chain(3),
        chain(4),
        fork(),
        two_cycle(),
        cycle_with_tail(),
        loop_with_entry(),
        infinite_path_truncated(),
        parallel_truncated(),
        ladder_truncated(),
        fan_truncated(),
    ]
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    all().into_iter().find(|e| e.name == name)
}
