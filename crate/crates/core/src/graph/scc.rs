//! Iterative Tarjan strongly connected components.

use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, VertexId};

const UNVISITED: usize = usize::MAX;

/// Strongly connected components in reverse topological order of the
/// condensation. Each component lists its vertices in discovery order.
pub fn strongly_connected_components(graph: &Graph) -> Vec<Vec<VertexId>> {
    let n = graph.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;

    for root in graph.vertices() {
        if index[root.index()] != UNVISITED {
            continue;
        }
        // (vertex, position in its out-edge list)
        let mut call: Vec<(VertexId, usize)> = vec![(root, 0)];
        index[root.index()] = next_index;
        lowlink[root.index()] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root.index()] = true;

        while let Some(top) = call.last_mut() {
            let v = top.0;
            let out = graph.out_edges(v);
            if top.1 < out.len() {
                let w = graph.range(out[top.1]);
                top.1 += 1;
                if index[w.index()] == UNVISITED {
                    index[w.index()] = next_index;
                    lowlink[w.index()] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w.index()] = true;
                    call.push((w, 0));
                } else if on_stack[w.index()] {
                    lowlink[v.index()] = lowlink[v.index()].min(index[w.index()]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent.index()] = lowlink[parent.index()].min(lowlink[v.index()]);
            }
            if lowlink[v.index()] == index[v.index()] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w.index()] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.reverse();
                components.push(comp);
            }
        }
    }
    components
}
