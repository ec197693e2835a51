//! Irreducible monomials and comparability.
//!
//! `p u u* q*` reduces to `p q*`. A monomial is irreducible when `p` and `q`
//! do not end in the same edge, and every monomial reduces to exactly one
//! irreducible one by stripping the longest common suffix. Two monomials are
//! comparable when they reduce to the same irreducible monomial.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::Monomial;
use crate::graph::{Graph, Path};

pub fn is_irreducible(m: &Monomial) -> bool {
    match (m.p.last_edge(), m.q.last_edge()) {
        (Some(a), Some(b)) => a != b,
        _ => true,
    }
}

/// Returns `(rs*, u)` with `rs*` irreducible, `p = ru` and `q = su`.
pub fn reduce_to_irreducible(graph: &Graph, m: &Monomial) -> (Monomial, Path) {
    let common = m
        .p
        .edges()
        .iter()
        .rev()
        .zip(m.q.edges().iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    let (mut p, mut q) = (m.p.clone(), m.q.clone());
    for _ in 0..common {
        p = p.pop(graph).expect("common suffix").0;
        q = q.pop(graph).expect("common suffix").0;
    }
    let suffix = m.p.edges()[m.p.len() - common..].to_vec();
    let u = Path::from_edges(graph, p.range(), suffix).expect("suffix of a path");
    (Monomial { p, q }, u)
}

pub fn comparable(graph: &Graph, a: &Monomial, b: &Monomial) -> bool {
    reduce_to_irreducible(graph, a).0 == reduce_to_irreducible(graph, b).0
}

/// Partitions indices of `ms` by irreducible form; classes appear in order of
/// first occurrence.
pub fn comparability_classes(graph: &Graph, ms: &[Monomial]) -> Vec<Vec<usize>> {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        let key = reduce_to_irreducible(graph, m).0;
        let slot = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(i);
    }
    classes
}
