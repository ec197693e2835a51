//! Random monomials and elements for randomized checks.

use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{AlgebraContext, Element, Monomial};
use crate::graph::{Graph, Path, VertexId};
use crate::scalar::{FieldConfig, Rational, Scalar};

/// A path ending at `end` with at most `max_len` edges, grown backwards.
pub fn random_path_into<R: Rng + ?Sized>(rng: &mut R, graph: &Graph, end: VertexId, max_len: usize) -> Path {
    let target = rng.gen_range(0..=max_len);
    let mut edges = Vec::new();
    let mut at = end;
    while edges.len() < target {
        let ins = graph.in_edges(at);
        if ins.is_empty() {
            break;
        }
        let e = ins[rng.gen_range(0..ins.len())];
        edges.push(e);
        at = graph.source(e);
    }
    edges.reverse();
    Path::from_edges(graph, at, edges).expect("backward walk")
}

/// `pq*` with `|p|, |q| ≤ max_len`, not necessarily in normal form.
pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, graph: &Graph, max_len: usize) -> Monomial {
    let z = VertexId(rng.gen_range(0..graph.vertex_count()) as u32);
    let p = random_path_into(rng, graph, z, max_len);
    let q = random_path_into(rng, graph, z, max_len);
    Monomial::new(p, q).expect("common range")
}

/// A small nonzero scalar of the field: numerators in `-3..=3`, denominators
/// in `1..=3`, imaginary part half the time when the field has one.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldConfig) -> Scalar {
    let part = |rng: &mut R| {
        let n = rng.gen_range(-3i64..=3);
        Rational::from_ratio(n, rng.gen_range(1i64..=3))
    };
    loop {
        let re = part(rng);
        let im = if !field.rationals_only && rng.gen_bool(0.5) { part(rng) } else { Rational::default() };
        let c = Scalar::new(re, im);
        if c != Scalar::default() {
            return c;
        }
    }
}

/// Up to `max_terms` random terms, as a raw (unnormalized) sum.
pub fn random_raw_element<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &AlgebraContext,
    max_terms: usize,
    max_len: usize,
) -> Element {
    let k = rng.gen_range(1..=max_terms);
    Element::from_terms((0..k).map(|_| (random_monomial(rng, ctx.graph(), max_len), random_scalar(rng, ctx.field()))))
}

/// A random element in normal form.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, ctx: &AlgebraContext, max_terms: usize, max_len: usize) -> Element {
    ctx.normalize(&random_raw_element(rng, ctx, max_terms, max_len))
}

/// A random element in normal form, retried until nonzero.
pub fn random_nonzero_element<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &AlgebraContext,
    max_terms: usize,
    max_len: usize,
) -> Element {
    loop {
        let x = random_element(rng, ctx, max_terms, max_len);
        if !x.is_zero() {
            return x;
        }
    }
}
