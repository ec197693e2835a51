//! Concrete representations used to cross-check the rewriting engine:
//! matrix units for finite acyclic graphs and Laurent polynomials for the
//! single loop.

mod laurent;
mod matrix;

pub use laurent::{Laurent, LaurentRep};
pub use matrix::{Block, BlockMatrix, MatrixRep};

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra::{AlgebraContext, Element};
use crate::linalg;
use crate::sample;
use crate::scalar::Scalar;
use crate::trace::{canonical_trace, TraceSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the matrix oracle needs an acyclic graph")]
    Cyclic,
    #[error("the oracles need S = R(E)")]
    NotLeavitt,
    #[error("the Laurent oracle needs a single vertex with a single loop")]
    NotSingleLoop,
}

pub trait Representation {
    type Image: Clone + PartialEq + core::fmt::Debug;

    fn context(&self) -> &AlgebraContext;
    fn eval(&self, x: &Element) -> Self::Image;
    fn mul(&self, a: &Self::Image, b: &Self::Image) -> Self::Image;
    fn add(&self, a: &Self::Image, b: &Self::Image) -> Self::Image;
    fn star(&self, a: &Self::Image) -> Self::Image;

    /// (V), (E1), (E2), (CK1) and (CK2) on the images of the generators.
    fn check_relations(&self) -> bool {
        let ctx = self.context();
        let g = ctx.graph();
        let img = |x: &Element| self.eval(x);
        let zero = img(&Element::zero());
        let vertices: Vec<_> = g.vertices().map(|v| img(&ctx.vertex(v))).collect();
        let edges: Vec<_> = g.edges().map(|e| img(&ctx.edge(e))).collect();
        let ghosts: Vec<_> = g.edges().map(|e| img(&ctx.ghost(e))).collect();
        for v in g.vertices() {
            for w in g.vertices() {
                let expected = if v == w { &vertices[v.index()] } else { &zero };
                if self.mul(&vertices[v.index()], &vertices[w.index()]) != *expected {
                    return false;
                }
            }
            if g.is_regular(v) {
                let sum = g
                    .out_edges(v)
                    .iter()
                    .map(|&e| self.mul(&edges[e.index()], &ghosts[e.index()]))
                    .fold(zero.clone(), |acc, x| self.add(&acc, &x));
                if sum != vertices[v.index()] {
                    return false;
                }
            }
        }
        for e in g.edges() {
            let (s, r) = (&vertices[g.source(e).index()], &vertices[g.range(e).index()]);
            let (x, y) = (&edges[e.index()], &ghosts[e.index()]);
            if self.mul(s, x) != *x || self.mul(x, r) != *x || self.mul(r, y) != *y || self.mul(y, s) != *y {
                return false;
            }
            for f in g.edges() {
                let expected = if e == f { r } else { &zero };
                if self.mul(y, &edges[f.index()]) != *expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Either oracle, whichever applies to the context.
#[derive(Debug, Clone)]
pub enum Oracle {
    Matrix(MatrixRep),
    Laurent(LaurentRep),
}

impl Oracle {
    pub fn for_context(ctx: &AlgebraContext) -> Result<Oracle, OracleError> {
        match MatrixRep::new(ctx) {
            Ok(rep) => Ok(Oracle::Matrix(rep)),
            Err(OracleError::Cyclic) => LaurentRep::new(ctx).map(Oracle::Laurent),
            Err(e) => Err(e),
        }
    }

    /// Runs `samples` constructed triples `(x, y, u)` with `xy = u`, `u` a sum
    /// of vertices, checking `yx = u` in the oracle and in the engine. Returns
    /// the first violating triple.
    pub fn probe_direct_finiteness<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        samples: usize,
    ) -> Result<(), (Element, Element, Element)> {
        for _ in 0..samples {
            let (x, y, u, ok) = match self {
                Oracle::Matrix(rep) => matrix_triple(rep, rng),
                Oracle::Laurent(rep) => laurent_triple(rep, rng),
            };
            let ctx = match self {
                Oracle::Matrix(rep) => rep.context(),
                Oracle::Laurent(rep) => rep.context(),
            };
            if !ok || ctx.mul(&x, &y) != u || ctx.mul(&y, &x) != u {
                return Err((x, y, u));
            }
        }
        Ok(())
    }

    /// The equivalence suite: relations, homomorphism, normal form, involution,
    /// basis independence, trace compatibility and the finiteness probe.
    pub fn run_suite<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Vec<(&'static str, bool)> {
        match self {
            Oracle::Matrix(rep) => {
                let mut out = common_suite(rep, rng, samples);
                out.push(("basis", matrix_basis_ok(rep)));
                let ctx = rep.context();
                let delta = TraceSystem::new(ctx, true).solve().expect("acyclic graphs carry faithful traces");
                let trace_ok = (0..samples).all(|_| {
                    let x = sample::random_element(rng, ctx, 6, 4);
                    let t = canonical_trace(ctx, &delta, &x).expect("graph trace");
                    t == rep.weighted_trace(&rep.eval(&x), |z| delta.value(z).clone())
                });
                out.push(("trace", trace_ok));
                out.push(("probe", self.probe_direct_finiteness(rng, samples).is_ok()));
                out
            }
            Oracle::Laurent(rep) => {
                let mut out = common_suite(rep, rng, samples);
                let ctx = rep.context();
                let basis = ctx.normal_basis(3);
                let distinct = basis.iter().map(|m| m.degree()).collect::<alloc::collections::BTreeSet<_>>().len();
                out.push(("basis", distinct == basis.len() && basis.len() == 7));
                let delta = TraceSystem::new(ctx, true).solve().expect("the loop carries a faithful trace");
                let v = ctx.graph().vertices().next().expect("one vertex");
                let trace_ok = (0..samples).all(|_| {
                    let x = sample::random_element(rng, ctx, 6, 4);
                    canonical_trace(ctx, &delta, &x).expect("graph trace") == rep.eval(&x).coefficient(0) * delta.value(v)
                });
                out.push(("trace", trace_ok));
                out.push(("probe", self.probe_direct_finiteness(rng, samples).is_ok()));
                out
            }
        }
    }
}

fn common_suite<P: Representation, R: Rng + ?Sized>(rep: &P, rng: &mut R, samples: usize) -> Vec<(&'static str, bool)> {
    let ctx = rep.context();
    let mut mul_ok = true;
    let mut normal_ok = true;
    let mut star_ok = true;
    for _ in 0..samples {
        let x = sample::random_element(rng, ctx, 6, 4);
        let y = sample::random_element(rng, ctx, 6, 4);
        mul_ok &= rep.eval(&ctx.mul(&x, &y)) == rep.mul(&rep.eval(&x), &rep.eval(&y));
        let z = sample::random_raw_element(rng, ctx, 6, 4);
        normal_ok &= rep.eval(&ctx.normalize(&z)) == rep.eval(&z);
        star_ok &= rep.eval(&ctx.star(&x)) == rep.star(&rep.eval(&x));
    }
    alloc::vec![("relations", rep.check_relations()), ("multiplication", mul_ok), ("normal form", normal_ok), ("involution", star_ok)]
}

/// The images of the normal-form basis span `⊕ M_{n_z}` and are independent.
pub fn matrix_basis_ok(rep: &MatrixRep) -> bool {
    let basis = rep.context().normal_basis(rep.context().graph().vertex_count());
    if basis.len() != rep.dimension() {
        return false;
    }
    let mut coords = Vec::new();
    for (b, block) in rep.blocks().iter().enumerate() {
        let n = block.paths.len();
        coords.extend((0..n).flat_map(|i| (0..n).map(move |j| (b, i, j))));
    }
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|m| {
            let img = rep.eval_monomial(m);
            coords.iter().map(|&(b, i, j)| img.blocks[b].get(&(i, j)).cloned().unwrap_or_default()).collect()
        })
        .collect();
    linalg::rank(&rows) == basis.len()
}

/// A random invertible `n × n` matrix as lower unitriangular times upper
/// triangular with nonzero diagonal.
fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, ctx: &AlgebraContext) -> Vec<Vec<Scalar>> {
    let field = ctx.field();
    let small = |rng: &mut R, allow_zero: bool| {
        if allow_zero && rng.gen_bool(0.4) {
            Scalar::zero()
        } else {
            sample::random_scalar(rng, field)
        }
    };
    let lower: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else if j < i { small(rng, true) } else { Scalar::zero() }).collect())
        .collect();
    let upper: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { small(rng, false) } else if j > i { small(rng, true) } else { Scalar::zero() }).collect())
        .collect();
    linalg::mat_mul(&lower, &upper)
}

fn random_local_unit<R: Rng + ?Sized>(rng: &mut R, ctx: &AlgebraContext) -> Element {
    let g = ctx.graph();
    loop {
        let u: Element = g.vertices().filter(|_| rng.gen_bool(0.5)).map(|v| ctx.vertex(v)).sum();
        if !u.is_zero() {
            return u;
        }
    }
}

fn matrix_triple<R: Rng + ?Sized>(rep: &MatrixRep, rng: &mut R) -> (Element, Element, Element, bool) {
    let ctx = rep.context();
    let u = random_local_unit(rng, ctx);
    let u_img = rep.eval(&u);
    let support = rep.support(&u_img);
    let corners: Vec<Vec<Vec<Scalar>>> = support.iter().map(|idx| random_invertible(rng, idx.len(), ctx)).collect();
    let inverses: Vec<Vec<Vec<Scalar>>> =
        corners.iter().map(|a| linalg::inverse(a).expect("invertible by construction")).collect();
    let x_img = rep.from_corners(&support, &corners);
    let y_img = rep.from_corners(&support, &inverses);
    let ok = rep.mul(&x_img, &y_img) == u_img && rep.mul(&y_img, &x_img) == u_img;
    (rep.pullback(&x_img), rep.pullback(&y_img), u, ok)
}

fn laurent_triple<R: Rng + ?Sized>(rep: &LaurentRep, rng: &mut R) -> (Element, Element, Element, bool) {
    let ctx = rep.context();
    let c = sample::random_scalar(rng, ctx.field());
    let n = rng.gen_range(-3i64..=3);
    let x_img = Laurent::monomial(c.clone(), n);
    let y_img = Laurent::monomial(c.inv().expect("nonzero"), -n);
    let one = Laurent::one();
    let ok = rep.mul(&x_img, &y_img) == one && rep.mul(&y_img, &x_img) == one;
    (rep.pullback(&x_img), rep.pullback(&y_img), ctx.unit(), ok)
}
