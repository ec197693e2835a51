//! The `*`-isomorphism `φ: L_K(E_S) → CL_K(E, S)`.
//!
//! ```text
//! φ(v)  = v                 v ∉ R(E) ∖ S
//! φ(v)  = Σ_{s(e)=v} ee*     v ∈ R(E) ∖ S
//! φ(v') = v − Σ_{s(e)=v} ee*
//! φ(e)  = e φ(r(e)),   φ(e') = e φ(r(e)'),   φ(f*) = φ(f)*
//! ```

use alloc::vec::Vec;

use super::{AlgebraContext, AlgebraError, Element};
use crate::graph::{relative_graph, EdgeId, EdgeOrigin, GraphError, Path, RelativeGraph, VertexId, VertexOrigin};

pub struct PhiMap<'a> {
    target: &'a AlgebraContext,
    domain: AlgebraContext,
    relative: RelativeGraph,
    vertex_images: Vec<Element>,
    edge_images: Vec<Element>,
}

impl<'a> PhiMap<'a> {
    pub fn new(target: &'a AlgebraContext) -> Result<PhiMap<'a>, GraphError> {
        let g = target.graph();
        let relative = relative_graph(g, target.s())?;
        let domain = AlgebraContext::leavitt(relative.graph.clone(), target.field());
        let emitted = |v: VertexId| -> Element {
            g.out_edges(v).iter().map(|&e| target.mul(&target.edge(e), &target.ghost(e))).sum()
        };
        let vertex_images: Vec<Element> = relative
            .vertex_origin
            .iter()
            .map(|origin| match *origin {
                VertexOrigin::Original(v) if relative.primed_vertex[v.index()].is_some() => emitted(v),
                VertexOrigin::Original(v) => target.vertex(v),
                VertexOrigin::Primed(v) => &target.vertex(v) - &emitted(v),
            })
            .collect();
        let edge_images = relative
            .edge_origin
            .iter()
            .map(|origin| {
                let (e, r) = match *origin {
                    EdgeOrigin::Original(e) => (e, g.range(e)),
                    EdgeOrigin::Primed(e) => (e, relative.primed_vertex[g.range(e).index()].expect("primed range")),
                };
                target.mul(&target.edge(e), &vertex_images[r.index()])
            })
            .collect();
        Ok(PhiMap { target, domain, relative, vertex_images, edge_images })
    }

    /// `L_K(E_S)`.
    pub fn domain(&self) -> &AlgebraContext {
        &self.domain
    }

    pub fn target(&self) -> &AlgebraContext {
        self.target
    }

    pub fn relative(&self) -> &RelativeGraph {
        &self.relative
    }

    pub fn vertex_image(&self, v: VertexId) -> &Element {
        &self.vertex_images[v.index()]
    }

    pub fn edge_image(&self, e: EdgeId) -> &Element {
        &self.edge_images[e.index()]
    }

    fn path_image(&self, p: &Path) -> Element {
        if p.is_vertex() {
            return self.vertex_images[p.source().index()].clone();
        }
        self.target.product(p.edges().iter().map(|e| &self.edge_images[e.index()]))
    }

    /// `φ(x)` in normal form. `x` must be an element of the domain.
    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        self.domain.check_element(x)?;
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let p = self.path_image(m.p());
            let q = self.target.star(&self.path_image(m.q()));
            out = &out + &self.target.mul(&p, &q).scale(c);
        }
        Ok(out)
    }
}
