//! Direct finiteness of `CL_K(E, S)` for finite `E`.
//!
//! The algebra is directly finite iff `E` is no-exit and every cycle vertex
//! lies in `S`. When it is not, an explicit pair `(x, u)` with `x*x = u` and
//! `xx* ≠ u` is produced.

use super::{AlgebraContext, Element};
use crate::graph::{EdgeId, Path, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinitenessReason {
    Holds,
    /// `vertex` lies on a cycle and also emits `exit`, an edge off that cycle.
    CycleWithExit { vertex: VertexId, exit: EdgeId },
    CycleVertexNotInS { vertex: VertexId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinitenessVerdict {
    pub directly_finite: bool,
    pub reason: FinitenessReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub reason: FinitenessReason,
    pub cycle: Path,
    pub x: Element,
    pub u: Element,
    pub x_star_x: Element,
    pub x_x_star: Element,
}

impl Witness {
    /// Recomputes every identity the witness claims: `x*x = u`, `u² = u`,
    /// `ux = xu = x` and `xx* ≠ u`.
    pub fn verify(&self, ctx: &AlgebraContext) -> bool {
        let xs = ctx.star(&self.x);
        let x_star_x = ctx.mul(&xs, &self.x);
        let x_x_star = ctx.mul(&self.x, &xs);
        x_star_x == self.u
            && x_star_x == self.x_star_x
            && x_x_star == self.x_x_star
            && ctx.mul(&self.u, &self.u) == self.u
            && ctx.mul(&self.u, &self.x) == self.x
            && ctx.mul(&self.x, &self.u) == self.x
            && x_x_star != self.u
    }
}

impl AlgebraContext {
    pub fn is_directly_finite(&self) -> FinitenessVerdict {
        let g = self.graph();
        let cycles = g.cycle_vertices();
        let reason = if let Some(&v) = cycles.iter().find(|&&v| g.out_degree(v) > 1) {
            let cycle = g.shortest_cycle_at(v).expect("cycle vertex");
            let first = cycle.edges()[0];
            let exit = *g.out_edges(v).iter().find(|&&e| e != first).expect("out-degree > 1");
            FinitenessReason::CycleWithExit { vertex: v, exit }
        } else if let Some(&v) = cycles.iter().find(|v| !self.s().contains(v)) {
            FinitenessReason::CycleVertexNotInS { vertex: v }
        } else {
            FinitenessReason::Holds
        };
        FinitenessVerdict { directly_finite: reason == FinitenessReason::Holds, reason }
    }

    /// `x = p + (1 − δ_{v,w}) w`, `u = v + (1 − δ_{v,w}) w` for a cycle `p`
    /// at `v` with exit `e`, `w = r(e)`; or `x = p`, `u = v` for a cycle at a
    /// vertex outside `S`. `None` iff the algebra is directly finite.
    pub fn non_finiteness_witness(&self) -> Option<Witness> {
        let verdict = self.is_directly_finite();
        let g = self.graph();
        let (v, extra) = match verdict.reason {
            FinitenessReason::Holds => return None,
            FinitenessReason::CycleWithExit { vertex, exit } => {
                let w = g.range(exit);
                (vertex, (w != vertex).then_some(w))
            }
            FinitenessReason::CycleVertexNotInS { vertex } => (vertex, None),
        };
        let cycle = g.shortest_cycle_at(v).expect("cycle vertex");
        let mut x = self.path(&cycle);
        let mut u = self.vertex(v);
        if let Some(w) = extra {
            x = &x + &self.vertex(w);
            u = &u + &self.vertex(w);
        }
        let xs = self.star(&x);
        let x_star_x = self.mul(&xs, &x);
        let x_x_star = self.mul(&x, &xs);
        Some(Witness { reason: verdict.reason, cycle, x, u, x_star_x, x_x_star })
    }
}
