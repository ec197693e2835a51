//! `L_K` of the single loop as `K[x, x⁻¹]`: `v ↦ 1`, `e ↦ x`, `e* ↦ x⁻¹`.

use alloc::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{OracleError, Representation};
use crate::algebra::{AlgebraContext, Element, Monomial};
use crate::graph::{EdgeId, Path};
use crate::scalar::Scalar;

/// Exponent ↦ nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    pub terms: BTreeMap<i64, Scalar>,
}

impl Laurent {
    pub fn monomial(c: Scalar, n: i64) -> Laurent {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, n: i64) -> Scalar {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, n: i64, c: Scalar) {
        let slot = self.terms.entry(n).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }
}

#[derive(Debug, Clone)]
pub struct LaurentRep {
    ctx: AlgebraContext,
    edge: EdgeId,
}

impl LaurentRep {
    /// Requires one vertex, one loop, and (CK2) at the vertex.
    pub fn new(ctx: &AlgebraContext) -> Result<LaurentRep, OracleError> {
        let g = ctx.graph();
        if g.vertex_count() != 1 || g.edge_count() != 1 {
            return Err(OracleError::NotSingleLoop);
        }
        if !ctx.is_leavitt() {
            return Err(OracleError::NotLeavitt);
        }
        Ok(LaurentRep { ctx: ctx.clone(), edge: EdgeId(0) })
    }

    /// `c xⁿ ↦ c eⁿ` or `c (e*)^{-n}`.
    pub fn pullback(&self, a: &Laurent) -> Element {
        let g = self.ctx.graph();
        let v = g.source(self.edge);
        let power = |k: i64| Path::from_edges(g, v, alloc::vec![self.edge; k.unsigned_abs() as usize]).expect("loop");
        Element::from_terms(a.terms.iter().map(|(&n, c)| {
            let m = if n >= 0 {
                Monomial::new(power(n), Path::vertex(v))
            } else {
                Monomial::new(Path::vertex(v), power(n))
            };
            (m.expect("loop"), c.clone())
        }))
    }
}

impl Representation for LaurentRep {
    type Image = Laurent;

    fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    fn eval(&self, x: &Element) -> Laurent {
        let mut out = Laurent::default();
        for (m, c) in x.terms() {
            out.add_term(m.degree(), c.clone());
        }
        out
    }

    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (&n, c) in &a.terms {
            for (&k, d) in &b.terms {
                out.add_term(n + k, c * d);
            }
        }
        out
    }

    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        let mut out = a.clone();
        for (&n, c) in &b.terms {
            out.add_term(n, c.clone());
        }
        out
    }

    fn star(&self, a: &Laurent) -> Laurent {
        let field = self.ctx.field();
        Laurent { terms: a.terms.iter().map(|(&n, c)| (-n, field.star(c))).collect() }
    }
}

impl Laurent {
    pub fn one() -> Laurent {
        Laurent::monomial(Scalar::one(), 0)
    }
}
