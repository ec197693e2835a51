//! Graph traces and the canonical traces they determine.
//!
//! A graph trace `δ: E⁰ → K` satisfying `δ(v) = Σ_{s(e)=v} δ(r(e))` at every
//! `v ∈ S` extends uniquely to a canonical trace `t(pq*) = [p = q] δ(r(p))`.
//! Positivity and faithfulness of `t` are read off `δ`:
//!
//! * (P)  `δ(v) − Σ_{e ∈ I} δ(r(e)) ≥ 0` for all `v` and `I ⊆ s⁻¹(v)`
//! * (F)  `δ(v) > 0` for all `v`
//! * (SF) `δ(v) − Σ_{s(e)=v} δ(r(e)) > 0` for regular `v ∉ S`
//!
//! Faithfulness additionally needs a positive definite field.
//!
//! Checking (P) only at `I = ∅` and `I = s⁻¹(v)` suffices: the `I = ∅`
//! instances make every `δ(r(e))` nonnegative, so the full sum is the
//! smallest value of `δ(v) − Σ_I`.

mod fm;

pub use fm::{Certificate, Constraint, TraceSystem};

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraContext, Element};
use crate::graph::{Graph, VertexId};
use crate::scalar::{FieldConfig, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace has no value for vertex {0}")]
    Missing(String),
    #[error("trace names unknown vertex {0}")]
    UnknownVertex(String),
    #[error("trace value {0} is not in the coefficient field")]
    ScalarNotInField(String),
    #[error("(SCK2) fails at vertex {0}")]
    Sck2Violation(String),
}

/// `δ`, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTrace {
    values: Vec<Scalar>,
}

impl GraphTrace {
    pub fn new(values: Vec<Scalar>) -> GraphTrace {
        GraphTrace { values }
    }

    pub fn constant(graph: &Graph, c: Scalar) -> GraphTrace {
        GraphTrace { values: alloc::vec![c; graph.vertex_count()] }
    }

    /// Builds `δ` from `(name, value)` pairs, which must cover every vertex.
    pub fn from_named<'n, I>(graph: &Graph, pairs: I) -> Result<GraphTrace, TraceError>
    where
        I: IntoIterator<Item = (&'n str, Scalar)>,
    {
        let mut values: Vec<Option<Scalar>> = alloc::vec![None; graph.vertex_count()];
        for (name, c) in pairs {
            let v = graph.vertex_id(name).ok_or_else(|| TraceError::UnknownVertex(name.to_string()))?;
            values[v.index()] = Some(c);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| TraceError::Missing(graph.vertex_name(VertexId(i as u32)).to_string())))
            .collect::<Result<_, _>>()?;
        Ok(GraphTrace { values })
    }

    pub fn value(&self, v: VertexId) -> &Scalar {
        &self.values[v.index()]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// `δ(v) − Σ_{s(e)=v} δ(r(e))`.
    pub fn defect(&self, graph: &Graph, v: VertexId) -> Scalar {
        graph.out_edges(v).iter().fold(self.value(v).clone(), |acc, &e| acc - self.value(graph.range(e)))
    }

    fn check_total(&self, ctx: &AlgebraContext) -> Result<(), TraceError> {
        let g = ctx.graph();
        if self.values.len() != g.vertex_count() {
            let missing = VertexId(self.values.len().min(g.vertex_count().saturating_sub(1)) as u32);
            return Err(TraceError::Missing(g.vertex_name(missing).to_string()));
        }
        if let Some(c) = self.values.iter().find(|c| !ctx.field().admits(c)) {
            return Err(TraceError::ScalarNotInField(c.to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    Sck2,
    /// (P) at `I = ∅`: `δ(v) ≥ 0`.
    Nonnegative,
    /// (P) at `I = s⁻¹(v)`.
    Positive,
    Faithful,
    StrictFaithful,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Sck2 => "SCK2",
            Condition::Nonnegative => "P0",
            Condition::Positive => "P",
            Condition::Faithful => "F",
            Condition::StrictFaithful => "SF",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub vertex: VertexId,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    pub sck2_ok: bool,
    /// (P).
    pub positive_ok: bool,
    /// (P), (F) and (SF) hold; says nothing about the field.
    pub faithful_conditions_ok: bool,
    /// Whether the field is positive definite, so that faithfulness can be certified.
    pub faithful_certified: bool,
    pub faithful_ok: bool,
    pub violations: Vec<Violation>,
}

pub fn verify_graph_trace(ctx: &AlgebraContext, delta: &GraphTrace) -> Result<TraceReport, TraceError> {
    delta.check_total(ctx)?;
    let g = ctx.graph();
    let field = ctx.field();
    let mut violations = Vec::new();
    let mut flag = |condition, vertex, detail: String| violations.push(Violation { condition, vertex, detail });
    for v in g.vertices() {
        let d = delta.value(v);
        let defect = delta.defect(g, v);
        let sum = d.clone() - &defect;
        if ctx.s().contains(&v) && !defect.is_zero() {
            flag(Condition::Sck2, v, alloc::format!("{d} ≠ {sum}"));
        }
        if !field.in_positive_cone(d) {
            flag(Condition::Nonnegative, v, alloc::format!("{d} is not positive"));
        }
        if g.is_regular(v) && !field.in_positive_cone(&defect) {
            flag(Condition::Positive, v, alloc::format!("{d} - {sum} = {defect} is not positive"));
        }
        if !field.in_positive_cone(d) || d.is_zero() {
            flag(Condition::Faithful, v, alloc::format!("{d} is not strictly positive"));
        }
        if g.is_regular(v) && !ctx.s().contains(&v) && (!field.in_positive_cone(&defect) || defect.is_zero()) {
            flag(Condition::StrictFaithful, v, alloc::format!("{d} - {sum} = {defect} is not strictly positive"));
        }
    }
    let fails = |c: Condition| violations.iter().any(|x| x.condition == c);
    let sck2_ok = !fails(Condition::Sck2);
    let positive_ok = !fails(Condition::Nonnegative) && !fails(Condition::Positive);
    let faithful_conditions_ok = positive_ok && !fails(Condition::Faithful) && !fails(Condition::StrictFaithful);
    let faithful_certified = field.is_positive_definite();
    Ok(TraceReport {
        sck2_ok,
        positive_ok,
        faithful_conditions_ok,
        faithful_certified,
        faithful_ok: faithful_conditions_ok && faithful_certified,
        violations,
    })
}

fn require_sck2(ctx: &AlgebraContext, delta: &GraphTrace) -> Result<TraceReport, TraceError> {
    let report = verify_graph_trace(ctx, delta)?;
    match report.violations.iter().find(|x| x.condition == Condition::Sck2) {
        Some(x) => Err(TraceError::Sck2Violation(ctx.graph().vertex_name(x.vertex).to_string())),
        None => Ok(report),
    }
}

/// `t(x)` for the canonical trace extending `δ`. Takes any representative of
/// `x`, normalized or not.
pub fn canonical_trace(ctx: &AlgebraContext, delta: &GraphTrace, x: &Element) -> Result<Scalar, TraceError> {
    require_sck2(ctx, delta)?;
    Ok(canonical_trace_unchecked(delta, x))
}

/// `t(x)` without checking that `δ` is a graph trace.
pub fn canonical_trace_unchecked(delta: &GraphTrace, x: &Element) -> Scalar {
    x.terms()
        .filter(|(m, _)| m.p() == m.q())
        .fold(Scalar::zero(), |acc, (m, c)| acc + c * delta.value(m.p().range()))
}

/// Whether the canonical trace of `δ` is positive.
pub fn check_positive_canonical(ctx: &AlgebraContext, delta: &GraphTrace) -> Result<bool, TraceError> {
    Ok(require_sck2(ctx, delta)?.positive_ok)
}

/// Whether the canonical trace of `δ` is faithful. Always `false` over a field
/// that is not positive definite.
pub fn check_faithful_canonical(ctx: &AlgebraContext, delta: &GraphTrace) -> Result<bool, TraceError> {
    Ok(require_sck2(ctx, delta)?.faithful_ok)
}

/// (P) checked literally over every subset `I ⊆ s⁻¹(v)`. Exponential in the
/// out-degree; `None` if some vertex emits more than `max_degree` edges.
pub fn positive_exhaustive(graph: &Graph, field: FieldConfig, delta: &GraphTrace, max_degree: usize) -> Option<bool> {
    let mut ok = true;
    for v in graph.vertices() {
        let out = graph.out_edges(v);
        if out.len() > max_degree {
            return None;
        }
        for mask in 0u64..(1 << out.len()) {
            let sum = out
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Scalar::zero(), |acc, (_, &e)| acc + delta.value(graph.range(e)));
            ok &= field.in_positive_cone(&(delta.value(v).clone() - sum));
        }
    }
    Some(ok)
}
