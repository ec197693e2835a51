//! Command output: line-oriented text, or JSON with `--json`.

use std::fmt::Write;

use leavitt_core::algebra::{AlgebraContext, FinitenessReason};
use leavitt_core::graph::{Graph, VertexId};
use leavitt_core::scalar::Rational;
use leavitt_core::trace::{Certificate, Constraint, TraceReport, TraceSystem};
use serde_json::{json, Value};

/// Maps to the exit code: 0 when the reported property holds, 1 otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("JSON values serialize")
        } else {
            self.text.clone()
        }
    }
}

pub fn names(graph: &Graph, vs: impl IntoIterator<Item = VertexId>) -> Vec<String> {
    vs.into_iter().map(|v| graph.vertex_name(v).to_string()).collect()
}

pub fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

pub fn reason_text(ctx: &AlgebraContext, reason: FinitenessReason) -> Option<String> {
    let g = ctx.graph();
    match reason {
        FinitenessReason::Holds => None,
        FinitenessReason::CycleWithExit { vertex, exit } => {
            Some(format!("cycle vertex {} has exit {}", g.vertex_name(vertex), g.edge_name(exit)))
        }
        FinitenessReason::CycleVertexNotInS { vertex } => {
            Some(format!("cycle vertex {} is not in S", g.vertex_name(vertex)))
        }
    }
}

pub fn reason_json(ctx: &AlgebraContext, reason: FinitenessReason) -> Value {
    let g = ctx.graph();
    match reason {
        FinitenessReason::Holds => Value::Null,
        FinitenessReason::CycleWithExit { vertex, exit } => {
            json!({"kind": "cycle-with-exit", "vertex": g.vertex_name(vertex), "exit": g.edge_name(exit)})
        }
        FinitenessReason::CycleVertexNotInS { vertex } => {
            json!({"kind": "cycle-vertex-not-in-S", "vertex": g.vertex_name(vertex)})
        }
    }
}

pub fn trace_report_text(ctx: &AlgebraContext, report: &TraceReport) -> String {
    let g = ctx.graph();
    let mut out = String::new();
    let _ = writeln!(out, "sck2: {}", report.sck2_ok);
    let _ = writeln!(out, "positive: {}", report.positive_ok);
    let faithful = if report.faithful_conditions_ok && !report.faithful_certified {
        "not certified (the involution is not positive definite)".to_string()
    } else {
        report.faithful_ok.to_string()
    };
    let _ = writeln!(out, "faithful: {faithful}");
    for v in &report.violations {
        let _ = writeln!(out, "violation: {} at {}: {}", v.condition, g.vertex_name(v.vertex), v.detail);
    }
    out
}

pub fn trace_report_json(ctx: &AlgebraContext, report: &TraceReport) -> Value {
    let g = ctx.graph();
    json!({
        "sck2_ok": report.sck2_ok,
        "positive_ok": report.positive_ok,
        "faithful_conditions_ok": report.faithful_conditions_ok,
        "faithful_certified": report.faithful_certified,
        "faithful_ok": report.faithful_ok,
        "violations": report.violations.iter().map(|v| json!({
            "condition": v.condition.to_string(),
            "vertex": g.vertex_name(v.vertex),
            "detail": v.detail,
        })).collect::<Vec<_>>(),
    })
}

/// `2 δ(v) - δ(w) > 0`.
pub fn constraint_text(graph: &Graph, c: &Constraint) -> String {
    let mut out = String::new();
    for (v, a) in graph.vertices().zip(&c.coeffs) {
        if *a == Rational::default() {
            continue;
        }
        let negative = a.is_negative();
        let mag = a.abs();
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        if mag != Rational::from_integer(1) {
            let _ = write!(out, "{mag} ");
        }
        let _ = write!(out, "δ({})", graph.vertex_name(v));
    }
    if out.is_empty() {
        out.push('0');
    }
    let _ = write!(out, " {} {}", if c.strict { ">" } else { "≥" }, c.rhs);
    out
}

pub fn certificate_text(graph: &Graph, system: &TraceSystem, cert: &Certificate) -> String {
    let mut out = format!("infeasible: {}\n", cert.describe(system));
    for (i, m) in &cert.multipliers {
        let c = &system.constraints[*i];
        let _ = writeln!(out, "  {m} × {}: {}", c.id, constraint_text(graph, c));
    }
    out
}

pub fn certificate_json(system: &TraceSystem, cert: &Certificate) -> Value {
    json!({
        "feasible": false,
        "certificate": cert.multipliers.iter().map(|(i, m)| json!({
            "constraint": system.constraints[*i].id,
            "multiplier": m.to_string(),
        })).collect::<Vec<_>>(),
        "contradiction": cert.describe(system),
    })
}
