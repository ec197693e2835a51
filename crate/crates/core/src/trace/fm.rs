//! Exact feasibility of the linear system a rational graph trace must satisfy,
//! by Fourier–Motzkin elimination.
//!
//! Every row reads `a·x ≥ c` or `a·x > c` and remembers the nonnegative
//! combination of input constraints it came from. A row with `a = 0` that is
//! violated is an infeasibility certificate. Otherwise a solution is built by
//! back-substitution, one variable at a time, inside the bounds left by the
//! already fixed ones.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::{One, Zero};

use super::GraphTrace;
use crate::algebra::AlgebraContext;
use crate::scalar::{Rational, Scalar};

/// `Σ coeffs[i]·δ(vᵢ) ≥ rhs`, or `>` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub id: String,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

impl Constraint {
    fn holds(&self, x: &[Rational]) -> bool {
        let lhs = self.coeffs.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }
}

/// The constraints on `δ` for a positive (or faithful) graph trace of `ctx`:
///
/// * `SCK2(v)≥`, `SCK2(v)≤`: the two halves of `δ(v) = Σ δ(r(e))`, `v ∈ S`
/// * `P0(v)`: `δ(v) ≥ 0`, or `F(v)`: `δ(v) > 0`
/// * `P(v)`: `δ(v) − Σ δ(r(e)) ≥ 0`, or `SF(v)` with `>`, regular `v ∉ S`
///
/// (P) at `v ∈ S` coincides with `SCK2(v)≥` and is not repeated.
#[derive(Debug, Clone)]
pub struct TraceSystem {
    pub constraints: Vec<Constraint>,
    variables: usize,
}

/// Nonnegative multipliers whose combination of the constraints has zero
/// left-hand side and an unsatisfiable right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub multipliers: Vec<(usize, Rational)>,
}

#[derive(Clone)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
    origin: BTreeMap<usize, Rational>,
}

impl Row {
    fn scaled(&self, k: &Rational) -> Row {
        Row {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            rhs: &self.rhs * k,
            strict: self.strict,
            origin: self.origin.iter().map(|(&i, m)| (i, m * k)).collect(),
        }
    }

    fn plus(&self, other: &Row) -> Row {
        let mut origin = self.origin.clone();
        for (&i, m) in &other.origin {
            *origin.entry(i).or_insert_with(Rational::zero) += m;
        }
        Row {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            rhs: &self.rhs + &other.rhs,
            strict: self.strict || other.strict,
            origin,
        }
    }

    /// Scales so the first nonzero coefficient is `±1`.
    fn normalized(self) -> Row {
        match self.coeffs.iter().find(|a| !a.is_zero()) {
            Some(a) => {
                let k = a.abs().recip().expect("nonzero");
                self.scaled(&k)
            }
            None => self,
        }
    }

    fn is_contradiction(&self) -> bool {
        self.rhs.is_positive() || (self.strict && self.rhs.is_zero())
    }
}

/// Keeps, per coefficient vector, only the tightest row.
fn prune(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<Rational>, Row> = BTreeMap::new();
    for row in rows {
        let row = row.normalized();
        match best.get(&row.coeffs) {
            Some(old) if old.rhs > row.rhs || (old.rhs == row.rhs && (old.strict || !row.strict)) => {}
            _ => {
                best.insert(row.coeffs.clone(), row);
            }
        }
    }
    best.into_values().collect()
}

impl TraceSystem {
    pub fn new(ctx: &AlgebraContext, require_faithful: bool) -> TraceSystem {
        let g = ctx.graph();
        let n = g.vertex_count();
        let mut constraints = Vec::new();
        let unit = |v: usize| {
            let mut a = alloc::vec![Rational::zero(); n];
            a[v] = Rational::one();
            a
        };
        let defect = |v: crate::graph::VertexId| {
            let mut a = unit(v.index());
            for &e in g.out_edges(v) {
                a[g.range(e).index()] -= &Rational::one();
            }
            a
        };
        for v in g.vertices() {
            let name = g.vertex_name(v);
            if ctx.s().contains(&v) {
                let a = defect(v);
                let neg = a.iter().map(|x| -x).collect();
                constraints.push(Constraint { id: alloc::format!("SCK2({name})≥"), coeffs: a, rhs: Rational::zero(), strict: false });
                constraints.push(Constraint { id: alloc::format!("SCK2({name})≤"), coeffs: neg, rhs: Rational::zero(), strict: false });
            }
        }
        for v in g.vertices() {
            let name = g.vertex_name(v);
            let id = if require_faithful { alloc::format!("F({name})") } else { alloc::format!("P0({name})") };
            constraints.push(Constraint { id, coeffs: unit(v.index()), rhs: Rational::zero(), strict: require_faithful });
        }
        for v in g.vertices().filter(|&v| g.is_regular(v) && !ctx.s().contains(&v)) {
            let name = g.vertex_name(v);
            let id = if require_faithful { alloc::format!("SF({name})") } else { alloc::format!("P({name})") };
            constraints.push(Constraint { id, coeffs: defect(v), rhs: Rational::zero(), strict: require_faithful });
        }
        TraceSystem { constraints, variables: n }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.variables && self.constraints.iter().all(|c| c.holds(x))
    }

    /// A rational solution, or a certificate that none exists.
    pub fn solve(&self) -> Result<GraphTrace, Certificate> {
        let n = self.variables;
        let initial: Vec<Row> = self
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| Row {
                coeffs: c.coeffs.clone(),
                rhs: c.rhs.clone(),
                strict: c.strict,
                origin: BTreeMap::from([(i, Rational::one())]),
            })
            .collect();
        // stages[k] constrains variables 0..=k only.
        let mut stages: Vec<Vec<Row>> = alloc::vec![Vec::new(); n];
        let mut current = prune(initial);
        for k in (0..n).rev() {
            if let Some(bad) = current.iter().find(|r| r.coeffs.iter().all(Zero::is_zero) && r.is_contradiction()) {
                return Err(Certificate::from_row(bad));
            }
            current.retain(|r| !r.coeffs.iter().all(Zero::is_zero));
            stages[k] = current.clone();
            let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for row in current {
                if row.coeffs[k].is_positive() {
                    lower.push(row);
                } else if row.coeffs[k].is_negative() {
                    upper.push(row);
                } else {
                    rest.push(row);
                }
            }
            for l in &lower {
                for u in &upper {
                    let combined = l.scaled(&-&u.coeffs[k]).plus(&u.scaled(&l.coeffs[k]));
                    rest.push(combined);
                }
            }
            current = prune(rest);
        }
        if let Some(bad) = current.iter().find(|r| r.is_contradiction()) {
            return Err(Certificate::from_row(bad));
        }

        let mut x: Vec<Rational> = Vec::with_capacity(n);
        for (k, rows) in stages.iter().enumerate() {
            let mut lo: Option<(Rational, bool)> = None;
            let mut hi: Option<(Rational, bool)> = None;
            for row in rows {
                let a = &row.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                let known = row.coeffs[..k].iter().zip(&x).fold(Rational::zero(), |acc, (c, v)| acc + c * v);
                let bound = (&row.rhs - &known).checked_div(a).expect("nonzero");
                if a.is_positive() {
                    if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && row.strict && !s)) {
                        lo = Some((bound, row.strict));
                    }
                } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && row.strict && !s)) {
                    hi = Some((bound, row.strict));
                }
            }
            x.push(pick(lo, hi));
        }
        debug_assert!(self.is_satisfied_by(&x));
        Ok(GraphTrace::new(x.into_iter().map(Scalar::real).collect()))
    }
}

/// A point of the interval, preferring small integers.
fn pick(lo: Option<(Rational, bool)>, hi: Option<(Rational, bool)>) -> Rational {
    let one = Rational::one();
    let above = |v: &Rational, (b, strict): &(Rational, bool)| if *strict { v > b } else { v >= b };
    let below = |v: &Rational, (b, strict): &(Rational, bool)| if *strict { v < b } else { v <= b };
    match (lo, hi) {
        (None, None) => one,
        (Some((l, _)), None) => l.floor() + one,
        (None, Some((u, _))) => u.ceil() - one,
        (Some(lo), Some(hi)) => {
            let candidate = lo.0.floor() + &one;
            if below(&candidate, &hi) {
                candidate
            } else if lo.0 < hi.0 {
                (&lo.0 + &hi.0).checked_div(&Rational::from_integer(2)).expect("two")
            } else {
                debug_assert!(above(&lo.0, &lo) && below(&lo.0, &hi));
                lo.0
            }
        }
    }
}

impl Certificate {
    fn from_row(row: &Row) -> Certificate {
        Certificate { multipliers: row.origin.iter().filter(|(_, m)| !m.is_zero()).map(|(&i, m)| (i, m.clone())).collect() }
    }

    /// Re-derives the contradiction from the listed constraints alone.
    pub fn check(&self, system: &TraceSystem) -> bool {
        let mut coeffs = alloc::vec![Rational::zero(); system.variables];
        let mut rhs = Rational::zero();
        let mut strict = false;
        for (i, m) in &self.multipliers {
            let Some(c) = system.constraints.get(*i) else { return false };
            if !m.is_positive() {
                return false;
            }
            for (acc, a) in coeffs.iter_mut().zip(&c.coeffs) {
                *acc += &(m * a);
            }
            rhs += &(m * &c.rhs);
            strict |= c.strict;
        }
        coeffs.iter().all(Zero::is_zero) && (rhs.is_positive() || (strict && rhs.is_zero()))
    }

    /// `λ₁ id₁ + λ₂ id₂ + …: 0 > c`.
    pub fn describe(&self, system: &TraceSystem) -> String {
        let mut out = String::new();
        let mut rhs = Rational::zero();
        let mut strict = false;
        for (k, (i, m)) in self.multipliers.iter().enumerate() {
            let c = &system.constraints[*i];
            if k > 0 {
                out.push_str(" + ");
            }
            if !m.is_one() {
                let _ = write!(out, "{m} ");
            }
            out.push_str(&c.id);
            rhs += &(m * &c.rhs);
            strict |= c.strict;
        }
        let _ = write!(out, ": 0 {} {rhs}", if strict { ">" } else { "≥" });
        out
    }
}
