//! Elements of the Cohn–Leavitt algebra `CL_K(E, S)`.
//!
//! Every element is a finite linear combination of monomials `pq*` with
//! `r(p) = r(q)`. The relations (V), (E1), (E2) and (CK1) are built into
//! monomial multiplication; (SCK2) is imposed by rewriting to a normal form in
//! which no term has `p` and `q` both ending in the special edge `γ_v` of a
//! vertex `v ∈ S`:
//!
//! ```text
//! p'γ (q'γ)*  ⟶  p'q'* − Σ_{f ∈ s⁻¹(v), f ≠ γ} p'f (q'f)*
//! ```
//!
//! The rewritten `p'q'*` is strictly shorter and the siblings end in
//! non-special edges, so rewriting terminates. `γ_v` is the first edge of
//! `s⁻¹(v)` in insertion order.

mod expr;
mod finiteness;
mod phi;
mod reduce;

pub use expr::ElementDisplay;
pub use finiteness::{FinitenessReason, FinitenessVerdict, Witness};
pub use phi::PhiMap;
pub use reduce::{comparability_classes, comparable, is_irreducible, reduce_to_irreducible};

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Path, VertexId, VertexSet};
use crate::scalar::{FieldConfig, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("local unit of an empty list")]
    EmptyList,
    #[error("gauge parameter must be nonzero")]
    ZeroGauge,
    #[error("scalar {0} is not in the coefficient field")]
    ScalarNotInField(String),
    #[error("element refers to generators outside the graph")]
    ForeignElement,
}

/// `pq*` with `r(p) = r(q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    p: Path,
    q: Path,
}

impl Monomial {
    pub fn new(p: Path, q: Path) -> Option<Monomial> {
        (p.range() == q.range()).then_some(Monomial { p, q })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial { p: Path::vertex(v), q: Path::vertex(v) }
    }

    pub fn edge(graph: &Graph, e: EdgeId) -> Monomial {
        Monomial { p: Path::edge(graph, e), q: Path::vertex(graph.range(e)) }
    }

    pub fn ghost(graph: &Graph, e: EdgeId) -> Monomial {
        Monomial { p: Path::vertex(graph.range(e)), q: Path::edge(graph, e) }
    }

    /// `p p*` for a path `p`.
    pub fn projection(p: Path) -> Monomial {
        Monomial { q: p.clone(), p }
    }

    pub fn p(&self) -> &Path {
        &self.p
    }

    pub fn q(&self) -> &Path {
        &self.q
    }

    /// `|p| − |q|`.
    pub fn degree(&self) -> i64 {
        self.p.len() as i64 - self.q.len() as i64
    }

    pub fn star(&self) -> Monomial {
        Monomial { p: self.q.clone(), q: self.p.clone() }
    }

    /// `(pq*)(rs*)`: `(pu)s*` if `r = qu`, `p(su)*` if `q = ru`, zero otherwise.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(u) = other.p.strip_prefix(&self.q) {
            let p = self.p.concat(&u)?;
            return Some(Monomial { p, q: other.q.clone() });
        }
        if let Some(u) = self.q.strip_prefix(&other.p) {
            let q = other.q.concat(&u)?;
            return Some(Monomial { p: self.p.clone(), q });
        }
        None
    }

    fn in_graph(&self, graph: &Graph) -> bool {
        let ok = |path: &Path| {
            path.source().index() < graph.vertex_count()
                && path.edges().iter().all(|e| e.index() < graph.edge_count())
        };
        ok(&self.p) && ok(&self.q)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p.len() + self.q.len())
            .cmp(&(other.p.len() + other.q.len()))
            .then_with(|| self.p.edges().cmp(other.p.edges()))
            .then_with(|| self.q.edges().cmp(other.q.edges()))
            .then_with(|| self.p.cmp(&other.p))
            .then_with(|| self.q.cmp(&other.q))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl core::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({:?}, {:?})", self.p, self.q)
    }
}

/// A finite linear combination of monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(slot) => {
            slot.insert(c.clone());
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(m: Monomial) -> Element {
        Element::term(Scalar::one(), m)
    }

    pub fn term(c: Scalar, m: Monomial) -> Element {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, m, &c);
        Element { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Element {
        let mut out = Element::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        accumulate(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// The sub-sum of terms with `|p| − |q| = n`.
    pub fn graded_component(&self, n: i64) -> Element {
        Element {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Degrees that occur with nonzero coefficient, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(Monomial::degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Gauge action `λ(k)`: scales `pq*` by `k^{|p|−|q|}`.
    pub fn gauge(&self, k: &Scalar) -> Result<Element, AlgebraError> {
        if k.is_zero() {
            return Err(AlgebraError::ZeroGauge);
        }
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &(c * &k.pow(m.degree())?));
        }
        Ok(out)
    }

    /// Vertices occurring as `s(p)` or `s(q)`, ascending.
    pub fn source_vertices(&self) -> VertexSet {
        self.terms.keys().flat_map(|m| [m.p.source(), m.q.source()]).collect()
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl core::iter::Sum for Element {
    fn sum<I: Iterator<Item = Element>>(iter: I) -> Element {
        iter.fold(Element::zero(), |acc, x| &acc + &x)
    }
}

/// `CL_K(E, S)`: a graph, a set `S ⊆ R(E)` of vertices where (SCK2) is
/// imposed, and the coefficient field.
#[derive(Debug, Clone)]
pub struct AlgebraContext {
    graph: Graph,
    s: VertexSet,
    field: FieldConfig,
    special: Vec<Option<EdgeId>>,
}

impl AlgebraContext {
    pub fn new(graph: Graph, s: VertexSet, field: FieldConfig) -> Result<AlgebraContext, GraphError> {
        graph.check_relative_set(&s)?;
        let special = graph
            .vertices()
            .map(|v| if s.contains(&v) { graph.out_edges(v).first().copied() } else { None })
            .collect();
        Ok(AlgebraContext { graph, s, field, special })
    }

    /// The Leavitt path algebra `L_K(E)`, i.e. `S = R(E)`.
    pub fn leavitt(graph: Graph, field: FieldConfig) -> AlgebraContext {
        let s = graph.regular_vertices();
        AlgebraContext::new(graph, s, field).expect("R(E) is regular")
    }

    /// The Cohn path algebra `C_K(E)`, i.e. `S = ∅`.
    pub fn cohn(graph: Graph, field: FieldConfig) -> AlgebraContext {
        AlgebraContext::new(graph, VertexSet::new(), field).expect("empty S")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn with_field(&self, field: FieldConfig) -> AlgebraContext {
        AlgebraContext { field, ..self.clone() }
    }

    pub fn is_leavitt(&self) -> bool {
        self.s == self.graph.regular_vertices()
    }

    /// `γ_v` for `v ∈ S`.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.special[v.index()]
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        Element::monomial(Monomial::vertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Element {
        Element::monomial(Monomial::edge(&self.graph, e))
    }

    pub fn ghost(&self, e: EdgeId) -> Element {
        Element::monomial(Monomial::ghost(&self.graph, e))
    }

    pub fn path(&self, p: &Path) -> Element {
        Element::monomial(Monomial { p: p.clone(), q: Path::vertex(p.range()) })
    }

    /// The identity `Σ_v v` of the (unital, since `E` is finite) algebra.
    pub fn unit(&self) -> Element {
        self.graph.vertices().map(|v| self.vertex(v)).sum()
    }

    pub fn scalar(&self, c: Scalar) -> Result<Element, AlgebraError> {
        self.check_scalar(&c)?;
        Ok(self.unit().scale(&c))
    }

    pub fn check_scalar(&self, c: &Scalar) -> Result<(), AlgebraError> {
        if self.field.admits(c) {
            Ok(())
        } else {
            Err(AlgebraError::ScalarNotInField(alloc::format!("{c}")))
        }
    }

    pub fn check_element(&self, x: &Element) -> Result<(), AlgebraError> {
        for (m, c) in x.terms() {
            if !m.in_graph(&self.graph) {
                return Err(AlgebraError::ForeignElement);
            }
            self.check_scalar(c)?;
        }
        Ok(())
    }

    /// If `m = p'γ (q'γ)*` with `γ = γ_v`, `v ∈ S`, returns `(p'q'*, γ)`.
    pub fn reduction_site(&self, m: &Monomial) -> Option<(Monomial, EdgeId)> {
        let gamma = m.p.last_edge()?;
        if m.q.last_edge() != Some(gamma) || self.special[self.graph.source(gamma).index()] != Some(gamma) {
            return None;
        }
        let (p, _) = m.p.pop(&self.graph)?;
        let (q, _) = m.q.pop(&self.graph)?;
        Some((Monomial { p, q }, gamma))
    }

    pub fn is_normal_monomial(&self, m: &Monomial) -> bool {
        self.reduction_site(m).is_none()
    }

    pub fn is_normal(&self, x: &Element) -> bool {
        x.terms.keys().all(|m| self.is_normal_monomial(m))
    }

    /// One rewriting step applied to `m` with coefficient `c`.
    fn rewrite_once(&self, out: &mut BTreeMap<Monomial, Scalar>, shorter: Monomial, gamma: EdgeId, c: &Scalar) {
        let v = self.graph.source(gamma);
        let minus = -c;
        for &f in self.graph.out_edges(v).iter().filter(|&&f| f != gamma) {
            let p = shorter.p.push(&self.graph, f).expect("f leaves r(p')");
            let q = shorter.q.push(&self.graph, f).expect("f leaves r(q')");
            accumulate(out, Monomial { p, q }, &minus);
        }
        accumulate(out, shorter, c);
    }

    fn normalize_monomial_into(&self, out: &mut BTreeMap<Monomial, Scalar>, m: &Monomial, c: &Scalar) {
        let mut current = m.clone();
        let minus = -c;
        while let Some((shorter, gamma)) = self.reduction_site(&current) {
            let v = self.graph.source(gamma);
            for &f in self.graph.out_edges(v).iter().filter(|&&f| f != gamma) {
                let p = shorter.p.push(&self.graph, f).expect("f leaves r(p')");
                let q = shorter.q.push(&self.graph, f).expect("f leaves r(q')");
                accumulate(out, Monomial { p, q }, &minus);
            }
            current = shorter;
        }
        accumulate(out, current, c);
    }

    /// Rewrites `x` to its (SCK2) normal form.
    pub fn normalize(&self, x: &Element) -> Element {
        if self.s.is_empty() {
            return x.clone();
        }
        let mut out = BTreeMap::new();
        for (m, c) in &x.terms {
            self.normalize_monomial_into(&mut out, m, c);
        }
        Element { terms: out }
    }

    /// Normalizes by single rewriting steps, letting `choose(n)` pick which of
    /// the `n` currently reducible terms to rewrite next. Any choice sequence
    /// yields the same result as [`AlgebraContext::normalize`].
    pub fn normalize_with<F: FnMut(usize) -> usize>(&self, x: &Element, mut choose: F) -> Element {
        let mut terms = x.terms.clone();
        loop {
            let sites: Vec<(Monomial, Monomial, EdgeId)> = terms
                .keys()
                .filter_map(|m| self.reduction_site(m).map(|(s, g)| (m.clone(), s, g)))
                .collect();
            if sites.is_empty() {
                return Element { terms };
            }
            let (m, shorter, gamma) = sites[choose(sites.len()) % sites.len()].clone();
            let c = terms.remove(&m).expect("present");
            self.rewrite_once(&mut terms, shorter, gamma, &c);
        }
    }

    /// Bilinear extension of monomial multiplication, without normalizing.
    pub fn mul_raw(&self, x: &Element, y: &Element) -> Element {
        let mut out = BTreeMap::new();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some(m) = a.mul(b) {
                    accumulate(&mut out, m, &(ca * cb));
                }
            }
        }
        Element { terms: out }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.normalize(&self.mul_raw(x, y))
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(&self, factors: I) -> Element {
        let mut iter = factors.into_iter();
        let Some(first) = iter.next() else { return self.unit() };
        iter.fold(first.clone(), |acc, x| self.mul(&acc, x))
    }

    /// `(Σ a pq*)* = Σ a* qp*`.
    pub fn star(&self, x: &Element) -> Element {
        let mut out = BTreeMap::new();
        for (m, c) in &x.terms {
            accumulate(&mut out, m.star(), &self.field.star(c));
        }
        self.normalize(&Element { terms: out })
    }

    /// The sum of the distinct vertices `s(p)`, `s(q)` over all terms of all
    /// `xs`: an idempotent `u` with `u x = x u = x` for each `x`.
    pub fn local_unit(&self, xs: &[Element]) -> Result<Element, AlgebraError> {
        if xs.is_empty() {
            return Err(AlgebraError::EmptyList);
        }
        let vertices: VertexSet = xs.iter().flat_map(Element::source_vertices).collect();
        Ok(vertices.into_iter().map(|v| self.vertex(v)).sum())
    }

    pub fn gauge_action(&self, x: &Element, k: &Scalar) -> Result<Element, AlgebraError> {
        self.check_scalar(k)?;
        x.gauge(k)
    }

    /// All normal-form monomials `pq*` with `|p|, |q| ≤ max_len`, in monomial order.
    pub fn normal_basis(&self, max_len: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for v in self.graph.vertices() {
            let paths = self.graph.paths_into(v, max_len);
            for p in &paths {
                for q in &paths {
                    let m = Monomial { p: p.clone(), q: q.clone() };
                    if self.is_normal_monomial(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Looks up a generator by vertex or edge name.
    pub fn generator(&self, name: &str) -> Option<Element> {
        match (self.graph.vertex_id(name), self.graph.edge_id(name)) {
            (Some(v), None) => Some(self.vertex(v)),
            (None, Some(e)) => Some(self.edge(e)),
            _ => None,
        }
    }

    pub fn parse(&self, text: &str) -> Result<Element, AlgebraError> {
        expr::parse(self, text)
    }

    pub fn display<'a>(&'a self, x: &'a Element) -> ElementDisplay<'a> {
        ElementDisplay::new(self, x)
    }

    pub fn monomial_display(&self, m: &Monomial) -> String {
        expr::monomial_text(&self.graph, m)
    }
}
