//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use leavitt_core::algebra::{comparable, reduce_to_irreducible, AlgebraContext, Element, Monomial, PhiMap};
use leavitt_core::corpus::{self, CorpusEntry};
use leavitt_core::graph::{Graph, Path, VertexId};
use leavitt_core::linalg;
use leavitt_core::oracle::{matrix_basis_ok, MatrixRep, Oracle, Representation};
use leavitt_core::sample;
use leavitt_core::scalar::{FieldConfig, Scalar};
use leavitt_core::trace::{
    canonical_trace, canonical_trace_unchecked, positive_exhaustive, verify_graph_trace, GraphTrace, TraceSystem,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn context(entry: &CorpusEntry, field: FieldConfig) -> AlgebraContext {
    AlgebraContext::new(entry.graph.clone(), entry.s.clone(), field).expect("corpus S is regular")
}

fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

fn elem(m: Monomial) -> Element {
    Element::monomial(m)
}

/// The defining relations as `(name, lhs factors, rhs)`; lhs sums are given
/// as a single factor.
fn relations(ctx: &AlgebraContext) -> Vec<(String, Vec<Element>, Element)> {
    let g = ctx.graph();
    let mut out = Vec::new();
    for v in g.vertices() {
        for w in g.vertices() {
            let rhs = if v == w { ctx.vertex(v) } else { Element::zero() };
            out.push((format!("V {} {}", g.vertex_name(v), g.vertex_name(w)), vec![ctx.vertex(v), ctx.vertex(w)], rhs));
        }
    }
    for e in g.edges() {
        let (s, r) = (ctx.vertex(g.source(e)), ctx.vertex(g.range(e)));
        let name = g.edge_name(e);
        out.push((format!("E1 s {name}"), vec![s.clone(), ctx.edge(e)], ctx.edge(e)));
        out.push((format!("E1 {name} r"), vec![ctx.edge(e), r.clone()], ctx.edge(e)));
        out.push((format!("E2 r {name}*"), vec![r.clone(), ctx.ghost(e)], ctx.ghost(e)));
        out.push((format!("E2 {name}* s"), vec![ctx.ghost(e), s], ctx.ghost(e)));
        for f in g.edges() {
            let rhs = if e == f { r.clone() } else { Element::zero() };
            out.push((format!("CK1 {name}* {}", g.edge_name(f)), vec![ctx.ghost(e), ctx.edge(f)], rhs));
        }
    }
    for &v in ctx.s() {
        let sum: Element = g.out_edges(v).iter().map(|&e| ctx.mul(&ctx.edge(e), &ctx.ghost(e))).sum();
        out.push((format!("SCK2 {}", g.vertex_name(v)), vec![sum], ctx.vertex(v)));
    }
    out
}

fn criterion_1(rng: &mut ChaCha8Rng) -> Outcome {
    let entries = corpus::all();
    ensure(entries.len() >= 10, || format!("only {} corpus graphs", entries.len()))?;
    for entry in &entries {
        let ctx = context(entry, FieldConfig::GAUSSIAN_CONJ);
        let rels = relations(&ctx);
        for (name, lhs, rhs) in &rels {
            ensure(ctx.product(lhs) == *rhs, || format!("{}: {name} fails on generators", entry.name))?;
        }
        for _ in 0..500 {
            let (name, lhs, rhs) = &rels[rng.gen_range(0..rels.len())];
            let a = elem(sample::random_monomial(rng, ctx.graph(), 3));
            let b = elem(sample::random_monomial(rng, ctx.graph(), 3));
            let mut left = vec![a.clone()];
            left.extend(lhs.iter().cloned());
            left.push(b.clone());
            ensure(ctx.product(&left) == ctx.product([&a, rhs, &b]), || {
                format!("{}: {name} fails after substitution", entry.name)
            })?;
        }
    }
    Ok(())
}

/// Number of paths ending at `z`, by recursion on in-edges.
fn path_count(g: &Graph, z: VertexId) -> usize {
    1 + g.in_edges(z).iter().map(|&e| path_count(g, g.source(e))).sum::<usize>()
}

fn acyclic_entries() -> Vec<CorpusEntry> {
    corpus::all().into_iter().filter(|e| e.graph.is_acyclic() && e.graph.vertex_count() <= 5).collect()
}

fn criterion_2(rng: &mut ChaCha8Rng) -> Outcome {
    let entries = acyclic_entries();
    ensure(!entries.is_empty(), || "no acyclic corpus graphs".into())?;
    for entry in &entries {
        let ctx = context(entry, FieldConfig::GAUSSIAN_CONJ);
        let rep = MatrixRep::new(&ctx).map_err(|e| format!("{}: {e}", entry.name))?;
        for _ in 0..200 {
            let x = sample::random_element(rng, &ctx, 5, 4);
            let y = sample::random_element(rng, &ctx, 5, 4);
            ensure(rep.eval(&ctx.mul(&x, &y)) == rep.mul(&rep.eval(&x), &rep.eval(&y)), || {
                format!("{}: product mismatch", entry.name)
            })?;
            let z = sample::random_raw_element(rng, &ctx, 5, 4);
            ensure(rep.eval(&ctx.normalize(&z)) == rep.eval(&z), || format!("{}: normalize mismatch", entry.name))?;
        }
        let g = ctx.graph();
        let expected: usize = g.sinks().into_iter().map(|z| path_count(g, z).pow(2)).sum();
        let count = ctx.normal_basis(g.vertex_count()).len();
        ensure(count == expected, || format!("{}: {count} normal monomials, Σn² = {expected}", entry.name))?;
        ensure(matrix_basis_ok(&rep), || format!("{}: basis images dependent", entry.name))?;
    }
    Ok(())
}

/// Graph traces to exercise on a context: the solver's positive and faithful
/// solutions, δ ≡ 0, δ ≡ 1 and a few random small integer assignments.
fn candidate_traces(ctx: &AlgebraContext, rng: &mut ChaCha8Rng) -> Vec<GraphTrace> {
    let g = ctx.graph();
    let mut out = vec![GraphTrace::constant(g, int(0)), GraphTrace::constant(g, int(1))];
    out.extend(TraceSystem::new(ctx, false).solve().ok());
    out.extend(TraceSystem::new(ctx, true).solve().ok());
    for _ in 0..40 {
        out.push(GraphTrace::new(g.vertices().map(|_| int(rng.gen_range(0..=4))).collect()));
    }
    let mut seen = BTreeSet::new();
    out.retain(|d| verify_graph_trace(ctx, d).unwrap().sck2_ok && seen.insert(format!("{:?}", d.values())));
    out.truncate(5);
    out
}

fn criterion_3(rng: &mut ChaCha8Rng) -> Outcome {
    let mut pairs = 0;
    for entry in corpus::all() {
        let ctx = context(&entry, FieldConfig::GAUSSIAN_CONJ);
        for delta in candidate_traces(&ctx, rng) {
            if !verify_graph_trace(&ctx, &delta).unwrap().positive_ok {
                continue;
            }
            pairs += 1;
            for _ in 0..500 {
                let x = sample::random_element(rng, &ctx, 4, 4);
                let t = canonical_trace(&ctx, &delta, &ctx.mul(&x, &ctx.star(&x))).unwrap();
                ensure(ctx.field().in_positive_cone(&t), || {
                    format!("{}: t(xx*) = {t} for x = {}", entry.name, ctx.display(&x))
                })?;
            }
        }
    }
    ensure(pairs >= 16, || format!("only {pairs} (graph, δ) pairs"))
}

/// Faithful graph traces from the solver and from hand-chosen assignments.
fn faithful_traces(ctx: &AlgebraContext, name: &str, rng: &mut ChaCha8Rng) -> Vec<GraphTrace> {
    let g = ctx.graph();
    let mut out: Vec<GraphTrace> = TraceSystem::new(ctx, true).solve().into_iter().collect();
    let named = |pairs: &[(&str, Scalar)]| GraphTrace::from_named(g, pairs.iter().map(|(n, c)| (*n, c.clone()))).unwrap();
    match name {
        "fan-truncated" => out.push(named(&[("v", int(1)), ("w1", int(1)), ("w2", int(2)), ("w3", int(3))])),
        "ladder-truncated" => out.push(named(&[
            ("v1", int(1)),
            ("v2", Scalar::from_ratio(1, 2)),
            ("v3", Scalar::from_ratio(1, 4)),
            ("w1", Scalar::from_ratio(1, 2)),
            ("w2", Scalar::from_ratio(1, 4)),
        ])),
        _ => {}
    }
    out.extend(candidate_traces(ctx, rng));
    out.retain(|d| verify_graph_trace(ctx, d).unwrap().faithful_ok);
    out
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Outcome {
    let mut pairs = 0;
    for entry in corpus::all() {
        let ctx = context(&entry, FieldConfig::GAUSSIAN_CONJ);
        for delta in faithful_traces(&ctx, entry.name, rng) {
            pairs += 1;
            for _ in 0..500 {
                let x = sample::random_nonzero_element(rng, &ctx, 4, 4);
                let t = canonical_trace(&ctx, &delta, &ctx.mul(&x, &ctx.star(&x))).unwrap();
                ensure(ctx.field().in_positive_cone(&t) && !t.is_zero(), || {
                    format!("{}: t(xx*) = {t} for x = {}", entry.name, ctx.display(&x))
                })?;
            }
        }
    }
    ensure(pairs >= 10, || format!("only {pairs} faithful (graph, δ) pairs"))
}

fn criterion_5() -> Outcome {
    let entry = corpus::a2();
    let ctx = context(&entry, FieldConfig::GAUSSIAN_IDENTITY);
    let delta = GraphTrace::constant(ctx.graph(), int(1));
    let x = ctx.parse("v + i w").map_err(|e| e.to_string())?;
    let xx = ctx.mul(&x, &ctx.star(&x));
    let v_minus_w = ctx.parse("v - w").map_err(|e| e.to_string())?;
    ensure(xx == v_minus_w, || format!("(v+iw)(v+iw)* = {}", ctx.display(&xx)))?;
    let t = canonical_trace(&ctx, &delta, &xx).map_err(|e| e.to_string())?;
    ensure(t.is_zero(), || format!("t(v - w) = {t}"))?;
    ensure(!xx.is_zero(), || "v - w vanished".into())?;
    let report = verify_graph_trace(&ctx, &delta).unwrap();
    ensure(report.faithful_conditions_ok && !report.faithful_ok, || "identity involution certified faithful".into())
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let mut failing = BTreeSet::new();
    for entry in corpus::all() {
        let ctx = context(&entry, FieldConfig::GAUSSIAN_CONJ);
        let g = ctx.graph();
        let expected_finite = g.is_no_exit().holds && g.cycle_vertices().is_subset(ctx.s());
        let witness = ctx.non_finiteness_witness();
        if expected_finite {
            ensure(witness.is_none(), || format!("{}: unexpected witness", entry.name))?;
            if let Ok(oracle) = Oracle::for_context(&ctx) {
                ensure(oracle.probe_direct_finiteness(rng, 200).is_ok(), || format!("{}: probe failed", entry.name))?;
            }
        } else {
            let w = witness.ok_or_else(|| format!("{}: no witness", entry.name))?;
            let xs = ctx.star(&w.x);
            ensure(ctx.mul(&xs, &w.x) == w.u, || format!("{}: x*x ≠ u", entry.name))?;
            ensure(ctx.mul(&w.x, &xs) != w.u, || format!("{}: xx* = u", entry.name))?;
            ensure(w.verify(&ctx), || format!("{}: witness does not verify", entry.name))?;
            failing.insert(entry.name);
        }
    }
    for name in ["toeplitz", "cycle-with-tail", "loop-cohn"] {
        ensure(failing.contains(name), || format!("{name} not flagged"))?;
    }
    Ok(())
}

/// Coefficient rows of `xs` over the union of their supports.
fn coefficient_rows(xs: &[Element]) -> Vec<Vec<Scalar>> {
    let support: BTreeSet<Monomial> = xs.iter().flat_map(|x| x.terms().map(|(m, _)| m.clone())).collect();
    xs.iter().map(|x| support.iter().map(|m| x.coefficient(m)).collect()).collect()
}

fn check_phi(ctx: &AlgebraContext, rng: &mut ChaCha8Rng, label: &str) -> Outcome {
    let phi = PhiMap::new(ctx).map_err(|e| e.to_string())?;
    let d = phi.domain();
    for _ in 0..200 {
        let x = sample::random_element(rng, d, 4, 3);
        let y = sample::random_element(rng, d, 4, 3);
        let (px, py) = (phi.apply(&x).unwrap(), phi.apply(&y).unwrap());
        ensure(phi.apply(&d.mul(&x, &y)).unwrap() == ctx.mul(&px, &py), || {
            format!("{label}: φ(xy) ≠ φ(x)φ(y) for x = {}, y = {}", d.display(&x), d.display(&y))
        })?;
        ensure(phi.apply(&d.star(&x)).unwrap() == ctx.star(&px), || {
            format!("{label}: φ(x*) ≠ φ(x)* for x = {}", d.display(&x))
        })?;
    }
    let images: Vec<Element> = d.normal_basis(2).into_iter().map(|m| phi.apply(&elem(m)).unwrap()).collect();
    let rank = linalg::rank(&coefficient_rows(&images));
    ensure(rank == images.len(), || format!("{label}: rank {rank} of {} basis images", images.len()))
}

fn criterion_7(rng: &mut ChaCha8Rng) -> Outcome {
    let ctx = context(&corpus::toeplitz_cohn(), FieldConfig::GAUSSIAN_CONJ);
    let phi = PhiMap::new(&ctx).map_err(|e| e.to_string())?;
    let es = &phi.relative().graph;
    let vertices: Vec<&str> = es.vertices().map(|v| es.vertex_name(v)).collect();
    let edges: BTreeSet<(&str, &str, &str)> =
        es.edges().map(|e| (es.edge_name(e), es.vertex_name(es.source(e)), es.vertex_name(es.range(e)))).collect();
    ensure(vertices == ["v", "w", "v'"], || format!("E_S vertices {vertices:?}"))?;
    let expected: BTreeSet<_> = [("e", "v", "v"), ("f", "v", "w"), ("e'", "v", "v'")].into_iter().collect();
    ensure(edges == expected, || format!("E_S edges {edges:?}"))?;
    check_phi(&ctx, rng, "toeplitz-cohn")?;
    for entry in [corpus::loop_cohn(), corpus::cycle_with_tail(), corpus::fork()] {
        let cohn = AlgebraContext::cohn(entry.graph, FieldConfig::GAUSSIAN_CONJ);
        check_phi(&cohn, rng, entry.name)?;
    }
    Ok(())
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Outcome {
    let mut entries = acyclic_entries();
    entries.push(corpus::single_loop());
    for entry in entries {
        let ctx = context(&entry, FieldConfig::GAUSSIAN_CONJ);
        let oracle = Oracle::for_context(&ctx).map_err(|e| format!("{}: {e}", entry.name))?;
        if let Err((x, y, u)) = oracle.probe_direct_finiteness(rng, 200) {
            return Err(format!(
                "{}: x = {}, y = {}, u = {}",
                entry.name,
                ctx.display(&x),
                ctx.display(&y),
                ctx.display(&u)
            ));
        }
    }
    Ok(())
}

/// Searches δ with values in `0..=bound` for a faithful graph trace.
fn brute_force_faithful(ctx: &AlgebraContext, bound: i64) -> bool {
    let n = ctx.graph().vertex_count();
    let mut digits = vec![1i64; n];
    loop {
        let delta = GraphTrace::new(digits.iter().map(|&k| int(k)).collect());
        if verify_graph_trace(ctx, &delta).unwrap().faithful_ok {
            return true;
        }
        let Some(i) = digits.iter().position(|&k| k < bound) else { return false };
        digits[i] += 1;
        digits[..i].fill(1);
    }
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Outcome {
    let toeplitz = context(&corpus::toeplitz(), FieldConfig::GAUSSIAN_CONJ);
    let system = TraceSystem::new(&toeplitz, true);
    let cert = system.solve().err().ok_or("toeplitz: faithful system feasible")?;
    ensure(cert.check(&system), || format!("toeplitz: certificate {} does not check", cert.describe(&system)))?;

    let fan = context(&corpus::fan_truncated(), FieldConfig::GAUSSIAN_CONJ);
    let solved = TraceSystem::new(&fan, true).solve().map_err(|_| "fan: infeasible")?;
    ensure(verify_graph_trace(&fan, &solved).unwrap().faithful_ok, || "fan: solver trace not faithful".into())?;
    let given = GraphTrace::from_named(
        fan.graph(),
        [("v", int(1)), ("w1", int(1)), ("w2", int(2)), ("w3", int(3))],
    )
    .unwrap();
    ensure(verify_graph_trace(&fan, &given).unwrap().faithful_ok, || "fan: δ(wn) = n not faithful".into())?;

    let entries = corpus::all();
    ensure(entries.len() >= 10, || "fewer than 10 corpus graphs".into())?;
    for entry in entries {
        let ctx = context(&entry, FieldConfig::GAUSSIAN_CONJ);
        let system = TraceSystem::new(&ctx, true);
        match system.solve() {
            Ok(delta) => {
                ensure(verify_graph_trace(&ctx, &delta).unwrap().faithful_ok, || {
                    format!("{}: solver trace not faithful", entry.name)
                })?;
                for _ in 0..100 {
                    let x = sample::random_nonzero_element(rng, &ctx, 4, 3);
                    let t = canonical_trace(&ctx, &delta, &ctx.mul(&x, &ctx.star(&x))).unwrap();
                    ensure(t.re.is_positive() && t.im == Default::default(), || {
                        format!("{}: t(xx*) = {t} for x = {}", entry.name, ctx.display(&x))
                    })?;
                }
                ensure(brute_force_faithful(&ctx, 4), || format!("{}: no small faithful δ found", entry.name))?;
            }
            Err(cert) => {
                ensure(cert.check(&system), || format!("{}: certificate does not check", entry.name))?;
                ensure(!brute_force_faithful(&ctx, 4), || format!("{}: infeasible but a faithful δ exists", entry.name))?;
            }
        }
        if ctx.is_leavitt() {
            let feasible = system.solve().is_ok();
            ensure(feasible == ctx.graph().is_no_exit().holds, || {
                format!("{}: feasibility {feasible} disagrees with no-exit", entry.name)
            })?;
        }
    }
    Ok(())
}

fn prefix(g: &Graph, p: &Path, keep: usize) -> Path {
    Path::from_edges(g, p.source(), p.edges()[..keep].to_vec()).unwrap()
}

/// All ways of writing `m = (ru)(su)*` with `rs*` irreducible.
fn irreducible_factorizations(g: &Graph, m: &Monomial) -> Vec<(Monomial, usize)> {
    let (p, q) = (m.p().edges(), m.q().edges());
    (0..=p.len().min(q.len()))
        .filter(|&k| p[p.len() - k..] == q[q.len() - k..])
        .filter(|&k| k == p.len().min(q.len()) || p[p.len() - k - 1] != q[q.len() - k - 1])
        .map(|k| {
            let r = prefix(g, m.p(), p.len() - k);
            let s = prefix(g, m.q(), q.len() - k);
            (Monomial::new(r, s).unwrap(), k)
        })
        .collect()
}

/// Everything reachable from `m` by stripping a common suffix.
fn strips(g: &Graph, m: &Monomial) -> Vec<Monomial> {
    let (p, q) = (m.p().edges(), m.q().edges());
    (0..=p.len().min(q.len()))
        .take_while(|&k| p[p.len() - k..] == q[q.len() - k..])
        .map(|k| Monomial::new(prefix(g, m.p(), p.len() - k), prefix(g, m.q(), q.len() - k)).unwrap())
        .collect()
}

/// `m` with a random path appended to both sides.
fn extend(rng: &mut ChaCha8Rng, g: &Graph, m: &Monomial) -> Monomial {
    let mut u = Path::vertex(m.p().range());
    for _ in 0..rng.gen_range(0..=2) {
        let out = g.out_edges(u.range());
        if out.is_empty() {
            break;
        }
        u = u.push(g, out[rng.gen_range(0..out.len())]).unwrap();
    }
    Monomial::new(m.p().concat(&u).unwrap(), m.q().concat(&u).unwrap()).unwrap()
}

fn criterion_10(rng: &mut ChaCha8Rng) -> Outcome {
    let entries = corpus::all();
    for i in 0..1000 {
        let entry = &entries[i % entries.len()];
        let g = &entry.graph;
        let base = sample::random_monomial(rng, g, 3);
        let m = extend(rng, g, &base);
        let (r, u) = reduce_to_irreducible(g, &m);
        let factorizations = irreducible_factorizations(g, &m);
        ensure(factorizations.len() == 1 && factorizations[0] == (r.clone(), u.len()), || {
            format!("{}: factorizations {factorizations:?} vs {r:?}", entry.name)
        })?;
        let (rr, uu) = reduce_to_irreducible(g, &r);
        ensure(rr == r && uu.is_vertex(), || format!("{}: reduce not idempotent on {r:?}", entry.name))?;
        ensure(
            Monomial::new(r.p().concat(&u).unwrap(), r.q().concat(&u).unwrap()).as_ref() == Some(&m),
            || format!("{}: ru, su do not rebuild {m:?}", entry.name),
        )?;
    }

    for entry in &entries {
        let g = &entry.graph;
        let mut pool: Vec<Monomial> = Vec::new();
        for _ in 0..20 {
            let m = sample::random_monomial(rng, g, 2);
            pool.push(extend(rng, g, &m));
            pool.push(extend(rng, g, &m));
            pool.push(m);
        }
        for a in &pool {
            ensure(comparable(g, a, a), || format!("{}: not reflexive", entry.name))?;
            for b in &pool {
                let ab = comparable(g, a, b);
                ensure(ab == comparable(g, b, a), || format!("{}: not symmetric", entry.name))?;
                let generated = strips(g, a).iter().any(|x| strips(g, b).contains(x));
                ensure(ab == generated, || format!("{}: {a:?} ~ {b:?} disagrees with suffix moves", entry.name))?;
                if !ab {
                    continue;
                }
                for c in &pool {
                    ensure(!comparable(g, b, c) || comparable(g, a, c), || format!("{}: not transitive", entry.name))?;
                }
            }
        }

        let ctx = context(entry, FieldConfig::GAUSSIAN_CONJ);
        let delta = TraceSystem::new(&ctx, true)
            .solve()
            .or_else(|_| TraceSystem::new(&ctx, false).solve())
            .map_err(|_| format!("{}: no positive trace", entry.name))?;
        for a in &pool {
            for b in &pool {
                let t = canonical_trace_unchecked(&delta, &ctx.mul_raw(&elem(a.clone()), &elem(b.star())));
                ensure(t.is_zero() || comparable(g, a, b), || {
                    format!("{}: t({a:?}·{b:?}*) = {t} but not comparable", entry.name)
                })?;
            }
        }

        let gauges = [int(2), Scalar::from_ratio(1, 3), Scalar::i()];
        for _ in 0..60 {
            let x = sample::random_raw_element(rng, &ctx, 6, 4);
            let t = canonical_trace(&ctx, &delta, &x).unwrap();
            for k in &gauges {
                let gx = ctx.gauge_action(&x, k).unwrap();
                ensure(canonical_trace(&ctx, &delta, &gx).unwrap() == t, || {
                    format!("{}: gauge {k} changes the trace", entry.name)
                })?;
            }
            for n in x.degrees().into_iter().filter(|&n| n != 0) {
                let t = canonical_trace(&ctx, &delta, &x.graded_component(n)).unwrap();
                ensure(t.is_zero(), || format!("{}: degree {n} component has trace {t}", entry.name))?;
            }
        }
    }
    Ok(())
}

fn criterion_11(rng: &mut ChaCha8Rng) -> Outcome {
    let fields = [FieldConfig::RATIONALS, FieldConfig::GAUSSIAN_CONJ, FieldConfig::GAUSSIAN_IDENTITY];
    let mut compared = 0;
    for entry in corpus::all() {
        let g = &entry.graph;
        if g.vertices().any(|v| g.out_degree(v) > 4) {
            continue;
        }
        for field in fields {
            let ctx = context(&entry, field);
            let mut deltas = candidate_traces(&ctx, rng);
            for _ in 0..40 {
                deltas.push(GraphTrace::new(
                    g.vertices().map(|_| if rng.gen_bool(0.2) { int(0) } else { sample::random_scalar(rng, field) }).collect(),
                ));
            }
            for delta in deltas {
                let two_point = verify_graph_trace(&ctx, &delta).unwrap().positive_ok;
                let exhaustive = positive_exhaustive(g, field, &delta, 4).unwrap();
                ensure(two_point == exhaustive, || {
                    format!("{}: two-point {two_point}, exhaustive {exhaustive} for {:?}", entry.name, delta.values())
                })?;
                compared += 1;
            }
        }
    }
    ensure(compared > 0, || "nothing compared".into())
}

type Criterion<'a> = (&'a str, &'a dyn Fn(&mut ChaCha8Rng) -> Outcome);

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ea_7177);
    let criteria: [Criterion; 11] = [
        ("relations hold after normalization", &criterion_1),
        ("matrix oracle agrees with the engine", &criterion_2),
        ("positive graph traces give positive traces", &criterion_3),
        ("faithful graph traces give faithful traces", &criterion_4),
        ("identity involution on Q(i) breaks faithfulness", &|_| criterion_5()),
        ("non-finiteness witnesses", &criterion_6),
        ("E_S and the map phi", &criterion_7),
        ("direct finiteness probe", &criterion_8),
        ("trace solver", &criterion_9),
        ("irreducibility, comparability and gauge invariance", &criterion_10),
        ("two-point positivity check", &criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut rng);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: pass  {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
