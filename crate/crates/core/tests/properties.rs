use std::collections::BTreeSet;

use leavitt_core::algebra::{comparable, reduce_to_irreducible, AlgebraContext, Element, PhiMap};
use leavitt_core::corpus;
use leavitt_core::graph::{complete_subobject, relative_graph, Graph, Path, Subgraph, VertexId, VertexSet, VertexOrigin};
use leavitt_core::sample;
use leavitt_core::scalar::{FieldConfig, Rational, Scalar};
use leavitt_core::trace::{canonical_trace, canonical_trace_unchecked, verify_graph_trace, GraphTrace, TraceSystem};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [FieldConfig; 3] = [FieldConfig::RATIONALS, FieldConfig::GAUSSIAN_CONJ, FieldConfig::GAUSSIAN_IDENTITY];

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(re, im)| Scalar::new(re, im))
}

fn field() -> impl Strategy<Value = FieldConfig> {
    prop::sample::select(FIELDS.to_vec())
}

/// A random graph on up to five vertices with up to seven edges.
fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=5)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=7)))
        .prop_map(|(n, edges)| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String, String)> = edges
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| (format!("e{k}"), names[a].clone(), names[b].clone()))
                .collect();
            Graph::new(names.iter().map(String::as_str), edges.iter().map(|(e, a, b)| (e.as_str(), a.as_str(), b.as_str())))
                .unwrap()
        })
}

/// A subset of the regular vertices chosen by the bits of `mask`.
fn subset_of_regular(graph: &Graph, mask: u32) -> VertexSet {
    graph.regular_vertices().into_iter().filter(|v| mask >> (v.0 % 32) & 1 == 1).collect()
}

/// A corpus graph with a random `S ⊆ R(E)`, a random field and a seeded rng.
fn setup(index: usize, mask: u32, field: FieldConfig, seed: u64) -> (AlgebraContext, ChaCha8Rng) {
    let entries = corpus::all();
    let entry = &entries[index % entries.len()];
    let s = subset_of_regular(&entry.graph, mask);
    (AlgebraContext::new(entry.graph.clone(), s, field).unwrap(), ChaCha8Rng::seed_from_u64(seed))
}

fn context() -> impl Strategy<Value = (AlgebraContext, ChaCha8Rng)> {
    (0usize..64, any::<u32>(), field(), any::<u64>()).prop_map(|(i, m, f, s)| setup(i, m, f, s))
}

fn elements(ctx: &AlgebraContext, rng: &mut ChaCha8Rng) -> (Element, Element, Element) {
    (
        sample::random_element(rng, ctx, 4, 3),
        sample::random_element(rng, ctx, 4, 3),
        sample::random_element(rng, ctx, 4, 3),
    )
}

/// Vertices lying on a closed path, by reachability.
fn cycle_vertices_by_reachability(g: &Graph) -> VertexSet {
    g.vertices()
        .filter(|&v| {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<VertexId> = g.out_edges(v).iter().map(|&e| g.range(e)).collect();
            while let Some(w) = stack.pop() {
                if w == v {
                    return true;
                }
                if seen.insert(w) {
                    stack.extend(g.out_edges(w).iter().map(|&e| g.range(e)));
                }
            }
            false
        })
        .collect()
}

/// A path leaving `start` with at most `max_len` edges.
fn random_path_from(rng: &mut ChaCha8Rng, g: &Graph, start: VertexId, max_len: usize) -> Path {
    let mut p = Path::vertex(start);
    for _ in 0..rng.gen_range(0..=max_len) {
        let out = g.out_edges(p.range());
        if out.is_empty() {
            break;
        }
        p = p.push(g, out[rng.gen_range(0..out.len())]).unwrap();
    }
    p
}

/// Whether `w` is reachable from `v` along a path of length ≥ 0.
fn reachable(g: &Graph, v: VertexId, w: VertexId) -> bool {
    let mut seen = BTreeSet::from([v]);
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        if x == w {
            return true;
        }
        for &e in g.out_edges(x) {
            if seen.insert(g.range(e)) {
                stack.push(g.range(e));
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() * (b.clone() * c.clone()), (a.clone() * b.clone()) * c.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inv().unwrap(), Scalar::one());
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn positive_cone_is_a_closed_cone(f in field(), a in scalar(), b in scalar()) {
        let (a, b) = if f.rationals_only { (Scalar::real(a.re), Scalar::real(b.re)) } else { (a, b) };
        let aa = a.clone() * f.star(&a);
        let bb = b.clone() * f.star(&b);
        prop_assert!(f.in_positive_cone(&aa));
        prop_assert!(f.in_positive_cone(&(aa.clone() + bb.clone())));
        prop_assert!(f.in_positive_cone(&(aa.clone() * bb)));
        if f.is_positive_definite() {
            prop_assert_eq!(aa.is_zero(), a.is_zero());
            if f.in_positive_cone(&a) && f.in_positive_cone(&-a.clone()) {
                prop_assert!(a.is_zero());
            }
        }
    }

    #[test]
    fn normal_form_is_confluent((ctx, mut rng) in context()) {
        let x = sample::random_raw_element(&mut rng, &ctx, 5, 4);
        let n = ctx.normalize(&x);
        prop_assert!(ctx.is_normal(&n));
        prop_assert_eq!(ctx.normalize(&n), n.clone());
        let mut chooser = ChaCha8Rng::seed_from_u64(rng.gen());
        prop_assert_eq!(ctx.normalize_with(&x, |k| chooser.gen_range(0..k)), n);
    }

    #[test]
    fn ring_axioms((ctx, mut rng) in context()) {
        let (x, y, z) = elements(&ctx, &mut rng);
        prop_assert_eq!(ctx.mul(&ctx.mul(&x, &y), &z), ctx.mul(&x, &ctx.mul(&y, &z)));
        prop_assert_eq!(ctx.mul(&x, &(&y + &z)), &ctx.mul(&x, &y) + &ctx.mul(&x, &z));
        prop_assert_eq!(ctx.mul(&(&x + &y), &z), &ctx.mul(&x, &z) + &ctx.mul(&y, &z));
        let u = ctx.local_unit(&[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(ctx.mul(&u, &x), x.clone());
        prop_assert_eq!(ctx.mul(&y, &u), y.clone());
        prop_assert_eq!(ctx.mul(&u, &u), u);
    }

    #[test]
    fn involution_is_anti_multiplicative((ctx, mut rng) in context()) {
        let (x, y, _) = elements(&ctx, &mut rng);
        prop_assert_eq!(ctx.star(&ctx.star(&x)), x.clone());
        prop_assert_eq!(ctx.star(&(&x + &y)), &ctx.star(&x) + &ctx.star(&y));
        prop_assert_eq!(ctx.star(&ctx.mul(&x, &y)), ctx.mul(&ctx.star(&y), &ctx.star(&x)));
    }

    #[test]
    fn grading_and_gauge((ctx, mut rng) in context(), k in 1i64..=4, d in 1i64..=3) {
        let (x, y, _) = elements(&ctx, &mut rng);
        for m in x.degrees() {
            for n in y.degrees() {
                let xy = ctx.mul(&x.graded_component(m), &y.graded_component(n));
                prop_assert!(xy.degrees().iter().all(|&deg| deg == m + n));
            }
        }
        let k = if ctx.field().rationals_only { Scalar::from_ratio(k, d) } else { Scalar::new(Rational::from_ratio(k, d), Rational::one()) };
        let g = |a: &Element| ctx.gauge_action(a, &k).unwrap();
        prop_assert_eq!(g(&ctx.mul(&x, &y)), ctx.mul(&g(&x), &g(&y)));
        prop_assert_eq!(g(&ctx.normalize(&x)), ctx.normalize(&g(&x)));
        let back = ctx.gauge_action(&g(&x), &k.inv().unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn display_parses_back((ctx, mut rng) in context()) {
        let x = sample::random_element(&mut rng, &ctx, 5, 3);
        let text = ctx.display(&x).to_string();
        prop_assert_eq!(ctx.parse(&text).unwrap(), x, "{}", text);
    }

    #[test]
    fn reduction_and_comparability((ctx, mut rng) in context()) {
        let g = ctx.graph();
        let a = sample::random_monomial(&mut rng, g, 4);
        let (r, u) = reduce_to_irreducible(g, &a);
        prop_assert!(leavitt_core::algebra::is_irreducible(&r));
        prop_assert_eq!(r.p().concat(&u), Some(a.p().clone()));
        prop_assert_eq!(r.q().concat(&u), Some(a.q().clone()));
        prop_assert!(comparable(g, &a, &r));
        let b = sample::random_monomial(&mut rng, g, 4);
        prop_assert_eq!(comparable(g, &a, &b), comparable(g, &b, &a));
    }

    #[test]
    fn canonical_traces_are_central_and_well_defined((ctx, mut rng) in context()) {
        let Ok(delta) = TraceSystem::new(&ctx, false).solve() else { return Ok(()) };
        let (x, y, _) = elements(&ctx, &mut rng);
        let t = |a: &Element| canonical_trace(&ctx, &delta, a).unwrap();
        prop_assert_eq!(t(&ctx.mul(&x, &y)), t(&ctx.mul(&y, &x)));
        let raw = sample::random_raw_element(&mut rng, &ctx, 5, 4);
        prop_assert_eq!(canonical_trace_unchecked(&delta, &raw), t(&ctx.normalize(&raw)));
        let raw_product = ctx.mul_raw(&x, &y);
        prop_assert_eq!(t(&raw_product), t(&ctx.mul(&x, &y)));
    }

    #[test]
    fn phi_is_a_star_homomorphism((ctx, mut rng) in context()) {
        let phi = PhiMap::new(&ctx).unwrap();
        let d = phi.domain();
        let x = sample::random_element(&mut rng, d, 3, 3);
        let y = sample::random_element(&mut rng, d, 3, 3);
        let f = |a: &Element| phi.apply(a).unwrap();
        prop_assert_eq!(f(&d.mul(&x, &y)), ctx.mul(&f(&x), &f(&y)));
        prop_assert_eq!(f(&d.star(&x)), ctx.star(&f(&x)));
        prop_assert_eq!(f(&(&x + &y)), &f(&x) + &f(&y));
        prop_assert_eq!(f(&d.unit()), ctx.unit());
    }

    #[test]
    fn finiteness_matches_graph_condition(graph in small_graph(), mask in any::<u32>()) {
        let s = subset_of_regular(&graph, mask);
        let cycles = cycle_vertices_by_reachability(&graph);
        prop_assert_eq!(graph.cycle_vertices(), cycles.clone());
        let no_exit = cycles.iter().all(|&v| graph.out_degree(v) == 1);
        let ctx = AlgebraContext::new(graph, s.clone(), FieldConfig::GAUSSIAN_CONJ).unwrap();
        let finite = no_exit && cycles.is_subset(&s);
        prop_assert_eq!(ctx.is_directly_finite().directly_finite, finite);
        match ctx.non_finiteness_witness() {
            Some(w) => prop_assert!(!finite && w.verify(&ctx)),
            None => prop_assert!(finite),
        }
    }

    #[test]
    fn solver_is_sound(graph in small_graph(), mask in any::<u32>(), faithful in any::<bool>()) {
        let s = subset_of_regular(&graph, mask);
        let leavitt = s == graph.regular_vertices();
        let no_exit = graph.is_no_exit().holds;
        let ctx = AlgebraContext::new(graph, s, FieldConfig::RATIONALS).unwrap();
        let system = TraceSystem::new(&ctx, faithful);
        match system.solve() {
            Ok(delta) => {
                let values: Vec<Rational> = delta.values().iter().map(|c| c.re.clone()).collect();
                prop_assert!(system.is_satisfied_by(&values));
                let report = verify_graph_trace(&ctx, &delta).unwrap();
                prop_assert!(report.sck2_ok && report.positive_ok);
                prop_assert!(!faithful || report.faithful_ok);
            }
            Err(cert) => {
                prop_assert!(faithful, "δ ≡ 0 is always a positive graph trace");
                prop_assert!(cert.check(&system));
            }
        }
        if faithful && leavitt {
            prop_assert_eq!(system.solve().is_ok(), no_exit);
        }
    }

    #[test]
    fn complete_subobjects_are_subalgebras(
        graph in small_graph(),
        mask in any::<u32>(),
        vmask in any::<u32>(),
        emask in any::<u32>(),
        seed in any::<u64>(),
    ) {
        let s = subset_of_regular(&graph, mask);
        let mut sub = Subgraph {
            vertices: graph.vertices().filter(|v| vmask >> v.0 & 1 == 1).collect(),
            edges: BTreeSet::new(),
        };
        sub.edges = graph
            .edges()
            .filter(|&e| emask >> e.0 & 1 == 1)
            .filter(|&e| sub.vertices.contains(&graph.source(e)) && sub.vertices.contains(&graph.range(e)))
            .collect();
        let pair = complete_subobject(&graph, &s, &sub).unwrap();
        prop_assert!(pair.f.vertices.is_superset(&sub.vertices) && pair.f.edges.is_superset(&sub.edges));
        prop_assert!(pair.t.is_subset(&s));
        if pair.f.vertices.is_empty() {
            return Ok(());
        }
        let small_graph = pair.f.to_graph(&graph);
        let t = small_graph.vertex_set(pair.t.iter().map(|&v| graph.vertex_name(v))).unwrap();
        let small = AlgebraContext::new(small_graph, t, FieldConfig::GAUSSIAN_CONJ).unwrap();
        let big = AlgebraContext::new(graph, s, FieldConfig::GAUSSIAN_CONJ).unwrap();
        let embed = |x: &Element| big.parse(&small.display(x).to_string()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample::random_element(&mut rng, &small, 4, 3);
        let y = sample::random_element(&mut rng, &small, 4, 3);
        prop_assert!(big.is_normal(&embed(&x)));
        prop_assert_eq!(embed(&small.mul(&x, &y)), big.mul(&embed(&x), &embed(&y)));
        prop_assert_eq!(embed(&small.star(&x)), big.star(&embed(&x)));
    }

    #[test]
    fn positivity_is_monotone_along_paths(graph in small_graph(), values in prop::collection::vec(0i64..=5, 5)) {
        let ctx = AlgebraContext::cohn(graph, FieldConfig::RATIONALS);
        let g = ctx.graph();
        let delta = GraphTrace::new(g.vertices().map(|v| Scalar::from_integer(values[v.index()])).collect());
        if verify_graph_trace(&ctx, &delta).unwrap().positive_ok {
            for v in g.vertices() {
                for w in g.vertices().filter(|&w| reachable(g, v, w)) {
                    prop_assert!(delta.value(v).re >= delta.value(w).re);
                }
            }
        }
    }

    #[test]
    fn conjugating_projections_preserves_trace((ctx, mut rng) in context(), m in 1usize..=4) {
        let Ok(delta) = TraceSystem::new(&ctx, false).solve() else { return Ok(()) };
        let g = ctx.graph();
        let u = VertexId(rng.gen_range(0..g.vertex_count()) as u32);
        let p = sample::random_path_into(&mut rng, g, u, 3);
        let q = sample::random_path_into(&mut rng, g, u, 3);
        let (pe, qs) = (ctx.path(&p), ctx.star(&ctx.path(&q)));
        let mut x = Element::zero();
        let mut y = Element::zero();
        for _ in 0..m {
            let r = ctx.path(&random_path_from(&mut rng, g, u, 3));
            let a = sample::random_scalar(&mut rng, ctx.field());
            let rr = ctx.mul(&r, &ctx.star(&r)).scale(&a);
            x = &x + &ctx.product([&pe, &rr, &qs]);
            y = &y + &rr;
        }
        let t = |z: &Element| canonical_trace(&ctx, &delta, &ctx.mul(z, &ctx.star(z))).unwrap();
        prop_assert_eq!(t(&x), t(&y));
    }

    #[test]
    fn relative_graph_shape(graph in small_graph(), mask in any::<u32>()) {
        let s = subset_of_regular(&graph, mask);
        let rel = relative_graph(&graph, &s).unwrap();
        let missing = graph.regular_vertices().difference(&s).count();
        prop_assert_eq!(rel.graph.vertex_count(), graph.vertex_count() + missing);
        for (i, origin) in rel.vertex_origin.iter().enumerate() {
            if let VertexOrigin::Primed(_) = origin {
                prop_assert!(rel.graph.is_sink(VertexId(i as u32)));
            }
        }
        let leavitt = relative_graph(&graph, &graph.regular_vertices()).unwrap();
        prop_assert_eq!(leavitt.graph.is_no_exit().holds, graph.is_no_exit().holds);
        prop_assert_eq!(leavitt.graph.vertex_count(), graph.vertex_count());
    }
}
