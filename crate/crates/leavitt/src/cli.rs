use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use leavitt_core::algebra::{AlgebraContext, Element, PhiMap};
use leavitt_core::graph::{complete_subobject, EdgeId, VertexKind};
use leavitt_core::oracle::{Oracle, OracleError};
use leavitt_core::scalar::FieldConfig;
use leavitt_core::trace::{canonical_trace, verify_graph_trace, TraceSystem};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::io::{load_graph, load_sub, load_trace, GraphDoc, InputError, TraceDoc};
use crate::report::{self, list, names, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "leavitt", version, about = "Cohn-Leavitt path algebras of finite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Qi)]
    pub field: FieldArg,
    #[arg(long, global = true, value_enum, default_value_t = InvolutionArg::Conj)]
    pub involution: InvolutionArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Q,
    Qi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvolutionArg {
    Id,
    Conj,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex classes, cycles, no-exit and direct finiteness.
    Check { graph: PathBuf },
    /// Normal form of an expression, and optionally its canonical trace.
    Eval {
        graph: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Checks (SCK2), (P), (F) and (SF) for a graph trace.
    TraceVerify {
        graph: PathBuf,
        trace: PathBuf,
        /// Exit 1 unless the trace is faithful.
        #[arg(long)]
        faithful: bool,
    },
    /// Finds a positive (or faithful) graph trace, or proves none exists.
    TraceSolve {
        graph: PathBuf,
        #[arg(long)]
        faithful: bool,
    },
    /// The graph E_S and the images of its generators.
    ConstructEs { graph: PathBuf },
    /// The complete subobject generated by a subgraph.
    ConstructComplete {
        graph: PathBuf,
        #[arg(long)]
        sub: PathBuf,
    },
    /// An element x with x^* x = u and x x^* ≠ u, when one exists.
    Witness { graph: PathBuf },
    /// Cross-checks the engine against the matrix or Laurent model.
    OracleCheck {
        graph: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

impl Cli {
    pub fn field_config(&self) -> FieldConfig {
        match (self.field, self.involution) {
            (FieldArg::Q, _) => FieldConfig::RATIONALS,
            (FieldArg::Qi, InvolutionArg::Conj) => FieldConfig::GAUSSIAN_CONJ,
            (FieldArg::Qi, InvolutionArg::Id) => FieldConfig::GAUSSIAN_IDENTITY,
        }
    }
}

fn context(path: &Path, field: FieldConfig) -> Result<AlgebraContext, InputError> {
    Ok(load_graph(path)?.context(field)?)
}

fn element_json(ctx: &AlgebraContext, x: &Element) -> Value {
    json!({
        "normal_form": ctx.display(x).to_string(),
        "terms": x.terms().map(|(m, c)| json!({
            "coefficient": c.to_string(),
            "monomial": ctx.monomial_display(m),
        })).collect::<Vec<_>>(),
    })
}

fn check(ctx: &AlgebraContext) -> Report {
    let g = ctx.graph();
    let class = g.classify_vertices();
    let kinds: Vec<(String, &str)> = g
        .vertices()
        .map(|v| {
            let kind = match class.classes[v.index()] {
                VertexKind::Regular => "regular",
                VertexKind::Sink => "sink",
            };
            (g.vertex_name(v).to_string(), kind)
        })
        .collect();
    let cycles = names(g, g.cycle_vertices());
    let s = names(g, ctx.s().iter().copied());
    let no_exit = g.is_no_exit();
    let exit: Option<(String, String)> = no_exit.certificate.map(|v| {
        let cycle = g.shortest_cycle_at(v).expect("cycle vertex");
        let e: EdgeId = *g.out_edges(v).iter().find(|&&e| e != cycle.edges()[0]).expect("out-degree ≥ 2");
        (g.vertex_name(v).to_string(), g.edge_name(e).to_string())
    });
    let verdict = ctx.is_directly_finite();
    let noetherian = g.is_locally_noetherian();

    let mut text = String::new();
    let shown: Vec<String> = kinds.iter().map(|(n, k)| format!("{n} {k}")).collect();
    let _ = writeln!(text, "vertices: {}", shown.join(", "));
    let _ = writeln!(text, "S: {}", list(&s));
    let _ = writeln!(text, "cycle vertices: {}", list(&cycles));
    match &exit {
        Some((v, e)) => {
            let _ = writeln!(text, "no-exit: false (cycle vertex {v} has exit {e})");
        }
        None => {
            let _ = writeln!(text, "no-exit: true");
        }
    }
    let _ = writeln!(text, "acyclic: {}", cycles.is_empty());
    match report::reason_text(ctx, verdict.reason) {
        Some(why) => {
            let _ = writeln!(text, "directly-finite: false ({why})");
        }
        None => {
            let _ = writeln!(text, "directly-finite: true");
        }
    }
    let _ = writeln!(text, "locally-noetherian-condition: {noetherian}");

    let json = json!({
        "vertices": kinds.iter().map(|(n, k)| json!({"id": n, "class": k})).collect::<Vec<_>>(),
        "S": s,
        "cycle_vertices": cycles,
        "no_exit": {
            "holds": no_exit.holds,
            "vertex": exit.as_ref().map(|(v, _)| v.clone()),
            "exit": exit.as_ref().map(|(_, e)| e.clone()),
        },
        "acyclic": g.is_acyclic(),
        "directly_finite": {
            "holds": verdict.directly_finite,
            "reason": report::reason_json(ctx, verdict.reason),
        },
        "locally_noetherian_condition": noetherian,
    });
    Report { status: Status::Holds, text, json }
}

fn eval(cli: &Cli, graph: &Path, expr: &str, trace: Option<&Path>) -> Result<Report, InputError> {
    let ctx = context(graph, cli.field_config())?;
    let x = ctx.parse(expr)?;
    let mut text = format!("{}\n", ctx.display(&x));
    let mut json = element_json(&ctx, &x);
    if let Some(path) = trace {
        let delta = load_trace(path, &ctx)?;
        let t = canonical_trace(&ctx, &delta, &x)?;
        let _ = writeln!(text, "trace: {t}");
        json["trace"] = t.to_string().into();
    }
    Ok(Report { status: Status::Holds, text, json })
}

fn trace_verify(cli: &Cli, graph: &Path, trace: &Path, faithful: bool) -> Result<Report, InputError> {
    let ctx = context(graph, cli.field_config())?;
    let delta = load_trace(trace, &ctx)?;
    let r = verify_graph_trace(&ctx, &delta)?;
    let ok = r.sck2_ok && r.positive_ok && (!faithful || r.faithful_ok);
    Ok(Report {
        status: Status::from_bool(ok),
        text: report::trace_report_text(&ctx, &r),
        json: report::trace_report_json(&ctx, &r),
    })
}

fn trace_solve(cli: &Cli, graph: &Path, faithful: bool) -> Result<Report, InputError> {
    let ctx = context(graph, cli.field_config())?;
    let system = TraceSystem::new(&ctx, faithful);
    Ok(match system.solve() {
        Ok(delta) => {
            let doc = serde_json::to_value(TraceDoc::from_trace(ctx.graph(), &delta)).expect("trace document");
            let text = format!("{}\n", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            Report { status: Status::Holds, text, json: doc }
        }
        Err(cert) => Report {
            status: Status::Fails,
            text: report::certificate_text(ctx.graph(), &system, &cert),
            json: report::certificate_json(&system, &cert),
        },
    })
}

fn construct_es(cli: &Cli, graph: &Path) -> Result<Report, InputError> {
    let ctx = context(graph, cli.field_config())?;
    let phi = PhiMap::new(&ctx)?;
    let es = &phi.relative().graph;
    let doc = GraphDoc::from_graph(es, Some(&es.regular_vertices()));
    let mut dictionary = serde_json::Map::new();
    for v in es.vertices() {
        dictionary.insert(es.vertex_name(v).to_string(), ctx.display(phi.vertex_image(v)).to_string().into());
    }
    for e in es.edges() {
        let image = phi.edge_image(e);
        dictionary.insert(es.edge_name(e).to_string(), ctx.display(image).to_string().into());
        dictionary.insert(format!("{}^*", es.edge_name(e)), ctx.display(&ctx.star(image)).to_string().into());
    }
    let json = json!({"graph": doc, "phi": dictionary});
    let mut text = format!("E_S:\n{}\nphi:\n", serde_json::to_string_pretty(&json["graph"]).expect("graph document"));
    for (k, v) in &dictionary {
        let _ = writeln!(text, "  {k} -> {}", v.as_str().expect("string image"));
    }
    Ok(Report { status: Status::Holds, text, json })
}

fn construct_complete(cli: &Cli, graph: &Path, sub: &Path) -> Result<Report, InputError> {
    let ctx = context(graph, cli.field_config())?;
    let g = ctx.graph();
    let sub = load_sub(sub, g)?;
    let pair = complete_subobject(g, ctx.s(), &sub)?;
    let f = pair.f.to_graph(g);
    let t = f.vertex_set(pair.t.iter().map(|&v| g.vertex_name(v)))?;
    let doc = GraphDoc::from_graph(&f, Some(&t));
    let t_names = names(g, pair.t.iter().copied());
    let f_edges: Vec<String> = pair.f.edges.iter().map(|&e| g.edge_name(e).to_string()).collect();
    let mut text = String::new();
    let _ = writeln!(text, "F vertices: {}", list(&names(g, pair.f.vertices.iter().copied())));
    let _ = writeln!(text, "F edges: {}", list(&f_edges));
    let _ = writeln!(text, "T: {}", list(&t_names));
    Ok(Report { status: Status::Holds, text, json: json!({"graph": doc, "T": t_names}) })
}

fn witness(cli: &Cli, graph: &Path) -> Result<Report, InputError> {
    let ctx = context(graph, cli.field_config())?;
    let Some(w) = ctx.non_finiteness_witness() else {
        return Ok(Report {
            status: Status::Fails,
            text: "none: the algebra is directly finite\n".to_string(),
            json: json!({"witness": null, "directly_finite": true}),
        });
    };
    let verified = w.verify(&ctx);
    let show = |x: &Element| ctx.display(x).to_string();
    let reason = report::reason_text(&ctx, w.reason).expect("witness has a reason");
    let cycle = w.cycle.display(ctx.graph()).to_string();
    let mut text = String::new();
    let _ = writeln!(text, "reason: {reason}");
    let _ = writeln!(text, "cycle: {cycle}");
    let _ = writeln!(text, "x = {}", show(&w.x));
    let _ = writeln!(text, "u = {}", show(&w.u));
    let _ = writeln!(text, "x^* x = {}", show(&w.x_star_x));
    let _ = writeln!(text, "x x^* = {}", show(&w.x_x_star));
    let _ = writeln!(text, "verified: {verified}");
    let json = json!({
        "directly_finite": false,
        "reason": report::reason_json(&ctx, w.reason),
        "cycle": cycle,
        "witness": {
            "x": show(&w.x),
            "u": show(&w.u),
            "x_star_x": show(&w.x_star_x),
            "x_x_star": show(&w.x_x_star),
        },
        "verified": verified,
    });
    Ok(Report { status: Status::from_bool(verified), text, json })
}

fn oracle_check(cli: &Cli, graph: &Path, samples: usize) -> Result<Report, InputError> {
    let ctx = context(graph, cli.field_config())?;
    let oracle = Oracle::for_context(&ctx).map_err(|e| {
        InputError::Unsupported(match e {
            OracleError::NotLeavitt => e.to_string(),
            _ => "no oracle applies: the matrix model needs an acyclic graph, the Laurent model a single loop".into(),
        })
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let results = oracle.run_suite(&mut rng, samples);
    let model = match oracle {
        Oracle::Matrix(_) => "matrix",
        Oracle::Laurent(_) => "laurent",
    };
    let mut text = format!("oracle: {model}\n");
    for (name, ok) in &results {
        let _ = writeln!(text, "{name}: {}", if *ok { "pass" } else { "FAIL" });
    }
    let all = results.iter().all(|(_, ok)| *ok);
    let json = json!({
        "oracle": model,
        "samples": samples,
        "seed": cli.seed,
        "checks": results.iter().map(|(n, ok)| json!({"check": n, "pass": ok})).collect::<Vec<_>>(),
    });
    Ok(Report { status: Status::from_bool(all), text, json })
}

pub fn dispatch(cli: &Cli) -> Result<Report, InputError> {
    match &cli.command {
        Command::Check { graph } => Ok(check(&context(graph, cli.field_config())?)),
        Command::Eval { graph, expr, trace } => eval(cli, graph, expr, trace.as_deref()),
        Command::TraceVerify { graph, trace, faithful } => trace_verify(cli, graph, trace, *faithful),
        Command::TraceSolve { graph, faithful } => trace_solve(cli, graph, *faithful),
        Command::ConstructEs { graph } => construct_es(cli, graph),
        Command::ConstructComplete { graph, sub } => construct_complete(cli, graph, sub),
        Command::Witness { graph } => witness(cli, graph),
        Command::OracleCheck { graph, samples } => oracle_check(cli, graph, *samples),
    }
}

/// Exit codes: 0 success or property holds, 1 property fails or infeasible,
/// 2 input error.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            let out = report.render(cli.json);
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            match report.status {
                Status::Holds => ExitCode::SUCCESS,
                Status::Fails => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
