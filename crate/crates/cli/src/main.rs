//! `nagraph`: classification, capacities and synthesis from the command line.
//!
//! Reports go to stdout as JSON. Exit codes: 0 ok, 2 invalid input,
//! 3 budget exhausted or an undetermined verdict, 4 failed self-check.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nagraph::acceptance;
use nagraph::dirichlet::{self, DirichletSolution};
use nagraph::graph::{ball_exhaustion, parse_generator_file, parse_graph_file, GraphFile, GraphGenerator, RayFamily};
use nagraph::greenfn::{self, ClassificationReport, GStatus, GTrace, DEFAULT_WINDOW};
use nagraph::synth::{self, Irrealizable, SynthError};
use nagraph::walk::{self, TransitionMatrix, Verdict};
use nagraph::{Exec, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "nagraph",
    version,
    about = "Recurrence and transience on non-Archimedean weighted graphs"
)]
struct Cli {
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    /// Emit JSON. This is the default and only format.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recurrence/transience verdict for every vertex.
    Classify {
        file: PathBuf,
        /// Root of a generator file (defaults to its first vertex).
        #[arg(long)]
        base: Option<String>,
        /// Radius of the explored ball for generator files.
        #[arg(long, default_value_t = 10)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
    /// Capacity c_K(a) and energy of the equilibrium potential.
    Capacity(SetArgs),
    /// Solution v of the Dirichlet problem on K with v(a) = 1.
    Dirichlet(SetArgs),
    /// Real transition matrix of the graph on its interior.
    Pi { file: PathBuf },
    /// G_{K_n}(a) along balls around the base.
    G {
        file: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 10)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
    /// Graph whose transition matrix is the given one.
    Synth { file: PathBuf },
    /// Synthesizes a graph and compares its transition matrix to the input.
    Roundtrip { file: PathBuf },
    /// Monte-Carlo visit counts, compared with the exact partial Green sum.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Runs the acceptance criteria.
    Selftest {
        /// Only the worked examples.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args)]
struct SetArgs {
    file: PathBuf,
    /// Vertices of K, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    set: Vec<String>,
    #[arg(long)]
    base: String,
}

/// A report and the exit code it warrants.
struct Report {
    body: Value,
    code: u8,
}

impl Report {
    fn ok(body: Value) -> Self {
        Self { body, code: 0 }
    }
}

type Outcome = Result<Report, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let result = match cli.command {
        Command::Classify {
            file,
            base,
            budget,
            window,
        } => classify(&file, base.as_deref(), budget, window, exec),
        Command::Capacity(args) => capacity(&args, false),
        Command::Dirichlet(args) => capacity(&args, true),
        Command::Pi { file } => pi(&file),
        Command::G {
            file,
            base,
            budget,
            window,
        } => g(&file, &base, budget, window),
        Command::Synth { file } => synthesize(&file),
        Command::Roundtrip { file } => roundtrip(&file),
        Command::Simulate {
            file,
            base,
            seed,
            trials,
            steps,
        } => simulate(&file, &base, seed, trials, steps, exec),
        Command::Selftest { quick } => selftest(quick, exec),
    };
    match result {
        Ok(r) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(
                std::io::stdout().lock(),
                "{}",
                serde_json::to_string_pretty(&r.body).unwrap()
            );
            ExitCode::from(r.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum Input {
    Graph(GraphFile),
    Ray(RayFamily),
    Matrix(TransitionMatrix),
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Sniffs the format: generator files declare a `family`, matrix files
/// have `state: ...` rows, anything else is a graph file.
fn load(path: &Path) -> Result<Input, String> {
    let text = read(path)?;
    let first = |pred: fn(&str) -> bool| {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .is_some_and(pred)
    };
    let ctx = |e: String| format!("{}: {e}", path.display());
    if text.lines().any(|l| l.trim_start().starts_with("family")) {
        parse_generator_file(&text)
            .map(Input::Ray)
            .map_err(|e| ctx(e.to_string()))
    } else if first(|l| l.contains(':')) {
        TransitionMatrix::parse(&text)
            .map(Input::Matrix)
            .map_err(|e| ctx(e.to_string()))
    } else {
        parse_graph_file(&text)
            .map(Input::Graph)
            .map_err(|e| ctx(e.to_string()))
    }
}

fn load_graph(path: &Path) -> Result<GraphFile, String> {
    match load(path)? {
        Input::Graph(f) => Ok(f),
        _ => Err(format!("{}: expected a finite graph file", path.display())),
    }
}

fn load_matrix(path: &Path) -> Result<TransitionMatrix, String> {
    match load(path)? {
        Input::Matrix(m) => Ok(m),
        _ => Err(format!("{}: expected a transition matrix file", path.display())),
    }
}

fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn status_json(s: &GStatus) -> Value {
    match s {
        GStatus::ExactInfinity { step } => json!({ "kind": "ExactInfinity", "step": step }),
        GStatus::Stabilized {
            value,
            since,
            window,
            exact,
        } => json!({
            "kind": "Stabilized",
            "value": q(value),
            "since": since,
            "window": window,
            "exact": exact,
        }),
        GStatus::LowerBound { value, budget } => {
            json!({ "kind": "LowerBound", "value": q(value), "budget": budget })
        }
    }
}

fn trace_json(t: &GTrace) -> Value {
    Value::Array(t.values.iter().map(|v| Value::String(v.to_string())).collect())
}

fn report_json(f: &GraphFile, r: &ClassificationReport) -> (Value, bool) {
    let g = &f.graph;
    let dec = &r.decomposition;
    let mut undetermined = false;
    let mut classes = Vec::new();
    for c in 0..dec.class_count() {
        if !r.reported[c] {
            continue;
        }
        let v = r.verdicts[c];
        undetermined |= v.verdict == Verdict::Unknown;
        let mut entry = Map::new();
        entry.insert("id".into(), json!(c));
        entry.insert(
            "members".into(),
            json!(dec.classes[c].iter().map(|&x| g.name(x)).collect::<Vec<_>>()),
        );
        entry.insert("essential".into(), json!(dec.essential[c]));
        entry.insert("verdict".into(), json!(format!("{:?}", v.verdict)));
        entry.insert("justification".into(), json!(v.justification.code()));
        if let Some(s) = &r.statuses[c] {
            entry.insert("g_status".into(), status_json(s));
        }
        if let Some(t) = &r.traces[c] {
            entry.insert("g_trace".into(), trace_json(t));
        }
        classes.push(Value::Object(entry));
    }
    let vertices: Vec<Value> = g
        .vertices()
        .filter(|&x| r.reported[dec.class_of[x]])
        .map(|x| {
            let v = r.verdict_of(x);
            json!({
                "name": g.name(x),
                "class": dec.class_of[x],
                "essential": dec.essential[dec.class_of[x]],
                "verdict": format!("{:?}", v.verdict),
                "justification": v.justification.code(),
                "b_ord": q(&g.degree_weight(x).unwrap().ord().unwrap()),
            })
        })
        .collect();
    let body = json!({
        "field": { "denom": g.context().denom() },
        "interior": f.interior.iter().map(|&x| g.name(x)).collect::<Vec<_>>(),
        "vertices": vertices,
        "classes": classes,
    });
    (body, undetermined)
}

fn classify(path: &Path, base: Option<&str>, budget: usize, window: usize, exec: Exec) -> Outcome {
    match load(path)? {
        Input::Graph(f) => {
            let r = greenfn::classify_graph(&f.graph, &f.interior, window, exec).map_err(|e| e.to_string())?;
            let (body, undetermined) = report_json(&f, &r);
            Ok(Report {
                body,
                code: if undetermined { 3 } else { 0 },
            })
        }
        Input::Ray(ray) => {
            let root = match base {
                Some(name) => ray.lookup(name).ok_or_else(|| format!("unknown vertex {name:?}"))?,
                None => 0,
            };
            let r = greenfn::classify_generator(&ray, root, budget, window, exec).map_err(|e| e.to_string())?;
            let t = &r.truncation;
            let f = GraphFile::new(t.graph.clone(), t.interior());
            let (mut body, undetermined) = report_json(&f, &r.report);
            body["truncation"] = json!({ "radius": t.radius, "complete": t.complete });
            body.as_object_mut().unwrap().remove("interior");
            Ok(Report {
                body,
                code: if undetermined { 3 } else { 0 },
            })
        }
        Input::Matrix(_) => Err("classify needs a graph or generator file".into()),
    }
}

fn solution_json(f: &GraphFile, sol: &DirichletSolution, with_potential: bool) -> Value {
    let g = &f.graph;
    let mut body = json!({
        "base": g.name(sol.base),
        "set": sol.set.iter().map(|&x| g.name(x)).collect::<Vec<_>>(),
        "capacity": sol.capacity.to_string(),
        "energy": sol.energy.to_string(),
        "normalized_capacity": sol.normalized_capacity().to_string(),
        "g": greenfn::g_of(sol).to_string(),
    });
    if with_potential {
        let v: Map<String, Value> = g
            .vertices()
            .map(|x| (g.name(x).to_string(), Value::String(sol.v[x].to_string())))
            .collect();
        body["v"] = Value::Object(v);
        body["tilde_at_base"] = Value::String(sol.tilde_at_base.to_string());
    }
    body
}

fn capacity(args: &SetArgs, with_potential: bool) -> Outcome {
    let f = load_graph(&args.file)?;
    let g = &f.graph;
    let set = g.ids(&args.set).map_err(|e| e.to_string())?;
    let base = g.id(&args.base).map_err(|e| e.to_string())?;
    let sol = dirichlet::solve_dp(g, &set, base).map_err(|e| e.to_string())?;
    Ok(Report::ok(solution_json(&f, &sol, with_potential)))
}

fn matrix_json(pi: &TransitionMatrix) -> Value {
    let rows: Map<String, Value> = (0..pi.len())
        .map(|x| {
            let row: Map<String, Value> = pi.row(x).iter().map(|(y, p)| (pi.name(*y).to_string(), q(p))).collect();
            (pi.name(x).to_string(), Value::Object(row))
        })
        .collect();
    let dec = walk::scc(pi);
    let names = |xs: &[usize]| xs.iter().map(|&x| pi.name(x).to_string()).collect::<Vec<_>>();
    json!({
        "states": pi.names(),
        "absorbing": names(&(0..pi.len()).filter(|&x| pi.is_absorbing(x)).collect::<Vec<_>>()),
        "rows": rows,
        "arrows": pi.arrows().iter().map(|&(x, y)| [pi.name(x), pi.name(y)]).collect::<Vec<_>>(),
        "classes": dec.classes.iter().zip(&dec.essential).map(|(c, e)| json!({
            "members": names(c),
            "essential": e,
        })).collect::<Vec<_>>(),
    })
}

fn pi(path: &Path) -> Outcome {
    let f = load_graph(path)?;
    let pi = walk::build_pi(&f.graph, &f.interior).map_err(|e| e.to_string())?;
    Ok(Report::ok(matrix_json(&pi)))
}

fn g(path: &Path, base: &str, budget: usize, window: usize) -> Outcome {
    let trace = match load(path)? {
        Input::Graph(f) => {
            let a = f.graph.id(base).map_err(|e| e.to_string())?;
            let ex = ball_exhaustion(&f.graph, a, budget);
            greenfn::g_limit(&f.graph, &ex.sets, a, window)
        }
        Input::Ray(ray) => {
            let a = ray.lookup(base).ok_or_else(|| format!("unknown vertex {base:?}"))?;
            greenfn::g_limit_generator(&ray, a, budget, window)
        }
        Input::Matrix(_) => return Err("g needs a graph or generator file".into()),
    }
    .map_err(|e| e.to_string())?;
    let code = if matches!(trace.status, GStatus::LowerBound { .. }) {
        3
    } else {
        0
    };
    Ok(Report {
        body: json!({
            "base": base,
            "budget": budget,
            "window": window,
            "trace": trace_json(&trace),
            "status": status_json(&trace.status),
        }),
        code,
    })
}

fn irrealizable_json(w: &Irrealizable) -> Value {
    match w {
        Irrealizable::OneWayEdge { from, to } => json!({ "kind": "OneWayEdge", "from": from, "to": to }),
        Irrealizable::InconsistentCycle { cycle } => json!({ "kind": "InconsistentCycle", "cycle": cycle }),
    }
}

fn synthesize(path: &Path) -> Outcome {
    let pi = load_matrix(path)?;
    match synth::synthesize(&pi) {
        Ok((file, beta, heights)) => {
            let per_vertex = |vals: &dyn Fn(usize) -> Value| -> Map<String, Value> {
                (0..pi.len()).map(|x| (pi.name(x).to_string(), vals(x))).collect()
            };
            let dec = &beta.decomposition;
            Ok(Report::ok(json!({
                "graph": file.serialize(),
                "interior": file.interior.iter().map(|&x| file.graph.name(x)).collect::<Vec<_>>(),
                "beta": per_vertex(&|x| q(&beta.beta[x])),
                "height": per_vertex(&|x| q(&heights[dec.class_of[x]])),
            })))
        }
        Err(SynthError::Irrealizable(w)) => Ok(Report {
            body: json!({ "irrealizable": irrealizable_json(&w), "message": w.to_string() }),
            code: 2,
        }),
        Err(e) => Err(e.to_string()),
    }
}

fn roundtrip(path: &Path) -> Outcome {
    let pi = load_matrix(path)?;
    let (file, _, _) = match synth::synthesize(&pi) {
        Ok(r) => r,
        Err(SynthError::Irrealizable(w)) => {
            return Ok(Report {
                body: json!({ "irrealizable": irrealizable_json(&w), "message": w.to_string() }),
                code: 2,
            })
        }
        Err(e) => return Err(e.to_string()),
    };
    let again = walk::build_pi(&file.graph, &file.interior).map_err(|e| e.to_string())?;
    let mut differences = Vec::new();
    for x in 0..pi.len() {
        for y in 0..pi.len() {
            let (want, got) = (pi.get(x, y), again.get(x, y));
            if want != got {
                differences.push(json!({
                    "from": pi.name(x),
                    "to": pi.name(y),
                    "expected": q(&want),
                    "got": q(&got),
                }));
            }
        }
    }
    let equal = differences.is_empty() && again.names() == pi.names();
    Ok(Report {
        body: json!({ "equal": equal, "graph": file.serialize(), "differences": differences }),
        code: if equal { 0 } else { 4 },
    })
}

fn simulate(path: &Path, base: &str, seed: u64, trials: usize, steps: usize, exec: Exec) -> Outcome {
    if trials == 0 {
        return Err("--trials must be positive".into());
    }
    let pi = match load(path)? {
        Input::Graph(f) => walk::build_pi(&f.graph, &f.interior).map_err(|e| e.to_string())?,
        Input::Matrix(m) => m,
        Input::Ray(_) => return Err("simulate needs a finite graph or matrix file".into()),
    };
    let a = pi.id(base).map_err(|e| e.to_string())?;
    let s = walk::simulate(&pi, a, steps, trials, seed, exec);
    let exact = walk::green_partial_sum(&pi, a, steps);
    Ok(Report::ok(json!({
        "base": base,
        "seed": seed,
        "trials": s.trials,
        "steps": s.max_steps,
        "mean_visits": s.mean_visits,
        "std_error": s.std_error,
        "return_frequency": s.return_frequency,
        "exact_visits": q(&exact),
        "exact_visits_float": exact.to_f64(),
    })))
}

fn selftest(quick: bool, exec: Exec) -> Outcome {
    let outcomes = if quick {
        vec![
            acceptance::example_path(),
            acceptance::example_ray(),
            acceptance::directed_cycle(),
        ]
    } else {
        acceptance::run_all(exec)
    };
    let passed = outcomes.iter().all(|o| o.passed);
    for o in &outcomes {
        eprintln!("{}", o.line());
    }
    Ok(Report {
        body: json!({
            "passed": passed,
            "criteria": outcomes.iter().map(|o| json!({
                "id": o.id,
                "title": o.title,
                "passed": o.passed,
                "detail": o.detail,
            })).collect::<Vec<_>>(),
        }),
        code: if passed { 0 } else { 4 },
    })
}
