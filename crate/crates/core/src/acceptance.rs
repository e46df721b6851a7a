//! End-to-end acceptance criteria, shared by the test suite and `selftest`.
//!
//! Each criterion returns an [`Outcome`] rather than panicking, so callers
//! can report every result even when some fail.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dirichlet::{self, energy, greens_formula_check, laplacian_apply};
use crate::exec::Exec;
use crate::field::{parse_literal, FieldElement, Rational};
use crate::graph::{ball_exhaustion, parse_generator_file, parse_graph_file, GraphGenerator, Truncation};
use crate::greenfn::{self, GKValue, GStatus, DEFAULT_WINDOW};
use crate::sample::{random_function, random_instance, Instance};
use crate::synth::{self, Irrealizable, SynthError};
use crate::walk::{self, ClassVerdict, Justification, TransitionMatrix, Verdict};

/// The five-vertex path with weights `τ⁻², τ⁻¹, 1, 1` and `U = {1,2,3,4}`.
pub const PATH5: &str = "\
field denom=1
edge 1 2 t^-2
edge 2 3 t^-1
edge 3 4 1
edge 4 5 1
interior 1 2 3 4
";

/// The weighted ray `a, 1, 2, …` with `b(2,3) = τ`.
pub const RAY_TAU: &str = "\
field denom=1
family ray
name 0 a
weight 0 t
weight 1 1
weight 2 t
weight 3 1
tail 4 t^(3-k)
";

/// The same ray with `b(2,3) = τ²`.
pub const RAY_TAU2: &str = "\
field denom=1
family ray
name 0 a
weight 0 t
weight 1 1
weight 2 t^2
weight 3 1
tail 4 t^(3-k)
";

/// The directed 4-cycle.
pub const C4: &str = "\
x1: x2=1
x2: x3=1
x3: x4=1
x4: x1=1
";

pub const ROUND_TRIP_INSTANCES: u64 = 100;
pub const INVARIANT_INSTANCES: u64 = 200;
pub const MONTE_CARLO_INSTANCES: u64 = 20;
pub const MONTE_CARLO_TRIALS: usize = 100_000;
pub const MONTE_CARLO_STEPS: usize = 200;
pub const PARTIAL_SUM_HORIZON: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn from_failures(id: u8, title: &'static str, checked: usize, failures: Vec<String>) -> Self {
        let detail = if failures.is_empty() {
            format!("{checked} checked")
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!("{} of {checked} failed: {}", failures.len(), shown.join("; "))
        };
        Self {
            id,
            title,
            passed: failures.is_empty(),
            detail,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

struct Failures(Vec<String>);

impl Failures {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.0.push(msg());
        }
    }
}

pub fn run_all(exec: Exec) -> Vec<Outcome> {
    vec![
        example_path(),
        example_ray(),
        directed_cycle(),
        round_trip(exec),
        invariants(exec),
        partial_sums(exec),
        finite_oracle(exec),
        monte_carlo(exec),
    ]
}

pub fn example_path() -> Outcome {
    let title = "finite path example";
    let mut f = Failures(Vec::new());
    let file = parse_graph_file(PATH5).expect("built-in example parses");
    let g = &file.graph;
    let id = |n: &str| g.id(n).unwrap();
    let k = g.ids(&["1", "2", "3", "4"]).unwrap();
    match dirichlet::solve_dp(g, &k, id("3")) {
        Ok(sol) => {
            let want = parse_literal("t/(2+2*t)").unwrap();
            let got = sol.normalized_capacity();
            f.check(got == want, || format!("c_K(3)/b(3) = {got}"));
            let gk = greenfn::g_of(&sol);
            f.check(gk.is_infinite(), || format!("G_K(3) = {gk}"));
        }
        Err(e) => f.check(false, || format!("solve: {e}")),
    }
    match greenfn::classify_graph(g, &file.interior, DEFAULT_WINDOW, Exec::Sequential) {
        Ok(r) => {
            let v = r.verdict_of(id("3"));
            f.check(
                v.verdict == Verdict::Transient && v.justification == Justification::NonEssential,
                || format!("vertex 3: {v:?}"),
            );
            let arrows: BTreeSet<(String, String)> =
                r.pi.arrows()
                    .into_iter()
                    .map(|(x, y)| (r.pi.name(x).to_string(), r.pi.name(y).to_string()))
                    .collect();
            let want: BTreeSet<(String, String)> = [("1", "2"), ("2", "1"), ("3", "2"), ("4", "3"), ("4", "5")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            f.check(arrows == want, || format!("arrows {arrows:?}"));
        }
        Err(e) => f.check(false, || format!("classify: {e}")),
    }
    Outcome::from_failures(1, title, 4, f.0)
}

pub fn example_ray() -> Outcome {
    let title = "infinite ray example";
    let mut f = Failures(Vec::new());
    for (text, squared) in [(RAY_TAU, false), (RAY_TAU2, true)] {
        let ray = parse_generator_file(text).expect("built-in example parses");
        let a = ray.lookup("a").unwrap();
        match greenfn::g_limit_generator(&ray, a, 10, DEFAULT_WINDOW) {
            Ok(trace) if !squared => {
                let two = Rational::from_integer(2.into());
                f.check(
                    matches!(&trace.status, GStatus::Stabilized { value, .. } if *value == two),
                    || format!("b(2,3)=τ: {:?}", trace.status),
                );
            }
            Ok(trace) => {
                // First ball whose edges, counted with the boundary, number at least 3.
                let t = Truncation::new(&ray, a, 11).unwrap();
                let first = (0..=10)
                    .find(|&n| {
                        let ball = t.ball(n);
                        t.graph
                            .edges()
                            .filter(|(x, y, _)| ball.contains(x) || ball.contains(y))
                            .count()
                            >= 3
                    })
                    .unwrap();
                f.check(trace.status == GStatus::ExactInfinity { step: first }, || {
                    format!("b(2,3)=τ²: {:?}, expected infinity at step {first}", trace.status)
                });
            }
            Err(e) => f.check(false, || format!("g_limit: {e}")),
        }
        match greenfn::classify_generator(&ray, a, 10, DEFAULT_WINDOW, Exec::Sequential) {
            Ok(r) => {
                let v = r.report.verdict_of(0);
                f.check(
                    v.verdict == Verdict::Transient && v.justification == Justification::NonEssential,
                    || format!("vertex a: {v:?}"),
                );
            }
            Err(e) => f.check(false, || format!("classify: {e}")),
        }
    }
    Outcome::from_failures(2, title, 4, f.0)
}

pub fn directed_cycle() -> Outcome {
    let pi = TransitionMatrix::parse(C4).expect("built-in example parses");
    let failures = match synth::validate_pi(&pi) {
        Err(SynthError::Irrealizable(Irrealizable::OneWayEdge { from, to }))
            if pi.get(pi.id(&from).unwrap(), pi.id(&to).unwrap()) > Rational::from_integer(0.into())
                && pi.get(pi.id(&to).unwrap(), pi.id(&from).unwrap()) == Rational::from_integer(0.into()) =>
        {
            Vec::new()
        }
        other => vec![format!("got {other:?}")],
    };
    Outcome::from_failures(3, "directed 4-cycle is not realizable", 1, failures)
}

fn round_trip_one(seed: u64) -> Vec<String> {
    let inst = random_instance(10_000 + seed, 12);
    let g = &inst.graph;
    let mut f = Failures(Vec::new());
    let pi = walk::build_pi(g, &inst.interior).unwrap();
    let beta = match synth::validate_pi(&pi) {
        Ok(b) => b,
        Err(e) => return vec![format!("seed {seed}: {e}")],
    };
    for x in 0..pi.len() {
        let base = beta.base_of(x);
        let want = g
            .degree_weight(x)
            .unwrap()
            .checked_div(g.degree_weight(base).unwrap())
            .unwrap()
            .rho();
        f.check(want.as_ref() == Ok(&beta.beta[x]), || format!("seed {seed}: β({x})"));
    }
    let dec = &beta.decomposition;
    let heights = if seed.is_multiple_of(2) {
        synth::height_finite(dec.class_count(), &dec.edges).unwrap()
    } else {
        // Rational heights from a shuffled enumeration.
        let reach = synth::reachability(dec.class_count(), &dec.edges);
        let mut order: Vec<usize> = (0..dec.class_count()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let hs = synth::height_countable(order.len(), |i, j| reach[order[i]][order[j]]).unwrap();
        let mut h = vec![Rational::from_integer(0.into()); order.len()];
        for (k, &c) in order.iter().enumerate() {
            h[c] = hs[k].clone();
        }
        h
    };
    match synth::construct_b(&pi, &beta, &heights) {
        Ok(w) => {
            let again = walk::build_pi(&w.graph, &w.interior).unwrap();
            f.check(again == pi, || format!("seed {seed}: round trip differs"));
        }
        Err(e) => f.check(false, || format!("seed {seed}: construct_b: {e}")),
    }
    f.0
}

pub fn round_trip(exec: Exec) -> Outcome {
    let seeds: Vec<u64> = (0..ROUND_TRIP_INSTANCES).collect();
    let failures = exec.map(&seeds, |&s| round_trip_one(s)).concat();
    Outcome::from_failures(4, "synthesis round trip", seeds.len(), failures)
}

pub fn invariant_instance(seed: u64) -> Instance {
    random_instance(seed, 10)
}

fn invariants_one(inst: &Instance, exec: Exec) -> Vec<String> {
    let g = &inst.graph;
    let a = inst.base;
    let seed = inst.seed;
    let mut f = Failures(Vec::new());
    let all: Vec<usize> = g.vertices().collect();
    let sol = match dirichlet::solve_dp(g, &inst.k, a) {
        Ok(s) => s,
        Err(e) => return vec![format!("seed {seed}: {e}")],
    };
    let zero = FieldElement::zero();
    let one = FieldElement::one();
    let ba = g.degree_weight(a).unwrap();

    f.check(inst.k.iter().all(|&x| sol.v[x] > zero && sol.v[x] <= one), || {
        format!("seed {seed}: maximum principle")
    });
    let lap = &laplacian_apply(g, &sol.v, a).unwrap() * ba;
    f.check(sol.energy == sol.capacity && lap == sol.capacity, || {
        format!("seed {seed}: Q(v), Δv(a)b(a), b(a)/ṽ(a) differ")
    });
    f.check(sol.normalized_capacity() <= one, || format!("seed {seed}: c/b > 1"));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let mut trial = random_function(g, &inst.k, &mut rng);
        trial[a] = one.clone();
        f.check(energy(g, &trial) >= sol.energy, || {
            format!("seed {seed}: energy not minimal")
        });
    }
    if let Ok(cl) = dirichlet::capacity(g, &inst.l, a) {
        f.check(cl <= sol.capacity, || format!("seed {seed}: capacity not monotone"));
    } else {
        f.check(false, || format!("seed {seed}: solve on L failed"));
    }
    match dirichlet::solve_dp_all(g, &inst.k, exec) {
        Ok(sols) => {
            for sx in &sols {
                for sy in &sols {
                    let l = sx.v[sy.base].checked_div(&sx.capacity).unwrap();
                    let r = sy.v[sx.base].checked_div(&sy.capacity).unwrap();
                    f.check(l == r, || {
                        format!("seed {seed}: ratio symmetry at ({}, {})", sx.base, sy.base)
                    });
                }
            }
        }
        Err(e) => f.check(false, || format!("seed {seed}: all bases: {e}")),
    }
    let phi = random_function(g, &inst.l, &mut rng);
    let fun = random_function(g, &all, &mut rng);
    f.check(greens_formula_check(g, &fun, &phi), || {
        format!("seed {seed}: Green's formula")
    });
    f.check(greenfn::harnack_check(g, &sol), || format!("seed {seed}: Harnack"));

    let pi_v = walk::build_pi(g, &all).unwrap();
    let dec_v = walk::scc(&pi_v);
    f.check(greenfn::rho_v_constancy_check(g, &sol, &dec_v), || {
        format!("seed {seed}: ρ(v) constancy")
    });

    let pi_u = walk::build_pi(g, &inst.interior).unwrap();
    let pi_k = walk::build_pi(g, &inst.k).unwrap();
    for (label, pi) in [("U", &pi_u), ("K", &pi_k), ("V", &pi_v)] {
        let dec = walk::scc(pi);
        f.check(walk::path_reversal_check(pi, &dec), || {
            format!("seed {seed}: path reversal on π_{label}")
        });
        f.check(walk::shortest_path_symmetry_check(pi), || {
            format!("seed {seed}: shortest paths on π_{label}")
        });
        f.check(walk::decompose(g, pi).is_some(), || {
            format!("seed {seed}: b-scale varies in a class of π_{label}")
        });
        let ord = |x: usize| g.degree_weight(x).unwrap().ord().unwrap();
        for (x, y) in pi.arrows() {
            let options = [
                pi.get(y, x) > Rational::from_integer(0.into()),
                pi.is_absorbing(y),
                !pi.is_absorbing(y) && ord(y) < ord(x),
            ];
            f.check(options.iter().filter(|&&o| o).count() == 1, || {
                format!("seed {seed}: arrow rule at ({x}, {y}) on π_{label}")
            });
        }
        for x in 0..pi.len() {
            for y in g.vertices() {
                let positive = pi.get(x, y) > Rational::from_integer(0.into());
                let p = g.normalized_weight(x, y).unwrap();
                let expected = if pi.is_absorbing(x) {
                    x == y
                } else {
                    !p.is_zero() && p.ord() == Some(Rational::from_integer(0.into()))
                };
                f.check(positive == expected, || {
                    format!("seed {seed}: π({x},{y}) > 0 on π_{label}")
                });
            }
        }
    }

    // G through the real class graph agrees with G through b on sets inside the class.
    let bg = greenfn::beta_graph(g, &pi_v, &dec_v, a).unwrap();
    let inside: Vec<usize> = inst.k.iter().copied().filter(|x| dec_v.same_class(*x, a)).collect();
    let mut comp = vec![a];
    loop {
        let before = comp.len();
        for &x in &inside {
            if !comp.contains(&x) && comp.iter().any(|&y| !g.weight(x, y).is_zero()) {
                comp.push(x);
            }
        }
        if comp.len() == before {
            break;
        }
    }
    let direct = greenfn::g_k(g, &comp, a);
    let gamma = greenfn::gamma_green(&bg, std::slice::from_ref(&inside), DEFAULT_WINDOW);
    match (direct, gamma) {
        (Ok(d), Ok(t)) => f.check(t.values == vec![d.clone()], || {
            format!("seed {seed}: Γ step {:?} vs G_K {d}", t.values)
        }),
        (d, t) => f.check(false, || format!("seed {seed}: Γ identity errored: {d:?} {t:?}")),
    }
    f.0
}

pub fn invariants(exec: Exec) -> Outcome {
    let seeds: Vec<u64> = (0..INVARIANT_INSTANCES).collect();
    let failures = exec
        .map(&seeds, |&s| invariants_one(&invariant_instance(s), Exec::Sequential))
        .concat();
    Outcome::from_failures(5, "invariant suites", seeds.len(), failures)
}

fn partial_sums_one(inst: &Instance) -> Vec<String> {
    let g = &inst.graph;
    let a = inst.base;
    let gk = match greenfn::g_k(g, &inst.k, a) {
        Ok(v) => v,
        Err(e) => return vec![format!("seed {}: {e}", inst.seed)],
    };
    let pi_k = walk::build_pi(g, &inst.k).unwrap();
    let sums = walk::green_partial_sums(&pi_k, a, PARTIAL_SUM_HORIZON);
    match &gk {
        GKValue::Infinite => Vec::new(),
        GKValue::Finite(v) => sums
            .iter()
            .enumerate()
            .filter(|(_, s)| *s > v)
            .take(1)
            .map(|(n, s)| format!("seed {}: G_K = {v} < partial sum {s} at N = {n}", inst.seed))
            .collect(),
    }
}

pub fn partial_sums(exec: Exec) -> Outcome {
    let seeds: Vec<u64> = (0..INVARIANT_INSTANCES).collect();
    let failures = exec.map(&seeds, |&s| partial_sums_one(&invariant_instance(s))).concat();
    Outcome::from_failures(6, "G_K dominates Green partial sums", seeds.len(), failures)
}

/// `None` when the instance does not have `U = V`.
fn finite_oracle_one(inst: &Instance) -> Option<Vec<String>> {
    let g = &inst.graph;
    if inst.interior.len() != g.vertex_count() {
        return None;
    }
    let seed = inst.seed;
    let mut f = Failures(Vec::new());
    let pi = walk::build_pi(g, &inst.interior).unwrap();
    let dec = walk::scc(&pi);
    let by_membership = walk::classify(&dec, &[]);
    for (c, expected) in by_membership.iter().enumerate() {
        let x = dec.classes[c][0];
        let by_g = if !dec.essential[c] {
            ClassVerdict::decide(Some(false), false, None)
        } else {
            let ex = ball_exhaustion(g, x, g.vertex_count());
            match greenfn::g_limit(g, &ex.sets, x, DEFAULT_WINDOW) {
                Ok(t) => {
                    let bg = greenfn::beta_graph(g, &pi, &dec, x).unwrap();
                    let gamma = greenfn::gamma_green(&bg, &ex.sets, DEFAULT_WINDOW).unwrap();
                    f.check(gamma.status.is_infinite() == t.status.is_infinite(), || {
                        format!("seed {seed}: Γ_C and G disagree on class {c}")
                    });
                    ClassVerdict::decide(Some(true), false, Some(&t.status))
                }
                Err(e) => {
                    f.check(false, || format!("seed {seed}: g_limit: {e}"));
                    continue;
                }
            }
        };
        f.check(by_g.verdict == expected.verdict, || {
            format!("seed {seed}: class {c}: {by_g:?} vs {expected:?}")
        });
    }
    Some(f.0)
}

pub fn finite_oracle(exec: Exec) -> Outcome {
    let seeds: Vec<u64> = (0..INVARIANT_INSTANCES).collect();
    let results: Vec<Option<Vec<String>>> = exec.map(&seeds, |&s| finite_oracle_one(&invariant_instance(s)));
    let checked = results.iter().flatten().count();
    let failures = results.into_iter().flatten().flatten().collect();
    Outcome::from_failures(7, "finite-state verdicts agree", checked, failures)
}

pub fn monte_carlo(exec: Exec) -> Outcome {
    let mut f = Failures(Vec::new());
    for seed in 0..MONTE_CARLO_INSTANCES {
        let inst = random_instance(50_000 + seed, 10);
        let pi = walk::build_pi(&inst.graph, &inst.interior).unwrap();
        let exact = walk::green_partial_sum(&pi, inst.base, MONTE_CARLO_STEPS)
            .to_f64()
            .unwrap();
        let s = walk::simulate(&pi, inst.base, MONTE_CARLO_STEPS, MONTE_CARLO_TRIALS, seed, exec);
        f.check((s.mean_visits - exact).abs() <= 4.0 * s.std_error + 1e-9, || {
            format!(
                "seed {seed}: mean {} vs exact {exact} (se {})",
                s.mean_visits, s.std_error
            )
        });
    }
    let file = parse_graph_file(PATH5).unwrap();
    let pi = walk::build_pi(&file.graph, &file.interior).unwrap();
    let three = file.graph.id("3").unwrap();
    let s = walk::simulate(&pi, three, MONTE_CARLO_STEPS, MONTE_CARLO_TRIALS, 0, exec);
    f.check(s.return_frequency == 0.0, || {
        format!("vertex 3 return frequency {}", s.return_frequency)
    });
    Outcome::from_failures(8, "Monte-Carlo agreement", MONTE_CARLO_INSTANCES as usize + 1, f.0)
}
