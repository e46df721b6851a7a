//! `G_K(a) = 1/ρ(c_K(a)/b(a))`, its limit along exhaustions, the real class
//! graph `β` with its Green value `Γ_C(a,a)`, and classification reports.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::dirichlet::{self, DirichletError, DirichletSolution};
use crate::exec::Exec;
use crate::field::{FieldElement, Rational};
use crate::graph::{ball_exhaustion, GraphBuilder, GraphError, GraphGenerator, Truncation, VertexId, WeightedGraph};
use crate::walk::{self, ClassVerdict, ComponentDecomposition, TransitionMatrix};

/// Default number of unchanged steps that counts as stabilized.
pub const DEFAULT_WINDOW: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreenError {
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("β is not symmetric on ({0:?}, {1:?})")]
    SymmetryViolation(String, String),
    #[error("base vertex is not in the first exhaustion set")]
    BaseNotInK0,
}

/// A value of `G_K(a)`: a rational `≥ 1` or `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GKValue {
    Finite(Rational),
    Infinite,
}

impl GKValue {
    /// `1/ρ(x)` for a normalized capacity `x`, with `1/0 = ∞`.
    pub fn from_normalized_capacity(x: &FieldElement) -> Self {
        let r = x.rho().expect("normalized capacity is at most 1");
        if r.is_zero() {
            GKValue::Infinite
        } else {
            GKValue::Finite(r.recip())
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, GKValue::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            GKValue::Finite(q) => Some(q),
            GKValue::Infinite => None,
        }
    }
}

impl PartialOrd for GKValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GKValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GKValue::Infinite, GKValue::Infinite) => Ordering::Equal,
            (GKValue::Infinite, _) => Ordering::Greater,
            (_, GKValue::Infinite) => Ordering::Less,
            (GKValue::Finite(a), GKValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for GKValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GKValue::Finite(q) => write!(f, "{q}"),
            GKValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Outcome of following `G_{K_n}(a)` along an exhaustion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GStatus {
    /// `G_{K_n}(a) = ∞` first at `step`; final by monotonicity.
    ExactInfinity { step: usize },
    /// Unchanged for `window` steps from `since` on. Heuristic unless
    /// `exact`, which means the exhaustion reached the whole (finite)
    /// domain, so the sequence is constant from then on.
    Stabilized {
        value: Rational,
        since: usize,
        window: usize,
        exact: bool,
    },
    /// The budget ran out; `G(a) ≥ value`.
    LowerBound { value: Rational, budget: usize },
}

impl GStatus {
    pub fn is_infinite(&self) -> bool {
        matches!(self, GStatus::ExactInfinity { .. })
    }

    /// Whether the status certifies a finite `G(a)`.
    pub fn is_certified_finite(&self) -> bool {
        matches!(self, GStatus::Stabilized { exact: true, .. })
    }
}

/// The sequence `G_{K_0}(a), G_{K_1}(a), …` together with its status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTrace {
    pub values: Vec<GKValue>,
    pub status: GStatus,
}

/// Consumes step values until one of the stopping rules fires.
///
/// `domain_exhausted` says the final step's set is the whole domain.
fn follow<I>(steps: I, window: usize, domain_exhausted: bool) -> Result<GTrace, GreenError>
where
    I: IntoIterator<Item = Result<GKValue, GreenError>>,
{
    let window = window.max(1);
    let mut values = Vec::new();
    let mut since = 0;
    for (n, step) in steps.into_iter().enumerate() {
        let value = step?;
        if value.is_infinite() {
            values.push(value);
            return Ok(GTrace {
                values,
                status: GStatus::ExactInfinity { step: n },
            });
        }
        if values.last() != Some(&value) {
            since = n;
        }
        values.push(value);
        if n - since >= window {
            let value = values[n].finite().unwrap().clone();
            return Ok(GTrace {
                values,
                status: GStatus::Stabilized {
                    value,
                    since,
                    window,
                    exact: false,
                },
            });
        }
    }
    let last = values
        .last()
        .and_then(GKValue::finite)
        .cloned()
        .unwrap_or_else(Rational::one);
    let status = if domain_exhausted {
        GStatus::Stabilized {
            value: last,
            since,
            window,
            exact: true,
        }
    } else {
        GStatus::LowerBound {
            value: last,
            budget: values.len().saturating_sub(1),
        }
    };
    Ok(GTrace { values, status })
}

/// `G_K(a)` of a Dirichlet solution.
pub fn g_of(sol: &DirichletSolution) -> GKValue {
    GKValue::from_normalized_capacity(&sol.normalized_capacity())
}

/// `G_K(a) = 1/ρ(c_K(a)/b(a))`.
pub fn g_k(g: &WeightedGraph, set: &[VertexId], a: VertexId) -> Result<GKValue, DirichletError> {
    Ok(g_of(&dirichlet::solve_dp(g, set, a)?))
}

/// Step value on a finite graph; `K = V` has null capacity, so `G = ∞`.
fn g_step(g: &WeightedGraph, set: &[VertexId], a: VertexId) -> Result<GKValue, GreenError> {
    let mut k = set.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.len() == g.vertex_count() && k.binary_search(&a).is_ok() {
        return Ok(GKValue::Infinite);
    }
    Ok(g_k(g, &k, a)?)
}

/// Follows `G_{K_n}(a)` along the given sets of a finite graph.
pub fn g_limit(g: &WeightedGraph, sets: &[Vec<VertexId>], a: VertexId, window: usize) -> Result<GTrace, GreenError> {
    if sets.first().is_none_or(|k0| !k0.contains(&a)) {
        return Err(GreenError::BaseNotInK0);
    }
    follow(sets.iter().map(|k| g_step(g, k, a)), window, false)
}

/// Follows `G_{B_n(a)}(a)` for `n = 0..=budget` on a generator.
///
/// The solves run on the ball of radius `budget + 1`, which contains every
/// `K_n` together with its outer boundary, so each step is exact.
pub fn g_limit_generator<G: GraphGenerator + ?Sized>(
    gen: &G,
    a: u64,
    budget: usize,
    window: usize,
) -> Result<GTrace, GreenError> {
    let t = Truncation::new(gen, a, budget + 1)?;
    let ex = ball_exhaustion(&t.graph, 0, budget);
    follow(ex.sets.iter().map(|k| g_step(&t.graph, k, 0)), window, false)
}

/// The real graph of one class: `β(x) = ρ(b(x)/b(a))`, `β(x,y) = π(x,y)β(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaGraph {
    /// Sorted members of the class.
    pub class: Vec<VertexId>,
    pub base: VertexId,
    /// `β` on `class`, aligned by position.
    pub beta: Vec<Rational>,
    /// `(i, j, β(x_i, x_j))` for `i < j` positions in `class`, positive only.
    pub weights: Vec<(usize, usize, Rational)>,
    /// `β(x) − Σ_{y ∈ C} β(x,y)`: mass leaving the class.
    pub killing: Vec<Rational>,
}

impl BetaGraph {
    pub fn position(&self, x: VertexId) -> Option<usize> {
        self.class.binary_search(&x).ok()
    }
}

pub fn beta_graph(
    g: &WeightedGraph,
    pi: &TransitionMatrix,
    dec: &ComponentDecomposition,
    a: VertexId,
) -> Result<BetaGraph, GreenError> {
    let class = dec.classes[dec.class_of[a]].clone();
    let ba = g.degree_weight(a)?.clone();
    let beta: Vec<Rational> = class
        .iter()
        .map(|&x| g.degree_weight(x).unwrap().checked_div(&ba).unwrap().rho())
        .collect::<Result<_, _>>()
        .map_err(|_| GreenError::SymmetryViolation(g.name(a).into(), g.name(a).into()))?;
    let mut weights = Vec::new();
    let mut killing = beta.clone();
    for (i, &x) in class.iter().enumerate() {
        for (j, &y) in class.iter().enumerate() {
            if i == j {
                continue;
            }
            let w = pi.get(x, y) * &beta[i];
            let mirror = pi.get(y, x) * &beta[j];
            if w != mirror {
                return Err(GreenError::SymmetryViolation(g.name(x).into(), g.name(y).into()));
            }
            killing[i] -= &w;
            if i < j && !w.is_zero() {
                weights.push((i, j, w));
            }
        }
    }
    Ok(BetaGraph {
        class,
        base: a,
        beta,
        weights,
        killing,
    })
}

/// Connected component of `a` inside `set`, using the edges of `bg`.
fn component_in(bg: &BetaGraph, set: &[bool], a: usize) -> Vec<usize> {
    let n = bg.class.len();
    let mut adj = vec![Vec::new(); n];
    for (i, j, _) in &bg.weights {
        adj[*i].push(*j);
        adj[*j].push(*i);
    }
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if set[y] && !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    (0..n).filter(|&i| seen[i]).collect()
}

/// `1/(Λ_C ν_n(a))` along `K_n ∩ C`, with `ν_n` the real Dirichlet solution.
///
/// Mass leaving the class is routed to one extra sink vertex, so the real
/// problem is an ordinary Dirichlet problem solved by the field solver on
/// rational weights. A class without leaving mass whose sets reach all of
/// `C` gives `∞`; a class with leaving mass gives an exact finite value
/// once the sets cover `C`.
pub fn gamma_green(bg: &BetaGraph, sets: &[Vec<VertexId>], window: usize) -> Result<GTrace, GreenError> {
    let n = bg.class.len();
    let a = bg.position(bg.base).expect("base lies in its class");
    let leaks = bg.killing.iter().any(|k| !k.is_zero());
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.vertex(&i.to_string());
    }
    for (i, j, w) in &bg.weights {
        b.edge_ids(*i, *j, FieldElement::from_rational(w.clone()))?;
    }
    if leaks {
        let sink = b.vertex("sink");
        for (i, k) in bg.killing.iter().enumerate() {
            if !k.is_zero() {
                b.edge_ids(i, sink, FieldElement::from_rational(k.clone()))?;
            }
        }
    }
    let h = if n + usize::from(leaks) >= 2 {
        Some(b.build()?)
    } else {
        None
    };

    if sets.first().is_none_or(|k0| !k0.contains(&bg.base)) {
        return Err(GreenError::BaseNotInK0);
    }
    let mut covered = false;
    let steps = sets.iter().map(|k| {
        let mut inside = vec![false; n];
        for x in k {
            if let Some(i) = bg.position(*x) {
                inside[i] = true;
            }
        }
        let comp = component_in(bg, &inside, a);
        covered = comp.len() == n;
        match &h {
            Some(h) if !(covered && !leaks) => Ok(g_of(&dirichlet::solve_dp(h, &comp, a)?)),
            _ => Ok(GKValue::Infinite),
        }
    });
    let mut trace = follow(steps.collect::<Vec<_>>(), window, false)?;
    if covered {
        if let GStatus::LowerBound { value, .. } = &trace.status {
            trace.status = GStatus::Stabilized {
                value: value.clone(),
                since: trace.values.iter().position(|v| v.finite() == Some(value)).unwrap_or(0),
                window: window.max(1),
                exact: true,
            };
        }
    }
    Ok(trace)
}

/// Local Harnack: along every arrow `x ⤳ y` of `π_K` with `y ∈ K`,
/// `v(x) ≿ v(y)`, hence `v(x) ≃ v(y)` within classes.
pub fn harnack_check(g: &WeightedGraph, sol: &DirichletSolution) -> bool {
    let pi = walk::build_pi(g, &sol.set).unwrap();
    let in_k = |x: usize| sol.set.binary_search(&x).is_ok();
    let dec = walk::scc(&pi);
    let arrows_ok = pi
        .arrows()
        .into_iter()
        .filter(|&(_, y)| in_k(y))
        .all(|(x, y)| sol.v[x].ord() <= sol.v[y].ord());
    let classes_ok = dec.classes.iter().all(|c| {
        let ords: Vec<_> = c.iter().filter(|&&x| in_k(x)).map(|&x| sol.v[x].ord()).collect();
        ords.windows(2).all(|w| w[0] == w[1])
    });
    arrows_ok && classes_ok
}

/// `ρ(v)` is constant on every class of `π_V` whose `b`-scale is
/// infinitely larger than `b(a)`.
pub fn rho_v_constancy_check(g: &WeightedGraph, sol: &DirichletSolution, dec: &ComponentDecomposition) -> bool {
    let ord_a = g.degree_weight(sol.base).unwrap().ord().unwrap();
    dec.classes.iter().all(|c| {
        let heavy = g.degree_weight(c[0]).unwrap().ord().unwrap() < ord_a;
        if !heavy {
            return true;
        }
        let r: Vec<Rational> = c.iter().map(|&x| sol.v[x].rho().unwrap()).collect();
        r.windows(2).all(|w| w[0] == w[1])
    })
}

/// Per-class verdicts for a finite graph with interior `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub pi: TransitionMatrix,
    pub decomposition: ComponentDecomposition,
    pub verdicts: Vec<ClassVerdict>,
    /// `G`-status of each essential, non-absorbing class, from its smallest member.
    pub statuses: Vec<Option<GStatus>>,
    /// `G` traces behind `statuses`.
    pub traces: Vec<Option<GTrace>>,
    /// Which classes are reported (all, for finite graphs).
    pub reported: Vec<bool>,
}

impl ClassificationReport {
    pub fn verdict_of(&self, x: usize) -> ClassVerdict {
        self.verdicts[self.decomposition.class_of[x]]
    }
}

pub fn classify_graph(
    g: &WeightedGraph,
    interior: &[VertexId],
    window: usize,
    exec: Exec,
) -> Result<ClassificationReport, GreenError> {
    let pi = walk::build_pi(g, interior)?;
    let dec = walk::decompose(g, &pi).unwrap_or_else(|| walk::scc(&pi));
    let traces: Vec<Option<GTrace>> = exec
        .map_range(dec.class_count(), |c| {
            let x = dec.classes[c][0];
            if !dec.essential[c] || pi.is_absorbing(x) {
                return Ok(None);
            }
            let ex = ball_exhaustion(g, x, g.vertex_count());
            g_limit(g, &ex.sets, x, window).map(Some)
        })
        .into_iter()
        .collect::<Result<_, GreenError>>()?;
    let statuses: Vec<Option<GStatus>> = traces.iter().map(|t| t.as_ref().map(|t| t.status.clone())).collect();
    let verdicts = walk::classify(&dec, &statuses);
    Ok(ClassificationReport {
        reported: vec![true; dec.class_count()],
        pi,
        decomposition: dec,
        verdicts,
        statuses,
        traces,
    })
}

/// Classification of a generator from the ball of radius `budget + 1`.
///
/// Vertices at depth `budget + 1` are made absorbing. A class whose forward
/// closure avoids them is exact. Otherwise it is certified non-essential
/// when it reaches a vertex of depth `≤ budget` with infinitely larger
/// `b`; failing both, its verdict is `Unknown` unless `G` is certified.
#[derive(Debug, Clone)]
pub struct GeneratorReport {
    pub truncation: Truncation,
    pub report: ClassificationReport,
}

pub fn classify_generator<G: GraphGenerator + ?Sized>(
    gen: &G,
    root: u64,
    budget: usize,
    window: usize,
    exec: Exec,
) -> Result<GeneratorReport, GreenError> {
    let t = Truncation::new(gen, root, budget + 1)?;
    let g = &t.graph;
    let exact_row: Vec<bool> = g.vertices().map(|x| t.complete || t.depth[x] <= budget).collect();
    let interior: Vec<VertexId> = g.vertices().filter(|&x| exact_row[x]).collect();
    let pi = walk::build_pi(g, &interior)?;
    let dec = walk::scc(&pi);
    let ord = |x: usize| g.degree_weight(x).unwrap().ord().unwrap();

    let mut essential = Vec::with_capacity(dec.class_count());
    let mut finite = Vec::with_capacity(dec.class_count());
    for c in 0..dec.class_count() {
        let members = &dec.classes[c];
        let mut seen = vec![false; g.vertex_count()];
        let mut queue: VecDeque<usize> = members.iter().copied().collect();
        for &x in members {
            seen[x] = true;
        }
        let mut hits_frontier = false;
        let mut heavier = false;
        let scale = ord(members[0]);
        while let Some(x) = queue.pop_front() {
            if !exact_row[x] {
                hits_frontier = true;
                continue;
            }
            if ord(x) < scale {
                heavier = true;
            }
            for (y, _) in pi.row(x) {
                if !seen[*y] {
                    seen[*y] = true;
                    queue.push_back(*y);
                }
            }
        }
        let exact = !hits_frontier && members.iter().all(|&x| exact_row[x]);
        essential.push(if exact {
            Some(dec.essential[c])
        } else if heavier {
            Some(false)
        } else {
            None
        });
        finite.push(exact);
    }
    let reported: Vec<bool> = dec.classes.iter().map(|c| c.iter().all(|&x| exact_row[x])).collect();
    let traces: Vec<Option<GTrace>> = exec
        .map_range(dec.class_count(), |c| {
            if !reported[c] || essential[c] == Some(false) || finite[c] {
                return Ok(None);
            }
            let x = dec.classes[c][0];
            g_limit_generator(gen, t.origin[x], budget, window).map(Some)
        })
        .into_iter()
        .collect::<Result<_, GreenError>>()?;
    let statuses: Vec<Option<GStatus>> = traces.iter().map(|t| t.as_ref().map(|t| t.status.clone())).collect();
    let verdicts = (0..dec.class_count())
        .map(|c| ClassVerdict::decide(essential[c], finite[c], statuses[c].as_ref()))
        .collect();
    Ok(GeneratorReport {
        report: ClassificationReport {
            pi,
            decomposition: dec,
            verdicts,
            statuses,
            traces,
            reported,
        },
        truncation: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_literal, FieldContext};
    use crate::graph::{parse_graph_file, RayFamily};
    use crate::walk::{Justification, Verdict};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn lit(s: &str) -> FieldElement {
        parse_literal(s).unwrap()
    }

    fn path5() -> (WeightedGraph, Vec<VertexId>) {
        let f = parse_graph_file("edge 1 2 t^-2\nedge 2 3 t^-1\nedge 3 4 1\nedge 4 5 1\ninterior 1 2 3 4\n").unwrap();
        (f.graph, f.interior)
    }

    fn weighted_ray(b23: &str) -> RayFamily {
        RayFamily::new(FieldContext::default())
            .with_name(0, "a")
            .with_weight(0, lit("t"))
            .with_weight(1, lit("1"))
            .with_weight(2, lit(b23))
            .with_weight(3, lit("1"))
            .with_tail(4, "t^(3-k)")
    }

    #[test]
    fn g_k_examples() {
        let (g, _) = path5();
        assert_eq!(g_k(&g, &[0, 1, 2, 3], 2).unwrap(), GKValue::Infinite);
        let p = parse_graph_file("edge 0 1 1\nedge 1 2 1\nedge 2 3 1\n").unwrap().graph;
        assert_eq!(g_k(&p, &[1, 2], 1).unwrap(), GKValue::Finite(q(4, 3)));
        assert_eq!(g_k(&p, &[1], 1).unwrap(), GKValue::Finite(q(1, 1)));
    }

    #[test]
    fn ray_with_tau_stabilizes_at_two() {
        let trace = g_limit_generator(&weighted_ray("t"), 0, 10, DEFAULT_WINDOW).unwrap();
        assert_eq!(
            trace.status,
            GStatus::Stabilized {
                value: q(2, 1),
                since: 2,
                window: 3,
                exact: false
            }
        );
        assert_eq!(
            trace.values[..3],
            [
                GKValue::Finite(q(1, 1)),
                GKValue::Finite(q(1, 1)),
                GKValue::Finite(q(2, 1))
            ]
        );
    }

    #[test]
    fn ray_with_tau_squared_is_infinite() {
        let trace = g_limit_generator(&weighted_ray("t^2"), 0, 10, DEFAULT_WINDOW).unwrap();
        assert_eq!(trace.status, GStatus::ExactInfinity { step: 2 });
    }

    #[test]
    fn real_half_line_grows() {
        let ray = RayFamily::new(FieldContext::default()).with_tail(0, "1");
        let trace = g_limit_generator(&ray, 0, 6, DEFAULT_WINDOW).unwrap();
        let want: Vec<GKValue> = (1..=7).map(|n| GKValue::Finite(q(n, 1))).collect();
        assert_eq!(trace.values, want);
        assert_eq!(
            trace.status,
            GStatus::LowerBound {
                value: q(7, 1),
                budget: 6
            }
        );
    }

    #[test]
    fn finite_graph_exhaustion() {
        let (g, _) = path5();
        let sets = vec![vec![2], vec![1, 2, 3], vec![0, 1, 2, 3]];
        let trace = g_limit(&g, &sets, 2, 3).unwrap();
        assert_eq!(trace.status, GStatus::ExactInfinity { step: 2 });
        let all = ball_exhaustion(&g, 4, 10);
        let trace = g_limit(&g, &all.sets, 4, 10).unwrap();
        assert!(trace.status.is_infinite());
        assert!(trace.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn beta_graph_on_example_class() {
        let (g, u) = path5();
        let pi = walk::build_pi(&g, &u).unwrap();
        let dec = walk::scc(&pi);
        let bg = beta_graph(&g, &pi, &dec, 0).unwrap();
        assert_eq!(bg.beta, vec![q(1, 1), q(1, 1)]);
        assert_eq!(bg.weights, vec![(0, 1, q(1, 1))]);
        assert!(bg.killing.iter().all(Zero::is_zero));
        let single = beta_graph(&g, &pi, &dec, 2).unwrap();
        assert!(single.weights.is_empty());
        assert_eq!(single.killing, vec![q(1, 1)]);
    }

    #[test]
    fn gamma_matches_g_per_step() {
        let p = parse_graph_file("edge 0 1 1\nedge 1 2 1\nedge 2 3 1\nedge 3 4 1\n")
            .unwrap()
            .graph;
        let pi = walk::build_pi(&p, &[0, 1, 2, 3, 4]).unwrap();
        let dec = walk::scc(&pi);
        let bg = beta_graph(&p, &pi, &dec, 1).unwrap();
        let sets = vec![vec![1], vec![0, 1, 2], vec![0, 1, 2, 3]];
        let gamma = gamma_green(&bg, &sets, 10).unwrap();
        let direct = g_limit(&p, &sets, 1, 10).unwrap();
        assert_eq!(gamma.values, direct.values);
        let full = gamma_green(&bg, &[vec![1], vec![0, 1, 2, 3, 4]], 3).unwrap();
        assert_eq!(full.status, GStatus::ExactInfinity { step: 1 });
    }

    #[test]
    fn leaking_class_gives_exact_value() {
        let (g, u) = path5();
        let pi = walk::build_pi(&g, &u).unwrap();
        let dec = walk::scc(&pi);
        let bg = beta_graph(&g, &pi, &dec, 3).unwrap();
        let trace = gamma_green(&bg, &[vec![3]], 3).unwrap();
        assert!(trace.status.is_certified_finite());
        assert_eq!(trace.values, vec![GKValue::Finite(q(1, 1))]);
    }

    #[test]
    fn checks_on_example() {
        let (g, u) = path5();
        let sol = dirichlet::solve_dp(&g, &[0, 1, 2, 3], 2).unwrap();
        assert!(harnack_check(&g, &sol));
        let dec = walk::scc(&walk::build_pi(&g, &g.vertices().collect::<Vec<_>>()).unwrap());
        assert!(rho_v_constancy_check(&g, &sol, &dec));
        assert_eq!(sol.v[0].rho().unwrap(), sol.v[1].rho().unwrap());
        let _ = u;
    }

    #[test]
    fn example_classification_report() {
        let (g, u) = path5();
        let r = classify_graph(&g, &u, DEFAULT_WINDOW, Exec::Sequential).unwrap();
        let v3 = r.verdict_of(2);
        assert_eq!(
            (v3.verdict, v3.justification),
            (Verdict::Transient, Justification::NonEssential)
        );
        assert_eq!(r.verdict_of(0).justification, Justification::FiniteEssential);
        assert!(r.statuses[0].as_ref().unwrap().is_infinite());
    }

    #[test]
    fn ray_base_is_transient_in_both_variants() {
        for b23 in ["t", "t^2"] {
            let r = classify_generator(&weighted_ray(b23), 0, 10, DEFAULT_WINDOW, Exec::default()).unwrap();
            let v = r.report.verdict_of(0);
            assert_eq!(
                (v.verdict, v.justification),
                (Verdict::Transient, Justification::NonEssential),
                "{b23}"
            );
        }
    }
}
