//! Realizability of a transition matrix as `π_U^b`, and a witness graph.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, Rational};
use crate::graph::{GraphBuilder, GraphError, GraphFile};
use crate::walk::{scc, ComponentDecomposition, TransitionMatrix};

/// Why no graph has the given real transition matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irrealizable {
    /// `π(from, to) > 0 = π(to, from)` inside one class.
    OneWayEdge { from: String, to: String },
    /// A closed walk inside one class on which the products of forward and
    /// backward probabilities differ.
    InconsistentCycle { cycle: Vec<String> },
}

impl fmt::Display for Irrealizable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irrealizable::OneWayEdge { from, to } => {
                write!(
                    f,
                    "{from} -> {to} lies in one class but {to} -> {from} has probability 0"
                )
            }
            Irrealizable::InconsistentCycle { cycle } => {
                write!(f, "cycle {} violates π(x,y)β(x) = π(y,x)β(y)", cycle.join(" -> "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("not realizable: {0}")]
    Irrealizable(Irrealizable),
    #[error("diagonal entry of {0:?} is neither 0 nor 1")]
    DiagonalViolation(String),
    #[error("condensation graph has a cycle")]
    CycleDetected,
    #[error("order oracle is inconsistent at class {0}")]
    OrderViolation(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Per-class reversibility weights, `β = 1` at each class's smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaFunction {
    pub beta: Vec<Rational>,
    pub decomposition: ComponentDecomposition,
}

impl BetaFunction {
    /// Normalizing state of each class.
    pub fn base_of(&self, x: usize) -> usize {
        self.decomposition.classes[self.decomposition.class_of[x]][0]
    }
}

/// Finds `β` with `π(x,y)β(x) = π(y,x)β(y)` on every class, or a witness
/// that none exists.
pub fn validate_pi(pi: &TransitionMatrix) -> Result<BetaFunction, SynthError> {
    for x in 0..pi.len() {
        let d = pi.get(x, x);
        if !(d.is_zero() || d.is_one()) {
            return Err(SynthError::DiagonalViolation(pi.name(x).to_string()));
        }
    }
    let dec = scc(pi);
    let n = pi.len();
    let mut beta = vec![Rational::zero(); n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let name = |x: usize| pi.name(x).to_string();
    for class in &dec.classes {
        let root = class[0];
        beta[root] = Rational::one();
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for (y, p) in pi.row(x) {
                let y = *y;
                if y == x || !dec.same_class(x, y) || parent[y] != usize::MAX {
                    continue;
                }
                let back = pi.get(y, x);
                if back.is_zero() {
                    return Err(SynthError::Irrealizable(Irrealizable::OneWayEdge {
                        from: name(x),
                        to: name(y),
                    }));
                }
                beta[y] = &beta[x] * p / back;
                parent[y] = x;
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
    }
    for (x, y) in pi.arrows() {
        if !dec.same_class(x, y) {
            continue;
        }
        let back = pi.get(y, x);
        if back.is_zero() {
            return Err(SynthError::Irrealizable(Irrealizable::OneWayEdge {
                from: name(x),
                to: name(y),
            }));
        }
        if pi.get(x, y) * &beta[x] != back * &beta[y] {
            // Tree paths to the lowest common ancestor close the cycle.
            let (mut u, mut v) = (x, y);
            let (mut up, mut down) = (vec![u], vec![v]);
            while u != v {
                if depth[u] >= depth[v] {
                    u = parent[u];
                    up.push(u);
                } else {
                    v = parent[v];
                    down.push(v);
                }
            }
            down.pop();
            up.extend(down.into_iter().rev());
            up.push(x);
            return Err(SynthError::Irrealizable(Irrealizable::InconsistentCycle {
                cycle: up.into_iter().map(name).collect(),
            }));
        }
    }
    Ok(BetaFunction {
        beta,
        decomposition: dec,
    })
}

/// Longest-path heights on a finite DAG: sources get 0 and every edge
/// strictly increases the height.
pub fn height_finite(count: usize, edges: &[(usize, usize)]) -> Result<Vec<Rational>, SynthError> {
    let mut indeg = vec![0usize; count];
    let mut out = vec![Vec::new(); count];
    for &(a, b) in edges {
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut h = vec![0u64; count];
    let mut queue: VecDeque<usize> = (0..count).filter(|&c| indeg[c] == 0).collect();
    let mut done = 0;
    while let Some(c) = queue.pop_front() {
        done += 1;
        for &d in &out[c] {
            h[d] = h[d].max(h[c] + 1);
            indeg[d] -= 1;
            if indeg[d] == 0 {
                queue.push_back(d);
            }
        }
    }
    if done != count {
        return Err(SynthError::CycleDetected);
    }
    Ok(h.into_iter().map(|v| Rational::from_integer(v.into())).collect())
}

/// Reachability closure `reach[i][j]`: a nonempty directed path `i → j`.
pub fn reachability(count: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut out = vec![Vec::new(); count];
    for &(a, b) in edges {
        out[a].push(b);
    }
    (0..count)
        .map(|s| {
            let mut seen = vec![false; count];
            let mut stack: Vec<usize> = out[s].clone();
            while let Some(x) = stack.pop() {
                if !seen[x] {
                    seen[x] = true;
                    stack.extend(&out[x]);
                }
            }
            seen
        })
        .collect()
}

/// Rational heights assigned in enumeration order.
///
/// `below(i, j)` is the strict order `i → j`. Each new class gets the
/// midpoint between the highest earlier class below it and the lowest
/// earlier class above it; one more than the former or one less than the
/// latter when only one exists; one less than everything so far when it is
/// unrelated to all earlier classes.
pub fn height_countable<F>(count: usize, below: F) -> Result<Vec<Rational>, SynthError>
where
    F: Fn(usize, usize) -> bool,
{
    let mut h: Vec<Rational> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            h.push(Rational::zero());
            continue;
        }
        let mut lower: Option<&Rational> = None;
        let mut upper: Option<&Rational> = None;
        for (i, hi) in h.iter().enumerate() {
            let (lo, up) = (below(i, k), below(k, i));
            if lo && up {
                return Err(SynthError::OrderViolation(k));
            }
            if lo && lower.is_none_or(|l| hi > l) {
                lower = Some(hi);
            }
            if up && upper.is_none_or(|u| hi < u) {
                upper = Some(hi);
            }
        }
        let q = match (lower, upper) {
            (Some(l), Some(u)) if l >= u => return Err(SynthError::OrderViolation(k)),
            (Some(l), Some(u)) => (l + u) / Rational::from_integer(2.into()),
            (Some(l), None) => l + Rational::one(),
            (None, Some(u)) => u - Rational::one(),
            (None, None) => h.iter().min().unwrap() - Rational::one(),
        };
        h.push(q);
    }
    Ok(h)
}

/// Witness graph: `π(x,y)β(x)𝒩^h` inside classes and
/// `max{π(x,y)β(x), π(y,x)β(y)}𝒩^{min h}` across them.
///
/// Pieces that `π` leaves disconnected are joined by bridges of weight
/// `𝒩^{min h − 1}`, infinitesimal next to every vertex weight, so they do
/// not change `π`. Returns the graph with `U` = non-absorbing states.
pub fn construct_b(pi: &TransitionMatrix, beta: &BetaFunction, heights: &[Rational]) -> Result<GraphFile, SynthError> {
    let dec = &beta.decomposition;
    let h = |x: usize| &heights[dec.class_of[x]];
    let big_n_pow = |e: &Rational| FieldElement::tau_pow(&-e);
    let mut b = GraphBuilder::new();
    for x in 0..pi.len() {
        b.vertex(pi.name(x));
    }
    let mut linked = vec![Vec::new(); pi.len()];
    for (x, y) in pi.arrows() {
        if x > y && !pi.get(y, x).is_zero() {
            continue;
        }
        let w = if dec.same_class(x, y) {
            FieldElement::from_rational(pi.get(x, y) * &beta.beta[x]) * big_n_pow(h(x))
        } else {
            let fwd = pi.get(x, y) * &beta.beta[x];
            let bwd = pi.get(y, x) * &beta.beta[y];
            FieldElement::from_rational(fwd.max(bwd)) * big_n_pow(h(x).min(h(y)))
        };
        b.edge_ids(x, y, w)?;
        linked[x].push(y);
        linked[y].push(x);
    }

    // Bridge the pieces.
    let mut piece = vec![usize::MAX; pi.len()];
    let mut heads = Vec::new();
    for s in 0..pi.len() {
        if piece[s] != usize::MAX {
            continue;
        }
        piece[s] = heads.len();
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &linked[x] {
                if piece[y] == usize::MAX {
                    piece[y] = heads.len();
                    stack.push(y);
                }
            }
        }
        heads.push(s);
    }
    if heads.len() > 1 {
        let floor = heights.iter().min().unwrap() - Rational::one();
        let w = big_n_pow(&floor);
        for &s in &heads[1..] {
            b.edge_ids(heads[0], s, w.clone())?;
        }
    }
    let graph = b.build()?;
    Ok(GraphFile::new(graph, pi.interior()))
}

/// `validate_pi`, finite heights and `construct_b` in one step.
pub fn synthesize(pi: &TransitionMatrix) -> Result<(GraphFile, BetaFunction, Vec<Rational>), SynthError> {
    let beta = validate_pi(pi)?;
    let heights = height_finite(beta.decomposition.class_count(), &beta.decomposition.edges)?;
    let g = construct_b(pi, &beta, &heights)?;
    Ok((g, beta, heights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_file;
    use crate::walk::build_pi;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| q(n, 1)).collect()
    }

    #[test]
    fn directed_cycle_is_rejected() {
        let c4 = TransitionMatrix::parse("x1: x2=1\nx2: x3=1\nx3: x4=1\nx4: x1=1\n").unwrap();
        assert_eq!(
            validate_pi(&c4),
            Err(SynthError::Irrealizable(Irrealizable::OneWayEdge {
                from: "x1".into(),
                to: "x2".into()
            }))
        );
    }

    #[test]
    fn inconsistent_cycle_witness() {
        let pi = TransitionMatrix::parse("a: b=1/2, c=1/2\nb: a=1/2, c=1/2\nc: a=1/4, b=3/4\n").unwrap();
        match validate_pi(&pi) {
            Err(SynthError::Irrealizable(Irrealizable::InconsistentCycle { cycle })) => {
                assert_eq!(cycle.first(), cycle.last());
                assert_eq!(cycle.len(), 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_violation() {
        let pi = TransitionMatrix::parse("a: a=1/2, b=1/2\nb: a=1\n").unwrap();
        assert_eq!(validate_pi(&pi), Err(SynthError::DiagonalViolation("a".into())));
    }

    #[test]
    fn flip_chain() {
        let pi = TransitionMatrix::parse("x: y=1\ny: x=1\n").unwrap();
        let (g, beta, h) = synthesize(&pi).unwrap();
        assert_eq!(beta.beta, ints(&[1, 1]));
        assert_eq!(h, ints(&[0]));
        assert_eq!(g.graph.weight(0, 1), FieldElement::one());
        assert_eq!(build_pi(&g.graph, &g.interior).unwrap(), pi);
    }

    #[test]
    fn finite_heights() {
        assert_eq!(height_finite(1, &[]).unwrap(), ints(&[0]));
        assert_eq!(height_finite(3, &[(0, 1), (1, 2)]).unwrap(), ints(&[0, 1, 2]));
        assert_eq!(
            height_finite(4, &[(1, 0), (2, 1), (2, 3)]).unwrap(),
            ints(&[2, 1, 0, 1])
        );
        assert_eq!(height_finite(2, &[(0, 1), (1, 0)]), Err(SynthError::CycleDetected));
    }

    #[test]
    fn countable_heights() {
        assert_eq!(height_countable(3, |_, _| false).unwrap(), ints(&[0, -1, -2]));
        assert_eq!(height_countable(3, |i, j| i < j).unwrap(), ints(&[0, 1, 2]));
        // a0 → a2 → a1 enumerated as a0, a1, a2.
        let rel = |i: usize, j: usize| matches!((i, j), (0, 1) | (0, 2) | (2, 1));
        assert_eq!(height_countable(3, rel).unwrap(), vec![q(0, 1), q(1, 1), q(1, 2)]);
        assert_eq!(height_countable(2, |_, _| true), Err(SynthError::OrderViolation(1)));
    }

    #[test]
    fn example_round_trip() {
        let f = parse_graph_file("edge 1 2 t^-2\nedge 2 3 t^-1\nedge 3 4 1\nedge 4 5 1\ninterior 1 2 3 4\n").unwrap();
        let pi = build_pi(&f.graph, &f.interior).unwrap();
        let (g, _, h) = synthesize(&pi).unwrap();
        assert_eq!(h, ints(&[2, 1, 0, 1]));
        assert_eq!(build_pi(&g.graph, &g.interior).unwrap(), pi);
    }

    #[test]
    fn disconnected_pieces_are_bridged() {
        let pi = TransitionMatrix::parse("a: b=1\nb: a=1\nc: d=1\nd: c=1\ne: e=1\n").unwrap();
        let (g, _, _) = synthesize(&pi).unwrap();
        assert_eq!(build_pi(&g.graph, &g.interior).unwrap(), pi);
    }

    #[test]
    fn countable_heights_need_a_wider_context() {
        let pi = TransitionMatrix::parse("a: b=1\nb: c=1\nc: c=1\n").unwrap();
        let beta = validate_pi(&pi).unwrap();
        let dec = &beta.decomposition;
        let reach = reachability(dec.class_count(), &dec.edges);
        // Enumerate c, a, b so that b lands strictly between.
        let order = [2, 0, 1];
        let hs = height_countable(3, |i, j| reach[order[i]][order[j]]).unwrap();
        let mut heights = vec![Rational::zero(); 3];
        for (k, &c) in order.iter().enumerate() {
            heights[c] = hs[k].clone();
        }
        assert_eq!(heights, vec![q(-1, 1), q(-1, 2), q(0, 1)]);
        let g = construct_b(&pi, &beta, &heights).unwrap();
        assert_eq!(g.graph.context().denom(), 2);
        assert_eq!(build_pi(&g.graph, &g.interior).unwrap(), pi);
    }
}
