//! The Dirichlet problem on a finite set `K`, capacity and energy.
//!
//! `solve_dp` solves the renormalized problem `Δ_K ṽ = 1_a` (rows scaled by
//! `b(x)`, which gives a matrix with polynomial-friendly entries) and
//! recovers `v = ṽ / ṽ(a)` and `c_K(a) = b(a) / ṽ(a)`.

use thiserror::Error;

use crate::exec::Exec;
use crate::field::FieldElement;
use crate::graph::{VertexId, WeightedGraph};
use crate::linalg::{self, LinalgError, DEFAULT_SIZE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirichletError {
    #[error("K is the whole vertex set, so the boundary is empty")]
    BoundaryEmpty,
    #[error("K is empty or not connected")]
    DisconnectedK,
    #[error("base vertex is not in K")]
    BaseNotInK,
    #[error("unknown vertex #{0}")]
    UnknownVertex(VertexId),
    #[error("Dirichlet system is singular")]
    SingularSystem,
    #[error(transparent)]
    Linalg(LinalgError),
}

impl From<LinalgError> for DirichletError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::SingularSystem => DirichletError::SingularSystem,
            other => DirichletError::Linalg(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSolution {
    pub base: VertexId,
    /// Sorted `K`.
    pub set: Vec<VertexId>,
    /// `v` on all of `V`; zero off `K`.
    pub v: Vec<FieldElement>,
    /// `ṽ(a)`, the renormalized solution at the base.
    pub tilde_at_base: FieldElement,
    /// `c_K(a) = b(a) / ṽ(a)`.
    pub capacity: FieldElement,
    /// `Q(v)`, computed independently from the edge sum.
    pub energy: FieldElement,
}

impl DirichletSolution {
    /// `c_K(a) / b(a)`.
    pub fn normalized_capacity(&self) -> FieldElement {
        self.tilde_at_base.recip().expect("ṽ(a) is positive")
    }
}

/// `Δf(x) = (1/b(x)) Σ_y b(x,y) (f(x) − f(y))`.
pub fn laplacian_apply(g: &WeightedGraph, f: &[FieldElement], x: VertexId) -> Result<FieldElement, DirichletError> {
    let b = g.degree_weight(x).map_err(|_| DirichletError::UnknownVertex(x))?;
    let mut acc = FieldElement::zero();
    for (y, w) in g.neighbors(x) {
        let d = &f[x] - &f[*y];
        if !d.is_zero() {
            acc = &acc + &(w * &d);
        }
    }
    Ok(acc.checked_div(b).expect("b(x) is positive"))
}

/// `Q(f) = ½ Σ_{x,y} b(x,y) (f(x) − f(y))²`, i.e. the sum over undirected edges.
pub fn energy(g: &WeightedGraph, f: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::zero();
    for (x, y, w) in g.edges() {
        let d = &f[x] - &f[y];
        if !d.is_zero() {
            acc = &acc + &(w * &(&d * &d));
        }
    }
    acc
}

/// Sorted, deduplicated `K`, checked against the preconditions of (DP).
fn checked_set(g: &WeightedGraph, set: &[VertexId], a: VertexId) -> Result<Vec<VertexId>, DirichletError> {
    let n = g.vertex_count();
    if let Some(&x) = set.iter().chain([&a]).find(|&&x| x >= n) {
        return Err(DirichletError::UnknownVertex(x));
    }
    let mut k = set.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.binary_search(&a).is_err() {
        return Err(DirichletError::BaseNotInK);
    }
    if k.len() == n {
        return Err(DirichletError::BoundaryEmpty);
    }
    if !g.is_connected_within(&k) {
        return Err(DirichletError::DisconnectedK);
    }
    Ok(k)
}

/// `b(x)·Δ_K` restricted to `K`, as a dense matrix.
fn scaled_laplacian(g: &WeightedGraph, k: &[VertexId]) -> Vec<Vec<FieldElement>> {
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &x) in k.iter().enumerate() {
        pos[x] = i;
    }
    k.iter()
        .map(|&x| {
            let mut row = vec![FieldElement::zero(); k.len()];
            row[pos[x]] = g.degree_weight(x).unwrap().clone();
            for (y, w) in g.neighbors(x) {
                if pos[*y] != usize::MAX {
                    row[pos[*y]] = -w;
                }
            }
            row
        })
        .collect()
}

fn assemble(g: &WeightedGraph, k: Vec<VertexId>, a: VertexId, tilde: Vec<FieldElement>) -> DirichletSolution {
    let ia = k.binary_search(&a).unwrap();
    let ta = tilde[ia].clone();
    let inv = ta.recip().expect("ṽ(a) is positive");
    let mut v = vec![FieldElement::zero(); g.vertex_count()];
    for (i, &x) in k.iter().enumerate() {
        v[x] = if i == ia { FieldElement::one() } else { &tilde[i] * &inv };
    }
    let capacity = g.degree_weight(a).unwrap() * &inv;
    let energy = energy(g, &v);
    DirichletSolution {
        base: a,
        set: k,
        v,
        tilde_at_base: ta,
        capacity,
        energy,
    }
}

pub fn solve_dp(g: &WeightedGraph, set: &[VertexId], a: VertexId) -> Result<DirichletSolution, DirichletError> {
    let k = checked_set(g, set, a)?;
    let m = scaled_laplacian(g, &k);
    let mut rhs = vec![FieldElement::zero(); k.len()];
    rhs[k.binary_search(&a).unwrap()] = g.degree_weight(a).unwrap().clone();
    let tilde = linalg::solve_many(&m, &[rhs], DEFAULT_SIZE_CAP)?.pop().unwrap();
    Ok(assemble(g, k, a, tilde))
}

/// Solutions for every base `a ∈ K`, in the order of sorted `K`.
pub fn solve_dp_all(g: &WeightedGraph, set: &[VertexId], exec: Exec) -> Result<Vec<DirichletSolution>, DirichletError> {
    let Some(&first) = set.first() else {
        return Err(DirichletError::DisconnectedK);
    };
    let k = checked_set(g, set, first)?;
    exec.map(&k, |&a| solve_dp(g, &k, a)).into_iter().collect()
}

/// `c_K(a)`.
pub fn capacity(g: &WeightedGraph, set: &[VertexId], a: VertexId) -> Result<FieldElement, DirichletError> {
    Ok(solve_dp(g, set, a)?.capacity)
}

/// Green's formula: `Σ b φ Δf = Σ b f Δφ = ½ Σ b(x,y)(f(x)−f(y))(φ(x)−φ(y))`.
pub fn greens_formula_check(g: &WeightedGraph, f: &[FieldElement], phi: &[FieldElement]) -> bool {
    let side = |u: &[FieldElement], w: &[FieldElement]| {
        let mut acc = FieldElement::zero();
        for x in g.vertices() {
            if u[x].is_zero() {
                continue;
            }
            let lap = laplacian_apply(g, w, x).unwrap();
            acc = &acc + &(&(g.degree_weight(x).unwrap() * &u[x]) * &lap);
        }
        acc
    };
    let mut mixed = FieldElement::zero();
    for (x, y, w) in g.edges() {
        let t = &(&f[x] - &f[y]) * &(&phi[x] - &phi[y]);
        if !t.is_zero() {
            mixed = &mixed + &(w * &t);
        }
    }
    let left = side(phi, f);
    left == side(f, phi) && left == mixed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_literal;
    use crate::graph::{parse_graph_file, GraphBuilder};

    fn lit(s: &str) -> FieldElement {
        parse_literal(s).unwrap()
    }

    fn path(weights: &[&str]) -> WeightedGraph {
        let mut b = GraphBuilder::new();
        for (i, w) in weights.iter().enumerate() {
            b.edge(&i.to_string(), &(i + 1).to_string(), lit(w)).unwrap();
        }
        b.build().unwrap()
    }

    fn path5() -> WeightedGraph {
        parse_graph_file("edge 1 2 t^-2\nedge 2 3 t^-1\nedge 3 4 1\nedge 4 5 1\n")
            .unwrap()
            .graph
    }

    #[test]
    fn laplacian_examples() {
        let p3 = path(&["1", "1"]);
        let ones = vec![FieldElement::one(); 3];
        assert!(laplacian_apply(&p3, &ones, 1).unwrap().is_zero());
        let center = vec![lit("0"), lit("1"), lit("0")];
        assert!(laplacian_apply(&p3, &center, 1).unwrap().is_one());

        let g = path5();
        let mut f = vec![FieldElement::zero(); 5];
        f[2] = FieldElement::one();
        assert_eq!(laplacian_apply(&g, &f, 3).unwrap(), lit("-1/2"));
    }

    #[test]
    fn singleton_set() {
        let g = path5();
        let s = solve_dp(&g, &[2], 2).unwrap();
        assert_eq!(s.capacity, *g.degree_weight(2).unwrap());
        assert_eq!(s.v[2], FieldElement::one());
        assert!(s.v[1].is_zero());
    }

    #[test]
    fn unit_path_by_hand() {
        let g = path(&["1", "1", "1"]);
        let s = solve_dp(&g, &[1, 2], 1).unwrap();
        assert_eq!(s.v[2], lit("1/2"));
        assert_eq!(s.capacity, lit("3/2"));
        assert_eq!(s.normalized_capacity(), lit("3/4"));
        assert_eq!(s.energy, s.capacity);
    }

    #[test]
    fn example_path_capacity() {
        let g = path5();
        let s = solve_dp(&g, &[0, 1, 2, 3], 2).unwrap();
        assert_eq!(s.normalized_capacity(), lit("t/(2+2*t)"));
        assert_eq!(s.capacity, lit("1/2"));
        assert_eq!(s.energy, lit("1/2"));
    }

    #[test]
    fn energy_of_an_indicator() {
        let g = path(&["3*t"]);
        assert_eq!(energy(&g, &[lit("1"), lit("0")]), lit("3*t"));
    }

    #[test]
    fn precondition_errors() {
        let g = path5();
        assert_eq!(solve_dp(&g, &[0, 1, 2, 3, 4], 0), Err(DirichletError::BoundaryEmpty));
        assert_eq!(solve_dp(&g, &[0, 3], 0), Err(DirichletError::DisconnectedK));
        assert_eq!(solve_dp(&g, &[0, 1], 3), Err(DirichletError::BaseNotInK));
        assert_eq!(solve_dp(&g, &[0, 9], 0), Err(DirichletError::UnknownVertex(9)));
    }

    #[test]
    fn greens_formula_on_indicator() {
        let g = path5();
        let mut f = vec![FieldElement::zero(); 5];
        f[1] = FieldElement::one();
        assert!(greens_formula_check(&g, &f, &f));
        let c = vec![lit("2+t"); 5];
        assert!(greens_formula_check(&g, &c, &f));
    }

    #[test]
    fn all_bases_match_single_solves() {
        let g = path5();
        let all = solve_dp_all(&g, &[0, 1, 2, 3], Exec::Sequential).unwrap();
        assert_eq!(all, solve_dp_all(&g, &[0, 1, 2, 3], Exec::Parallel).unwrap());
        assert_eq!(all[2], solve_dp(&g, &[3, 2, 1, 0], 2).unwrap());
    }
}
