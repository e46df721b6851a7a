//! Seeded random finite instances for property checks and benchmarks.

use std::collections::HashSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldElement, Rational};
use crate::graph::{GraphBuilder, VertexId, WeightedGraph};

/// A connected graph with a base `a`, nested connected proper sets
/// `{a} ⊆ K ⊆ L ⊊ V`, and an interior `U`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub seed: u64,
    pub graph: WeightedGraph,
    pub base: VertexId,
    pub k: Vec<VertexId>,
    pub l: Vec<VertexId>,
    pub interior: Vec<VertexId>,
}

/// Monomial weight `c·τ^e`, `c ∈ {1, 2, 3, 1/2}`, `e ∈ [−2, 2]` in steps of `1/denom`.
fn weight(rng: &mut ChaCha8Rng, denom: i64) -> FieldElement {
    let c = [(1, 1), (2, 1), (3, 1), (1, 2)][rng.random_range(0..4)];
    let e = rng.random_range(-2 * denom..=2 * denom);
    FieldElement::monomial(
        Rational::new(c.0.into(), c.1.into()),
        &Rational::new(e.into(), denom.into()),
    )
}

/// Grows `set` by random frontier vertices until it has `size` elements.
fn grow(g: &WeightedGraph, set: &mut Vec<VertexId>, size: usize, rng: &mut ChaCha8Rng) {
    while set.len() < size {
        let mut frontier: Vec<VertexId> = set
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().map(|(y, _)| *y))
            .filter(|y| !set.contains(y))
            .collect();
        frontier.sort_unstable();
        frontier.dedup();
        set.push(*frontier.choose(rng).expect("connected graph"));
    }
    set.sort_unstable();
}

/// Instance with `3..=max_vertices` vertices.
///
/// A quarter of the instances use half-integer exponents, half of them
/// take `U = V`, and the rest draw `U` with each vertex kept at rate 7/10.
pub fn random_instance(seed: u64, max_vertices: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(3..=max_vertices.max(3));
    let denom = if rng.random_bool(0.25) { 2 } else { 1 };
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.vertex(&format!("v{i}"));
    }
    let mut used = HashSet::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        used.insert((j, i));
        b.edge_ids(j, i, weight(&mut rng, denom)).unwrap();
    }
    let extra = rng.random_range(0..=n);
    for _ in 0..extra {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if i != j && used.insert((i.min(j), i.max(j))) {
            b.edge_ids(i, j, weight(&mut rng, denom)).unwrap();
        }
    }
    let graph = b.build().expect("spanning tree keeps the graph connected");
    let base = rng.random_range(0..n);
    let mut k = vec![base];
    let ks = rng.random_range(1..n);
    grow(&graph, &mut k, ks, &mut rng);
    let mut l = k.clone();
    let ls = rng.random_range(ks..n);
    grow(&graph, &mut l, ls, &mut rng);
    let interior = if rng.random_bool(0.5) {
        graph.vertices().collect()
    } else {
        graph.vertices().filter(|_| rng.random_bool(0.7)).collect()
    };
    Instance {
        seed,
        graph,
        base,
        k,
        l,
        interior,
    }
}

/// Random field values on `set`, zero elsewhere.
pub fn random_function(g: &WeightedGraph, set: &[VertexId], rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let mut f = vec![FieldElement::zero(); g.vertex_count()];
    for &x in set {
        let mut w = weight(rng, 1);
        if rng.random_bool(0.3) {
            w = -w;
        }
        if rng.random_bool(0.3) {
            w = &w + &FieldElement::one();
        }
        f[x] = w;
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_well_formed_and_reproducible() {
        for seed in 0..50 {
            let i = random_instance(seed, 10);
            let n = i.graph.vertex_count();
            assert!((3..=10).contains(&n));
            i.graph.validate().unwrap();
            assert!(i.k.contains(&i.base));
            assert!(i.k.iter().all(|x| i.l.contains(x)));
            assert!(i.l.len() < n);
            assert!(i.graph.is_connected_within(&i.k));
            assert!(i.graph.is_connected_within(&i.l));
            assert_eq!(random_instance(seed, 10).graph, i.graph);
        }
    }
}
