use std::collections::VecDeque;

use super::{VertexId, WeightedGraph};

/// Nested finite connected vertex sets `K_0 ⊆ K_1 ⊆ …`, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exhaustion {
    pub sets: Vec<Vec<VertexId>>,
}

impl Exhaustion {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Nested, non-empty and connected.
    pub fn is_valid(&self, g: &WeightedGraph) -> bool {
        self.sets.iter().all(|k| g.is_connected_within(k))
            && self
                .sets
                .windows(2)
                .all(|w| w[0].iter().all(|x| w[1].binary_search(x).is_ok()))
    }
}

/// BFS balls `K_n = B_n(root)` for `n = 0..=n_max`, stopping early once the
/// ball covers the whole graph.
pub fn ball_exhaustion(g: &WeightedGraph, root: VertexId, n_max: usize) -> Exhaustion {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(y, _) in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let mut sets = Vec::new();
    for n in 0..=n_max {
        let ball: Vec<VertexId> = g.vertices().filter(|&x| dist[x] <= n).collect();
        let full = ball.len() == g.vertex_count();
        sets.push(ball);
        if full {
            break;
        }
    }
    Exhaustion { sets }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::graph::{RayFamily, Truncation};

    #[test]
    fn balls_on_a_ray() {
        let ray = RayFamily::new(FieldContext::default())
            .with_name(0, "a")
            .with_weight(0, crate::FieldElement::tau())
            .with_tail(1, "1");
        let t = Truncation::new(&ray, 0, 4).unwrap();
        let ex = ball_exhaustion(&t.graph, 0, 3);
        let named: Vec<Vec<&str>> = ex
            .sets
            .iter()
            .map(|k| k.iter().map(|&x| t.graph.name(x)).collect())
            .collect();
        assert_eq!(
            named,
            vec![vec!["a"], vec!["a", "1"], vec!["a", "1", "2"], vec!["a", "1", "2", "3"]]
        );
        assert!(ex.is_valid(&t.graph));
    }

    #[test]
    fn stops_at_the_whole_graph() {
        let ray = RayFamily::new(FieldContext::default())
            .with_weight(0, 1.into())
            .with_weight(1, 1.into());
        let t = Truncation::new(&ray, 0, 10).unwrap();
        assert!(t.complete);
        let ex = ball_exhaustion(&t.graph, 0, 10);
        assert_eq!(ex.len(), 3);
        assert_eq!(ex.sets[2], vec![0, 1, 2]);
    }
}
