use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{GraphBuilder, GraphError, VertexId, WeightedGraph};
use crate::field::{FieldContext, FieldElement};

/// A finitely described, possibly infinite, weighted graph.
///
/// Vertices are `u64` handles. Implementations must be pure and symmetric:
/// `y` appears among the neighbors of `x` with weight `w` iff `x` appears
/// among the neighbors of `y` with the same weight.
pub trait GraphGenerator: Sync {
    fn context(&self) -> FieldContext;
    fn neighbors(&self, v: u64) -> Result<Vec<(u64, FieldElement)>, GraphError>;
    fn name(&self, v: u64) -> String;
    fn lookup(&self, name: &str) -> Option<u64>;
    fn is_finite(&self) -> bool;
}

impl GraphGenerator for WeightedGraph {
    fn context(&self) -> FieldContext {
        self.context
    }

    fn neighbors(&self, v: u64) -> Result<Vec<(u64, FieldElement)>, GraphError> {
        let x = usize::try_from(v).ok().filter(|&x| x < self.vertex_count());
        let x = x.ok_or_else(|| GraphError::UnknownVertex(format!("#{v}")))?;
        Ok(self.adj[x].iter().map(|(y, w)| (*y as u64, w.clone())).collect())
    }

    fn name(&self, v: u64) -> String {
        self.names[v as usize].clone()
    }

    fn lookup(&self, name: &str) -> Option<u64> {
        self.index.get(name).map(|&x| x as u64)
    }

    fn is_finite(&self) -> bool {
        true
    }
}

/// Weighted ray `v_0 – v_1 – v_2 – …`.
///
/// Edge `k` joins `v_k` and `v_{k+1}`. The first edges carry explicit
/// weights; from `tail_start` on the weight is a literal in `k`, e.g.
/// `t^(3-k)`. Without a tail the ray is a finite path.
#[derive(Debug, Clone)]
pub struct RayFamily {
    context: FieldContext,
    head: BTreeMap<u64, FieldElement>,
    tail: Option<(u64, String)>,
    names: BTreeMap<u64, String>,
}

impl RayFamily {
    pub fn new(context: FieldContext) -> Self {
        Self {
            context,
            head: BTreeMap::new(),
            tail: None,
            names: BTreeMap::new(),
        }
    }

    pub fn with_weight(mut self, k: u64, w: FieldElement) -> Self {
        self.context = self.context.widen(w.context());
        self.head.insert(k, w);
        self
    }

    pub fn with_tail(mut self, start: u64, formula: &str) -> Self {
        self.tail = Some((start, formula.to_string()));
        self
    }

    pub fn with_name(mut self, k: u64, name: &str) -> Self {
        self.names.insert(k, name.to_string());
        self
    }

    /// Checks that every edge up to the tail has a weight and that the tail
    /// formula evaluates on its first few indices.
    pub fn validate(&self) -> Result<(), GraphError> {
        let explicit_end = self.head.keys().next_back().map_or(0, |k| k + 1);
        let end = self.tail.as_ref().map_or(explicit_end, |(s, _)| *s);
        if end == 0 && self.tail.is_none() {
            return Err(GraphError::TooSmall);
        }
        for k in 0..end {
            self.edge_weight(k)?.ok_or_else(|| GraphError::Parse {
                line: 0,
                msg: format!("ray edge {k} has no weight"),
            })?;
        }
        if let Some((s, _)) = &self.tail {
            for k in *s..*s + 4 {
                self.edge_weight(k)?;
            }
        }
        let mut seen = HashMap::new();
        for (k, n) in &self.names {
            if let Some(prev) = seen.insert(n.clone(), *k) {
                return Err(GraphError::Parse {
                    line: 0,
                    msg: format!("name {n:?} used for vertices {prev} and {k}"),
                });
            }
        }
        Ok(())
    }

    /// Weight of edge `k`, `None` past the end of a finite ray.
    pub fn edge_weight(&self, k: u64) -> Result<Option<FieldElement>, GraphError> {
        if let Some((start, formula)) = &self.tail {
            if k >= *start {
                let text = formula.replace('k', &format!("({k})"));
                let w = self.context.parse(&text)?;
                if !w.is_positive() {
                    return Err(GraphError::NonPositiveWeight(self.name(k), self.name(k + 1)));
                }
                return Ok(Some(w));
            }
        }
        Ok(self.head.get(&k).cloned())
    }
}

impl GraphGenerator for RayFamily {
    fn context(&self) -> FieldContext {
        self.context
    }

    fn neighbors(&self, v: u64) -> Result<Vec<(u64, FieldElement)>, GraphError> {
        let mut out = Vec::with_capacity(2);
        if v > 0 {
            if let Some(w) = self.edge_weight(v - 1)? {
                out.push((v - 1, w));
            }
        }
        if let Some(w) = self.edge_weight(v)? {
            out.push((v + 1, w));
        }
        Ok(out)
    }

    fn name(&self, v: u64) -> String {
        self.names.get(&v).cloned().unwrap_or_else(|| v.to_string())
    }

    fn lookup(&self, name: &str) -> Option<u64> {
        if let Some((k, _)) = self.names.iter().find(|(_, n)| n.as_str() == name) {
            return Some(*k);
        }
        let k: u64 = name.parse().ok()?;
        (!self.names.contains_key(&k)).then_some(k)
    }

    fn is_finite(&self) -> bool {
        self.tail.is_none()
    }
}

/// The ball `B_radius(root)` of a generator, materialized as a finite graph.
///
/// Vertex 0 is the root; vertices are numbered in BFS order. Every edge of
/// the generator between two ball vertices is kept, so `b(x)` is exact for
/// vertices at depth `< radius` and may be too small on the frontier.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub graph: WeightedGraph,
    pub depth: Vec<usize>,
    pub origin: Vec<u64>,
    pub radius: usize,
    /// The ball is the whole (finite) generator.
    pub complete: bool,
}

impl Truncation {
    pub fn new<G: GraphGenerator + ?Sized>(gen: &G, root: u64, radius: usize) -> Result<Self, GraphError> {
        let mut local: HashMap<u64, VertexId> = HashMap::from([(root, 0)]);
        let mut origin = vec![root];
        let mut depth = vec![0];
        let mut rows: Vec<Vec<(u64, FieldElement)>> = Vec::new();
        let mut queue = VecDeque::from([root]);
        let mut complete = gen.is_finite();
        while let Some(v) = queue.pop_front() {
            let d = depth[local[&v]];
            let nbrs = gen.neighbors(v)?;
            for (u, _) in &nbrs {
                if local.contains_key(u) {
                    continue;
                }
                if d == radius {
                    complete = false;
                    continue;
                }
                local.insert(*u, origin.len());
                origin.push(*u);
                depth.push(d + 1);
                queue.push_back(*u);
            }
            rows.push(nbrs);
        }
        let mut b = GraphBuilder::with_context(gen.context());
        for &v in &origin {
            b.vertex(&gen.name(v));
        }
        for (i, nbrs) in rows.iter().enumerate() {
            for (u, w) in nbrs {
                if let Some(&j) = local.get(u) {
                    b.edge_ids(i, j, w.clone())?;
                }
            }
        }
        Ok(Self {
            graph: b.build()?,
            depth,
            origin,
            radius,
            complete,
        })
    }

    /// Vertices whose whole neighborhood lies inside the ball.
    pub fn interior(&self) -> Vec<VertexId> {
        if self.complete {
            return self.graph.vertices().collect();
        }
        self.graph.vertices().filter(|&x| self.depth[x] < self.radius).collect()
    }

    /// Ball of radius `r ≤ radius` around the root, in local ids.
    pub fn ball(&self, r: usize) -> Vec<VertexId> {
        self.graph.vertices().filter(|&x| self.depth[x] <= r).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_literal;

    fn lit(s: &str) -> FieldElement {
        parse_literal(s).unwrap()
    }

    pub(crate) fn weighted_ray(b23: &str) -> RayFamily {
        RayFamily::new(FieldContext::default())
            .with_name(0, "a")
            .with_weight(0, lit("t"))
            .with_weight(1, lit("1"))
            .with_weight(2, lit(b23))
            .with_weight(3, lit("1"))
            .with_tail(4, "t^(3-k)")
    }

    #[test]
    fn ray_tail_weights() {
        let ray = weighted_ray("t");
        ray.validate().unwrap();
        let n5 = ray.neighbors(5).unwrap();
        assert_eq!(n5, vec![(4, lit("t^-1")), (6, lit("t^-2"))]);
        let b5 = FieldElement::sum(n5.iter().map(|(_, w)| w));
        assert_eq!(b5, lit("t^-1 + t^-2"));
        assert_eq!(ray.lookup("a"), Some(0));
        assert_eq!(ray.lookup("3"), Some(3));
        assert_eq!(ray.lookup("0"), None);
    }

    #[test]
    fn truncation_marks_frontier() {
        let t = Truncation::new(&weighted_ray("t"), 0, 3).unwrap();
        assert_eq!(t.graph.names(), ["a", "1", "2", "3"]);
        assert_eq!(t.interior(), vec![0, 1, 2]);
        assert!(!t.complete);
        assert_eq!(*t.graph.degree_weight(1).unwrap(), lit("1 + t"));
    }

    #[test]
    fn finite_graph_truncates_to_itself() {
        let mut b = GraphBuilder::new();
        b.edge("x", "y", lit("1")).unwrap();
        b.edge("y", "z", lit("t")).unwrap();
        let g = b.build().unwrap();
        let t = Truncation::new(&g, 0, 5).unwrap();
        assert!(t.complete);
        assert_eq!(t.graph.vertex_count(), 3);
        let t = Truncation::new(&g, 0, 1).unwrap();
        assert!(!t.complete);
    }
}
