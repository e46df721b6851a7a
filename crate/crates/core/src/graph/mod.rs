//! Weighted graphs over the ordered field.

mod exhaustion;
mod generator;
mod io;

pub use exhaustion::{ball_exhaustion, Exhaustion};
pub use generator::{GraphGenerator, RayFamily, Truncation};
pub use io::{parse_generator_file, parse_graph_file, GraphFile};

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::field::{FieldContext, FieldElement, FieldError};

/// Dense index into a graph's vertex table.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("edge weights differ between ({0}, {1}) and ({1}, {0})")]
    NotSymmetric(String, String),
    #[error("loop at vertex {0:?}")]
    LoopPresent(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("non-positive weight on edge ({0}, {1})")]
    NonPositiveWeight(String, String),
    #[error("a graph needs at least two vertices")]
    TooSmall,
    #[error("both `interior` and `boundary` declared")]
    InteriorAndBoundary,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Symmetric, loop-free, locally finite, connected weighted graph.
///
/// Immutable once built; adjacency lists are sorted by neighbor id and the
/// vertex weights `b(x) = Σ_y b(x,y)` are cached.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<Vec<(VertexId, FieldElement)>>,
    degree: Vec<FieldElement>,
    context: FieldContext,
}

impl WeightedGraph {
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn name(&self, x: VertexId) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<VertexId, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn ids<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<VertexId>, GraphError> {
        names.iter().map(|n| self.id(n.as_ref())).collect()
    }

    /// Smallest context containing every weight.
    pub fn context(&self) -> FieldContext {
        self.context
    }

    fn check(&self, x: VertexId) -> Result<(), GraphError> {
        if x < self.names.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(format!("#{x}")))
        }
    }

    pub fn neighbors(&self, x: VertexId) -> &[(VertexId, FieldElement)] {
        &self.adj[x]
    }

    /// `b(x, y)`, zero when there is no edge.
    pub fn weight(&self, x: VertexId, y: VertexId) -> FieldElement {
        self.adj[x]
            .binary_search_by_key(&y, |(z, _)| *z)
            .map(|i| self.adj[x][i].1.clone())
            .unwrap_or_else(|_| FieldElement::zero())
    }

    /// `b(x) = Σ_y b(x, y)`.
    pub fn degree_weight(&self, x: VertexId) -> Result<&FieldElement, GraphError> {
        self.check(x)?;
        Ok(&self.degree[x])
    }

    /// `p(x, y) = b(x, y) / b(x)`.
    pub fn normalized_weight(&self, x: VertexId, y: VertexId) -> Result<FieldElement, GraphError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.weight(x, y).checked_div(&self.degree[x])?)
    }

    /// Undirected edges `(x, y, b(x,y))` with `x < y`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, &FieldElement)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().filter(move |(y, _)| x < *y).map(move |(y, w)| (x, *y, w)))
    }

    /// Whether `set` induces a connected subgraph (the empty set is not connected).
    pub fn is_connected_within(&self, set: &[VertexId]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let mut inside = vec![false; self.vertex_count()];
        for &x in set {
            inside[x] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adj[x] {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        count == distinct
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.vertex_count() < 2 {
            return Err(GraphError::TooSmall);
        }
        for x in self.vertices() {
            let mut total = FieldElement::zero();
            for (y, w) in &self.adj[x] {
                if *y == x {
                    return Err(GraphError::LoopPresent(self.names[x].clone()));
                }
                if !w.is_positive() {
                    return Err(GraphError::NonPositiveWeight(
                        self.names[x].clone(),
                        self.names[*y].clone(),
                    ));
                }
                if self.weight(*y, x) != *w {
                    return Err(GraphError::NotSymmetric(self.names[x].clone(), self.names[*y].clone()));
                }
                total = &total + w;
            }
            debug_assert_eq!(total, self.degree[x]);
        }
        let all: Vec<VertexId> = self.vertices().collect();
        if !self.is_connected_within(&all) {
            return Err(GraphError::NotConnected);
        }
        Ok(())
    }
}

/// Collects vertices and (possibly one-sided) edge entries, then validates.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    entries: BTreeMap<(VertexId, VertexId), FieldElement>,
    context: FieldContext,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_context(context: FieldContext) -> Self {
        Self {
            context,
            ..Self::default()
        }
    }

    pub fn vertex(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    /// Records `b(u, v) = w`. The mirror entry is implied unless given
    /// explicitly, in which case both must agree.
    pub fn edge(&mut self, u: &str, v: &str, w: FieldElement) -> Result<&mut Self, GraphError> {
        let (a, b) = (self.vertex(u), self.vertex(v));
        if let Some(prev) = self.entries.get(&(a, b)) {
            if *prev != w {
                return Err(GraphError::NotSymmetric(u.to_string(), v.to_string()));
            }
        }
        self.entries.insert((a, b), w);
        Ok(self)
    }

    pub fn edge_ids(&mut self, a: VertexId, b: VertexId, w: FieldElement) -> Result<&mut Self, GraphError> {
        let (u, v) = (self.names[a].clone(), self.names[b].clone());
        self.edge(&u, &v, w)
    }

    pub fn build(self) -> Result<WeightedGraph, GraphError> {
        let n = self.names.len();
        if n < 2 {
            return Err(GraphError::TooSmall);
        }
        let mut adj: Vec<Vec<(VertexId, FieldElement)>> = vec![Vec::new(); n];
        let mut context = self.context;
        for (&(a, b), w) in &self.entries {
            if a == b {
                return Err(GraphError::LoopPresent(self.names[a].clone()));
            }
            if !w.is_positive() {
                return Err(GraphError::NonPositiveWeight(
                    self.names[a].clone(),
                    self.names[b].clone(),
                ));
            }
            if let Some(m) = self.entries.get(&(b, a)) {
                if m != w {
                    return Err(GraphError::NotSymmetric(self.names[a].clone(), self.names[b].clone()));
                }
                if b < a {
                    continue;
                }
            }
            context = context.widen(w.context());
            adj[a].push((b, w.clone()));
            adj[b].push((a, w.clone()));
        }
        for row in &mut adj {
            row.sort_by_key(|(y, _)| *y);
        }
        let degree = adj
            .iter()
            .map(|row| FieldElement::sum(row.iter().map(|(_, w)| w)))
            .collect();
        let g = WeightedGraph {
            names: self.names,
            index: self.index,
            adj,
            degree,
            context,
        };
        let all: Vec<VertexId> = g.vertices().collect();
        if !g.is_connected_within(&all) {
            return Err(GraphError::NotConnected);
        }
        Ok(g)
    }
}
