//! The real transition matrix `π_U^b` and everything read off it.

mod components;
mod criteria;
mod simulate;

pub use components::{decompose, scc, ComponentDecomposition};
pub use criteria::{
    classify, green_partial_sum, green_partial_sums, path_reversal_check, shortest_path_symmetry_check, ClassVerdict,
    Justification, Verdict,
};
pub use simulate::{simulate, SimulationStats};

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::Rational;
use crate::graph::{GraphError, VertexId, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("row {0:?} does not sum to 1")]
    NotStochastic(String),
    #[error("entry ({0:?}, {1:?}) is outside (0, 1]")]
    EntryOutOfRange(String, String),
    #[error("state {0:?} has no row")]
    MissingRow(String),
    #[error("state {0:?} has two rows")]
    DuplicateRow(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Row-stochastic matrix with exact rational entries.
///
/// Rows hold only positive entries, sorted by column. A state is absorbing
/// when `π(x,x) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    names: Vec<String>,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl TransitionMatrix {
    /// Checks that every row is a probability vector; zero entries are dropped.
    pub fn new(names: Vec<String>, rows: Vec<Vec<(usize, Rational)>>) -> Result<Self, WalkError> {
        if names.len() != rows.len() {
            return Err(WalkError::MissingRow(
                names.get(rows.len()).cloned().unwrap_or_default(),
            ));
        }
        let mut clean = Vec::with_capacity(rows.len());
        for (x, row) in rows.into_iter().enumerate() {
            let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
            for (y, p) in row {
                let name_y = names.get(y).ok_or_else(|| WalkError::UnknownState(format!("#{y}")))?;
                if p.is_negative() || p > Rational::one() {
                    return Err(WalkError::EntryOutOfRange(names[x].clone(), name_y.clone()));
                }
                *merged.entry(y).or_insert_with(Rational::zero) += p;
            }
            merged.retain(|_, p| !p.is_zero());
            let total: Rational = merged.values().sum();
            if !total.is_one() {
                return Err(WalkError::NotStochastic(names[x].clone()));
            }
            clean.push(merged.into_iter().collect());
        }
        Ok(Self { names, rows: clean })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<usize, WalkError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| WalkError::UnknownState(name.to_string()))
    }

    pub fn row(&self, x: usize) -> &[(usize, Rational)] {
        &self.rows[x]
    }

    pub fn get(&self, x: usize, y: usize) -> Rational {
        self.rows[x]
            .binary_search_by_key(&y, |(z, _)| *z)
            .map(|i| self.rows[x][i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn is_absorbing(&self, x: usize) -> bool {
        self.get(x, x).is_one()
    }

    /// Non-absorbing states, i.e. `U`.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !self.is_absorbing(x)).collect()
    }

    /// Off-diagonal arrows `x ⤳ y`.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| {
                self.rows[x]
                    .iter()
                    .filter(move |(y, _)| *y != x)
                    .map(move |(y, _)| (x, *y))
            })
            .collect()
    }

    /// Renders the matrix in the `state: target=p/q, ...` format.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for x in 0..self.len() {
            let entries: Vec<String> = self.rows[x]
                .iter()
                .map(|(y, p)| format!("{}={}", self.names[*y], p))
                .collect();
            writeln!(out, "{}: {}", self.names[x], entries.join(", ")).unwrap();
        }
        out
    }

    /// Parses rows `state: target=p/q, ...`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, WalkError> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |n: &str, names: &mut Vec<String>| {
            *index.entry(n.to_string()).or_insert_with(|| {
                names.push(n.to_string());
                names.len() - 1
            })
        };
        let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| WalkError::Parse {
                line: no,
                msg: msg.to_string(),
            };
            let (state, rest) = line
                .split_once(':')
                .ok_or_else(|| err("expected `state: target=p/q, ...`"))?;
            let state = state.trim();
            if state.is_empty() || state.contains(char::is_whitespace) {
                return Err(err("bad state name"));
            }
            let x = intern(state, &mut names);
            let mut row = Vec::new();
            for entry in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (target, p) = entry.split_once('=').ok_or_else(|| err("expected `target=p/q`"))?;
                let target = target.trim();
                if target.is_empty() || target.contains(char::is_whitespace) {
                    return Err(err("bad target name"));
                }
                let p: Rational = p.trim().parse().map_err(|_| err("bad probability"))?;
                row.push((intern(target, &mut names), p));
            }
            if rows.insert(x, row).is_some() {
                return Err(WalkError::DuplicateRow(state.to_string()));
            }
        }
        let mut full = Vec::with_capacity(names.len());
        for (x, name) in names.iter().enumerate() {
            full.push(rows.remove(&x).ok_or_else(|| WalkError::MissingRow(name.clone()))?);
        }
        Self::new(names, full)
    }
}

/// `π_U^b`: `ρ(b(x,y)/b(x))` on rows of `U`, unit rows elsewhere.
pub fn build_pi(g: &WeightedGraph, interior: &[VertexId]) -> Result<TransitionMatrix, GraphError> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &x in interior {
        *inside
            .get_mut(x)
            .ok_or_else(|| GraphError::UnknownVertex(format!("#{x}")))? = true;
    }
    let rows = g
        .vertices()
        .map(|x| {
            if !inside[x] {
                return vec![(x, Rational::one())];
            }
            let b = g.degree_weight(x).unwrap();
            g.neighbors(x)
                .iter()
                .filter_map(|(y, w)| {
                    let p = w.checked_div(b).unwrap().rho().expect("p(x,y) ≤ 1");
                    (!p.is_zero()).then_some((*y, p))
                })
                .collect()
        })
        .collect();
    Ok(TransitionMatrix {
        names: g.names().to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_file;

    pub(crate) fn path5() -> (WeightedGraph, Vec<VertexId>) {
        let f = parse_graph_file("edge 1 2 t^-2\nedge 2 3 t^-1\nedge 3 4 1\nedge 4 5 1\ninterior 1 2 3 4\n").unwrap();
        (f.graph, f.interior)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn example_arrows() {
        let (g, u) = path5();
        let pi = build_pi(&g, &u).unwrap();
        let named: Vec<(&str, &str)> = pi.arrows().iter().map(|&(x, y)| (pi.name(x), pi.name(y))).collect();
        assert_eq!(named, vec![("1", "2"), ("2", "1"), ("3", "2"), ("4", "3"), ("4", "5")]);
        assert_eq!(pi.get(3, 2), q(1, 2));
        assert_eq!(pi.get(3, 4), q(1, 2));
        assert!(pi.is_absorbing(4));
        assert_eq!(pi.interior(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rational_weights_give_classical_walk() {
        let f = parse_graph_file("edge x y 1\nedge y z 3\n").unwrap();
        let pi = build_pi(&f.graph, &f.interior).unwrap();
        assert_eq!(pi.get(1, 0), q(1, 4));
        assert_eq!(pi.get(1, 2), q(3, 4));
        assert_eq!(pi.get(0, 1), q(1, 1));
    }

    #[test]
    fn file_round_trip() {
        let (g, u) = path5();
        let pi = build_pi(&g, &u).unwrap();
        assert_eq!(TransitionMatrix::parse(&pi.serialize()).unwrap(), pi);
    }

    #[test]
    fn rejects_bad_rows() {
        assert_eq!(
            TransitionMatrix::parse("x: y=1/2\ny: x=1\n"),
            Err(WalkError::NotStochastic("x".into()))
        );
        assert_eq!(
            TransitionMatrix::parse("x: y=1\n"),
            Err(WalkError::MissingRow("y".into()))
        );
        assert!(matches!(
            TransitionMatrix::parse("x y=1\n"),
            Err(WalkError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            TransitionMatrix::parse("x: y=3/2, x=-1/2\ny: y=1\n"),
            Err(WalkError::EntryOutOfRange(..))
        ));
    }
}
