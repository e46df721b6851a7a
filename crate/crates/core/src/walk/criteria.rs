use std::collections::VecDeque;

use num_traits::{One, Zero};

use super::{ComponentDecomposition, TransitionMatrix};
use crate::field::Rational;
use crate::greenfn::GStatus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Recurrent,
    Transient,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    NonEssential,
    FiniteEssential,
    GInfinite,
    GFinite,
    BudgetExhausted,
}

impl Justification {
    pub fn code(self) -> &'static str {
        match self {
            Justification::NonEssential => "NonEssential",
            Justification::FiniteEssential => "FiniteEssential",
            Justification::GInfinite => "G-Infinite",
            Justification::GFinite => "G-Finite",
            Justification::BudgetExhausted => "BudgetExhausted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassVerdict {
    pub verdict: Verdict,
    pub justification: Justification,
}

impl ClassVerdict {
    /// Applies the recurrence/transience rules to one class.
    ///
    /// `essential` is `None` when essentiality could not be certified, and
    /// `finite` says the class is a certified finite set.
    pub fn decide(essential: Option<bool>, finite: bool, status: Option<&GStatus>) -> Self {
        let (verdict, justification) = match (essential, status) {
            (Some(false), _) => (Verdict::Transient, Justification::NonEssential),
            (Some(true), _) if finite => (Verdict::Recurrent, Justification::FiniteEssential),
            (Some(true), Some(GStatus::ExactInfinity { .. })) => (Verdict::Recurrent, Justification::GInfinite),
            (_, Some(GStatus::Stabilized { exact: true, .. })) => (Verdict::Transient, Justification::GFinite),
            _ => (Verdict::Unknown, Justification::BudgetExhausted),
        };
        Self { verdict, justification }
    }
}

/// Verdict per class of an exact decomposition of a finite state space.
///
/// `statuses[c]`, when present, is the `G`-status of class `c`.
pub fn classify(dec: &ComponentDecomposition, statuses: &[Option<GStatus>]) -> Vec<ClassVerdict> {
    (0..dec.class_count())
        .map(|c| ClassVerdict::decide(Some(dec.essential[c]), true, statuses.get(c).and_then(Option::as_ref)))
        .collect()
}

/// `[Σ_{n≤0} π^(n)(a,a), …, Σ_{n≤N} π^(n)(a,a)]`.
pub fn green_partial_sums(pi: &TransitionMatrix, a: usize, n_max: usize) -> Vec<Rational> {
    let mut dist = vec![Rational::zero(); pi.len()];
    dist[a] = Rational::one();
    let mut acc = Rational::one();
    let mut out = vec![acc.clone()];
    for _ in 0..n_max {
        let mut next = vec![Rational::zero(); pi.len()];
        for (x, mass) in dist.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            for (y, p) in pi.row(x) {
                next[*y] += mass * p;
            }
        }
        dist = next;
        acc += &dist[a];
        out.push(acc.clone());
    }
    out
}

/// `Σ_{n=0}^{N} π^(n)(a,a)`.
pub fn green_partial_sum(pi: &TransitionMatrix, a: usize, n_max: usize) -> Rational {
    green_partial_sums(pi, a, n_max).pop().unwrap()
}

/// Every arrow inside a class has a reverse arrow, so reversing a directed
/// path edgewise gives a directed path.
pub fn path_reversal_check(pi: &TransitionMatrix, dec: &ComponentDecomposition) -> bool {
    pi.arrows()
        .into_iter()
        .filter(|&(x, y)| dec.same_class(x, y))
        .all(|(x, y)| !pi.get(y, x).is_zero())
}

fn bfs(pi: &TransitionMatrix, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; pi.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for (y, _) in pi.row(x) {
            if dist[*y] == usize::MAX {
                dist[*y] = dist[x] + 1;
                queue.push_back(*y);
            }
        }
    }
    dist
}

/// For mutually reachable `x, y`, the shortest paths `x → y` and `y → x`
/// have equal length.
pub fn shortest_path_symmetry_check(pi: &TransitionMatrix) -> bool {
    let dist: Vec<Vec<usize>> = (0..pi.len()).map(|x| bfs(pi, x)).collect();
    (0..pi.len()).all(|x| {
        (x + 1..pi.len()).all(|y| {
            let (d, e) = (dist[x][y], dist[y][x]);
            d == usize::MAX || e == usize::MAX || d == e
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::tests::path5;
    use crate::walk::{build_pi, scc};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn partial_sums() {
        let flip = TransitionMatrix::parse("x: y=1\ny: x=1\n").unwrap();
        assert_eq!(green_partial_sum(&flip, 0, 0), q(1));
        assert_eq!(green_partial_sum(&flip, 0, 4), q(3));
        let stay = TransitionMatrix::parse("a: a=1\n").unwrap();
        assert_eq!(green_partial_sum(&stay, 0, 5), q(6));
        let sums = green_partial_sums(&flip, 0, 10);
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn example_classification() {
        let (g, u) = path5();
        let pi = build_pi(&g, &u).unwrap();
        let dec = scc(&pi);
        let v = classify(&dec, &[]);
        assert_eq!(v[dec.class_of[2]].verdict, Verdict::Transient);
        assert_eq!(v[dec.class_of[2]].justification, Justification::NonEssential);
        assert_eq!(v[dec.class_of[0]].justification, Justification::FiniteEssential);
        assert_eq!(v[dec.class_of[4]].verdict, Verdict::Recurrent);
    }

    #[test]
    fn decision_rules() {
        let inf = GStatus::ExactInfinity { step: 3 };
        let fin = GStatus::Stabilized {
            value: q(2),
            since: 2,
            window: 3,
            exact: false,
        };
        let exact = GStatus::Stabilized {
            value: q(2),
            since: 2,
            window: 3,
            exact: true,
        };
        assert_eq!(
            ClassVerdict::decide(Some(true), false, Some(&inf)).justification,
            Justification::GInfinite
        );
        assert_eq!(ClassVerdict::decide(None, false, Some(&inf)).verdict, Verdict::Unknown);
        assert_eq!(
            ClassVerdict::decide(Some(true), false, Some(&fin)).verdict,
            Verdict::Unknown
        );
        assert_eq!(
            ClassVerdict::decide(None, false, Some(&exact)).verdict,
            Verdict::Transient
        );
    }

    #[test]
    fn structural_checks() {
        let (g, u) = path5();
        let pi = build_pi(&g, &u).unwrap();
        assert!(path_reversal_check(&pi, &scc(&pi)));
        assert!(shortest_path_symmetry_check(&pi));

        let cycle = TransitionMatrix::parse("x1: x2=1\nx2: x3=1\nx3: x4=1\nx4: x1=1\n").unwrap();
        assert!(!path_reversal_check(&cycle, &scc(&cycle)));
        assert!(!shortest_path_symmetry_check(&cycle));

        let flip = TransitionMatrix::parse("x: y=1\ny: x=1\n").unwrap();
        assert!(path_reversal_check(&flip, &scc(&flip)));
        assert!(shortest_path_symmetry_check(&flip));
    }
}
