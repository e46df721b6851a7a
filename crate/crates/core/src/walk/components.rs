use std::collections::BTreeSet;

use super::TransitionMatrix;
use crate::field::Rational;
use crate::graph::WeightedGraph;

/// Strongly connected classes of the `π`-digraph and their condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Class index of every state.
    pub class_of: Vec<usize>,
    /// Sorted members; classes are numbered by their smallest member.
    pub classes: Vec<Vec<usize>>,
    /// Deduplicated condensation edges `(from, to)`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// No outgoing condensation edge.
    pub essential: Vec<bool>,
    /// `ord b(x)` of each class, when built from a graph.
    pub b_scale: Option<Vec<Rational>>,
}

impl ComponentDecomposition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn successors(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |(a, _)| *a == c).map(|(_, b)| *b)
    }
}

/// Tarjan's algorithm, iterative so deep chains cannot overflow the stack.
pub fn scc(pi: &TransitionMatrix) -> ComponentDecomposition {
    let n = pi.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw_class = vec![UNSEEN; n];
    let mut raw_count = 0;
    let mut counter = 0;
    // (vertex, next neighbor position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let row = pi.row(v);
            if *pos < row.len() {
                let w = row[*pos].0;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    raw_class[w] = raw_count;
                    if w == v {
                        break;
                    }
                }
                raw_count += 1;
            }
        }
    }

    // Renumber classes by smallest member.
    let mut renumber = vec![UNSEEN; raw_count];
    let mut next = 0;
    for x in 0..n {
        if renumber[raw_class[x]] == UNSEEN {
            renumber[raw_class[x]] = next;
            next += 1;
        }
    }
    let class_of: Vec<usize> = raw_class.iter().map(|&c| renumber[c]).collect();
    let mut classes = vec![Vec::new(); next];
    for x in 0..n {
        classes[class_of[x]].push(x);
    }
    let edges: BTreeSet<(usize, usize)> = pi
        .arrows()
        .into_iter()
        .map(|(x, y)| (class_of[x], class_of[y]))
        .filter(|(a, b)| a != b)
        .collect();
    let mut essential = vec![true; next];
    for &(a, _) in &edges {
        essential[a] = false;
    }
    ComponentDecomposition {
        class_of,
        classes,
        edges: edges.into_iter().collect(),
        essential,
        b_scale: None,
    }
}

/// `scc` plus the per-class `ord b(x)`, taken from each class's smallest
/// member. Returns `None` if some class mixes scales, which would
/// contradict `b(x) ≃ b(y)` on classes.
pub fn decompose(g: &WeightedGraph, pi: &TransitionMatrix) -> Option<ComponentDecomposition> {
    let mut dec = scc(pi);
    let ord = |x: usize| g.degree_weight(x).unwrap().ord().unwrap();
    let mut scales = Vec::with_capacity(dec.class_count());
    for class in &dec.classes {
        let s = ord(class[0]);
        if class.iter().any(|&x| ord(x) != s) {
            return None;
        }
        scales.push(s);
    }
    dec.b_scale = Some(scales);
    Some(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::build_pi;
    use crate::walk::tests::path5;

    #[test]
    fn example_classes() {
        let (g, u) = path5();
        let pi = build_pi(&g, &u).unwrap();
        let dec = decompose(&g, &pi).unwrap();
        assert_eq!(dec.classes, vec![vec![0, 1], vec![2], vec![3], vec![4]]);
        assert_eq!(dec.essential, vec![true, false, false, true]);
        assert_eq!(dec.edges, vec![(1, 0), (2, 1), (2, 3)]);
        let scales: Vec<String> = dec.b_scale.unwrap().iter().map(|q| q.to_string()).collect();
        assert_eq!(scales, ["-2", "-1", "0", "0"]);
    }

    #[test]
    fn single_absorbing_state() {
        let pi = TransitionMatrix::parse("x: x=1\n").unwrap();
        let dec = scc(&pi);
        assert_eq!(dec.classes, vec![vec![0]]);
        assert_eq!(dec.essential, vec![true]);
    }

    #[test]
    fn rational_graph_is_irreducible() {
        let f = crate::graph::parse_graph_file("edge a b 1\nedge b c 2\nedge c a 5\nedge c d 1\n").unwrap();
        let dec = scc(&build_pi(&f.graph, &f.interior).unwrap());
        assert_eq!(dec.class_count(), 1);
        assert!(dec.essential[0]);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 20_000;
        let mut text = String::new();
        for i in 0..n - 1 {
            text.push_str(&format!("s{i}: s{}=1\n", i + 1));
        }
        text.push_str(&format!("s{}: s{}=1\n", n - 1, n - 1));
        let dec = scc(&TransitionMatrix::parse(&text).unwrap());
        assert_eq!(dec.class_count(), n);
        assert_eq!(dec.essential.iter().filter(|&&e| e).count(), 1);
    }
}
