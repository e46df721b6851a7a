//! Line-oriented text formats.
//!
//! Graph files:
//!
//! ```text
//! field denom=1
//! vertex 1              # optional, fixes vertex order
//! edge 1 2 t^-2
//! interior 1 2 3 4      # or: boundary 5
//! ```
//!
//! Ray generator files:
//!
//! ```text
//! field denom=1
//! family ray
//! name 0 a
//! weight 0 t
//! tail 4 t^(3-k)
//! ```

use std::fmt::Write as _;

use super::{GraphBuilder, GraphError, RayFamily, VertexId, WeightedGraph};
use crate::field::FieldContext;

/// A graph together with its set `U` of non-absorbing vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile {
    pub graph: WeightedGraph,
    /// Sorted; all of `V` when the file declares neither form.
    pub interior: Vec<VertexId>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_field_line(no: usize, rest: &str) -> Result<FieldContext, GraphError> {
    let d = rest
        .trim()
        .strip_prefix("denom=")
        .and_then(|d| d.trim().parse::<u32>().ok())
        .ok_or_else(|| parse_err(no, "expected `field denom=<D>`"))?;
    FieldContext::new(d).map_err(|e| parse_err(no, e.to_string()))
}

fn split_word(s: &str) -> (&str, &str) {
    match s.split_once(char::is_whitespace) {
        Some((a, b)) => (a, b.trim_start()),
        None => (s, ""),
    }
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, GraphError> {
    let mut context = FieldContext::default();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut interior: Option<Vec<(usize, String)>> = None;
    let mut boundary: Option<Vec<(usize, String)>> = None;
    for (no, line) in lines(text) {
        let (kw, rest) = split_word(line);
        match kw {
            "field" => context = parse_field_line(no, rest)?,
            "vertex" => {
                for name in rest.split_whitespace() {
                    vertices.push(name.to_string());
                }
            }
            "edge" => {
                let (u, rest) = split_word(rest);
                let (v, lit) = split_word(rest);
                if u.is_empty() || v.is_empty() || lit.is_empty() {
                    return Err(parse_err(no, "expected `edge <u> <v> <weight>`"));
                }
                edges.push((no, u.to_string(), v.to_string(), lit.to_string()));
            }
            "interior" | "boundary" => {
                let slot = if kw == "interior" { &mut interior } else { &mut boundary };
                slot.get_or_insert_with(Vec::new)
                    .extend(rest.split_whitespace().map(|n| (no, n.to_string())));
            }
            other => return Err(parse_err(no, format!("unknown directive {other:?}"))),
        }
    }
    if interior.is_some() && boundary.is_some() {
        return Err(GraphError::InteriorAndBoundary);
    }
    let mut b = GraphBuilder::with_context(context);
    for v in &vertices {
        b.vertex(v);
    }
    for (no, u, v, lit) in &edges {
        let w = context.parse(lit).map_err(|e| parse_err(*no, e.to_string()))?;
        b.edge(u, v, w)?;
    }
    let graph = b.build()?;
    let lookup = |(no, name): &(usize, String)| {
        graph
            .id(name)
            .map_err(|_| parse_err(*no, format!("unknown vertex {name:?}")))
    };
    let mut interior: Vec<VertexId> = match (interior, boundary) {
        (Some(names), _) => names.iter().map(lookup).collect::<Result<_, _>>()?,
        (None, Some(names)) => {
            let mut out = vec![true; graph.vertex_count()];
            for x in names.iter().map(lookup) {
                out[x?] = false;
            }
            graph.vertices().filter(|&x| out[x]).collect()
        }
        (None, None) => graph.vertices().collect(),
    };
    interior.sort_unstable();
    interior.dedup();
    Ok(GraphFile { graph, interior })
}

impl GraphFile {
    pub fn new(graph: WeightedGraph, interior: Vec<VertexId>) -> Self {
        let mut interior = interior;
        interior.sort_unstable();
        interior.dedup();
        Self { graph, interior }
    }

    /// Renders the file so that parsing it reproduces `self` exactly.
    pub fn serialize(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        writeln!(out, "field denom={}", g.context().denom()).unwrap();
        for x in g.vertices() {
            writeln!(out, "vertex {}", g.name(x)).unwrap();
        }
        for (x, y, w) in g.edges() {
            writeln!(out, "edge {} {} {}", g.name(x), g.name(y), w).unwrap();
        }
        if self.interior.len() != g.vertex_count() {
            let names: Vec<&str> = self.interior.iter().map(|&x| g.name(x)).collect();
            writeln!(out, "interior {}", names.join(" ")).unwrap();
        }
        out
    }
}

pub fn parse_generator_file(text: &str) -> Result<RayFamily, GraphError> {
    let mut context = FieldContext::default();
    let mut family = None;
    let mut names = Vec::new();
    let mut weights = Vec::new();
    let mut tail = None;
    for (no, line) in lines(text) {
        let (kw, rest) = split_word(line);
        let index = |s: &str| s.parse::<u64>().map_err(|_| parse_err(no, format!("bad index {s:?}")));
        match kw {
            "field" => context = parse_field_line(no, rest)?,
            "family" => family = Some((no, rest.to_string())),
            "name" => {
                let (k, name) = split_word(rest);
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(parse_err(no, "expected `name <index> <name>`"));
                }
                names.push((index(k)?, name.to_string()));
            }
            "weight" => {
                let (k, lit) = split_word(rest);
                let w = context.parse(lit).map_err(|e| parse_err(no, e.to_string()))?;
                weights.push((index(k)?, w));
            }
            "tail" => {
                let (k, formula) = split_word(rest);
                if formula.is_empty() {
                    return Err(parse_err(no, "expected `tail <start> <formula in k>`"));
                }
                tail = Some((index(k)?, formula.to_string()));
            }
            other => return Err(parse_err(no, format!("unknown directive {other:?}"))),
        }
    }
    match family {
        Some((_, f)) if f == "ray" => {}
        Some((no, f)) => return Err(parse_err(no, format!("unsupported family {f:?}"))),
        None => return Err(parse_err(0, "missing `family ray`")),
    }
    let mut ray = RayFamily::new(context);
    for (k, n) in names {
        ray = ray.with_name(k, &n);
    }
    for (k, w) in weights {
        ray = ray.with_weight(k, w);
    }
    if let Some((k, f)) = tail {
        ray = ray.with_tail(k, &f);
    }
    ray.validate()?;
    Ok(ray)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_literal;
    use crate::graph::GraphGenerator;

    const EXAMPLE: &str = "\
# five-vertex path
field denom=1
edge 1 2 t^-2
edge 2 3 t^-1
edge 3 4 1
edge 4 5 1
interior 1 2 3 4
";

    #[test]
    fn parses_and_round_trips() {
        let f = parse_graph_file(EXAMPLE).unwrap();
        assert_eq!(f.graph.vertex_count(), 5);
        assert_eq!(f.interior, vec![0, 1, 2, 3]);
        let again = parse_graph_file(&f.serialize()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn boundary_form_and_conflicts() {
        let text = EXAMPLE.replace("interior 1 2 3 4", "boundary 5");
        assert_eq!(parse_graph_file(&text).unwrap().interior, vec![0, 1, 2, 3]);
        let both = format!("{EXAMPLE}boundary 5\n");
        assert_eq!(parse_graph_file(&both), Err(GraphError::InteriorAndBoundary));
        let unknown = EXAMPLE.replace("interior 1 2 3 4", "interior 9");
        assert!(matches!(
            parse_graph_file(&unknown),
            Err(GraphError::Parse { line: 7, .. })
        ));
        assert!(parse_graph_file("edge a b t^1/2\n").is_err());
        let ok = parse_graph_file("field denom=2\nedge a b t^1/2 + 1\n").unwrap();
        assert_eq!(ok.graph.weight(0, 1), parse_literal("t^(1/2) + 1").unwrap());
    }

    #[test]
    fn generator_file() {
        let text =
            "field denom=1\nfamily ray\nname 0 a\nweight 0 t\nweight 1 1\nweight 2 t^2\nweight 3 1\ntail 4 t^(3-k)\n";
        let ray = parse_generator_file(text).unwrap();
        assert_eq!(ray.name(0), "a");
        assert_eq!(ray.neighbors(2).unwrap()[1].1, parse_literal("t^2").unwrap());
        assert_eq!(ray.neighbors(6).unwrap()[1].1, parse_literal("t^-3").unwrap());
        assert!(parse_generator_file("family tree\n").is_err());
        assert!(parse_generator_file("family ray\nweight 0 1\ntail 2 t\n").is_err());
    }
}
