//! Leavitt path algebras of finite graphs, realized through the boundary
//! path groupoid.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::text::{content_lines, split_header, valid_name, valid_symbol, ParseError};

mod boundary;
mod images;

pub use boundary::{
    boundary_paths, is_arrow, Boundary, BoundaryPath, GraphArrow, GraphGroupoid, GraphOrbit, OrbitKind,
};
pub use images::{
    generated_dimension, generator_images, leavitt_verdicts, verify_leavitt_relations, Generator, GeneratorImages,
    WindowCoverage,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("condition (NE) fails: {0}")]
    InfiniteBoundary(Box<NeWitness>),
    #[error(transparent)]
    Ring(#[from] crate::rings::RingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub range: usize,
}

/// A finite directed multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    /// Outgoing edges per vertex, in declaration order.
    out: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Self {
        let mut out = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.source].push(i);
        }
        Graph { vertices, edges, out }
    }

    /// Builds a graph from vertex names and `(edge, source, range)` names.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Self {
        let index = |v: &str| vertices.iter().position(|w| *w == v).unwrap_or_else(|| panic!("unknown vertex {v}"));
        Graph::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            edges.iter().map(|(e, s, r)| Edge { name: e.to_string(), source: index(s), range: index(r) }).collect(),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].name
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].source
    }

    pub fn range(&self, e: usize) -> usize {
        self.edges[e].range
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out[v].is_empty()
    }

    pub fn sinks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| self.is_sink(v))
    }

    /// Line graph `v1 -> v2 -> ... -> vn`.
    pub fn line(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let edges = (1..n).map(|i| Edge { name: format!("e{i}"), source: i - 1, range: i }).collect();
        Graph::new(vertices, edges)
    }

    /// One vertex with `k` loops.
    pub fn rose(k: usize) -> Self {
        let edges = (1..=k).map(|i| Edge { name: format!("p{i}"), source: 0, range: 0 }).collect();
        Graph::new(vec!["v".into()], edges)
    }

    /// Directed cycle `c1 -> c2 -> ... -> cn -> c1`.
    pub fn cycle(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| format!("c{i}")).collect();
        let edges = (0..n).map(|i| Edge { name: format!("z{}", i + 1), source: i, range: (i + 1) % n }).collect();
        Graph::new(vertices, edges)
    }

    /// Both graphs side by side, names prefixed `A_` and `B_`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let n = self.vertex_count();
        let mut vertices: Vec<String> = self.vertices.iter().map(|v| format!("A_{v}")).collect();
        vertices.extend(other.vertices.iter().map(|v| format!("B_{v}")));
        let mut edges: Vec<Edge> =
            self.edges.iter().map(|e| Edge { name: format!("A_{}", e.name), ..e.clone() }).collect();
        edges.extend(other.edges.iter().map(|e| Edge {
            name: format!("B_{}", e.name),
            source: e.source + n,
            range: e.range + n,
        }));
        Graph::new(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices: {}\n", self.vertices.join(" "));
        for e in &self.edges {
            s.push_str(&format!("edge {} : {} -> {}\n", e.name, self.vertices[e.source], self.vertices[e.range]));
        }
        s
    }

    /// All simple directed cycles, each rotated to start at its least vertex
    /// (declaration order), listed by that vertex and then by edge sequence.
    pub fn cycles(&self) -> Vec<Cycle> {
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            let mut path = Vec::new();
            let mut on_path = vec![false; self.vertex_count()];
            self.extend_cycles(start, start, &mut path, &mut on_path, &mut out);
        }
        out
    }

    fn extend_cycles(
        &self,
        start: usize,
        at: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Cycle>,
    ) {
        on_path[at] = true;
        for &e in &self.out[at] {
            let next = self.range(e);
            if next == start {
                let mut edges = path.clone();
                edges.push(e);
                out.push(Cycle::new(self, edges));
            } else if next > start && !on_path[next] {
                path.push(e);
                self.extend_cycles(start, next, path, on_path, out);
                path.pop();
            }
        }
        on_path[at] = false;
    }

    pub fn is_acyclic(&self) -> bool {
        self.cycles().is_empty()
    }

    /// Condition (NE): no cycle has an exit. The witness is the first cycle
    /// (in enumeration order) with a vertex of out-degree at least two, and
    /// that vertex's first edge leaving the cycle.
    pub fn condition_ne(&self) -> NeReport {
        let cycles = self.cycles();
        for cycle in &cycles {
            for (i, &v) in cycle.vertices.iter().enumerate() {
                if let Some(&exit) = self.out[v].iter().find(|&&e| e != cycle.edges[i]) {
                    let witness = NeWitness {
                        cycle: cycle.clone(),
                        vertex: v,
                        exit,
                        rendered: format!(
                            "vertex {}, exit edge {} leaving cycle {}",
                            self.vertex_name(v),
                            self.edge_name(exit),
                            cycle.render(self)
                        ),
                        vertex_name: self.vertex_name(v).to_string(),
                        exit_name: self.edge_name(exit).to_string(),
                    };
                    return NeReport { holds: false, witness: Some(witness), cycles };
                }
            }
        }
        NeReport { holds: true, witness: None, cycles }
    }

    /// Number of paths (including the empty one) ending at each vertex,
    /// counted on an acyclic graph by dynamic programming over edges.
    pub fn paths_ending_at(&self) -> Option<Vec<u64>> {
        if !self.is_acyclic() {
            return None;
        }
        // paths[v][w] = number of paths from v to w
        let n = self.vertex_count();
        let mut memo: Vec<Option<Vec<u64>>> = vec![None; n];
        fn from(g: &Graph, v: usize, memo: &mut Vec<Option<Vec<u64>>>) -> Vec<u64> {
            if let Some(m) = &memo[v] {
                return m.clone();
            }
            let mut counts = vec![0u64; g.vertex_count()];
            counts[v] += 1;
            for &e in g.outgoing(v) {
                for (c, x) in counts.iter_mut().zip(from(g, g.range(e), memo)) {
                    *c += x;
                }
            }
            memo[v] = Some(counts.clone());
            counts
        }
        let mut totals = vec![0u64; n];
        for v in 0..n {
            for (t, x) in totals.iter_mut().zip(from(self, v, &mut memo)) {
                *t += x;
            }
        }
        Some(totals)
    }
}

/// A simple directed cycle: `vertices[i]` is the source of `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    fn new(g: &Graph, edges: Vec<usize>) -> Self {
        let vertices = edges.iter().map(|&e| g.source(e)).collect();
        Cycle { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    pub fn render(&self, g: &Graph) -> String {
        self.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeWitness {
    pub cycle: Cycle,
    pub vertex: usize,
    pub exit: usize,
    pub vertex_name: String,
    pub exit_name: String,
    pub rendered: String,
}

impl fmt::Display for NeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeReport {
    pub holds: bool,
    pub witness: Option<NeWitness>,
    pub cycles: Vec<Cycle>,
}

/// Parses `vertices: u v w` followed by `edge e : u -> v` lines.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut vertices: Option<Vec<String>> = None;
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_names: BTreeMap<String, usize> = BTreeMap::new();
    let mut last = 0;
    for (line, content) in content_lines(text) {
        last = line;
        if let Some(rest) = split_header(content, "vertices") {
            if vertices.is_some() {
                return Err(ParseError::new(line, "duplicate vertices line"));
            }
            let mut vs = Vec::new();
            for name in rest.split_whitespace() {
                if !valid_name(name) {
                    return Err(ParseError::new(line, format!("invalid vertex name {name:?}")));
                }
                if index.insert(name.to_string(), vs.len()).is_some() {
                    return Err(ParseError::new(line, format!("duplicate vertex {name}")));
                }
                vs.push(name.to_string());
            }
            if vs.is_empty() {
                return Err(ParseError::new(line, "a graph needs at least one vertex"));
            }
            vertices = Some(vs);
        } else if let Some(rest) = content.strip_prefix("edge ") {
            if vertices.is_none() {
                return Err(ParseError::new(line, "edge before the vertices line"));
            }
            let (name, ends) =
                rest.split_once(':').ok_or_else(|| ParseError::new(line, "expected `edge NAME : SOURCE -> RANGE`"))?;
            let name = name.trim();
            if !valid_symbol(name) {
                return Err(ParseError::new(line, format!("invalid edge name {name:?}")));
            }
            let (s, r) = ends.split_once("->").ok_or_else(|| ParseError::new(line, "expected `SOURCE -> RANGE`"))?;
            let lookup = |v: &str| {
                index.get(v.trim()).copied().ok_or_else(|| {
                    ParseError::new(line, format!("edge {name} references undeclared vertex {:?}", v.trim()))
                })
            };
            let (source, range) = (lookup(s)?, lookup(r)?);
            if edge_names.insert(name.to_string(), edges.len()).is_some() {
                return Err(ParseError::new(line, format!("duplicate edge {name}")));
            }
            edges.push(Edge { name: name.to_string(), source, range });
        } else {
            return Err(ParseError::new(line, format!("unrecognized line {content:?}")));
        }
    }
    let vertices = vertices.ok_or_else(|| ParseError::new(last.max(1), "missing vertices line"))?;
    Ok(Graph::new(vertices, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a2() {
        let g = parse_graph("# A2\nvertices: u v\nedge e : u -> v\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges()[0], Edge { name: "e".into(), source: 0, range: 1 });
        assert!(g.is_sink(1) && !g.is_sink(0));
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        let err = parse_graph("vertices: u\nedge e : u -> w\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("undeclared vertex \"w\""), "{err}");
        assert!(parse_graph("edge e : u -> v\n").is_err());
        assert!(parse_graph("vertices: u u\n").is_err());
        assert!(parse_graph("vertices: u\nedge e : u -> u\nedge e : u -> u\n").is_err());
        assert!(parse_graph("vertices: u\nloop e u\n").is_err());
        assert_eq!(parse_graph("").unwrap_err().line, 1);
    }

    #[test]
    fn single_loop_is_rose_with_one_petal() {
        let g = parse_graph("vertices: v\nedge p1 : v -> v\n").unwrap();
        assert_eq!(g, Graph::rose(1));
    }

    #[test]
    fn cycle_enumeration() {
        assert!(Graph::line(4).cycles().is_empty());
        let loops = Graph::rose(2).cycles();
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().all(|c| c.len() == 1));
        let c3 = Graph::cycle(3).cycles();
        assert_eq!(c3.len(), 1);
        assert_eq!(c3[0].vertices, vec![0, 1, 2]);
        // two 2-cycles sharing both vertices via parallel edges, plus a loop
        let g = Graph::from_names(&["a", "b"], &[("x", "a", "b"), ("y", "a", "b"), ("z", "b", "a"), ("l", "b", "b")]);
        let cs = g.cycles();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs.iter().filter(|c| c.len() == 2).count(), 2);
    }

    /// Simple cycles by brute force: edge sequences of length at most |E⁰|
    /// that close up without repeating a vertex, up to rotation.
    fn brute_force_cycles(g: &Graph) -> usize {
        let mut found = std::collections::BTreeSet::new();
        fn walk(g: &Graph, path: &mut Vec<usize>, found: &mut std::collections::BTreeSet<Vec<usize>>) {
            let start = g.source(path[0]);
            let end = g.range(*path.last().unwrap());
            if end == start {
                let k = (0..path.len()).min_by_key(|&i| (g.source(path[i]), path[i])).unwrap();
                let mut rotated = path[k..].to_vec();
                rotated.extend_from_slice(&path[..k]);
                found.insert(rotated);
                return;
            }
            if path.iter().any(|&e| g.source(e) == end) {
                return;
            }
            for &e in g.outgoing(end) {
                path.push(e);
                walk(g, path, found);
                path.pop();
            }
        }
        for e in 0..g.edges().len() {
            walk(g, &mut vec![e], &mut found);
        }
        found.len()
    }

    proptest::proptest! {
        #[test]
        fn cycles_match_brute_force(n in 1usize..5, raw in proptest::collection::vec((0usize..5, 0usize..5), 0..7)) {
            let edges: Vec<Edge> = raw
                .iter()
                .enumerate()
                .map(|(i, (s, r))| Edge { name: format!("e{i}"), source: s % n, range: r % n })
                .collect();
            let g = Graph::new((0..n).map(|i| format!("v{i}")).collect(), edges);
            let cycles = g.cycles();
            proptest::prop_assert_eq!(cycles.len(), brute_force_cycles(&g));
            for c in &cycles {
                let mut vs = c.vertices.clone();
                vs.sort_unstable();
                vs.dedup();
                proptest::prop_assert_eq!(vs.len(), c.len());
                proptest::prop_assert_eq!(c.vertices[0], *c.vertices.iter().min().unwrap());
            }
        }
    }

    #[test]
    fn condition_ne_examples() {
        assert!(Graph::rose(1).condition_ne().holds);
        assert!(Graph::line(3).condition_ne().holds);
        let rose = Graph::rose(2);
        let ne = rose.condition_ne();
        assert!(!ne.holds);
        let w = ne.witness.unwrap();
        assert_eq!((w.cycle.edges.clone(), w.exit), (vec![0], 1));
        assert_eq!((w.vertex_name.as_str(), w.exit_name.as_str()), ("v", "p2"));
        let with_exit = Graph::from_names(
            &["c1", "c2", "c3", "s"],
            &[("z1", "c1", "c2"), ("z2", "c2", "c3"), ("z3", "c3", "c1"), ("x", "c2", "s")],
        );
        assert_eq!(with_exit.condition_ne().witness.unwrap().exit_name, "x");
    }

    #[test]
    fn path_counts() {
        assert_eq!(Graph::line(3).paths_ending_at().unwrap(), vec![1, 2, 3]);
        assert_eq!(Graph::rose(1).paths_ending_at(), None);
    }
}
