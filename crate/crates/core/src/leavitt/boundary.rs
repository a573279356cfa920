//! The boundary path space of a graph satisfying (NE) and the groupoid of
//! tail-equivalent pairs on it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Cycle, Graph, GraphError, NeWitness};
use crate::groupoid::{OrbitSummary, StructuredGroupoid};
use crate::rings::{BlockMatrix, BlockShape, GroupTable, IsotropyDescriptor, RingDescriptor, RingElement};

/// A boundary path in canonical form.
///
/// `Lasso` is the infinite path `spoke · ζ ζ ζ ⋯` with `ζ` the cycle rotated
/// to start at `entry`. The spoke contains no edge of the cycle, so it meets
/// the cycle only at its last vertex; `start` is its first vertex (equal to
/// `entry` for an empty spoke). `cycle` indexes `Graph::cycles()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoundaryPath {
    SinkPath { start: usize, edges: Vec<usize> },
    Lasso { start: usize, spoke: Vec<usize>, cycle: usize, entry: usize },
}

impl BoundaryPath {
    pub fn start(&self) -> usize {
        match self {
            BoundaryPath::SinkPath { start, .. } | BoundaryPath::Lasso { start, .. } => *start,
        }
    }

    /// The finite part: the whole path for a sink path, the spoke for a lasso.
    pub fn finite_part(&self) -> &[usize] {
        match self {
            BoundaryPath::SinkPath { edges, .. } => edges,
            BoundaryPath::Lasso { spoke, .. } => spoke,
        }
    }

    /// Edge at position `i` of the (possibly infinite) path.
    pub fn edge_at(&self, i: usize, cycles: &[Cycle]) -> Option<usize> {
        match self {
            BoundaryPath::SinkPath { edges, .. } => edges.get(i).copied(),
            BoundaryPath::Lasso { spoke, cycle, entry, .. } => {
                if i < spoke.len() {
                    return Some(spoke[i]);
                }
                let c = &cycles[*cycle];
                let at = c.position(*entry).expect("entry lies on the cycle");
                Some(c.edges[(at + i - spoke.len()) % c.len()])
            }
        }
    }

    /// Terminal sink of a sink path.
    pub fn sink(&self, g: &Graph) -> Option<usize> {
        match self {
            BoundaryPath::SinkPath { start, edges } => Some(edges.last().map_or(*start, |&e| g.range(e))),
            BoundaryPath::Lasso { .. } => None,
        }
    }

    /// `(length of the finite part, its edges, start vertex, kind)`.
    fn key(&self) -> (usize, &[usize], usize, u8) {
        let kind = matches!(self, BoundaryPath::Lasso { .. }) as u8;
        (self.finite_part().len(), self.finite_part(), self.start(), kind)
    }

    pub fn render(&self, g: &Graph, cycles: &[Cycle]) -> String {
        let names = |es: &[usize]| es.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(".");
        match self {
            BoundaryPath::SinkPath { start, edges } if edges.is_empty() => format!("({})", g.vertex_name(*start)),
            BoundaryPath::SinkPath { edges, .. } => names(edges),
            BoundaryPath::Lasso { spoke, cycle, entry, .. } => {
                let c = &cycles[*cycle];
                let at = c.position(*entry).expect("entry lies on the cycle");
                let rotated: Vec<usize> = (0..c.len()).map(|i| c.edges[(at + i) % c.len()]).collect();
                let head = if spoke.is_empty() { String::new() } else { format!("{}.", names(spoke)) };
                format!("{head}({})^inf", names(&rotated))
            }
        }
    }
}

impl PartialOrd for BoundaryPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter finite parts first, then by edge sequence and start vertex.
impl Ord for BoundaryPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key()).then_with(|| match (self, other) {
            (BoundaryPath::Lasso { cycle: a, entry: x, .. }, BoundaryPath::Lasso { cycle: b, entry: y, .. }) => {
                (a, x).cmp(&(b, y))
            }
            _ => Ordering::Equal,
        })
    }
}

/// Either the complete finite boundary path space, or the witness that it
/// is infinite: the cylinders `Z(αⁿe)` for the cycle `α` and exit `e` are
/// pairwise disjoint and nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundary {
    Finite(Vec<BoundaryPath>),
    Infinite(NeWitness),
}

/// Enumerates `∂E` when (NE) holds, in `BoundaryPath` order.
pub fn boundary_paths(g: &Graph) -> Boundary {
    let ne = g.condition_ne();
    if let Some(w) = ne.witness {
        return Boundary::Infinite(w);
    }
    let cycles = ne.cycles;
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            assert!(a.vertices.iter().all(|v| !b.vertices.contains(v)), "cycles sharing a vertex would create an exit");
        }
    }
    let on_cycle: BTreeMap<usize, usize> =
        cycles.iter().enumerate().flat_map(|(i, c)| c.vertices.iter().map(move |&v| (v, i))).collect();
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let mut spoke = Vec::new();
        walk(g, &on_cycle, v, v, &mut spoke, &mut out);
    }
    out.sort();
    Boundary::Finite(out)
}

fn walk(
    g: &Graph,
    on_cycle: &BTreeMap<usize, usize>,
    start: usize,
    at: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<BoundaryPath>,
) {
    if let Some(&cycle) = on_cycle.get(&at) {
        out.push(BoundaryPath::Lasso { start, spoke: path.clone(), cycle, entry: at });
        return;
    }
    if g.is_sink(at) {
        out.push(BoundaryPath::SinkPath { start, edges: path.clone() });
        return;
    }
    for &e in g.outgoing(at) {
        path.push(e);
        walk(g, on_cycle, start, g.range(e), path, out);
        path.pop();
    }
}

/// `spoke length − cycle position of the entry`, the quantity whose
/// difference mod `|ζ|` decides which degrees join two lassos.
fn lasso_offset(spoke: &[usize], entry: usize, cycle: &Cycle) -> i64 {
    spoke.len() as i64 - cycle.position(entry).expect("entry lies on the cycle") as i64
}

/// Whether `(η, k, γ)` is an arrow: `η = αδ`, `γ = βδ`, `k = |α| − |β|`
/// for some finite `α, β` and boundary path `δ`. Sink paths are joined
/// exactly when they end at the same sink, with `k = |η| − |γ|`; lassos when
/// they share a cycle, with `k` in one residue class mod `|ζ|`.
pub fn is_arrow(g: &Graph, cycles: &[Cycle], eta: &BoundaryPath, k: i64, gamma: &BoundaryPath) -> bool {
    match (eta, gamma) {
        (BoundaryPath::SinkPath { edges: a, .. }, BoundaryPath::SinkPath { edges: b, .. }) => {
            eta.sink(g) == gamma.sink(g) && k == a.len() as i64 - b.len() as i64
        }
        (
            BoundaryPath::Lasso { spoke: a, cycle: ca, entry: ea, .. },
            BoundaryPath::Lasso { spoke: b, cycle: cb, entry: eb, .. },
        ) => {
            if ca != cb {
                return false;
            }
            let c = &cycles[*ca];
            let diff = lasso_offset(a, *ea, c) - lasso_offset(b, *eb, c);
            (k - diff).rem_euclid(c.len() as i64) == 0
        }
        _ => false,
    }
}

/// An arrow `(η, k, γ)` of the boundary path groupoid, from `γ` to `η`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphArrow {
    pub range: BoundaryPath,
    pub degree: i64,
    pub source: BoundaryPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    Sink(usize),
    Cycle(usize),
}

/// One tail-equivalence class with its frame. `members[0]` is the
/// basepoint and `degrees[i]` the degree of the connecting arrow
/// `(members[i], degrees[i], members[0])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOrbit {
    pub kind: OrbitKind,
    pub members: Vec<BoundaryPath>,
    pub degrees: Vec<i64>,
}

impl GraphOrbit {
    /// Degree of the isotropy generator: `|ζ|` on a lasso orbit.
    pub fn period(&self, cycles: &[Cycle]) -> Option<i64> {
        match self.kind {
            OrbitKind::Sink(_) => None,
            OrbitKind::Cycle(c) => Some(cycles[c].len() as i64),
        }
    }
}

/// The boundary path groupoid of a graph satisfying (NE), with frames.
#[derive(Debug, Clone)]
pub struct GraphGroupoid {
    graph: Graph,
    cycles: Vec<Cycle>,
    paths: Vec<BoundaryPath>,
    orbits: Vec<GraphOrbit>,
    slots: BTreeMap<BoundaryPath, (usize, usize)>,
}

impl GraphGroupoid {
    pub fn new(graph: &Graph) -> Result<Self, GraphError> {
        let paths = match boundary_paths(graph) {
            Boundary::Finite(p) => p,
            Boundary::Infinite(w) => return Err(GraphError::InfiniteBoundary(Box::new(w))),
        };
        let cycles = graph.cycles();
        let mut classes: BTreeMap<(u8, usize), Vec<BoundaryPath>> = BTreeMap::new();
        for p in &paths {
            let key = match p {
                BoundaryPath::SinkPath { .. } => (0, p.sink(graph).expect("sink path")),
                BoundaryPath::Lasso { cycle, .. } => (1, *cycle),
            };
            classes.entry(key).or_default().push(p.clone());
        }
        let mut orbits: Vec<GraphOrbit> = classes
            .into_iter()
            .map(|((kind, id), members)| {
                let kind = if kind == 0 { OrbitKind::Sink(id) } else { OrbitKind::Cycle(id) };
                let base = &members[0];
                let degrees = members
                    .iter()
                    .map(|m| match (kind, m, base) {
                        (OrbitKind::Sink(_), _, _) => m.finite_part().len() as i64 - base.finite_part().len() as i64,
                        (
                            OrbitKind::Cycle(c),
                            BoundaryPath::Lasso { spoke: a, entry: ea, .. },
                            BoundaryPath::Lasso { spoke: b, entry: eb, .. },
                        ) => {
                            let cy = &cycles[c];
                            (lasso_offset(a, *ea, cy) - lasso_offset(b, *eb, cy)).rem_euclid(cy.len() as i64)
                        }
                        _ => unreachable!("orbits are homogeneous"),
                    })
                    .collect();
                GraphOrbit { kind, members, degrees }
            })
            .collect();
        orbits.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
        let mut slots = BTreeMap::new();
        for (i, o) in orbits.iter().enumerate() {
            for (pos, m) in o.members.iter().enumerate() {
                slots.insert(m.clone(), (i, pos));
            }
        }
        Ok(GraphGroupoid { graph: graph.clone(), cycles, paths, orbits, slots })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn paths(&self) -> &[BoundaryPath] {
        &self.paths
    }

    pub fn orbits(&self) -> &[GraphOrbit] {
        &self.orbits
    }

    pub fn slot(&self, p: &BoundaryPath) -> Option<(usize, usize)> {
        self.slots.get(p).copied()
    }

    pub fn render(&self, p: &BoundaryPath) -> String {
        p.render(&self.graph, &self.cycles)
    }

    pub fn is_arrow(&self, a: &GraphArrow) -> bool {
        is_arrow(&self.graph, &self.cycles, &a.range, a.degree, &a.source)
    }

    fn isotropy(&self, o: &GraphOrbit) -> Arc<IsotropyDescriptor> {
        Arc::new(match o.kind {
            OrbitKind::Sink(_) => IsotropyDescriptor::Finite(GroupTable::trivial()),
            OrbitKind::Cycle(_) => IsotropyDescriptor::Integers,
        })
    }

    pub fn structured(&self) -> StructuredGroupoid {
        StructuredGroupoid::new(
            self.orbits.iter().map(|o| OrbitSummary { size: o.members.len(), isotropy: self.isotropy(o) }).collect(),
        )
        .expect("a finite graph has at least one boundary path")
    }

    pub fn shape(&self, r: &RingDescriptor) -> BlockShape {
        BlockShape::new(r.clone(), self.orbits.iter().map(|o| (o.members.len(), self.isotropy(o))).collect())
    }

    /// Prepends an edge to a boundary path starting at its range.
    pub fn prepend(&self, e: usize, p: &BoundaryPath) -> BoundaryPath {
        assert_eq!(self.graph.range(e), p.start(), "edge must end where the path starts");
        let start = self.graph.source(e);
        match p {
            BoundaryPath::SinkPath { edges, .. } => {
                let mut edges2 = vec![e];
                edges2.extend_from_slice(edges);
                BoundaryPath::SinkPath { start, edges: edges2 }
            }
            BoundaryPath::Lasso { spoke, cycle, entry, .. } => {
                if self.cycles[*cycle].contains_edge(e) {
                    debug_assert!(spoke.is_empty());
                    BoundaryPath::Lasso { start, spoke: Vec::new(), cycle: *cycle, entry: start }
                } else {
                    let mut s = vec![e];
                    s.extend_from_slice(spoke);
                    BoundaryPath::Lasso { start, spoke: s, cycle: *cycle, entry: *entry }
                }
            }
        }
    }

    /// Boundary paths starting at a vertex.
    pub fn paths_from(&self, v: usize) -> impl Iterator<Item = &BoundaryPath> {
        self.paths.iter().filter(move |p| p.start() == v)
    }

    /// Block, row, column and group exponent of an arrow under the frame
    /// rule `(η, k, γ) ↦ g_η⁻¹ (η, k, γ) g_γ · E_{ηγ}`; on a lasso orbit the
    /// isotropy loop of degree `m|ζ|` becomes `x^m`.
    pub fn arrow_image(&self, a: &GraphArrow) -> Option<(usize, usize, usize, i64)> {
        if !self.is_arrow(a) {
            return None;
        }
        let (i, row) = self.slot(&a.range)?;
        let (j, col) = self.slot(&a.source)?;
        if i != j {
            return None;
        }
        let o = &self.orbits[i];
        let d = a.degree - o.degrees[row] + o.degrees[col];
        let g = match o.period(&self.cycles) {
            None => {
                debug_assert_eq!(d, 0);
                0
            }
            Some(l) => {
                debug_assert_eq!(d % l, 0);
                d / l
            }
        };
        Some((i, row, col, g))
    }

    /// Adds `c · image(a)` to `m`.
    pub fn add_arrow(&self, m: &mut BlockMatrix, a: &GraphArrow, c: RingElement) {
        let (i, row, col, g) = self.arrow_image(a).expect("not an arrow of this groupoid");
        m.block_mut(i).entry_mut(row, col).add_term(g, c);
    }
}
