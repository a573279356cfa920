//! Images of the Leavitt generators in the block decomposition, the
//! relation checks, and the chain-condition verdicts for path algebras.

use std::collections::BTreeMap;
use std::fmt;

use super::{BoundaryPath, Graph, GraphArrow, GraphError, GraphGroupoid};
use crate::linalg::Echelon;
use crate::rings::{BlockMatrix, BlockShape, IsotropyDescriptor, RingDescriptor, RingElement};
use crate::verdict::{verdicts, Citation, Justification, Property, Verdict};
use crate::verify::{Check, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    Vertex(usize),
    Edge(usize),
    Ghost(usize),
}

impl Generator {
    pub fn render(&self, g: &Graph) -> String {
        match self {
            Generator::Vertex(v) => g.vertex_name(*v).to_string(),
            Generator::Edge(e) => g.edge_name(*e).to_string(),
            Generator::Ghost(e) => format!("{}*", g.edge_name(*e)),
        }
    }
}

/// Block matrices for `v`, `e` and `e*`, together with the groupoid whose
/// frame produced them.
#[derive(Debug, Clone)]
pub struct GeneratorImages {
    pub groupoid: GraphGroupoid,
    pub shape: BlockShape,
    pub images: BTreeMap<Generator, BlockMatrix>,
}

impl GeneratorImages {
    pub fn get(&self, g: Generator) -> &BlockMatrix {
        &self.images[&g]
    }
}

/// `v ↦ Σ (γ, 0, γ)`, `e ↦ Σ (eγ, 1, γ)` and `e* ↦ Σ (γ, −1, eγ)`, the sums
/// running over boundary paths `γ` starting at `v` or at `r(e)`.
pub fn generator_images(g: &Graph, r: &RingDescriptor) -> Result<GeneratorImages, GraphError> {
    let gg = GraphGroupoid::new(g)?;
    let shape = gg.shape(r);
    let mut images = BTreeMap::new();
    for v in 0..g.vertex_count() {
        let mut m = BlockMatrix::zero(&shape);
        for p in gg.paths_from(v) {
            gg.add_arrow(&mut m, &GraphArrow { range: p.clone(), degree: 0, source: p.clone() }, r.one());
        }
        images.insert(Generator::Vertex(v), m);
    }
    for e in 0..g.edges().len() {
        let mut m = BlockMatrix::zero(&shape);
        let mut star = BlockMatrix::zero(&shape);
        let tails: Vec<BoundaryPath> = gg.paths_from(g.range(e)).cloned().collect();
        for p in tails {
            let ep = gg.prepend(e, &p);
            gg.add_arrow(&mut m, &GraphArrow { range: ep.clone(), degree: 1, source: p.clone() }, r.one());
            gg.add_arrow(&mut star, &GraphArrow { range: p, degree: -1, source: ep }, r.one());
        }
        images.insert(Generator::Edge(e), m);
        images.insert(Generator::Ghost(e), star);
    }
    Ok(GeneratorImages { groupoid: gg, shape, images })
}

fn product(a: &BlockMatrix, b: &BlockMatrix) -> BlockMatrix {
    a.mul(b).expect("images share one shape and ring")
}

/// Checks the Leavitt relations on the generator images:
/// orthogonal vertex idempotents summing to 1, `s(e)e = e = e r(e)`,
/// `r(e)e* = e* = e*s(e)`, `e*f = δ_{e,f} r(e)`, and `v = Σ_{s(e)=v} ee*`
/// at every vertex that is not a sink.
pub fn verify_leavitt_relations(g: &Graph, r: &RingDescriptor) -> Result<VerificationReport, GraphError> {
    let im = generator_images(g, r)?;
    let v = |x: usize| im.get(Generator::Vertex(x));
    let e = |x: usize| im.get(Generator::Edge(x));
    let es = |x: usize| im.get(Generator::Ghost(x));
    let n_v = g.vertex_count();
    let n_e = g.edges().len();
    let zero = BlockMatrix::zero(&im.shape);
    let mut report = VerificationReport::default();

    let mut idem = Check::new("orthogonal idempotents");
    for a in 0..n_v {
        for b in 0..n_v {
            let expected = if a == b { v(a).clone() } else { zero.clone() };
            idem.record(product(v(a), v(b)) == expected, || {
                format!("{}·{} is wrong", g.vertex_name(a), g.vertex_name(b))
            });
        }
    }
    report.push(idem);

    let mut unit = Check::new("vertex sum is 1");
    let sum = (0..n_v).fold(zero.clone(), |acc, x| acc.add(v(x)).expect("same shape"));
    unit.record(sum == BlockMatrix::identity(&im.shape), || "sum of vertex images is not the identity".into());
    report.push(unit);

    let mut r1 = Check::new("relation s(e)e = e = er(e)");
    let mut r2 = Check::new("relation r(e)e* = e* = e*s(e)");
    for x in 0..n_e {
        let (s, t) = (g.source(x), g.range(x));
        let name = g.edge_name(x);
        r1.record(product(v(s), e(x)) == *e(x), || format!("s({name}){name} != {name}"));
        r1.record(product(e(x), v(t)) == *e(x), || format!("{name}r({name}) != {name}"));
        r2.record(product(v(t), es(x)) == *es(x), || format!("r({name}){name}* != {name}*"));
        r2.record(product(es(x), v(s)) == *es(x), || format!("{name}*s({name}) != {name}*"));
    }
    report.push(r1);
    report.push(r2);

    let mut r3 = Check::new("relation e*f = δ r(e)");
    for x in 0..n_e {
        for y in 0..n_e {
            let expected = if x == y { v(g.range(x)).clone() } else { zero.clone() };
            r3.record(product(es(x), e(y)) == expected, || format!("{}*{} is wrong", g.edge_name(x), g.edge_name(y)));
        }
    }
    report.push(r3);

    let mut r4 = Check::new("relation v = sum ee*");
    for x in (0..n_v).filter(|&x| !g.is_sink(x)) {
        let sum =
            g.outgoing(x).iter().fold(zero.clone(), |acc, &y| acc.add(&product(e(y), es(y))).expect("same shape"));
        r4.record(sum == *v(x), || format!("{} != sum of ee* over its edges", g.vertex_name(x)));
    }
    report.push(r4);
    Ok(report)
}

/// Span of the subalgebra generated by the images over `Q`.
///
/// On Laurent blocks only exponents in `[-reach, reach]` are tracked, with
/// `reach = window + 4nD` for block size `n` and largest generator exponent
/// `D`: any `x^d E_jk` with `|d| ≤ window` is a word that walks from row `j`
/// to the basepoint, winds around the cycle and walks out to column `k`, and
/// each leg moves the degree by at most `nD`, so no prefix leaves the band.
/// `spans_window` records whether every matrix unit `x^d E_jk`
/// with `|d| ≤ window` was reached, and `generator_attained` whether `x`
/// itself appears in every Laurent block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCoverage {
    pub window: i64,
    /// Tracked exponent bound on Laurent blocks.
    pub reach: i64,
    /// Dimension of the tracked part of the generated subalgebra.
    pub dimension: usize,
    /// `Σ n_i²` when every block is finite-dimensional.
    pub block_dimension: Option<usize>,
    pub spans_window: bool,
    pub generator_attained: bool,
}

impl fmt::Display for WindowCoverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.block_dimension {
            Some(d) => write!(f, "generated dimension {} of {d}", self.dimension),
            None => write!(
                f,
                "generated dimension {} with exponents up to ±{}; degrees ±{} {}spanned",
                self.dimension,
                self.reach,
                self.window,
                if self.spans_window { "" } else { "not " }
            ),
        }
    }
}

pub fn generated_dimension(g: &Graph, window: i64) -> Result<WindowCoverage, GraphError> {
    let q = RingDescriptor::Rationals;
    let im = generator_images(g, &q)?;
    let max_n = im.shape.blocks.iter().map(|(n, _)| *n as i64).max().unwrap_or(1);
    let max_exp = im
        .images
        .values()
        .flat_map(|m| {
            m.nonzero_entries().flat_map(|(_, _, _, e)| e.coefficients().keys().map(|d| d.abs()).collect::<Vec<_>>())
        })
        .max()
        .unwrap_or(0)
        .max(1);
    let reach = window + 4 * max_n * max_exp;
    let mut coords: BTreeMap<(usize, usize, usize, i64), usize> = BTreeMap::new();
    for (i, (n, group)) in im.shape.blocks.iter().enumerate() {
        let exps: Vec<i64> = match **group {
            IsotropyDescriptor::Integers => (-reach..=reach).collect(),
            _ => vec![0],
        };
        for row in 0..*n {
            for col in 0..*n {
                for &d in &exps {
                    let next = coords.len();
                    coords.insert((i, row, col, d), next);
                }
            }
        }
    }
    let width = coords.len();
    let vectorize = |m: &BlockMatrix| -> Option<Vec<RingElement>> {
        let mut v = vec![q.zero(); width];
        for (i, row, col, entry) in m.nonzero_entries() {
            for (&d, c) in entry.coefficients() {
                v[*coords.get(&(i, row, col, d))?] = c.clone();
            }
        }
        Some(v)
    };
    let gens: Vec<&BlockMatrix> = im.images.values().collect();
    let mut span = Echelon::new(q.clone(), width);
    let mut frontier: Vec<BlockMatrix> = Vec::new();
    for m in &gens {
        if let Some(v) = vectorize(m) {
            if span.insert(&v) {
                frontier.push((*m).clone());
            }
        }
    }
    while let Some(m) = frontier.pop() {
        for gen in &gens {
            let p = product(&m, gen);
            if let Some(v) = vectorize(&p) {
                if span.insert(&v) {
                    frontier.push(p);
                }
            }
        }
    }
    let unit_vector = |key: (usize, usize, usize, i64)| {
        let mut v = vec![q.zero(); width];
        v[coords[&key]] = q.one();
        v
    };
    let mut spans_window = true;
    let mut generator_attained = true;
    let mut finite = true;
    for (i, (n, group)) in im.shape.blocks.iter().enumerate() {
        let laurent = matches!(**group, IsotropyDescriptor::Integers);
        finite &= !laurent;
        let exps: Vec<i64> = if laurent { (-window..=window).collect() } else { vec![0] };
        for row in 0..*n {
            for col in 0..*n {
                for &d in &exps {
                    spans_window &= span.contains(&unit_vector((i, row, col, d)));
                }
            }
        }
        if laurent {
            generator_attained &= span.contains(&unit_vector((i, 0, 0, 1)));
        }
    }
    let block_dimension = finite.then(|| im.shape.blocks.iter().map(|(n, _)| n * n).sum());
    Ok(WindowCoverage { window, reach, dimension: span.dim(), block_dimension, spans_window, generator_attained })
}

/// Chain-condition verdicts for `L_R(E)` read off the graph: Noetherian iff
/// `R` is and (NE) holds; Artinian iff `R` is and `E` is acyclic;
/// semisimple iff `R` is a finite product of fields and `E` is acyclic.
pub fn leavitt_verdicts(g: &Graph, r: &RingDescriptor) -> Verdict {
    let preds = r.predicates();
    let ne = g.condition_ne();
    let acyclic = ne.cycles.is_empty();
    let mut why = Vec::new();
    let cite = Citation::PathAlgebraCriterion;

    let noetherian = preds.noetherian && ne.holds;
    let detail = match (&ne.witness, preds.noetherian) {
        (Some(w), _) => format!("condition (NE) fails ({w})"),
        (None, false) => format!("{r} is not Noetherian"),
        (None, true) => format!("{r} is Noetherian, E is finite and no cycle has an exit"),
    };
    why.push(Justification { property: Property::Noetherian, holds: noetherian, citation: cite, detail });

    let cycle_note = || {
        let c = &ne.cycles[0];
        format!("E has a cycle {}", c.render(g))
    };
    let artinian = preds.artinian && acyclic;
    let detail = if !preds.artinian {
        format!("{r} is not Artinian")
    } else if !acyclic {
        cycle_note()
    } else {
        format!("{r} is Artinian and E is finite acyclic")
    };
    why.push(Justification { property: Property::Artinian, holds: artinian, citation: cite, detail });

    let semisimple = preds.field_product && acyclic;
    let detail = if !preds.field_product {
        format!("{r} is not a finite product of fields")
    } else if !acyclic {
        cycle_note()
    } else {
        format!("{r} is a finite product of fields and E is finite acyclic")
    };
    why.push(Justification { property: Property::Semisimple, holds: semisimple, citation: cite, detail });

    let shape = GraphGroupoid::new(g).ok().map(|gg| {
        let chain = verdicts(&gg.structured(), r);
        debug_assert_eq!(
            (chain.noetherian, chain.artinian, chain.semisimple),
            (noetherian, artinian, semisimple),
            "graph verdicts disagree with the groupoid verdicts"
        );
        gg.shape(r)
    });
    Verdict { noetherian, artinian, semisimple, shape, justification: why }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_ring_descriptor;

    fn relations_pass(g: &Graph, r: &RingDescriptor) {
        let rep = verify_leavitt_relations(g, r).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.witnesses());
    }

    #[test]
    fn single_loop_images() {
        let g = Graph::rose(1);
        let im = generator_images(&g, &RingDescriptor::Integers).unwrap();
        assert_eq!(im.shape.to_string(), "M_1(Laurent(Z))");
        assert_eq!(im.get(Generator::Edge(0)).to_string(), "[1](1,1): x");
        assert_eq!(*im.get(Generator::Vertex(0)), BlockMatrix::identity(&im.shape));
        relations_pass(&g, &RingDescriptor::Integers);
    }

    #[test]
    fn a2_images_are_matrix_units() {
        let g = Graph::line(2);
        let im = generator_images(&g, &RingDescriptor::Rationals).unwrap();
        assert_eq!(im.shape.to_string(), "M_2(Q)");
        // paths (v2) then e1: v1 ↦ E22, v2 ↦ E11, e1 ↦ E21
        assert_eq!(im.get(Generator::Vertex(0)).to_string(), "[1](2,2): 1");
        assert_eq!(im.get(Generator::Vertex(1)).to_string(), "[1](1,1): 1");
        assert_eq!(im.get(Generator::Edge(0)).to_string(), "[1](2,1): 1");
        assert_eq!(im.get(Generator::Ghost(0)).to_string(), "[1](1,2): 1");
        relations_pass(&g, &RingDescriptor::Rationals);
    }

    #[test]
    fn relations_on_cyclic_graphs() {
        let spokes = Graph::from_names(
            &["a", "b", "c", "v"],
            &[("f", "a", "v"), ("g", "b", "a"), ("h", "c", "v"), ("l", "v", "v")],
        );
        let with_sink = Graph::from_names(&["u", "w", "s"], &[("x", "u", "w"), ("y", "w", "u"), ("t", "s", "u")]);
        for g in [Graph::cycle(3), spokes, with_sink, Graph::line(3).disjoint_union(&Graph::rose(1))] {
            for r in ["Q", "Z", "GF(2)", "Z/6"] {
                relations_pass(&g, &parse_ring_descriptor(r).unwrap());
            }
        }
    }

    #[test]
    fn generated_dimensions() {
        let a3 = generated_dimension(&Graph::line(3), 3).unwrap();
        assert_eq!((a3.dimension, a3.block_dimension), (9, Some(9)));
        for g in [Graph::rose(1), Graph::cycle(3), Graph::from_names(&["s", "v"], &[("f", "s", "v"), ("l", "v", "v")])]
        {
            let c = generated_dimension(&g, 3).unwrap();
            assert!(c.spans_window && c.generator_attained, "{}: {c}", g.to_text());
        }
    }

    #[test]
    fn long_spokes_need_a_wide_band() {
        // spoke edges map to x E_jk, so x^3 E_13 is only reached via l^5
        let g = Graph::from_names(&["u", "w", "v"], &[("s", "u", "v"), ("t", "w", "u"), ("l", "v", "v")]);
        let c = generated_dimension(&g, 3).unwrap();
        assert!(c.reach >= 3 + 4 * 3);
        assert!(c.spans_window && c.generator_attained, "{c}");
    }

    #[test]
    fn verdict_examples() {
        for r in ["Q", "Z", "GF(2)", "Z/6", "Laurent(Q)", "Product(Q,GF(3))"] {
            let r = parse_ring_descriptor(r).unwrap();
            let v = leavitt_verdicts(&Graph::rose(2), &r);
            assert!(!v.noetherian && v.shape.is_none());
        }
        let a3 = leavitt_verdicts(&Graph::line(3), &RingDescriptor::Rationals);
        assert!(a3.noetherian && a3.artinian && a3.semisimple);
        assert_eq!(a3.shape.unwrap().to_string(), "M_3(Q)");
        let lp = leavitt_verdicts(&Graph::rose(1), &RingDescriptor::Integers);
        assert_eq!((lp.noetherian, lp.artinian, lp.semisimple), (true, false, false));
        assert_eq!(lp.shape.unwrap().to_string(), "M_1(Laurent(Z))");
    }

    #[test]
    fn infinite_boundary_is_an_error() {
        assert!(matches!(
            generator_images(&Graph::rose(2), &RingDescriptor::Rationals),
            Err(GraphError::InfiniteBoundary(_))
        ));
    }
}
