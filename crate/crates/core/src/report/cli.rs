use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{AnalysisReport, Format, OracleStatus, Pipeline};
use crate::algebra::{decompose, AlgebraElement, AlgebraError};
use crate::groupoid::{parse_groupoid, GroupoidError};
use crate::leavitt::{
    generated_dimension, leavitt_verdicts, parse_graph, verify_leavitt_relations, GraphGroupoid, OrbitKind,
};
use crate::linalg::FiniteAlgebra;
use crate::rings::{parse_ring_descriptor, RingDescriptor};
use crate::semigroup::{isg_verdicts, parse_isg, semigroup_algebra_iso, InverseSemigroup};
use crate::verdict::{algebra_radical, radical_oracle, verdicts, OracleError, RadicalReport};
use crate::verify::{Check, VerificationReport};

/// Half-width of the degree window used when closing Leavitt generator
/// images under multiplication.
const LEAVITT_WINDOW: i64 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ample",
    version,
    about = "Chain conditions and matrix decompositions of groupoid, Leavitt path and inverse semigroup algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyse a finite groupoid given by its composition table
    Groupoid(GroupoidArgs),
    /// Analyse the Leavitt path algebra of a finite graph
    Graph(CommonArgs),
    /// Analyse the algebra of a finite inverse semigroup
    Isg(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Input file
    file: PathBuf,
    /// Coefficient ring: Z, Q, GF(p), Z/n
    #[arg(long)]
    ring: String,
    /// Run the exhaustive checks and the radical oracle
    #[arg(long)]
    verify: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct GroupoidArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also print the image of this element, e.g. "2*a + b", in the block decomposition
    #[arg(long)]
    phi: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Machine,
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn invalid(lines: Vec<String>) -> Self {
        let stderr = lines.into_iter().map(|l| format!("error: {l}\n")).collect();
        Outcome { code: 1, stdout: String::new(), stderr }
    }
}

/// Runs one analysis. `argv[0]` is the program name.
///
/// Exit 0: analysis done (verdicts may be negative). Exit 1: bad arguments
/// or invalid input. Exit 2: an exhaustive check failed or the oracle
/// disagreed with a verdict.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let (pipeline, common, phi) = match &cli.command {
        Command::Groupoid(a) => (Pipeline::Groupoid, &a.common, a.phi.as_deref()),
        Command::Graph(a) => (Pipeline::Graph, a, None),
        Command::Isg(a) => (Pipeline::Isg, a, None),
    };
    let ring = match parse_ring_descriptor(&common.ring) {
        Ok(r) => r,
        Err(e) => return Outcome::invalid(vec![e.to_string()]),
    };
    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => return Outcome::invalid(vec![format!("cannot read {}: {e}", common.file.display())]),
    };
    let report = match pipeline {
        Pipeline::Groupoid => analyse_groupoid(&common.file, &text, ring, common.verify, phi),
        Pipeline::Graph => analyse_graph(&common.file, &text, ring, common.verify),
        Pipeline::Isg => analyse_isg(&common.file, &text, ring, common.verify),
    };
    match report {
        Ok(rep) => {
            let format = match common.format {
                FormatArg::Text => Format::Text,
                FormatArg::Machine => Format::Machine,
            };
            let code = if rep.verification_failed() { 2 } else { 0 };
            Outcome { code, stdout: rep.render(format), stderr: String::new() }
        }
        Err(lines) => Outcome::invalid(lines),
    }
}

fn plural(n: usize, word: &str) -> String {
    match (n, word) {
        (1, _) => format!("{n} {word}"),
        (_, "vertex") => format!("{n} vertices"),
        _ => format!("{n} {word}s"),
    }
}

fn compare(verdict: bool, result: Result<RadicalReport, OracleError>) -> OracleStatus {
    match result {
        Ok(rep) if rep.semisimple == verdict => {
            OracleStatus::Agrees { semisimple: rep.semisimple, witness: rep.witness }
        }
        Ok(rep) => OracleStatus::Disagrees { verdict, oracle: rep.semisimple, witness: rep.witness },
        Err(e @ OracleError::Budget { .. }) => OracleStatus::Skipped(e.to_string()),
        Err(e @ OracleError::NotAField(_)) => OracleStatus::NotApplicable(e.to_string()),
    }
}

fn not_run() -> OracleStatus {
    OracleStatus::Skipped("pass --verify".into())
}

fn groupoid_diagnostics(e: GroupoidError) -> Vec<String> {
    match e {
        GroupoidError::Invalid(vs) => {
            let mut out = vec![format!("groupoid axioms fail ({})", plural(vs.len(), "violation"))];
            out.extend(vs.iter().map(ToString::to_string));
            out
        }
        other => vec![other.to_string()],
    }
}

fn analyse_groupoid(
    path: &Path,
    text: &str,
    ring: RingDescriptor,
    verify: bool,
    phi: Option<&str>,
) -> Result<AnalysisReport, Vec<String>> {
    let g = parse_groupoid(text).map_err(groupoid_diagnostics)?;
    g.ensure_valid().map_err(groupoid_diagnostics)?;
    let g = Arc::new(g);
    let dec = decompose(g.clone(), ring.clone()).map_err(|e| vec![e.to_string()])?;
    let verdict = verdicts(dec.structured(), &ring);
    let summary = format!(
        "{}, {}, {}",
        plural(g.object_count(), "object"),
        plural(g.arrow_count(), "arrow"),
        plural(dec.frames().len(), "orbit")
    );
    let findings = dec
        .frames()
        .iter()
        .zip(dec.isotropy())
        .map(|(o, iso)| {
            let names: Vec<&str> = o.members.iter().map(|&m| g.object_name(m)).collect();
            format!(
                "orbit {{{}}}: basepoint {}, isotropy {} of order {}",
                names.join(", "),
                g.object_name(o.basepoint),
                iso.table.class_name(),
                iso.order()
            )
        })
        .collect();
    let phi = match phi {
        Some(lit) => {
            let x = AlgebraElement::parse(g.clone(), ring.clone(), lit).map_err(|e| vec![e.to_string()])?;
            let m = dec.phi(&x).map_err(|e: AlgebraError| vec![e.to_string()])?;
            Some(format!("{x} |-> {m}"))
        }
        None => None,
    };
    let (verification, pairs, oracle) = if verify {
        let rep = dec.verify();
        let pairs = rep.check("multiplicative").map(|c| (c.passed, c.total));
        let oracle = compare(verdict.semisimple, radical_oracle(&g, &ring));
        (Some(rep), pairs, oracle)
    } else {
        (None, None, not_run())
    };
    Ok(AnalysisReport {
        pipeline: Pipeline::Groupoid,
        source: path.display().to_string(),
        ring,
        summary,
        verdict,
        findings,
        verification,
        pairs,
        pairs_label: "basis pairs",
        oracle,
        phi,
    })
}

fn analyse_graph(path: &Path, text: &str, ring: RingDescriptor, verify: bool) -> Result<AnalysisReport, Vec<String>> {
    let g = parse_graph(text).map_err(|e| vec![e.to_string()])?;
    let ne = g.condition_ne();
    let summary = format!(
        "{}, {}, {}",
        plural(g.vertex_count(), "vertex"),
        plural(g.edges().len(), "edge"),
        plural(ne.cycles.len(), "cycle")
    );
    let verdict = leavitt_verdicts(&g, &ring);
    let mut findings = Vec::new();
    let no_oracle = || OracleStatus::NotApplicable("no radical oracle for graph algebras".into());
    if let Some(w) = &ne.witness {
        // No finite decomposition, so nothing to verify.
        findings.push(format!("condition (NE) fails (witness: {w})"));
        return Ok(AnalysisReport {
            pipeline: Pipeline::Graph,
            source: path.display().to_string(),
            ring,
            summary,
            verdict,
            findings,
            verification: None,
            pairs: None,
            pairs_label: "relation instances",
            oracle: if verify { no_oracle() } else { not_run() },
            phi: None,
        });
    }
    let gg = GraphGroupoid::new(&g).map_err(|e| vec![e.to_string()])?;
    for o in gg.orbits() {
        let (what, iso) = match o.kind {
            OrbitKind::Sink(v) => (format!("sink {}", g.vertex_name(v)), "trivial"),
            OrbitKind::Cycle(c) => (format!("cycle {}", gg.cycles()[c].render(&g)), "Z"),
        };
        let paths: Vec<String> = o.members.iter().map(|p| gg.render(p)).collect();
        findings.push(format!("orbit of {what}: boundary paths {}; isotropy {iso}", paths.join(", ")));
    }
    let (verification, pairs, oracle) = if verify {
        let mut rep = verify_leavitt_relations(&g, &ring).map_err(|e| vec![e.to_string()])?;
        let pairs = rep.checks.iter().fold((0, 0), |(p, t), c| (p + c.passed, t + c.total));

        let mut consistent = Check::new("graph verdicts match groupoid verdicts");
        let chain = verdicts(&gg.structured(), &ring);
        consistent.record(
            (chain.noetherian, chain.artinian, chain.semisimple)
                == (verdict.noetherian, verdict.artinian, verdict.semisimple),
            || {
                format!(
                    "graph ({}, {}, {}) vs groupoid ({}, {}, {})",
                    verdict.noetherian,
                    verdict.artinian,
                    verdict.semisimple,
                    chain.noetherian,
                    chain.artinian,
                    chain.semisimple
                )
            },
        );
        consistent.record(chain.shape == verdict.shape, || "decomposition shapes differ".into());
        rep.push(consistent);

        let mut generated = Check::new("generator images generate the blocks");
        let cov = generated_dimension(&g, LEAVITT_WINDOW).map_err(|e| vec![e.to_string()])?;
        let ok = match cov.block_dimension {
            Some(d) => cov.dimension == d,
            None => cov.spans_window && cov.generator_attained,
        };
        generated.record(ok, || cov.to_string());
        rep.push(generated);
        (Some(rep), Some(pairs), no_oracle())
    } else {
        (None, None, not_run())
    };
    Ok(AnalysisReport {
        pipeline: Pipeline::Graph,
        source: path.display().to_string(),
        ring,
        summary,
        verdict,
        findings,
        verification,
        pairs,
        pairs_label: "relation instances",
        oracle,
        phi: None,
    })
}

/// Structure constants of `RS` in the basis `S`.
fn semigroup_structure_constants(s: &InverseSemigroup, r: &RingDescriptor) -> FiniteAlgebra {
    let n = s.len();
    let products = (0..n).map(|a| (0..n).map(|b| vec![(s.mul(a, b), r.one())]).collect()).collect();
    FiniteAlgebra { ring: r.clone(), labels: s.elements().to_vec(), products }
}

fn analyse_isg(path: &Path, text: &str, ring: RingDescriptor, verify: bool) -> Result<AnalysisReport, Vec<String>> {
    let s = parse_isg(text).map_err(|e| vec![e.to_string()])?;
    let verdict = isg_verdicts(&s, &ring).map_err(|e| vec![e.to_string()])?;
    let es = s.idempotents();
    let summary = format!("{}, {}", plural(s.len(), "element"), plural(es.len(), "idempotent"));
    let mut findings = Vec::new();
    let names: Vec<&str> = es.iter().map(|&e| s.name(e)).collect();
    findings.push(format!("idempotents: {}", names.join(" ")));
    for (e, m) in s.maximal_subgroups() {
        findings.push(format!(
            "maximal subgroup at {}: {} of order {}",
            s.name(e),
            m.table.class_name(),
            m.elements.len()
        ));
    }
    let (verification, pairs, oracle) = if verify {
        let iso = semigroup_algebra_iso(&s, &ring).map_err(|e| vec![e.to_string()])?;
        let mut rep: VerificationReport = iso.report;
        let pairs = rep.check("multiplicative").map(|c| (c.passed, c.total));
        let oracle = compare(verdict.semisimple, algebra_radical(&semigroup_structure_constants(&s, &ring)));
        let violations = s.semilattice_violations();
        let mut lattice = Check::new("idempotents form a semilattice");
        if violations.is_empty() {
            lattice.record(true, String::new);
        }
        for v in violations {
            lattice.record(false, || v);
        }
        rep.push(lattice);
        (Some(rep), pairs, oracle)
    } else {
        (None, None, not_run())
    };
    Ok(AnalysisReport {
        pipeline: Pipeline::Isg,
        source: path.display().to_string(),
        ring,
        summary,
        verdict,
        findings,
        verification,
        pairs,
        pairs_label: "basis pairs",
        oracle,
        phi: None,
    })
}
