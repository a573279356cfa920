//! Analysis reports and their text and `key=value` renderings.

use std::fmt::Write as _;

use crate::rings::{BlockShape, RingDescriptor};
use crate::verdict::{Property, Verdict};
use crate::verify::VerificationReport;

mod cli;

pub use cli::{run, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    Groupoid,
    Graph,
    Isg,
}

impl Pipeline {
    pub fn name(&self) -> &'static str {
        match self {
            Pipeline::Groupoid => "groupoid",
            Pipeline::Graph => "graph",
            Pipeline::Isg => "isg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// Outcome of comparing the semisimple verdict with the radical oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleStatus {
    Agrees { semisimple: bool, witness: Option<String> },
    Disagrees { verdict: bool, oracle: bool, witness: Option<String> },
    Skipped(String),
    NotApplicable(String),
}

impl OracleStatus {
    fn key(&self) -> &'static str {
        match self {
            OracleStatus::Agrees { .. } => "true",
            OracleStatus::Disagrees { .. } => "false",
            OracleStatus::Skipped(_) => "skipped",
            OracleStatus::NotApplicable(_) => "n/a",
        }
    }

    fn describe(&self) -> String {
        match self {
            OracleStatus::Agrees { semisimple: true, .. } => "agrees: radical is zero".into(),
            OracleStatus::Agrees { witness, .. } => {
                format!("agrees: radical witness found ({})", witness.as_deref().unwrap_or("?"))
            }
            OracleStatus::Disagrees { verdict, oracle, witness } => format!(
                "DISAGREES: verdict semisimple={verdict}, oracle semisimple={oracle}{}",
                witness.as_ref().map(|w| format!(", witness {w}")).unwrap_or_default()
            ),
            OracleStatus::Skipped(why) => format!("skipped ({why})"),
            OracleStatus::NotApplicable(why) => format!("not applicable ({why})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub pipeline: Pipeline,
    pub source: String,
    pub ring: RingDescriptor,
    /// One line describing the parsed input.
    pub summary: String,
    pub verdict: Verdict,
    /// Structural facts worth reporting: orbits, (NE) witnesses, subgroups.
    pub findings: Vec<String>,
    pub verification: Option<VerificationReport>,
    /// `(passed, total)` for the headline exhaustive check.
    pub pairs: Option<(usize, usize)>,
    /// What `pairs` counts, e.g. "basis pairs".
    pub pairs_label: &'static str,
    pub oracle: OracleStatus,
    pub phi: Option<String>,
}

/// `Q x M_2(Q) x Q[C_2]`: like the block shape but without `M_1(...)`.
pub fn compact_shape(shape: &BlockShape) -> String {
    shape
        .blocks
        .iter()
        .map(|(n, g)| {
            let entry = BlockShape::entry_ring(&shape.ring, g);
            if *n == 1 {
                entry
            } else {
                format!("M_{n}({entry})")
            }
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

const PROPERTIES: [Property; 3] = [Property::Noetherian, Property::Artinian, Property::Semisimple];

impl AnalysisReport {
    /// A failed exhaustive check or an oracle disagreement.
    pub fn verification_failed(&self) -> bool {
        self.verification.as_ref().is_some_and(|v| !v.all_passed())
            || matches!(self.oracle, OracleStatus::Disagrees { .. })
    }

    fn verified_pairs(&self) -> String {
        match self.pairs {
            Some((p, t)) => format!("{p}/{t}"),
            None => "skipped".into(),
        }
    }

    fn cites(&self, p: Property) -> String {
        self.verdict.citations(p).iter().map(|c| c.tag()).collect::<Vec<_>>().join(",")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Machine => self.render_machine(),
        }
    }

    fn render_machine(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: &str| {
            let _ = writeln!(s, "{k}={v}");
        };
        kv("pipeline", self.pipeline.name());
        kv("ring", &self.ring.to_string());
        kv("input", &self.summary);
        for p in PROPERTIES {
            kv(&p.to_string(), &self.verdict.get(p).to_string());
            kv(&format!("{p}_cite"), &self.cites(p));
            for j in self.verdict.reasons(p) {
                kv(&format!("{p}_reason"), &j.detail);
            }
        }
        kv("shape", &self.verdict.shape.as_ref().map_or("none".into(), ToString::to_string));
        kv("verified_pairs", &self.verified_pairs());
        kv("oracle_agreement", self.oracle.key());
        if let Some(v) = &self.verification {
            for c in &v.checks {
                kv("check", &c.to_string());
            }
        }
        for f in &self.findings {
            kv("finding", f);
        }
        if let Some(v) = &self.verification {
            for w in v.witnesses() {
                kv("witness", &w);
            }
        }
        match &self.oracle {
            OracleStatus::Agrees { witness: Some(w), .. } | OracleStatus::Disagrees { witness: Some(w), .. } => {
                kv("radical_witness", w)
            }
            _ => {}
        }
        if let Some(p) = &self.phi {
            kv("phi", p);
        }
        s
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} over {}", self.pipeline.name(), self.source, self.ring);
        let _ = writeln!(s, "input: {}", self.summary);
        match &self.verdict.shape {
            Some(shape) => {
                let _ = writeln!(s, "decomposition: {}", compact_shape(shape));
            }
            None => {
                let _ = writeln!(s, "decomposition: none (not a finite product of matrix algebras)");
            }
        }
        for f in &self.findings {
            let _ = writeln!(s, "{f}");
        }
        for p in PROPERTIES {
            let tags: Vec<String> = self.verdict.citations(p).iter().map(ToString::to_string).collect();
            let word = if self.verdict.get(p) { "yes" } else { "no" };
            let _ = writeln!(s, "{p}: {word} {}", tags.join(" "));
            for j in self.verdict.reasons(p) {
                let _ = writeln!(s, "  - {}", j.detail);
            }
        }
        match &self.verification {
            Some(v) => {
                let _ = writeln!(s, "verification: {} {} verified", self.verified_pairs(), self.pairs_label);
                for c in &v.checks {
                    let mark = if c.ok() { "ok" } else { "FAILED" };
                    let _ = writeln!(s, "  {c} {mark}");
                    for w in &c.witnesses {
                        let _ = writeln!(s, "    witness: {w}");
                    }
                }
            }
            None => {
                let _ = writeln!(s, "verification: skipped (pass --verify)");
            }
        }
        let _ = writeln!(s, "radical oracle: {}", self.oracle.describe());
        if let Some(p) = &self.phi {
            let _ = writeln!(s, "phi: {p}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groupoid::FiniteGroupoid;
    use crate::rings::{GroupTable, IsotropyDescriptor};
    use crate::verdict::verdicts;
    use crate::verify::Check;

    fn report(pairs: (usize, usize)) -> AnalysisReport {
        let g = FiniteGroupoid::pair(2).product(&FiniteGroupoid::from_group(&GroupTable::cyclic(2), "x"));
        let r = RingDescriptor::Rationals;
        let mut mult = Check::new("multiplicative");
        for i in 0..pairs.1 {
            mult.record(i < pairs.0, || format!("pair #{i}"));
        }
        let mut v = VerificationReport::default();
        v.push(mult);
        AnalysisReport {
            pipeline: Pipeline::Groupoid,
            source: "x.gpd".into(),
            ring: r.clone(),
            summary: "test".into(),
            verdict: verdicts(&g.structured().unwrap(), &r),
            findings: vec![],
            verification: Some(v),
            pairs: Some(pairs),
            pairs_label: "basis pairs",
            oracle: OracleStatus::NotApplicable("test".into()),
            phi: None,
        }
    }

    #[test]
    fn failed_verification_is_counted() {
        let rep = report((63, 64));
        let m = rep.render(Format::Machine);
        assert!(m.contains("verified_pairs=63/64\n"));
        assert!(m.contains("witness=multiplicative: pair #63\n"));
        assert!(rep.verification_failed());
        assert!(rep.render(Format::Text).contains("multiplicative: 63/64 FAILED"));
        assert!(!report((64, 64)).verification_failed());
    }

    #[test]
    fn machine_keys_in_order() {
        let m = report((64, 64)).render(Format::Machine);
        let keys: Vec<&str> = m.lines().map(|l| l.split_once('=').unwrap().0).collect();
        let pos = |k: &str| keys.iter().position(|x| *x == k).unwrap();
        assert!(pos("noetherian") < pos("artinian") && pos("artinian") < pos("semisimple"));
        assert!(pos("shape") < pos("verified_pairs") && pos("verified_pairs") < pos("oracle_agreement"));
        assert!(m.contains("semisimple=true\n") && m.contains("shape=M_2(Q[C_2])\n"));
    }

    #[test]
    fn compact_shapes_drop_m1() {
        let c2 = Arc::new(IsotropyDescriptor::Finite(GroupTable::cyclic(2)));
        let one = Arc::new(IsotropyDescriptor::Finite(GroupTable::trivial()));
        let shape = BlockShape::new(RingDescriptor::Rationals, vec![(1, one.clone()), (2, one), (1, c2)]);
        assert_eq!(shape.to_string(), "M_1(Q) x M_2(Q) x M_1(Q[C_2])");
        assert_eq!(compact_shape(&shape), "Q x M_2(Q) x Q[C_2]");
    }
}
