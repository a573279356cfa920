//! Finite inverse semigroups given by multiplication tables.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::groupoid::GroupoidError;
use crate::rings::GroupTable;
use crate::text::{content_lines, split_header, valid_symbol, ParseError};

mod algebra;

pub use algebra::{
    isg_verdicts, semigroup_algebra_iso, MaximalSubgroup, SemigroupIso, UnderlyingGroupoid, MAX_ISO_ELEMENTS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not associative: ({a}{b}){c} = {left} but {a}({b}{c}) = {right}")]
    NotAssociative { a: String, b: String, c: String, left: String, right: String },
    #[error("not an inverse semigroup: {element} has {} pseudo-inverses{}", .candidates.len(), render_candidates(.candidates))]
    PseudoInverse { element: String, candidates: Vec<String> },
    #[error("underlying groupoid construction failed: {0}")]
    Groupoid(#[from] GroupoidError),
    #[error("exhaustive check limited to {limit} elements, got {size}")]
    TooLarge { size: usize, limit: usize },
}

fn render_candidates(c: &[String]) -> String {
    if c.is_empty() {
        String::new()
    } else {
        format!(" ({})", c.join(", "))
    }
}

/// A validated finite inverse semigroup: associative, and every element
/// `s` has exactly one `s*` with `ss*s = s` and `s*ss* = s*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    star: Vec<usize>,
}

impl InverseSemigroup {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        let n = elements.len();
        assert!(table.len() == n && table.iter().all(|row| row.len() == n && row.iter().all(|&x| x < n)));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (left, right) = (table[table[a][b]][c], table[a][table[b][c]]);
                    if left != right {
                        let name = |i: usize| elements[i].clone();
                        return Err(SemigroupError::NotAssociative {
                            a: name(a),
                            b: name(b),
                            c: name(c),
                            left: name(left),
                            right: name(right),
                        });
                    }
                }
            }
        }
        let mut star = Vec::with_capacity(n);
        for s in 0..n {
            let candidates: Vec<usize> =
                (0..n).filter(|&x| table[table[s][x]][s] == s && table[table[x][s]][x] == x).collect();
            if candidates.len() != 1 {
                return Err(SemigroupError::PseudoInverse {
                    element: elements[s].clone(),
                    candidates: candidates.iter().map(|&c| elements[c].clone()).collect(),
                });
            }
            star.push(candidates[0]);
        }
        Ok(InverseSemigroup { elements, table, star })
    }

    /// A group viewed as an inverse semigroup.
    pub fn from_group(g: &GroupTable) -> Self {
        let table = (0..g.order()).map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect()).collect();
        InverseSemigroup::new(g.labels().to_vec(), table).expect("groups are inverse semigroups")
    }

    /// The chain `0 < 1 < ... < n-1` under `min`.
    pub fn chain(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        InverseSemigroup::new(elements, table).expect("semilattices are inverse semigroups")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, s: usize) -> &str {
        &self.elements[s]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn star(&self, s: usize) -> usize {
        self.star[s]
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.table[s][s] == s
    }

    /// `E(S)` in element order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.is_idempotent(s)).collect()
    }

    /// Natural partial order by the closed form `t = (tt*)s`.
    pub fn leq(&self, t: usize, s: usize) -> bool {
        self.mul(self.mul(t, self.star(t)), s) == t
    }

    /// Natural partial order by definition: `t = es` for some idempotent `e`.
    pub fn leq_by_search(&self, t: usize, s: usize) -> bool {
        self.idempotents().into_iter().any(|e| self.mul(e, s) == t)
    }

    /// Checks that idempotents commute and that `≤` restricted to them is
    /// `e ≤ f iff ef = e`, a partial order with meets `ef`.
    pub fn semilattice_violations(&self) -> Vec<String> {
        let es = self.idempotents();
        let mut out = Vec::new();
        for &e in &es {
            for &f in &es {
                if self.mul(e, f) != self.mul(f, e) {
                    out.push(format!("idempotents {} and {} do not commute", self.name(e), self.name(f)));
                }
                if self.leq(e, f) != (self.mul(e, f) == e) {
                    out.push(format!("order on {} and {} is not the meet order", self.name(e), self.name(f)));
                }
                let m = self.mul(e, f);
                let is_meet = self.leq(m, e)
                    && self.leq(m, f)
                    && es.iter().all(|&g| !(self.leq(g, e) && self.leq(g, f)) || self.leq(g, m));
                if !is_meet {
                    out.push(format!("{}{} is not the meet", self.name(e), self.name(f)));
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("elements: {}\n", self.elements.join(" "));
        for (a, row) in self.table.iter().enumerate() {
            let names: Vec<&str> = row.iter().map(|&x| self.elements[x].as_str()).collect();
            s.push_str(&format!("row {}: {}\n", self.elements[a], names.join(" ")));
        }
        s
    }
}

/// Parses `elements: a b c` followed by one `row a: ...` line per element,
/// listing `a·x` for `x` in element order.
pub fn parse_isg(text: &str) -> Result<InverseSemigroup, SemigroupError> {
    let mut elements: Option<(Vec<String>, BTreeMap<String, usize>)> = None;
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut last = 0;
    for (line, content) in content_lines(text) {
        last = line;
        if let Some(rest) = split_header(content, "elements") {
            if elements.is_some() {
                return Err(ParseError::new(line, "duplicate elements line").into());
            }
            let mut names = Vec::new();
            let mut index = BTreeMap::new();
            for name in rest.split_whitespace() {
                if !valid_symbol(name) {
                    return Err(ParseError::new(line, format!("invalid element name {name:?}")).into());
                }
                if index.insert(name.to_string(), names.len()).is_some() {
                    return Err(ParseError::new(line, format!("duplicate element {name}")).into());
                }
                names.push(name.to_string());
            }
            if names.is_empty() {
                return Err(ParseError::new(line, "an inverse semigroup needs at least one element").into());
            }
            elements = Some((names, index));
        } else if let Some(rest) = content.strip_prefix("row ") {
            let Some((names, index)) = &elements else {
                return Err(ParseError::new(line, "row before the elements line").into());
            };
            let (head, products) =
                rest.split_once(':').ok_or_else(|| ParseError::new(line, "expected `row NAME: PRODUCTS`"))?;
            let lookup = |name: &str| {
                index.get(name).copied().ok_or_else(|| ParseError::new(line, format!("unknown element {name:?}")))
            };
            let a = lookup(head.trim())?;
            let row = products.split_whitespace().map(lookup).collect::<Result<Vec<_>, _>>()?;
            if row.len() != names.len() {
                return Err(ParseError::new(
                    line,
                    format!("row {} has {} entries, expected {}", names[a], row.len(), names.len()),
                )
                .into());
            }
            if rows.insert(a, row).is_some() {
                return Err(ParseError::new(line, format!("duplicate row for {}", names[a])).into());
            }
        } else {
            return Err(ParseError::new(line, format!("unrecognized line {content:?}")).into());
        }
    }
    let (names, _) = elements.ok_or_else(|| ParseError::new(last.max(1), "missing elements line"))?;
    if let Some(missing) = (0..names.len()).find(|a| !rows.contains_key(a)) {
        return Err(ParseError::new(last.max(1), format!("missing row for {}", names[missing])).into());
    }
    InverseSemigroup::new(names, rows.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_table_is_valid() {
        let s = parse_isg("elements: e g\nrow e: e g\nrow g: g e\n").unwrap();
        assert_eq!(s.star(1), 1);
        assert_eq!(s.idempotents(), vec![0]);
        assert_eq!(s, InverseSemigroup::from_group(&GroupTable::cyclic(2)));
    }

    #[test]
    fn semilattice_is_valid() {
        let s = parse_isg("elements: 1 0\nrow 1: 1 0\nrow 0: 0 0\n").unwrap();
        assert_eq!(s.idempotents(), vec![0, 1]);
        assert!((0..2).all(|x| s.star(x) == x));
        assert!(s.leq(1, 0) && !s.leq(0, 1));
        assert!(s.semilattice_violations().is_empty());
    }

    #[test]
    fn left_zero_is_rejected() {
        let err = parse_isg("elements: a b\nrow a: a a\nrow b: b b\n").unwrap_err();
        assert_eq!(
            err,
            SemigroupError::PseudoInverse { element: "a".into(), candidates: vec!["a".into(), "b".into()] }
        );
        assert_eq!(err.to_string(), "not an inverse semigroup: a has 2 pseudo-inverses (a, b)");
    }

    #[test]
    fn non_associative_is_rejected() {
        // a·a = b, b·a = a, everything else b: (aa)a = a but a(aa) = b
        let err = parse_isg("elements: a b\nrow a: b b\nrow b: a b\n").unwrap_err();
        assert!(matches!(err, SemigroupError::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn parse_errors() {
        let err = parse_isg("elements: a b\nrow a: a\nrow b: b b\n").unwrap_err();
        assert!(matches!(err, SemigroupError::Parse(ParseError { line: 2, .. })), "{err}");
        assert!(parse_isg("elements: a\nrow b: a\n").is_err());
        assert!(parse_isg("elements: a b\nrow a: a b\n").is_err());
        assert!(parse_isg("row a: a\n").is_err());
    }

    #[test]
    fn chain_orders() {
        let s = InverseSemigroup::chain(4);
        for t in 0..4 {
            for u in 0..4 {
                assert_eq!(s.leq(t, u), t <= u);
                assert_eq!(s.leq(t, u), s.leq_by_search(t, u));
            }
        }
        assert_eq!(parse_isg(&s.to_text()).unwrap(), s);
    }
}
