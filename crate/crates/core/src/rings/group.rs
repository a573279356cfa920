use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty group table")]
    Empty,
    #[error("table row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("product {a}*{b} = {value} is out of range")]
    OutOfRange { a: usize, b: usize, value: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
}

/// A finite group given by its full multiplication table, with the group
/// axioms checked on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl GroupTable {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::Ragged { row, len: entries.len(), expected: n });
            }
            if let Some((b, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange { a: row, b, value });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity =
            (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)).ok_or(GroupError::NoIdentity)?;
        let inverses = (0..n)
            .map(|a| {
                (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity).ok_or(GroupError::NoInverse(a))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let labels = if labels.len() == n { labels } else { (0..n).map(|i| format!("g{i}")).collect() };
        Ok(GroupTable { labels, table, identity, inverses })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with elements `0..n` labelled `g^k`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(labels, table).expect("cyclic group table")
    }

    /// The symmetric group on `n` points, elements in lexicographic order of
    /// their one-line notation (identity first).
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a*b)(i) = a(b(i))
                        let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("")))
            .collect();
        Self::new(labels, table).expect("symmetric group table")
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (n, m) = (a.order(), b.order());
        let labels = (0..n * m).map(|k| format!("({},{})", a.label(k / m), b.label(k % m))).collect();
        let table =
            (0..n * m).map(|x| (0..n * m).map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).collect()).collect();
        Self::new(labels, table).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|a| self.element_order(a) == self.order())
    }

    /// Short isomorphism-class name for small groups, used in shape strings.
    pub fn class_name(&self) -> String {
        let n = self.order();
        if self.is_cyclic() {
            format!("C_{n}")
        } else if n == 4 {
            "V_4".into()
        } else if n == 6 && !self.is_abelian() {
            "S_3".into()
        } else {
            format!("G_{n}")
        }
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Isotropy group of an orbit: an explicit finite group, or the infinite
/// cyclic group whose group ring is `R[x, x^-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IsotropyDescriptor {
    Finite(GroupTable),
    Integers,
}

impl IsotropyDescriptor {
    pub fn order(&self) -> Option<usize> {
        match self {
            IsotropyDescriptor::Finite(g) => Some(g.order()),
            IsotropyDescriptor::Integers => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }

    /// Index (finite) or exponent (integers) of the identity.
    pub fn identity(&self) -> i64 {
        match self {
            IsotropyDescriptor::Finite(g) => g.identity() as i64,
            IsotropyDescriptor::Integers => 0,
        }
    }

    pub fn label(&self, k: i64) -> String {
        match self {
            IsotropyDescriptor::Finite(g) => g.label(k as usize).to_string(),
            IsotropyDescriptor::Integers => match k {
                0 => "1".into(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            },
        }
    }

    pub fn class_name(&self) -> String {
        match self {
            IsotropyDescriptor::Finite(g) if g.order() == 1 => "1".into(),
            IsotropyDescriptor::Finite(g) => g.class_name(),
            IsotropyDescriptor::Integers => "Z".into(),
        }
    }
}

impl fmt::Display for IsotropyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.class_name())
    }
}
