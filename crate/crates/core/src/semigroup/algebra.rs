//! The underlying groupoid of a finite inverse semigroup and the change of
//! basis `RS ≅ R𝒢(S)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{InverseSemigroup, SemigroupError};
use crate::algebra::{decompose, AlgebraElement, Decomposition};
use crate::groupoid::{FiniteGroupoid, GroupoidBuilder};
use crate::linalg::integer_determinant;
use crate::rings::{GroupTable, RingDescriptor};
use crate::verdict::{verdicts, Verdict};
use crate::verify::{Check, VerificationReport};

pub const MAX_ISO_ELEMENTS: usize = 64;

/// The groupoid with objects `E(S)` and one arrow `s : s*s -> ss*` per
/// element; arrow `i` is element `i`.
#[derive(Debug, Clone)]
pub struct UnderlyingGroupoid {
    pub groupoid: Arc<FiniteGroupoid>,
    /// Idempotent element for each object.
    pub object_elements: Vec<usize>,
}

impl InverseSemigroup {
    pub fn underlying_groupoid(&self) -> Result<UnderlyingGroupoid, SemigroupError> {
        let es = self.idempotents();
        let mut b = GroupoidBuilder::new();
        for &e in &es {
            b.object(self.name(e))?;
        }
        for s in 0..self.len() {
            let dom = self.mul(self.star(s), s);
            let cod = self.mul(s, self.star(s));
            b.arrow(self.name(s), self.name(dom), self.name(cod))?;
        }
        for &e in &es {
            b.identity(self.name(e), self.name(e))?;
        }
        for s in 0..self.len() {
            b.inverse(self.name(s), self.name(self.star(s)))?;
            for t in 0..self.len() {
                if self.mul(self.star(s), s) == self.mul(t, self.star(t)) {
                    b.compose(self.name(s), self.name(t), self.name(self.mul(s, t)))?;
                }
            }
        }
        let g = b.build();
        g.ensure_valid()?;
        Ok(UnderlyingGroupoid { groupoid: Arc::new(g), object_elements: es })
    }

    /// For each idempotent `e`, the unit group of the monoid `eSe`, with `e`
    /// first and the other units in name order.
    pub fn maximal_subgroups(&self) -> BTreeMap<usize, MaximalSubgroup> {
        let mut out = BTreeMap::new();
        for e in self.idempotents() {
            let mut local: Vec<usize> = (0..self.len()).map(|s| self.mul(self.mul(e, s), e)).collect();
            local.sort_unstable();
            local.dedup();
            let mut units: Vec<usize> = local
                .iter()
                .copied()
                .filter(|&u| u != e && local.iter().any(|&v| self.mul(u, v) == e && self.mul(v, u) == e))
                .collect();
            units.sort_by(|&a, &b| self.name(a).cmp(self.name(b)));
            units.insert(0, e);
            let pos = |x: usize| units.iter().position(|&u| u == x).expect("units are closed");
            let table = units.iter().map(|&a| units.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
            let labels = units.iter().map(|&u| self.name(u).to_string()).collect();
            let table = GroupTable::new(labels, table).expect("unit groups are groups");
            out.insert(e, MaximalSubgroup { idempotent: e, elements: units, table });
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalSubgroup {
    pub idempotent: usize,
    pub elements: Vec<usize>,
    pub table: GroupTable,
}

/// The linear map `θ : RS -> R𝒢(S)`, `s ↦ Σ_{t ≤ s} [t]`, with its checks.
#[derive(Debug, Clone)]
pub struct SemigroupIso {
    pub semigroup: InverseSemigroup,
    pub underlying: UnderlyingGroupoid,
    pub ring: RingDescriptor,
    /// `transition[t][s] = 1` iff `t ≤ s`.
    pub transition: Vec<Vec<i64>>,
    pub determinant: BigInt,
    pub decomposition: Decomposition,
    pub report: VerificationReport,
}

impl SemigroupIso {
    pub fn theta(&self, s: usize) -> AlgebraElement {
        let g = &self.underlying.groupoid;
        AlgebraElement::from_coefficients(
            g.clone(),
            self.ring.clone(),
            (0..self.semigroup.len()).filter(|&t| self.transition[t][s] == 1).map(|t| (t, self.ring.one())),
        )
    }
}

/// Builds `θ` and verifies it exhaustively: multiplicative on all `|S|²`
/// basis pairs, both natural-order computations agreeing, unimodular
/// transition matrix, arrow count `|S|`, and `phi ∘ θ` multiplicative into
/// the block decomposition.
pub fn semigroup_algebra_iso(s: &InverseSemigroup, r: &RingDescriptor) -> Result<SemigroupIso, SemigroupError> {
    let n = s.len();
    if n > MAX_ISO_ELEMENTS {
        return Err(SemigroupError::TooLarge { size: n, limit: MAX_ISO_ELEMENTS });
    }
    let underlying = s.underlying_groupoid()?;
    let g = underlying.groupoid.clone();
    let decomposition = decompose(g.clone(), r.clone()).map_err(|e| match e {
        crate::algebra::AlgebraError::Groupoid(ge) => SemigroupError::Groupoid(ge),
        other => unreachable!("decomposing a valid groupoid: {other}"),
    })?;
    let transition: Vec<Vec<i64>> = (0..n).map(|t| (0..n).map(|u| i64::from(s.leq(t, u))).collect()).collect();
    let determinant = integer_determinant(
        &transition.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>(),
    );
    let mut iso = SemigroupIso {
        semigroup: s.clone(),
        underlying,
        ring: r.clone(),
        transition,
        determinant,
        decomposition,
        report: VerificationReport::default(),
    };

    let mut order = Check::new("natural order routes agree");
    for t in 0..n {
        for u in 0..n {
            order.record(s.leq(t, u) == s.leq_by_search(t, u), || format!("{} <= {}", s.name(t), s.name(u)));
        }
    }

    let mut count = Check::new("arrows in bijection with S");
    count.record(g.arrow_count() == n, || format!("{} arrows for {n} elements", g.arrow_count()));
    let card = iso.decomposition.structured().cardinality();
    count.record(card == Some(n), || format!("sum n^2|G| = {card:?}, |S| = {n}"));

    let mut unimodular = Check::new("transition matrix unimodular");
    unimodular.record(iso.determinant.abs() == BigInt::from(1), || format!("determinant {}", iso.determinant));

    let thetas: Vec<AlgebraElement> = (0..n).map(|x| iso.theta(x)).collect();
    let mut mult = Check::new("multiplicative");
    let mut composite = Check::new("composite with decomposition");
    let images: Vec<_> = thetas.iter().map(|t| iso.decomposition.phi(t)).collect();
    for a in 0..n {
        for b in 0..n {
            let ab = s.mul(a, b);
            let ok = thetas[a].convolve(&thetas[b]).is_ok_and(|p| p == thetas[ab]);
            mult.record(ok, || format!("({}, {})", s.name(a), s.name(b)));
            let ok = match (&images[a], &images[b], &images[ab]) {
                (Ok(x), Ok(y), Ok(z)) => x.mul(y).is_ok_and(|p| p == *z),
                _ => false,
            };
            composite.record(ok, || format!("({}, {})", s.name(a), s.name(b)));
        }
    }

    let mut subgroups = Check::new("maximal subgroups are isotropy groups");
    for (e, m) in s.maximal_subgroups() {
        let object = g.object_index(s.name(e)).expect("idempotents are objects");
        let ok = g.isotropy(object).is_ok_and(|iso| iso.elements == m.elements && iso.table == m.table);
        subgroups.record(ok, || format!("at {}", s.name(e)));
    }

    for c in [order, count, unimodular, mult, composite, subgroups] {
        iso.report.push(c);
    }
    Ok(iso)
}

/// Chain-condition verdicts for `RS` via the underlying groupoid.
pub fn isg_verdicts(s: &InverseSemigroup, r: &RingDescriptor) -> Result<Verdict, SemigroupError> {
    let u = s.underlying_groupoid()?;
    Ok(verdicts(&u.groupoid.structured()?, r))
}
