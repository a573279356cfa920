use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{IsotropyDescriptor, RingDescriptor, RingElement, RingError};

/// Finitely supported element of a group ring `RG`.
///
/// Keys are table indices for a finite group and exponents for the infinite
/// cyclic group, so that `R[Z]` is literally `R[x, x^-1]`.
#[derive(Debug, Clone)]
pub struct GroupAlgebraElement {
    group: Arc<IsotropyDescriptor>,
    ring: RingDescriptor,
    coeffs: BTreeMap<i64, RingElement>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ring == other.ring && same_group(&self.group, &other.group)
    }
}

impl Eq for GroupAlgebraElement {}

fn same_group(a: &Arc<IsotropyDescriptor>, b: &Arc<IsotropyDescriptor>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GroupAlgebraElement {
    pub fn zero(group: Arc<IsotropyDescriptor>, ring: RingDescriptor) -> Self {
        GroupAlgebraElement { group, ring, coeffs: BTreeMap::new() }
    }

    pub fn one(group: Arc<IsotropyDescriptor>, ring: RingDescriptor) -> Self {
        let e = group.identity();
        Self::basis(group, ring, e)
    }

    /// The indicator `δ_g` of one group element.
    pub fn basis(group: Arc<IsotropyDescriptor>, ring: RingDescriptor, g: i64) -> Self {
        let one = ring.one();
        Self::monomial(group, ring, g, one)
    }

    pub fn monomial(group: Arc<IsotropyDescriptor>, ring: RingDescriptor, g: i64, c: RingElement) -> Self {
        let mut out = Self::zero(group, ring);
        out.add_term(g, c);
        out
    }

    pub fn group(&self) -> &Arc<IsotropyDescriptor> {
        &self.group
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn coefficients(&self) -> &BTreeMap<i64, RingElement> {
        &self.coeffs
    }

    pub fn coefficient(&self, g: i64) -> RingElement {
        self.coeffs.get(&g).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c·g` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, g: i64, c: RingElement) {
        let sum = match self.coeffs.get(&g) {
            Some(prev) => self.ring.add(prev, &c),
            None => c,
        };
        if self.ring.is_zero(&sum) {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, sum);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), RingError> {
        self.ring.expect_same(&other.ring)?;
        if !same_group(&self.group, &other.group) {
            return Err(RingError::DescriptorMismatch {
                expected: format!("{}[{}]", self.ring, self.group),
                found: format!("{}[{}]", other.ring, other.group),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (g, c) in &other.coeffs {
            out.add_term(*g, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(g, c)| (*g, self.ring.neg(c))).collect();
        GroupAlgebraElement { group: self.group.clone(), ring: self.ring.clone(), coeffs }
    }

    pub fn scale(&self, c: &RingElement) -> Result<Self, RingError> {
        let mut out = Self::zero(self.group.clone(), self.ring.clone());
        for (g, a) in &self.coeffs {
            out.add_term(*g, self.ring.mul(c, a)?);
        }
        Ok(out)
    }

    fn group_product(&self, g: i64, h: i64) -> Result<i64, RingError> {
        match &*self.group {
            IsotropyDescriptor::Finite(t) => Ok(t.mul(g as usize, h as usize) as i64),
            IsotropyDescriptor::Integers => g.checked_add(h).ok_or(RingError::ExponentOverflow(g, h)),
        }
    }

    /// Convolution `(a·b)(g) = Σ_{hk=g} a(h) b(k)`.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.group.clone(), self.ring.clone());
        for (h, a) in &self.coeffs {
            for (k, b) in &other.coeffs {
                out.add_term(self.group_product(*h, *k)?, self.ring.mul(a, b)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let identity = self.group.identity();
        for (i, (g, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let coeff = self.ring.render(c);
            if *g == identity {
                write!(f, "{coeff}")?;
            } else if self.ring.is_one(c) {
                write!(f, "{}", self.group.label(*g))?;
            } else {
                write!(f, "({coeff})*{}", self.group.label(*g))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::GroupTable;

    fn z2() -> Arc<IsotropyDescriptor> {
        Arc::new(IsotropyDescriptor::Finite(GroupTable::cyclic(2)))
    }

    #[test]
    fn basis_elements_multiply_like_the_group() {
        let s3 = Arc::new(IsotropyDescriptor::Finite(GroupTable::symmetric(3)));
        let r = RingDescriptor::Integers;
        for g in 0..6 {
            for h in 0..6 {
                let p = GroupAlgebraElement::basis(s3.clone(), r.clone(), g)
                    .mul(&GroupAlgebraElement::basis(s3.clone(), r.clone(), h))
                    .unwrap();
                let IsotropyDescriptor::Finite(t) = &*s3 else { unreachable!() };
                assert_eq!(p, GroupAlgebraElement::basis(s3.clone(), r.clone(), t.mul(g as usize, h as usize) as i64));
            }
        }
    }

    #[test]
    fn laurent_monomials() {
        let zg = Arc::new(IsotropyDescriptor::Integers);
        let r = RingDescriptor::Rationals;
        let x = GroupAlgebraElement::basis(zg.clone(), r.clone(), 1);
        let xi = GroupAlgebraElement::basis(zg.clone(), r.clone(), -1);
        assert_eq!(x.mul(&xi).unwrap(), GroupAlgebraElement::one(zg, r));
    }

    #[test]
    fn one_plus_g_squares_to_zero_in_characteristic_two() {
        // (1+g)^2 = 1 + 2g + g^2 = 2 + 2g, which vanishes mod 2
        let r = RingDescriptor::GaloisField(2);
        let a = GroupAlgebraElement::one(z2(), r.clone()).add(&GroupAlgebraElement::basis(z2(), r.clone(), 1)).unwrap();
        assert!(!a.is_zero());
        assert!(a.mul(&a).unwrap().is_zero());
        // over Q the same element is 2(1+g), not nilpotent
        let q = RingDescriptor::Rationals;
        let b = GroupAlgebraElement::one(z2(), q.clone()).add(&GroupAlgebraElement::basis(z2(), q.clone(), 1)).unwrap();
        assert_eq!(b.mul(&b).unwrap(), b.scale(&q.from_i64(2)).unwrap());
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let r = RingDescriptor::Rationals;
        let a = GroupAlgebraElement::one(z2(), r.clone());
        let b = GroupAlgebraElement::one(Arc::new(IsotropyDescriptor::Integers), r);
        assert!(a.mul(&b).is_err());
        let c = GroupAlgebraElement::one(z2(), RingDescriptor::Integers);
        assert!(a.add(&c).is_err());
    }
}
