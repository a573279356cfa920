//! Exact coefficient rings.
//!
//! A [`RingDescriptor`] names one of the supported commutative rings and
//! carries the arithmetic for it; [`RingElement`] is the bare exact payload.
//! Containers (group algebra elements, block matrices, groupoid algebra
//! elements) store the descriptor once next to their payloads.
//!
//! Nothing in this module uses floating point.

mod block;
mod group;
mod group_algebra;
mod parse;

pub use block::{Block, BlockMatrix, BlockShape};
pub use group::{GroupError, GroupTable, IsotropyDescriptor};
pub use group_algebra::GroupAlgebraElement;
pub use parse::{parse_ring_descriptor, RingParseError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: expected {expected}, found {found}")]
    DescriptorMismatch { expected: String, found: String },
    #[error("element payload does not belong to {ring}")]
    ForeignElement { ring: String },
    #[error("Laurent exponent overflow in {0} + {1}")]
    ExponentOverflow(i64, i64),
    #[error("block shapes differ: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },
    #[error("{value} is not invertible in {ring}")]
    NotInvertible { value: String, ring: String },
}

/// A supported commutative ring with unit (always nonzero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    GaloisField(u64),
    ModularIntegers(u64),
    Laurent(Box<RingDescriptor>),
    Product(Vec<RingDescriptor>),
}

/// Exact payload of a ring element. Which variant is valid is decided by the
/// owning [`RingDescriptor`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    Integer(BigInt),
    Rational(BigRational),
    /// Residue in `[0, n)`; used by both `GF(p)` and `Z/n`.
    Residue(u64),
    /// Exponent to nonzero coefficient.
    Laurent(BTreeMap<i64, RingElement>),
    Tuple(Vec<RingElement>),
}

/// Decidable structural facts about a descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPredicates {
    pub noetherian: bool,
    pub artinian: bool,
    /// Finite direct product of fields.
    pub field_product: bool,
    /// Characteristics of the field factors (or of the ring, for `Z`), with
    /// `0` standing for characteristic zero. For `Z/n` these are the prime
    /// divisors of `n`.
    pub characteristics: BTreeSet<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `n`, ascending, without multiplicity.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    for p in prime_divisors(n) {
        m /= p;
    }
    // m is n divided by its radical
    m == 1
}

impl RingDescriptor {
    pub fn laurent(base: RingDescriptor) -> Self {
        RingDescriptor::Laurent(Box::new(base))
    }

    pub fn predicates(&self) -> RingPredicates {
        use RingDescriptor::*;
        match self {
            Integers => RingPredicates {
                noetherian: true,
                artinian: false,
                field_product: false,
                characteristics: BTreeSet::from([0]),
            },
            Rationals => RingPredicates {
                noetherian: true,
                artinian: true,
                field_product: true,
                characteristics: BTreeSet::from([0]),
            },
            GaloisField(p) => RingPredicates {
                noetherian: true,
                artinian: true,
                field_product: true,
                characteristics: BTreeSet::from([*p]),
            },
            ModularIntegers(n) => RingPredicates {
                noetherian: true,
                artinian: true,
                field_product: is_squarefree(*n),
                characteristics: prime_divisors(*n).into_iter().collect(),
            },
            Laurent(base) => {
                let b = base.predicates();
                RingPredicates {
                    noetherian: b.noetherian,
                    artinian: false,
                    field_product: false,
                    characteristics: b.characteristics,
                }
            }
            Product(factors) => {
                let mut acc = RingPredicates {
                    noetherian: true,
                    artinian: true,
                    field_product: true,
                    characteristics: BTreeSet::new(),
                };
                for f in factors {
                    let p = f.predicates();
                    acc.noetherian &= p.noetherian;
                    acc.artinian &= p.artinian;
                    acc.field_product &= p.field_product;
                    acc.characteristics.extend(p.characteristics);
                }
                acc
            }
        }
    }

    /// True for `Q` and `GF(p)`.
    pub fn is_field(&self) -> bool {
        matches!(self, RingDescriptor::Rationals | RingDescriptor::GaloisField(_))
    }

    /// Number of elements, if finite and small enough to count in a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            RingDescriptor::GaloisField(n) | RingDescriptor::ModularIntegers(n) => Some(*n),
            RingDescriptor::Product(fs) => {
                fs.iter().try_fold(1u64, |acc, f| f.cardinality().and_then(|c| acc.checked_mul(c)))
            }
            _ => None,
        }
    }

    fn modulus(&self) -> Option<u64> {
        match self {
            RingDescriptor::GaloisField(n) | RingDescriptor::ModularIntegers(n) => Some(*n),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElement {
        match self {
            RingDescriptor::Integers => RingElement::Integer(BigInt::zero()),
            RingDescriptor::Rationals => RingElement::Rational(BigRational::zero()),
            RingDescriptor::GaloisField(_) | RingDescriptor::ModularIntegers(_) => RingElement::Residue(0),
            RingDescriptor::Laurent(_) => RingElement::Laurent(BTreeMap::new()),
            RingDescriptor::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.zero()).collect()),
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_bigint(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the unique ring map `Z -> R`.
    pub fn from_bigint(&self, n: &BigInt) -> RingElement {
        match self {
            RingDescriptor::Integers => RingElement::Integer(n.clone()),
            RingDescriptor::Rationals => RingElement::Rational(BigRational::from_integer(n.clone())),
            RingDescriptor::GaloisField(m) | RingDescriptor::ModularIntegers(m) => {
                let r = n.mod_floor(&BigInt::from(*m));
                RingElement::Residue(r.to_u64().expect("residue fits modulus"))
            }
            RingDescriptor::Laurent(base) => {
                let c = base.from_bigint(n);
                let mut map = BTreeMap::new();
                if !base.is_zero(&c) {
                    map.insert(0, c);
                }
                RingElement::Laurent(map)
            }
            RingDescriptor::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.from_bigint(n)).collect()),
        }
    }

    /// Image of `num/den`; fails when `den` is not a unit.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<RingElement, RingError> {
        if den.is_one() {
            return Ok(self.from_bigint(num));
        }
        if let RingDescriptor::Rationals = self {
            if den.is_zero() {
                return Err(self.not_invertible(&self.from_bigint(den)));
            }
            return Ok(RingElement::Rational(BigRational::new(num.clone(), den.clone())));
        }
        let d = self.from_bigint(den);
        let inv = self.inverse(&d).ok_or_else(|| self.not_invertible(&d))?;
        self.mul(&self.from_bigint(num), &inv)
    }

    fn not_invertible(&self, value: &RingElement) -> RingError {
        RingError::NotInvertible { value: self.render(value), ring: self.to_string() }
    }

    /// Does `x` have the payload shape (and normal form) this ring expects?
    pub fn contains(&self, x: &RingElement) -> bool {
        match (self, x) {
            (RingDescriptor::Integers, RingElement::Integer(_)) => true,
            (RingDescriptor::Rationals, RingElement::Rational(q)) => q.denom().is_positive(),
            (RingDescriptor::GaloisField(m), RingElement::Residue(r))
            | (RingDescriptor::ModularIntegers(m), RingElement::Residue(r)) => r < m,
            (RingDescriptor::Laurent(base), RingElement::Laurent(map)) => {
                map.values().all(|c| base.contains(c) && !base.is_zero(c))
            }
            (RingDescriptor::Product(fs), RingElement::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &RingElement) -> bool {
        match x {
            RingElement::Integer(n) => n.is_zero(),
            RingElement::Rational(q) => q.is_zero(),
            RingElement::Residue(r) => *r == 0,
            RingElement::Laurent(map) => map.is_empty(),
            RingElement::Tuple(xs) => match self {
                RingDescriptor::Product(fs) => fs.iter().zip(xs).all(|(f, x)| f.is_zero(x)),
                _ => false,
            },
        }
    }

    pub fn is_one(&self, x: &RingElement) -> bool {
        *x == self.one()
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self, a, b) {
            (_, RingElement::Integer(x), RingElement::Integer(y)) => RingElement::Integer(x + y),
            (_, RingElement::Rational(x), RingElement::Rational(y)) => RingElement::Rational(x + y),
            (_, RingElement::Residue(x), RingElement::Residue(y)) => {
                let m = self.modulus().expect("residue ring") as u128;
                RingElement::Residue(((*x as u128 + *y as u128) % m) as u64)
            }
            (RingDescriptor::Laurent(base), RingElement::Laurent(x), RingElement::Laurent(y)) => {
                let mut out = x.clone();
                for (e, c) in y {
                    let sum = match out.get(e) {
                        Some(prev) => base.add(prev, c),
                        None => c.clone(),
                    };
                    if base.is_zero(&sum) {
                        out.remove(e);
                    } else {
                        out.insert(*e, sum);
                    }
                }
                RingElement::Laurent(out)
            }
            (RingDescriptor::Product(fs), RingElement::Tuple(x), RingElement::Tuple(y)) => {
                RingElement::Tuple(fs.iter().zip(x.iter().zip(y)).map(|(f, (a, b))| f.add(a, b)).collect())
            }
            _ => panic!("add: payloads {a:?} and {b:?} do not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        match (self, a) {
            (_, RingElement::Integer(x)) => RingElement::Integer(-x),
            (_, RingElement::Rational(x)) => RingElement::Rational(-x),
            (_, RingElement::Residue(x)) => {
                let m = self.modulus().expect("residue ring");
                RingElement::Residue(if *x == 0 { 0 } else { m - x })
            }
            (RingDescriptor::Laurent(base), RingElement::Laurent(map)) => {
                RingElement::Laurent(map.iter().map(|(e, c)| (*e, base.neg(c))).collect())
            }
            (RingDescriptor::Product(fs), RingElement::Tuple(xs)) => {
                RingElement::Tuple(fs.iter().zip(xs).map(|(f, x)| f.neg(x)).collect())
            }
            _ => panic!("neg: payload {a:?} does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    /// Multiplication. Fails only on Laurent exponent overflow.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        Ok(match (self, a, b) {
            (_, RingElement::Integer(x), RingElement::Integer(y)) => RingElement::Integer(x * y),
            (_, RingElement::Rational(x), RingElement::Rational(y)) => RingElement::Rational(x * y),
            (_, RingElement::Residue(x), RingElement::Residue(y)) => {
                let m = self.modulus().expect("residue ring") as u128;
                RingElement::Residue(((*x as u128 * *y as u128) % m) as u64)
            }
            (RingDescriptor::Laurent(base), RingElement::Laurent(x), RingElement::Laurent(y)) => {
                let mut out: BTreeMap<i64, RingElement> = BTreeMap::new();
                for (e1, c1) in x {
                    for (e2, c2) in y {
                        let e = e1.checked_add(*e2).ok_or(RingError::ExponentOverflow(*e1, *e2))?;
                        let term = base.mul(c1, c2)?;
                        let sum = match out.get(&e) {
                            Some(prev) => base.add(prev, &term),
                            None => term,
                        };
                        if base.is_zero(&sum) {
                            out.remove(&e);
                        } else {
                            out.insert(e, sum);
                        }
                    }
                }
                RingElement::Laurent(out)
            }
            (RingDescriptor::Product(fs), RingElement::Tuple(x), RingElement::Tuple(y)) => RingElement::Tuple(
                fs.iter().zip(x.iter().zip(y)).map(|(f, (a, b))| f.mul(a, b)).collect::<Result<_, _>>()?,
            ),
            _ => panic!("mul: payloads {a:?} and {b:?} do not belong to {self}"),
        })
    }

    /// Multiplicative inverse, when one exists.
    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        match (self, a) {
            (RingDescriptor::Integers, RingElement::Integer(x)) => {
                (x.abs().is_one()).then(|| RingElement::Integer(x.clone()))
            }
            (RingDescriptor::Rationals, RingElement::Rational(x)) => {
                (!x.is_zero()).then(|| RingElement::Rational(x.recip()))
            }
            (_, RingElement::Residue(x)) => {
                let m = self.modulus()? as i128;
                let g = (*x as i128).extended_gcd(&m);
                (g.gcd == 1).then(|| RingElement::Residue(g.x.rem_euclid(m) as u64))
            }
            (RingDescriptor::Laurent(base), RingElement::Laurent(map)) => {
                // only monomials with unit coefficient are invertible when the
                // base is a domain; we restrict to that case
                if map.len() != 1 {
                    return None;
                }
                let (e, c) = map.iter().next()?;
                let ci = base.inverse(c)?;
                let ne = e.checked_neg()?;
                Some(RingElement::Laurent(BTreeMap::from([(ne, ci)])))
            }
            (RingDescriptor::Product(fs), RingElement::Tuple(xs)) => {
                fs.iter().zip(xs).map(|(f, x)| f.inverse(x)).collect::<Option<Vec<_>>>().map(RingElement::Tuple)
            }
            _ => None,
        }
    }

    /// All elements of a finite ring, in a fixed order (zero first).
    pub fn elements(&self) -> Option<Vec<RingElement>> {
        match self {
            RingDescriptor::GaloisField(n) | RingDescriptor::ModularIntegers(n) => {
                Some((0..*n).map(RingElement::Residue).collect())
            }
            RingDescriptor::Product(fs) => {
                let mut acc: Vec<Vec<RingElement>> = vec![Vec::new()];
                for f in fs {
                    let elems = f.elements()?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            elems.iter().map(move |e| {
                                let mut p = prefix.clone();
                                p.push(e.clone());
                                p
                            })
                        })
                        .collect();
                }
                Some(acc.into_iter().map(RingElement::Tuple).collect())
            }
            _ => None,
        }
    }

    /// Check that two descriptors agree, producing a mismatch error otherwise.
    pub fn expect_same(&self, other: &RingDescriptor) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::DescriptorMismatch { expected: self.to_string(), found: other.to_string() })
        }
    }

    /// Human-readable rendering of an element of this ring.
    pub fn render(&self, x: &RingElement) -> String {
        match (self, x) {
            (_, RingElement::Integer(n)) => n.to_string(),
            (_, RingElement::Rational(q)) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (_, RingElement::Residue(r)) => r.to_string(),
            (RingDescriptor::Laurent(base), RingElement::Laurent(map)) => {
                if map.is_empty() {
                    return "0".into();
                }
                let terms: Vec<String> = map
                    .iter()
                    .map(|(e, c)| {
                        let monomial = match e {
                            0 => String::new(),
                            1 => "x".into(),
                            _ => format!("x^{e}"),
                        };
                        let coeff = base.render(c);
                        if monomial.is_empty() {
                            coeff
                        } else if base.is_one(c) {
                            monomial
                        } else {
                            format!("({coeff})*{monomial}")
                        }
                    })
                    .collect();
                terms.join(" + ")
            }
            (RingDescriptor::Product(fs), RingElement::Tuple(xs)) => {
                let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| f.render(x)).collect();
                format!("({})", parts.join(", "))
            }
            _ => format!("{x:?}"),
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::GaloisField(p) => write!(f, "GF({p})"),
            RingDescriptor::ModularIntegers(n) => write!(f, "Z/{n}"),
            RingDescriptor::Laurent(b) => write!(f, "Laurent({b})"),
            RingDescriptor::Product(fs) => {
                write!(f, "Product(")?;
                for (i, r) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z6() -> RingDescriptor {
        RingDescriptor::ModularIntegers(6)
    }

    #[test]
    fn integers_are_noetherian_not_artinian() {
        let p = RingDescriptor::Integers.predicates();
        assert!(p.noetherian && !p.artinian && !p.field_product);
        assert_eq!(p.characteristics, BTreeSet::from([0]));
    }

    #[test]
    fn z6_is_a_product_of_fields() {
        // independent check: find the orthogonal idempotents of Z/6 summing
        // to 1, then compare Z/6 with GF(2) x GF(3) entry by entry via CRT
        let idempotents: Vec<u64> = (0..6).filter(|x| x * x % 6 == *x).collect();
        assert_eq!(idempotents, vec![0, 1, 3, 4]);
        assert_eq!((3 * 4) % 6, 0);
        assert_eq!((3 + 4) % 6, 1);
        let crt = |x: u64| (x % 2, x % 3);
        for a in 0..6u64 {
            for b in 0..6u64 {
                let (a2, a3) = crt(a);
                let (b2, b3) = crt(b);
                assert_eq!(crt((a + b) % 6), ((a2 + b2) % 2, (a3 + b3) % 3));
                assert_eq!(crt((a * b) % 6), ((a2 * b2) % 2, (a3 * b3) % 3));
            }
        }
        let p = z6().predicates();
        assert!(p.field_product && p.artinian && p.noetherian);
        assert_eq!(p.characteristics, BTreeSet::from([2, 3]));
    }

    #[test]
    fn z4_is_not_a_product_of_fields() {
        let p = RingDescriptor::ModularIntegers(4).predicates();
        assert!(!p.field_product);
        assert_eq!(p.characteristics, BTreeSet::from([2]));
    }

    #[test]
    fn laurent_over_q() {
        let p = RingDescriptor::laurent(RingDescriptor::Rationals).predicates();
        assert!(p.noetherian && !p.artinian && !p.field_product);
    }

    #[test]
    fn product_predicates_combine_componentwise() {
        let r = RingDescriptor::Product(vec![RingDescriptor::Rationals, RingDescriptor::GaloisField(5)]);
        let p = r.predicates();
        assert!(p.field_product && p.artinian);
        assert_eq!(p.characteristics, BTreeSet::from([0, 5]));
        let r = RingDescriptor::Product(vec![RingDescriptor::Rationals, RingDescriptor::Integers]);
        assert!(!r.predicates().artinian);
    }

    #[test]
    fn residue_inverse() {
        let r = RingDescriptor::GaloisField(7);
        for x in 1..7 {
            let inv = r.inverse(&RingElement::Residue(x)).unwrap();
            assert_eq!(r.mul(&RingElement::Residue(x), &inv).unwrap(), r.one());
        }
        assert!(z6().inverse(&RingElement::Residue(2)).is_none());
    }

    #[test]
    fn laurent_monomials_multiply_by_adding_exponents() {
        let r = RingDescriptor::laurent(RingDescriptor::Integers);
        let x = RingElement::Laurent(BTreeMap::from([(1, RingElement::Integer(1.into()))]));
        let xi = RingElement::Laurent(BTreeMap::from([(-1, RingElement::Integer(1.into()))]));
        assert_eq!(r.mul(&x, &xi).unwrap(), r.one());
    }

    #[test]
    fn laurent_overflow_is_an_error() {
        let r = RingDescriptor::laurent(RingDescriptor::Integers);
        let big = RingElement::Laurent(BTreeMap::from([(i64::MAX, RingElement::Integer(1.into()))]));
        assert!(matches!(r.mul(&big, &big), Err(RingError::ExponentOverflow(..))));
    }

    #[test]
    fn from_ratio_in_gf() {
        let r = RingDescriptor::GaloisField(5);
        let half = r.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, RingElement::Residue(3));
        assert!(z6().from_ratio(&BigInt::from(1), &BigInt::from(2)).is_err());
    }

    #[test]
    fn elements_of_product() {
        let r = RingDescriptor::Product(vec![RingDescriptor::GaloisField(2), RingDescriptor::GaloisField(3)]);
        assert_eq!(r.elements().unwrap().len(), 6);
        assert_eq!(r.cardinality(), Some(6));
    }

    #[test]
    fn ring_axioms_exhaustive_for_small_moduli() {
        for n in 2..=12u64 {
            let r = RingDescriptor::ModularIntegers(n);
            let elems = r.elements().unwrap();
            for a in &elems {
                for b in &elems {
                    assert_eq!(r.add(a, b), r.add(b, a));
                    assert_eq!(r.mul(a, b).unwrap(), r.mul(b, a).unwrap());
                    for c in &elems {
                        let ab_c = r.mul(&r.mul(a, b).unwrap(), c).unwrap();
                        let a_bc = r.mul(a, &r.mul(b, c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let lhs = r.mul(a, &r.add(b, c)).unwrap();
                        let rhs = r.add(&r.mul(a, b).unwrap(), &r.mul(a, c).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
                assert_eq!(r.add(a, &r.neg(a)), r.zero());
                assert_eq!(r.mul(a, &r.one()).unwrap(), *a);
            }
        }
    }
}
