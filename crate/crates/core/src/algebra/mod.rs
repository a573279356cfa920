//! The convolution algebra `R𝒢` of a finite groupoid and its explicit
//! decomposition into a product of matrix algebras over group rings.

mod decomposition;

pub use decomposition::{decompose, Decomposition};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::groupoid::{FiniteGroupoid, GroupoidError};
use crate::rings::{RingDescriptor, RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("elements belong to different groupoids")]
    GroupoidMismatch,
    #[error("invalid element literal: {0}")]
    Literal(String),
    #[error("frame does not compose: {0}")]
    Frame(String),
}

/// A finitely supported function from arrows to the coefficient ring.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    groupoid: Arc<FiniteGroupoid>,
    ring: RingDescriptor,
    coeffs: BTreeMap<usize, RingElement>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && self.ring == other.ring
            && (Arc::ptr_eq(&self.groupoid, &other.groupoid) || self.groupoid == other.groupoid)
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(groupoid: Arc<FiniteGroupoid>, ring: RingDescriptor) -> Self {
        AlgebraElement { groupoid, ring, coeffs: BTreeMap::new() }
    }

    /// `δ_g`.
    pub fn basis(groupoid: Arc<FiniteGroupoid>, ring: RingDescriptor, arrow: usize) -> Self {
        let mut out = Self::zero(groupoid, ring);
        let one = out.ring.one();
        out.add_term(arrow, one);
        out
    }

    /// `χ_U` for a set of arrows `U`.
    pub fn characteristic(
        groupoid: Arc<FiniteGroupoid>,
        ring: RingDescriptor,
        arrows: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut out = Self::zero(groupoid, ring);
        for a in arrows {
            out.coeffs.insert(a, out.ring.one());
        }
        out
    }

    /// `χ_{𝒢⁽⁰⁾}`, the sum of all identity arrows.
    pub fn unit(groupoid: Arc<FiniteGroupoid>, ring: RingDescriptor) -> Self {
        let ids: Vec<usize> = groupoid.identity_arrows().collect();
        Self::characteristic(groupoid, ring, ids)
    }

    pub fn from_coefficients(
        groupoid: Arc<FiniteGroupoid>,
        ring: RingDescriptor,
        coeffs: impl IntoIterator<Item = (usize, RingElement)>,
    ) -> Self {
        let mut out = Self::zero(groupoid, ring);
        for (a, c) in coeffs {
            out.add_term(a, c);
        }
        out
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, RingElement> {
        &self.coeffs
    }

    pub fn coefficient(&self, arrow: usize) -> RingElement {
        self.coeffs.get(&arrow).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, arrow: usize, c: RingElement) {
        let sum = match self.coeffs.get(&arrow) {
            Some(prev) => self.ring.add(prev, &c),
            None => c,
        };
        if self.ring.is_zero(&sum) {
            self.coeffs.remove(&arrow);
        } else {
            self.coeffs.insert(arrow, sum);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if !(Arc::ptr_eq(&self.groupoid, &other.groupoid) || self.groupoid == other.groupoid) {
            return Err(AlgebraError::GroupoidMismatch);
        }
        self.ring.expect_same(&other.ring)?;
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_term(*a, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(a, c)| (*a, self.ring.neg(c))).collect();
        AlgebraElement { groupoid: self.groupoid.clone(), ring: self.ring.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RingElement) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.groupoid.clone(), self.ring.clone());
        for (a, x) in &self.coeffs {
            out.add_term(*a, self.ring.mul(c, x)?);
        }
        Ok(out)
    }

    /// Convolution `(f1 ∗ f2)(g) = Σ_{d(h) = d(g)} f1(g h⁻¹) f2(h)`.
    ///
    /// The sum runs over `h` in the support of `f2` and every `g` sharing its
    /// domain, so each term is evaluated exactly as written.
    pub fn convolve(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let g = &*self.groupoid;
        let mut out = Self::zero(self.groupoid.clone(), self.ring.clone());
        for (&h, f2h) in &other.coeffs {
            let h_inv =
                g.inverse(h).ok_or_else(|| GroupoidError::Structure(format!("no inverse for {}", g.arrow_name(h))))?;
            for target in (0..g.arrow_count()).filter(|&t| g.dom(t) == g.dom(h)) {
                let k = g.compose(target, h_inv).ok_or_else(|| {
                    GroupoidError::Structure(format!("{} * {} undefined", g.arrow_name(target), g.arrow_name(h_inv)))
                })?;
                if let Some(f1k) = self.coeffs.get(&k) {
                    out.add_term(target, self.ring.mul(f1k, f2h)?);
                }
            }
        }
        Ok(out)
    }

    /// Parse `3*f + (-1)*id_a`, `f + 1/2*g` and similar: a `+`-separated sum
    /// of terms `[coefficient*]arrow`, with integer or fraction coefficients,
    /// optionally parenthesized.
    pub fn parse(groupoid: Arc<FiniteGroupoid>, ring: RingDescriptor, text: &str) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(groupoid, ring);
        for term in split_terms(text)? {
            let (coeff, name) = match term.rsplit_once('*') {
                Some((c, n)) => (parse_coefficient(&out.ring, c)?, n.trim()),
                None => match term.strip_prefix('-') {
                    Some(n) => (out.ring.from_i64(-1), n.trim()),
                    None => (out.ring.one(), term.as_str()),
                },
            };
            let arrow = out
                .groupoid
                .arrow_index(name)
                .ok_or_else(|| AlgebraError::Literal(format!("unknown arrow '{name}'")))?;
            out.add_term(arrow, coeff);
        }
        Ok(out)
    }
}

fn split_terms(text: &str) -> Result<Vec<String>, AlgebraError> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                terms.push(std::mem::take(&mut current));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(AlgebraError::Literal("unbalanced parentheses".into()));
        }
        current.push(c);
    }
    if depth != 0 {
        return Err(AlgebraError::Literal("unbalanced parentheses".into()));
    }
    terms.push(current);
    let terms: Vec<String> = terms.into_iter().map(|t| t.split_whitespace().collect()).collect();
    if terms.iter().any(|t: &String| t.is_empty()) {
        return Err(AlgebraError::Literal(format!("empty term in '{text}'")));
    }
    Ok(terms)
}

fn parse_coefficient(ring: &RingDescriptor, text: &str) -> Result<RingElement, AlgebraError> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t).trim();
    let bad = || AlgebraError::Literal(format!("invalid coefficient '{text}'"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => {
            (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?)
        }
        None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    Ok(ring.from_ratio(&num, &den)?)
}

impl fmt::Display for AlgebraElement {
    /// Renders in the literal syntax accepted by [`AlgebraElement::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let name = self.groupoid.arrow_name(*a);
            if self.ring.is_one(c) {
                write!(f, "{name}")?;
            } else {
                write!(f, "({})*{name}", self.ring.render(c))?;
            }
        }
        Ok(())
    }
}
