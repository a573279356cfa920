//! Dense linear algebra over `Q` and `GF(p)`, finite-dimensional algebras
//! given by structure constants, and exact integer determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rings::{RingDescriptor, RingElement};

/// A subspace of `F^width` kept as a reduced row echelon basis.
#[derive(Debug, Clone)]
pub struct Echelon {
    ring: RingDescriptor,
    width: usize,
    /// Sorted by pivot column; each row has a 1 at its pivot and zeros in
    /// every other pivot column.
    rows: Vec<(usize, Vec<RingElement>)>,
}

impl Echelon {
    pub fn new(ring: RingDescriptor, width: usize) -> Self {
        assert!(ring.is_field(), "echelon forms need a field, got {ring}");
        Echelon { ring, width, rows: Vec::new() }
    }

    pub fn spanned_by<'a>(
        ring: RingDescriptor,
        width: usize,
        vectors: impl IntoIterator<Item = &'a Vec<RingElement>>,
    ) -> Self {
        let mut e = Echelon::new(ring, width);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<RingElement>> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// `v` minus its projection along the pivot columns.
    pub fn reduce(&self, v: &[RingElement]) -> Vec<RingElement> {
        let r = &self.ring;
        let mut out = v.to_vec();
        for (p, row) in &self.rows {
            if r.is_zero(&out[*p]) {
                continue;
            }
            let c = out[*p].clone();
            for (o, x) in out.iter_mut().zip(row) {
                if !r.is_zero(x) {
                    *o = r.sub(o, &r.mul(&c, x).expect("field product"));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[RingElement]) -> bool {
        self.reduce(v).iter().all(|x| self.ring.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[RingElement]) -> bool {
        assert_eq!(v.len(), self.width);
        let r = self.ring.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !r.is_zero(x)) else { return false };
        let inv = r.inverse(&w[p]).expect("nonzero field element");
        for x in &mut w {
            *x = r.mul(x, &inv).expect("field product");
        }
        for (_, row) in &mut self.rows {
            if r.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (o, x) in row.iter_mut().zip(&w) {
                if !r.is_zero(x) {
                    *o = r.sub(o, &r.mul(&c, x).expect("field product"));
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, w));
        true
    }
}

/// Basis of `{x : M x = 0}` for a matrix given by rows.
pub fn nullspace(ring: &RingDescriptor, rows: &[Vec<RingElement>], width: usize) -> Vec<Vec<RingElement>> {
    let e = Echelon::spanned_by(ring.clone(), width, rows);
    let pivots: Vec<usize> = e.pivots().collect();
    let mut out = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut x = vec![ring.zero(); width];
        x[free] = ring.one();
        for (p, row) in e.rows.iter() {
            x[*p] = ring.neg(&row[free]);
        }
        out.push(x);
    }
    out
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn integer_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// A finite-dimensional algebra over a field: `products[i][j]` is `b_i b_j`
/// as a sparse combination of basis vectors.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    pub ring: RingDescriptor,
    pub labels: Vec<String>,
    pub products: Vec<Vec<Vec<(usize, RingElement)>>>,
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> Vec<RingElement> {
        vec![self.ring.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<RingElement> {
        let mut v = self.zero();
        v[i] = self.ring.one();
        v
    }

    pub fn is_zero(&self, v: &[RingElement]) -> bool {
        v.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn mul(&self, x: &[RingElement], y: &[RingElement]) -> Vec<RingElement> {
        let r = &self.ring;
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if r.is_zero(b) {
                    continue;
                }
                let ab = r.mul(a, b).expect("field product");
                for (k, c) in &self.products[i][j] {
                    out[*k] = r.add(&out[*k], &r.mul(&ab, c).expect("field product"));
                }
            }
        }
        out
    }

    /// Trace of left multiplication by each basis vector.
    pub fn basis_traces(&self) -> Vec<RingElement> {
        let r = &self.ring;
        (0..self.dim())
            .map(|i| {
                let mut t = r.zero();
                for c in 0..self.dim() {
                    for (k, x) in &self.products[i][c] {
                        if *k == c {
                            t = r.add(&t, x);
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// Span of all products `x y` with `x` in `left` and `y` in `right`.
    pub fn product_space(&self, left: &Echelon, right: &Echelon) -> Echelon {
        let mut out = Echelon::new(self.ring.clone(), self.dim());
        for x in left.basis() {
            for y in right.basis() {
                out.insert(&self.mul(x, y));
                if out.dim() == self.dim() {
                    return out;
                }
            }
        }
        out
    }

    /// Whether some power of a multiplicatively closed subspace is zero.
    pub fn is_nilpotent_space(&self, s: &Echelon) -> bool {
        let mut power = s.clone();
        while power.dim() > 0 {
            let next = self.product_space(&power, s);
            if next.dim() == power.dim() {
                return false;
            }
            power = next;
        }
        true
    }

    /// Renders a vector as `c*label + ...`, omitting unit coefficients.
    pub fn render(&self, v: &[RingElement]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| {
                if self.ring.is_one(c) {
                    self.labels[i].clone()
                } else {
                    format!("{}*{}", self.ring.render(c), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<RingElement>> {
        let r = RingDescriptor::Rationals;
        rows.iter().map(|row| row.iter().map(|&x| r.from_i64(x)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let r = RingDescriptor::Rationals;
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&r, &m, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for row in &m {
                let dot = row.iter().zip(x).fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b).unwrap()));
                assert!(r.is_zero(&dot));
            }
        }
    }

    #[test]
    fn echelon_over_gf2() {
        let r = RingDescriptor::GaloisField(2);
        let v = |xs: [i64; 3]| xs.iter().map(|&x| r.from_i64(x)).collect::<Vec<_>>();
        let mut e = Echelon::new(r.clone(), 3);
        assert!(e.insert(&v([1, 1, 0])));
        assert!(e.insert(&v([0, 1, 1])));
        assert!(!e.insert(&v([1, 0, 1])));
        assert!(e.contains(&v([1, 0, 1])));
        assert!(!e.contains(&v([1, 0, 0])));
    }

    fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        let n = m.len();
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * cofactor_det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    proptest! {
        #[test]
        fn determinant_matches_cofactor_expansion(n in 0usize..5, entries in proptest::collection::vec(-4i64..5, 25)) {
            let m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(entries[i * 5 + j])).collect()).collect();
            prop_assert_eq!(integer_determinant(&m), cofactor_det(&m));
        }

        #[test]
        fn nullspace_is_annihilated(entries in proptest::collection::vec(-3i64..4, 12)) {
            let r = RingDescriptor::Rationals;
            let m: Vec<Vec<RingElement>> = (0..3).map(|i| (0..4).map(|j| r.from_i64(entries[i * 4 + j])).collect()).collect();
            let ns = nullspace(&r, &m, 4);
            let rank = Echelon::spanned_by(r.clone(), 4, &m).dim();
            prop_assert_eq!(ns.len() + rank, 4);
            for x in &ns {
                for row in &m {
                    let dot = row.iter().zip(x).fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b).unwrap()));
                    prop_assert!(r.is_zero(&dot));
                }
            }
        }
    }
}
