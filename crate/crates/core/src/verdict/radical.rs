//! Independent semisimplicity check: computes the Jacobson radical of a
//! small algebra directly from its structure constants.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::groupoid::FiniteGroupoid;
use crate::linalg::{nullspace, Echelon, FiniteAlgebra};
use crate::rings::{RingDescriptor, RingElement};

pub const MAX_DIM_CHAR_P: usize = 12;
pub const MAX_DIM_CHAR_0: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("radical oracle needs Q or GF(p), got {0}")]
    NotAField(String),
    #[error("dimension {dim} exceeds the oracle budget of {limit} over {ring}")]
    Budget { dim: usize, limit: usize, ring: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    pub semisimple: bool,
    pub radical_dim: usize,
    /// A nonzero radical element, rendered with basis labels.
    pub witness: Option<String>,
    pub witness_vector: Option<Vec<RingElement>>,
}

/// Structure constants of `R𝒢` obtained by convolving basis arrows.
pub fn groupoid_structure_constants(g: &Arc<FiniteGroupoid>, r: &RingDescriptor) -> FiniteAlgebra {
    let n = g.arrow_count();
    let products = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let x = AlgebraElement::basis(g.clone(), r.clone(), a);
                    let y = AlgebraElement::basis(g.clone(), r.clone(), b);
                    let p = x.convolve(&y).expect("same groupoid and ring");
                    p.coefficients().iter().map(|(&k, c)| (k, c.clone())).collect()
                })
                .collect()
        })
        .collect();
    FiniteAlgebra { ring: r.clone(), labels: g.arrows().iter().map(|a| a.name.clone()).collect(), products }
}

/// The Jacobson radical of a groupoid algebra over `Q` or `GF(p)`.
pub fn radical_oracle(g: &Arc<FiniteGroupoid>, r: &RingDescriptor) -> Result<RadicalReport, OracleError> {
    check_budget(g.arrow_count(), r)?;
    algebra_radical(&groupoid_structure_constants(g, r))
}

fn check_budget(dim: usize, r: &RingDescriptor) -> Result<(), OracleError> {
    let limit = match r {
        RingDescriptor::Rationals => MAX_DIM_CHAR_0,
        RingDescriptor::GaloisField(_) => MAX_DIM_CHAR_P,
        other => return Err(OracleError::NotAField(other.to_string())),
    };
    if dim > limit {
        return Err(OracleError::Budget { dim, limit, ring: r.to_string() });
    }
    Ok(())
}

/// Radical of an arbitrary algebra given by structure constants.
///
/// Every radical element lies in the kernel of the trace form
/// `(a, b) ↦ tr(L_ab)`; in characteristic zero the two coincide. In
/// characteristic `p` the kernel is searched exhaustively for elements `a`
/// whose right ideal `aA` is nilpotent, modulo the part of the radical
/// already found.
pub fn algebra_radical(alg: &FiniteAlgebra) -> Result<RadicalReport, OracleError> {
    let r = &alg.ring;
    check_budget(alg.dim(), r)?;
    let n = alg.dim();
    let traces = alg.basis_traces();
    let form: Vec<Vec<RingElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    alg.products[i][j]
                        .iter()
                        .fold(r.zero(), |acc, (k, c)| r.add(&acc, &r.mul(c, &traces[*k]).expect("field")))
                })
                .collect()
        })
        .collect();
    let kernel = nullspace(r, &form, n);
    let radical = match r {
        RingDescriptor::GaloisField(p) => search_radical(alg, *p, &kernel),
        _ => Echelon::spanned_by(r.clone(), n, &kernel),
    };
    let witness_vector = least_witness(alg, &radical);
    Ok(RadicalReport {
        semisimple: radical.dim() == 0,
        radical_dim: radical.dim(),
        witness: witness_vector.as_ref().map(|v| alg.render(v)),
        witness_vector,
    })
}

fn right_ideal_nilpotent(alg: &FiniteAlgebra, a: &[RingElement]) -> bool {
    let n = alg.dim();
    let ideal =
        Echelon::spanned_by(alg.ring.clone(), n, &(0..n).map(|j| alg.mul(a, &alg.basis_vector(j))).collect::<Vec<_>>());
    alg.is_nilpotent_space(&ideal)
}

fn is_nilpotent(alg: &FiniteAlgebra, a: &[RingElement]) -> bool {
    let mut x = a.to_vec();
    let mut k = 1;
    while k < alg.dim().max(1) {
        x = alg.mul(&x, &x);
        k *= 2;
        if alg.is_zero(&x) {
            return true;
        }
    }
    alg.is_zero(&x)
}

/// Coefficient vectors over `GF(p)^m` with leading entry 1, by weight then
/// lexicographically.
fn normalized_vectors(p: u64, m: usize) -> impl Iterator<Item = Vec<u64>> {
    (1..=m).flat_map(move |w| {
        let mut out = Vec::new();
        let mut support = Vec::new();
        fn choose(start: usize, m: usize, left: usize, support: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(support.clone());
                return;
            }
            for i in start..=m - left {
                support.push(i);
                choose(i + 1, m, left - 1, support, out);
                support.pop();
            }
        }
        choose(0, m, w, &mut support, &mut out);
        out.into_iter().flat_map(move |s| {
            let rest = s.len() - 1;
            let count = (p - 1).pow(rest as u32);
            (0..count).map(move |mut code| {
                let mut v = vec![0u64; m];
                v[s[0]] = 1;
                for &i in &s[1..] {
                    v[i] = code % (p - 1) + 1;
                    code /= p - 1;
                }
                v
            })
        })
    })
}

fn search_radical(alg: &FiniteAlgebra, p: u64, kernel: &[Vec<RingElement>]) -> Echelon {
    let r = &alg.ring;
    let n = alg.dim();
    let mut found = Echelon::new(r.clone(), n);
    'restart: loop {
        let mut span = found.clone();
        let complement: Vec<Vec<RingElement>> = kernel.iter().filter(|v| span.insert(v)).cloned().collect();
        for coeffs in normalized_vectors(p, complement.len()) {
            let mut a = alg.zero();
            for (c, v) in coeffs.iter().zip(&complement) {
                if *c == 0 {
                    continue;
                }
                let c = r.from_i64(*c as i64);
                for (x, y) in a.iter_mut().zip(v) {
                    *x = r.add(x, &r.mul(&c, y).expect("field"));
                }
            }
            if is_nilpotent(alg, &a) && right_ideal_nilpotent(alg, &a) {
                for i in 0..n {
                    let left = alg.mul(&alg.basis_vector(i), &a);
                    for j in 0..n {
                        found.insert(&alg.mul(&left, &alg.basis_vector(j)));
                    }
                }
                continue 'restart;
            }
        }
        return found;
    }
}

/// Least radical element of weight one or two in the standard basis, or
/// else the first echelon basis vector of the radical.
fn least_witness(alg: &FiniteAlgebra, radical: &Echelon) -> Option<Vec<RingElement>> {
    if radical.dim() == 0 {
        return None;
    }
    let r = &alg.ring;
    let n = alg.dim();
    let scalars: Vec<RingElement> = match r.elements() {
        Some(all) => all.into_iter().filter(|c| !r.is_zero(c)).collect(),
        None => vec![r.one(), r.neg(&r.one())],
    };
    for i in 0..n {
        let v = alg.basis_vector(i);
        if radical.contains(&v) {
            return Some(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for c in &scalars {
                let mut v = alg.basis_vector(i);
                v[j] = c.clone();
                if radical.contains(&v) {
                    return Some(v);
                }
            }
        }
    }
    radical.basis().next().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::GroupTable;

    fn group(n: usize) -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::from_group(&GroupTable::cyclic(n), "*"))
    }

    #[test]
    fn q_z2_is_semisimple() {
        let rep = radical_oracle(&group(2), &RingDescriptor::Rationals).unwrap();
        assert!(rep.semisimple);
        assert_eq!(rep.witness, None);
    }

    #[test]
    fn gf2_z2_has_radical_spanned_by_one_plus_g() {
        let g = group(2);
        let r = RingDescriptor::GaloisField(2);
        let rep = radical_oracle(&g, &r).unwrap();
        assert!(!rep.semisimple);
        assert_eq!(rep.radical_dim, 1);
        assert_eq!(rep.witness.as_deref(), Some("e + g"));
        let w = AlgebraElement::from_coefficients(
            g.clone(),
            r.clone(),
            rep.witness_vector.unwrap().into_iter().enumerate(),
        );
        assert!(w.convolve(&w).unwrap().is_zero());
    }

    #[test]
    fn pair_groupoid_matrix_algebras_are_semisimple() {
        for r in [RingDescriptor::Rationals, RingDescriptor::GaloisField(2), RingDescriptor::GaloisField(3)] {
            for n in 2..=3 {
                let rep = radical_oracle(&Arc::new(FiniteGroupoid::pair(n)), &r).unwrap();
                assert!(rep.semisimple, "pair({n}) over {r}");
            }
        }
    }

    #[test]
    fn gf3_group_rings() {
        let r = RingDescriptor::GaloisField(3);
        let z3 = radical_oracle(&group(3), &r).unwrap();
        assert_eq!((z3.semisimple, z3.radical_dim), (false, 2));
        assert!(radical_oracle(&group(4), &r).unwrap().semisimple);
        let s3 = Arc::new(FiniteGroupoid::from_group(&GroupTable::symmetric(3), "*"));
        let rep = radical_oracle(&s3, &r).unwrap();
        assert!(!rep.semisimple);
        assert!(radical_oracle(&s3, &RingDescriptor::GaloisField(2)).unwrap().radical_dim > 0);
    }

    #[test]
    fn budget_and_ring_errors() {
        let big = Arc::new(FiniteGroupoid::pair(4));
        assert!(matches!(radical_oracle(&big, &RingDescriptor::GaloisField(2)), Err(OracleError::Budget { .. })));
        assert!(radical_oracle(&big, &RingDescriptor::Rationals).unwrap().semisimple);
        assert!(matches!(radical_oracle(&group(2), &RingDescriptor::Integers), Err(OracleError::NotAField(_))));
    }

    #[test]
    fn enumeration_is_complete() {
        let vs: Vec<Vec<u64>> = normalized_vectors(3, 3).collect();
        // (3^3 - 1) / 2 projective points
        assert_eq!(vs.len(), 13);
        assert_eq!(vs[0], vec![1, 0, 0]);
        let mut sorted = vs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 13);
    }
}
