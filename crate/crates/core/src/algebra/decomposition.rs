use std::collections::BTreeMap;
use std::sync::Arc;

use super::{AlgebraElement, AlgebraError};
use crate::groupoid::{FiniteGroupoid, GroupoidError, IsotropyGroup, Orbit, StructuredGroupoid};
use crate::rings::{BlockMatrix, BlockShape, RingDescriptor, RingError};
use crate::verify::{Check, VerificationReport};

/// Frames, isotropy tables and block shape realizing
/// `R𝒢 ≅ ∏ M_{n_i}(R G_i)` for one finite groupoid.
///
/// Block `i` has rows and columns indexed by the members of orbit `i` in
/// name order; an arrow `g : y -> z` goes to `g_z⁻¹ g g_y · E_{zy}`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    groupoid: Arc<FiniteGroupoid>,
    ring: RingDescriptor,
    structured: StructuredGroupoid,
    frames: Vec<Orbit>,
    isotropy: Vec<IsotropyGroup>,
    /// Recorded `g_y⁻¹ : y -> x_i` per orbit.
    return_arrows: Vec<BTreeMap<usize, usize>>,
    shape: BlockShape,
    /// object -> (orbit, position in block)
    slots: Vec<(usize, usize)>,
}

/// Builds the decomposition of a valid groupoid over `ring`.
pub fn decompose(groupoid: Arc<FiniteGroupoid>, ring: RingDescriptor) -> Result<Decomposition, AlgebraError> {
    groupoid.ensure_valid()?;
    let frames = groupoid.orbits();
    let isotropy = frames.iter().map(|o| groupoid.isotropy(o.basepoint)).collect::<Result<Vec<_>, GroupoidError>>()?;
    let structured = groupoid.structured()?;
    let return_arrows = frames
        .iter()
        .map(|o| {
            o.connecting.iter().map(|(&y, &g)| (y, groupoid.inverse(g).expect("valid groupoid has inverses"))).collect()
        })
        .collect();
    let shape = BlockShape::new(ring.clone(), structured.orbits.iter().map(|o| (o.size, o.isotropy.clone())).collect());
    let mut slots = vec![(0, 0); groupoid.object_count()];
    for (i, o) in frames.iter().enumerate() {
        for (pos, &y) in o.members.iter().enumerate() {
            slots[y] = (i, pos);
        }
    }
    Ok(Decomposition { groupoid, ring, structured, frames, isotropy, return_arrows, shape, slots })
}

impl Decomposition {
    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn structured(&self) -> &StructuredGroupoid {
        &self.structured
    }

    pub fn frames(&self) -> &[Orbit] {
        &self.frames
    }

    pub fn isotropy(&self) -> &[IsotropyGroup] {
        &self.isotropy
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    /// Replaces the recorded inverse of one connecting arrow. Any arrow
    /// `y -> x_i` other than the true inverse yields a map that is no longer
    /// multiplicative; this exists to exercise the verifier.
    pub fn override_return_arrow(mut self, object: usize, arrow: usize) -> Result<Self, AlgebraError> {
        let (i, _) = self.slots[object];
        let g = &self.groupoid;
        if g.dom(arrow) != object || g.cod(arrow) != self.frames[i].basepoint {
            return Err(AlgebraError::Frame(format!(
                "{} does not go from {} to the basepoint",
                g.arrow_name(arrow),
                g.object_name(object)
            )));
        }
        self.return_arrows[i].insert(object, arrow);
        Ok(self)
    }

    fn frame_error(&self, what: String) -> AlgebraError {
        AlgebraError::Frame(what)
    }

    /// Block, row, column and isotropy index of the image of one arrow.
    pub fn arrow_image(&self, arrow: usize) -> Result<(usize, usize, usize, usize), AlgebraError> {
        let g = &self.groupoid;
        let (y, z) = (g.dom(arrow), g.cod(arrow));
        let (i, col) = self.slots[y];
        let (_, row) = self.slots[z];
        let g_y = self.frames[i].connecting[&y];
        let g_z_inv = self.return_arrows[i][&z];
        let loop_arrow = g
            .compose(arrow, g_y)
            .and_then(|t| g.compose(g_z_inv, t))
            .ok_or_else(|| self.frame_error(format!("cannot conjugate {}", g.arrow_name(arrow))))?;
        let k = self.isotropy[i]
            .index_of(loop_arrow)
            .ok_or_else(|| self.frame_error(format!("{} is not a basepoint loop", g.arrow_name(loop_arrow))))?;
        Ok((i, row, col, k))
    }

    /// Linear extension of `g ↦ g_z⁻¹ g g_y · E_{zy}`.
    pub fn phi(&self, f: &AlgebraElement) -> Result<BlockMatrix, AlgebraError> {
        if !(Arc::ptr_eq(f.groupoid(), &self.groupoid) || **f.groupoid() == *self.groupoid) {
            return Err(AlgebraError::GroupoidMismatch);
        }
        self.ring.expect_same(f.ring())?;
        let mut m = BlockMatrix::zero(&self.shape);
        for (&a, c) in f.coefficients() {
            let (i, row, col, k) = self.arrow_image(a)?;
            m.block_mut(i).entry_mut(row, col).add_term(k as i64, c.clone());
        }
        Ok(m)
    }

    /// Linear extension of `a·E_{zy} ↦ g_z a g_y⁻¹`.
    pub fn phi_inv(&self, m: &BlockMatrix) -> Result<AlgebraElement, AlgebraError> {
        let shape = m.shape();
        if shape != self.shape {
            return Err(RingError::ShapeMismatch { left: self.shape.to_string(), right: shape.to_string() }.into());
        }
        let g = &self.groupoid;
        let mut out = AlgebraElement::zero(self.groupoid.clone(), self.ring.clone());
        for (i, row, col, entry) in m.nonzero_entries() {
            let frame = &self.frames[i];
            let (z, y) = (frame.members[row], frame.members[col]);
            let (g_z, g_y_inv) = (frame.connecting[&z], self.return_arrows[i][&y]);
            for (&k, c) in entry.coefficients() {
                let a = self.isotropy[i].elements[k as usize];
                let arrow = g
                    .compose(a, g_y_inv)
                    .and_then(|t| g.compose(g_z, t))
                    .ok_or_else(|| self.frame_error(format!("cannot rebuild arrow for block {i} ({row},{col})")))?;
                out.add_term(arrow, c.clone());
            }
        }
        Ok(out)
    }

    /// Exhaustive check of the decomposition on basis elements:
    /// multiplicativity on every arrow pair, the unit, bijectivity on the
    /// basis, and that `phi_inv` is a two-sided inverse on every matrix unit
    /// `a·E_{zy}` and every basis arrow.
    pub fn verify(&self) -> VerificationReport {
        let g = &self.groupoid;
        let ring = &self.ring;
        let m = g.arrow_count();
        let basis = |a: usize| AlgebraElement::basis(g.clone(), ring.clone(), a);
        let images: Vec<Result<BlockMatrix, AlgebraError>> = (0..m).map(|a| self.phi(&basis(a))).collect();
        let mut report = VerificationReport::default();

        let mut mult = Check::new("multiplicative");
        for a in 0..m {
            for b in 0..m {
                let ok = (|| -> Result<bool, AlgebraError> {
                    let lhs = self.phi(&basis(a).convolve(&basis(b))?)?;
                    let (pa, pb) = (images[a].clone()?, images[b].clone()?);
                    Ok(lhs == pa.mul(&pb)?)
                })()
                .unwrap_or(false);
                mult.record(ok, || format!("({}, {})", g.arrow_name(a), g.arrow_name(b)));
            }
        }
        report.push(mult);

        let mut unit = Check::new("unit");
        let unit_ok = self
            .phi(&AlgebraElement::unit(g.clone(), ring.clone()))
            .is_ok_and(|u| u == BlockMatrix::identity(&self.shape));
        unit.record(unit_ok, || "phi(1) is not the identity".into());
        report.push(unit);

        let mut bij = Check::new("basis bijection");
        let cardinality_ok = self.structured.cardinality() == Some(m);
        bij.record(cardinality_ok, || format!("sum n^2|G| = {:?} but {m} arrows", self.structured.cardinality()));
        let mut seen = BTreeMap::new();
        for a in 0..m {
            let img = self.arrow_image(a).ok();
            let fresh = img.is_some_and(|k| seen.insert(k, a).is_none());
            bij.record(fresh, || format!("{} collides or has no image", g.arrow_name(a)));
        }
        report.push(bij);

        let mut inv = Check::new("inverse");
        for (i, frame) in self.frames.iter().enumerate() {
            let group = self.shape.blocks[i].1.clone();
            for row in 0..frame.size() {
                for col in 0..frame.size() {
                    for k in 0..self.isotropy[i].order() {
                        let unit = BlockMatrix::unit(&self.shape, i, row, col, k as i64, ring.one());
                        let ok = self.phi_inv(&unit).and_then(|f| self.phi(&f)).is_ok_and(|back| back == unit);
                        inv.record(ok, || {
                            format!("{}*E_({},{}) in block {}", group.label(k as i64), row + 1, col + 1, i + 1)
                        });
                    }
                }
            }
        }
        for (a, image) in images.iter().enumerate() {
            let ok = image.clone().and_then(|img| self.phi_inv(&img)).is_ok_and(|back| back == basis(a));
            inv.record(ok, || format!("phi_inv(phi({})) differs", g.arrow_name(a)));
        }
        report.push(inv);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{GroupTable, IsotropyDescriptor};

    fn z(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::from_group(&GroupTable::cyclic(n), "*")
    }

    #[test]
    fn pair_over_q_is_m2() {
        let d = decompose(Arc::new(FiniteGroupoid::pair(2)), RingDescriptor::Rationals).unwrap();
        assert_eq!(d.shape().to_string(), "M_2(Q)");
        let r = d.verify();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.check("multiplicative").unwrap().total, 16);
    }

    #[test]
    fn one_object_group_is_its_group_ring() {
        let d = decompose(Arc::new(z(3)), RingDescriptor::Rationals).unwrap();
        assert_eq!(d.shape().to_string(), "M_1(Q[C_3])");
        assert!(d.verify().all_passed());
    }

    #[test]
    fn pair_times_z2_over_z_and_gf2() {
        let g = Arc::new(FiniteGroupoid::pair(2).product(&z(2)));
        for r in [RingDescriptor::Integers, RingDescriptor::GaloisField(2)] {
            let d = decompose(g.clone(), r).unwrap();
            assert_eq!(d.shape().blocks.len(), 1);
            assert_eq!(d.shape().blocks[0].0, 2);
            assert_eq!(*d.shape().blocks[0].1, IsotropyDescriptor::Finite(d.isotropy()[0].table.clone()));
            let rep = d.verify();
            assert!(rep.all_passed());
            assert_eq!(rep.check("multiplicative").unwrap().total, 64);
        }
    }

    #[test]
    fn frame_rules() {
        let g = Arc::new(FiniteGroupoid::pair(2).product(&z(2)));
        let d = decompose(g.clone(), RingDescriptor::Integers).unwrap();
        let frame = &d.frames()[0];
        let x = frame.basepoint;
        for &y in &frame.members {
            // identity at y goes to 1·E_yy
            let (_, row, col, k) = d.arrow_image(g.identity(y).unwrap()).unwrap();
            assert_eq!((row, col, k), (frame.position(y).unwrap(), frame.position(y).unwrap(), 0));
            // g_y goes to E_{y x} with trivial group part
            let (_, row, col, k) = d.arrow_image(frame.connecting[&y]).unwrap();
            assert_eq!((row, col, k), (frame.position(y).unwrap(), 0, 0));
        }
        // loops at the basepoint keep their group part
        for (k, &h) in d.isotropy()[0].elements.iter().enumerate() {
            assert_eq!(d.arrow_image(h).unwrap(), (0, 0, 0, k));
        }
        let _ = x;
    }

    #[test]
    fn phi_inv_of_matrix_units() {
        let g = Arc::new(FiniteGroupoid::pair(3));
        let d = decompose(g.clone(), RingDescriptor::Rationals).unwrap();
        let frame = &d.frames()[0];
        for (row, &zo) in frame.members.iter().enumerate() {
            for (col, &y) in frame.members.iter().enumerate() {
                let unit = BlockMatrix::unit(d.shape(), 0, row, col, 0, RingDescriptor::Rationals.one());
                let f = d.phi_inv(&unit).unwrap();
                let expected = g.compose(frame.connecting[&zo], g.inverse(frame.connecting[&y]).unwrap()).unwrap();
                assert_eq!(f, AlgebraElement::basis(g.clone(), RingDescriptor::Rationals, expected));
            }
        }
    }

    #[test]
    fn corrupted_frame_is_caught() {
        let g = Arc::new(FiniteGroupoid::pair(2).product(&z(2)));
        let d = decompose(g.clone(), RingDescriptor::GaloisField(2)).unwrap();
        let frame = d.frames()[0].clone();
        let y = frame.members[1];
        let true_inv = g.inverse(frame.connecting[&y]).unwrap();
        let wrong =
            (0..g.arrow_count()).find(|&a| g.dom(a) == y && g.cod(a) == frame.basepoint && a != true_inv).unwrap();
        let bad = d.override_return_arrow(y, wrong).unwrap();
        let rep = bad.verify();
        let mult = rep.check("multiplicative").unwrap();
        assert!(mult.passed < mult.total);
        assert!(!mult.witnesses.is_empty());
        assert!(!rep.all_passed());
    }

    #[test]
    fn invalid_groupoid_is_rejected() {
        let g = FiniteGroupoid::pair(2).without_inverse(1);
        assert!(matches!(decompose(Arc::new(g), RingDescriptor::Rationals), Err(AlgebraError::Groupoid(_))));
    }
}
