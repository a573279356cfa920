//! Noetherian, Artinian and semisimple verdicts for groupoid algebras,
//! decided orbit by orbit from the ring's structural predicates.

use std::fmt;
use std::sync::Arc;

use crate::groupoid::StructuredGroupoid;
use crate::rings::{BlockShape, IsotropyDescriptor, RingDescriptor};

mod radical;

pub use radical::{algebra_radical, groupoid_structure_constants, radical_oracle, OracleError, RadicalReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    Noetherian,
    Artinian,
    Semisimple,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Noetherian => "noetherian",
            Property::Artinian => "artinian",
            Property::Semisimple => "semisimple",
        })
    }
}

/// The rule a verdict step rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Citation {
    /// `R[x, x⁻¹]` is Noetherian exactly when `R` is.
    HilbertBasis,
    /// `RG` is Artinian iff `R` is Artinian and `G` is finite.
    Connell,
    /// `RG` is semisimple iff `R` is semisimple and `|G|` is invertible in `R`.
    Maschke,
    /// A groupoid algebra with finitely many objects is Noetherian iff each
    /// isotropy group ring is.
    OrbitCriterion,
    /// `L_R(E)` is Noetherian iff `R` is and no cycle has an exit; Artinian
    /// or semisimple iff `R` is Artinian or a product of fields and `E` is
    /// acyclic.
    PathAlgebraCriterion,
}

impl Citation {
    pub fn tag(&self) -> &'static str {
        match self {
            Citation::HilbertBasis => "Hilbert basis",
            Citation::Connell => "Connell",
            Citation::Maschke => "Maschke",
            Citation::OrbitCriterion => "groupoid Noetherian criterion",
            Citation::PathAlgebraCriterion => "Leavitt path algebra criterion",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.tag())
    }
}

/// One applied rule: which property it bears on, whether it holds, and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub property: Property,
    pub holds: bool,
    pub citation: Citation,
    pub detail: String,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.citation, self.property, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub noetherian: bool,
    pub artinian: bool,
    pub semisimple: bool,
    /// Absent when the algebra has no finite block decomposition.
    pub shape: Option<BlockShape>,
    pub justification: Vec<Justification>,
}

impl Verdict {
    pub fn get(&self, p: Property) -> bool {
        match p {
            Property::Noetherian => self.noetherian,
            Property::Artinian => self.artinian,
            Property::Semisimple => self.semisimple,
        }
    }

    /// `(n_i, isotropy, entry ring)` per orbit.
    pub fn decomposition_shape(&self) -> Vec<(usize, Arc<IsotropyDescriptor>, String)> {
        let Some(shape) = &self.shape else { return Vec::new() };
        shape.blocks.iter().map(|(n, g)| (*n, g.clone(), BlockShape::entry_ring(&shape.ring, g))).collect()
    }

    /// Justifications bearing on one property.
    pub fn reasons(&self, p: Property) -> impl Iterator<Item = &Justification> {
        self.justification.iter().filter(move |j| j.property == p)
    }

    /// Distinct citations for one property, in a fixed order.
    pub fn citations(&self, p: Property) -> Vec<Citation> {
        let mut cs: Vec<Citation> = self.reasons(p).map(|j| j.citation).collect();
        cs.sort();
        cs.dedup();
        cs
    }
}

/// Decides the three chain conditions for `R𝒢` from the orbit structure.
pub fn verdicts(sg: &StructuredGroupoid, r: &RingDescriptor) -> Verdict {
    let preds = r.predicates();
    let mut why = Vec::new();

    let mut noetherian = true;
    for (i, o) in sg.orbits.iter().enumerate() {
        let holds = preds.noetherian;
        noetherian &= holds;
        let (citation, detail) = match &*o.isotropy {
            IsotropyDescriptor::Integers => (
                Citation::HilbertBasis,
                format!(
                    "orbit {} has isotropy Z, so its group ring {} is Noetherian iff {r} is ({})",
                    i + 1,
                    RingDescriptor::laurent(r.clone()),
                    if holds { "it is" } else { "it is not" }
                ),
            ),
            IsotropyDescriptor::Finite(t) => (
                Citation::OrbitCriterion,
                format!(
                    "orbit {} has finite isotropy {}, a finitely generated {r}-module, Noetherian iff {r} is ({})",
                    i + 1,
                    t.class_name(),
                    if holds { "it is" } else { "it is not" }
                ),
            ),
        };
        why.push(Justification { property: Property::Noetherian, holds, citation, detail });
    }
    why.push(Justification {
        property: Property::Noetherian,
        holds: noetherian,
        citation: Citation::OrbitCriterion,
        detail: format!(
            "{} object(s) in {} orbit(s); every isotropy group ring must be Noetherian",
            sg.object_count(),
            sg.orbits.len()
        ),
    });

    let infinite: Vec<usize> =
        sg.orbits.iter().enumerate().filter(|(_, o)| o.isotropy.order().is_none()).map(|(i, _)| i + 1).collect();
    let artinian = preds.artinian && infinite.is_empty();
    let detail = if !preds.artinian {
        format!("{r} is not Artinian")
    } else if !infinite.is_empty() {
        format!("isotropy of orbit(s) {infinite:?} is infinite")
    } else {
        format!("{r} is Artinian and every isotropy group is finite")
    };
    why.push(Justification { property: Property::Artinian, holds: artinian, citation: Citation::Connell, detail });

    let mut semisimple = preds.field_product && infinite.is_empty();
    let detail = if !preds.field_product {
        format!("{r} is not a finite product of fields")
    } else if !infinite.is_empty() {
        format!("isotropy of orbit(s) {infinite:?} is infinite")
    } else {
        let mut clash = None;
        'outer: for &p in preds.characteristics.iter().filter(|&&p| p != 0) {
            for o in &sg.orbits {
                let n = o.isotropy.order().expect("finite isotropy");
                if (n as u64).is_multiple_of(p) {
                    clash = Some(format!("char {p} divides |{}| = {n}", o.isotropy.class_name()));
                    break 'outer;
                }
            }
        }
        match clash {
            Some(c) => {
                semisimple = false;
                c
            }
            None => {
                let orders: Vec<String> = sg.orbits.iter().map(|o| o.isotropy.order().unwrap().to_string()).collect();
                let chars: Vec<String> = preds.characteristics.iter().map(u64::to_string).collect();
                format!(
                    "no characteristic in {{{}}} divides any isotropy order in {{{}}}",
                    chars.join(", "),
                    orders.join(", ")
                )
            }
        }
    };
    why.push(Justification { property: Property::Semisimple, holds: semisimple, citation: Citation::Maschke, detail });

    let shape = BlockShape::new(r.clone(), sg.orbits.iter().map(|o| (o.size, o.isotropy.clone())).collect());
    Verdict { noetherian, artinian, semisimple, shape: Some(shape), justification: why }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::OrbitSummary;
    use crate::rings::{parse_ring_descriptor, GroupTable};

    fn sg(orbits: &[(usize, Option<usize>)]) -> StructuredGroupoid {
        StructuredGroupoid::new(
            orbits
                .iter()
                .map(|&(size, g)| OrbitSummary {
                    size,
                    isotropy: Arc::new(match g {
                        Some(n) => IsotropyDescriptor::Finite(GroupTable::cyclic(n)),
                        None => IsotropyDescriptor::Integers,
                    }),
                })
                .collect(),
        )
        .unwrap()
    }

    fn triple(v: &Verdict) -> (bool, bool, bool) {
        (v.noetherian, v.artinian, v.semisimple)
    }

    #[test]
    fn documented_examples() {
        let ring = |s: &str| parse_ring_descriptor(s).unwrap();
        assert_eq!(triple(&verdicts(&sg(&[(1, Some(2))]), &ring("Q"))), (true, true, true));
        assert_eq!(triple(&verdicts(&sg(&[(1, Some(2))]), &ring("GF(2)"))), (true, true, false));
        assert_eq!(triple(&verdicts(&sg(&[(1, None)]), &ring("Q"))), (true, false, false));
        assert_eq!(triple(&verdicts(&sg(&[(2, Some(1)), (1, None)]), &ring("Z"))), (true, false, false));
    }

    #[test]
    fn squarefree_modular_rings_test_each_prime() {
        let z6 = RingDescriptor::ModularIntegers(6);
        assert!(verdicts(&sg(&[(2, Some(5))]), &z6).semisimple);
        assert!(!verdicts(&sg(&[(2, Some(3))]), &z6).semisimple);
        assert!(!verdicts(&sg(&[(1, Some(1))]), &RingDescriptor::ModularIntegers(4)).semisimple);
    }

    #[test]
    fn justification_mentions_divisibility() {
        let v = verdicts(&sg(&[(1, Some(2))]), &RingDescriptor::GaloisField(2));
        let s: Vec<String> = v.reasons(Property::Semisimple).map(|j| j.to_string()).collect();
        assert_eq!(s, vec!["[Maschke] semisimple: char 2 divides |C_2| = 2"]);
        assert_eq!(v.shape.unwrap().to_string(), "M_1(GF(2)[C_2])");
    }

    fn arb_ring() -> impl proptest::strategy::Strategy<Value = RingDescriptor> {
        use proptest::prelude::*;
        let leaf = prop_oneof![
            Just(RingDescriptor::Integers),
            Just(RingDescriptor::Rationals),
            prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(RingDescriptor::GaloisField),
            (2u64..13).prop_map(RingDescriptor::ModularIntegers),
        ];
        prop_oneof![
            3 => leaf.clone(),
            1 => leaf.clone().prop_map(RingDescriptor::laurent),
            1 => prop::collection::vec(leaf, 2..4).prop_map(RingDescriptor::Product),
        ]
    }

    proptest::proptest! {
        #[test]
        fn implications_and_citations(
            orbits in proptest::collection::vec((1usize..4, proptest::option::weighted(0.8, 1usize..7)), 1..4),
            r in arb_ring(),
        ) {
            let v = verdicts(&sg(&orbits), &r);
            proptest::prop_assert!(!v.semisimple || v.artinian);
            proptest::prop_assert!(!v.artinian || v.noetherian);
            proptest::prop_assert_eq!(v.decomposition_shape().len(), orbits.len());
            for p in [Property::Noetherian, Property::Artinian, Property::Semisimple] {
                proptest::prop_assert!(v.reasons(p).next().is_some());
            }
            if orbits.iter().any(|(_, g)| g.is_none()) {
                proptest::prop_assert!(!v.artinian);
            }
        }

        #[test]
        fn dividing_characteristic_breaks_semisimplicity(n in 2usize..9, size in 1usize..4) {
            let s = sg(&[(size, Some(n))]);
            proptest::prop_assert!(verdicts(&s, &RingDescriptor::Rationals).semisimple);
            let p = crate::rings::prime_divisors(n as u64)[0];
            proptest::prop_assert!(!verdicts(&s, &RingDescriptor::GaloisField(p)).semisimple);
        }
    }
}
