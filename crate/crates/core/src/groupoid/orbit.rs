//! Orbits, frames and isotropy groups.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::{FiniteGroupoid, GroupoidError};
use crate::rings::{GroupTable, IsotropyDescriptor};

/// One orbit together with its frame: a basepoint `x` and, for every member
/// `y`, a connecting arrow `g_y : x -> y` (with `g_x` the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Members in lexicographic order of their names; the basepoint is first.
    pub members: Vec<usize>,
    pub basepoint: usize,
    pub connecting: BTreeMap<usize, usize>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Row/column position of an object within the orbit's block.
    pub fn position(&self, object: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == object)
    }
}

/// Loops at one object with their induced (and re-verified) group table.
/// `elements[k]` is the arrow for table index `k`; the identity comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub object: usize,
    pub elements: Vec<usize>,
    pub table: GroupTable,
}

impl IsotropyGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Table index of a loop at the object.
    pub fn index_of(&self, arrow: usize) -> Option<usize> {
        self.elements.iter().position(|&a| a == arrow)
    }
}

/// Orbit size together with the isotropy of that orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub size: usize,
    pub isotropy: Arc<IsotropyDescriptor>,
}

/// Orbit-level summary of a groupoid: what the chain-condition verdicts
/// quantify over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredGroupoid {
    pub orbits: Vec<OrbitSummary>,
}

impl StructuredGroupoid {
    pub fn new(orbits: Vec<OrbitSummary>) -> Result<Self, GroupoidError> {
        if orbits.is_empty() {
            return Err(GroupoidError::Structure("a structured groupoid needs at least one orbit".into()));
        }
        if orbits.iter().any(|o| o.size == 0) {
            return Err(GroupoidError::Structure("orbit sizes must be positive".into()));
        }
        Ok(StructuredGroupoid { orbits })
    }

    /// `Σ n_i² |G_i|`, or `None` when some isotropy is infinite.
    pub fn cardinality(&self) -> Option<usize> {
        self.orbits.iter().map(|o| o.isotropy.order().map(|g| o.size * o.size * g)).sum()
    }

    pub fn object_count(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.orbits.iter().all(|o| o.isotropy.order().is_some())
    }
}

impl FiniteGroupoid {
    /// Objects sorted by name.
    pub fn sorted_objects(&self) -> Vec<usize> {
        let mut objs: Vec<usize> = (0..self.object_count()).collect();
        objs.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        objs
    }

    /// Connected components with deterministic frames: the basepoint is the
    /// least object name, connecting arrows come from a breadth-first search
    /// that scans outgoing arrows in name order. Orbits are listed by
    /// basepoint name. Assumes a valid groupoid.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); self.object_count()];
        for (a, arrow) in self.arrows.iter().enumerate() {
            outgoing[arrow.dom].push(a);
        }
        for list in &mut outgoing {
            list.sort_by(|&a, &b| self.arrows[a].name.cmp(&self.arrows[b].name));
        }
        let mut assigned = vec![false; self.object_count()];
        let mut out = Vec::new();
        for x in self.sorted_objects() {
            if assigned[x] {
                continue;
            }
            let id = self.identity(x).expect("valid groupoid has identities");
            let mut connecting = BTreeMap::from([(x, id)]);
            assigned[x] = true;
            let mut queue = VecDeque::from([x]);
            while let Some(c) = queue.pop_front() {
                let to_c = connecting[&c];
                for &a in &outgoing[c] {
                    let y = self.cod(a);
                    if assigned[y] {
                        continue;
                    }
                    assigned[y] = true;
                    let g_y = self.compose(a, to_c).expect("valid groupoid composes");
                    connecting.insert(y, g_y);
                    queue.push_back(y);
                }
            }
            let mut members: Vec<usize> = connecting.keys().copied().collect();
            members.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
            out.push(Orbit { members, basepoint: x, connecting });
        }
        out
    }

    /// The isotropy group at `object`, with the group axioms checked on the
    /// induced table.
    pub fn isotropy(&self, object: usize) -> Result<IsotropyGroup, GroupoidError> {
        if object >= self.object_count() {
            return Err(GroupoidError::UnknownObject(format!("#{object}")));
        }
        let name = self.objects[object].clone();
        let id = self.identity(object).ok_or_else(|| GroupoidError::Structure(format!("no identity at {name}")))?;
        let mut elements: Vec<usize> =
            (0..self.arrow_count()).filter(|&a| a != id && self.dom(a) == object && self.cod(a) == object).collect();
        elements.sort_by(|&a, &b| self.arrows[a].name.cmp(&self.arrows[b].name));
        elements.insert(0, id);
        let index = |a: usize| elements.iter().position(|&e| e == a);
        let mut table = Vec::with_capacity(elements.len());
        for &g in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for &h in &elements {
                let p = self.compose(g, h).and_then(index).ok_or_else(|| {
                    GroupoidError::Structure(format!("loops at {name} are not closed under composition"))
                })?;
                row.push(p);
            }
            table.push(row);
        }
        let labels = elements.iter().map(|&a| self.arrows[a].name.clone()).collect();
        let table = GroupTable::new(labels, table)
            .map_err(|source| GroupoidError::IsotropyNotGroup { object: name, source })?;
        Ok(IsotropyGroup { object, elements, table })
    }

    /// Checks that `h ↦ g_y⁻¹ h g_y` is an isomorphism from the isotropy at
    /// each member `y` onto the isotropy at the basepoint.
    pub fn conjugation_isomorphic(&self, orbit: &Orbit) -> Result<bool, GroupoidError> {
        let base = self.isotropy(orbit.basepoint)?;
        for &y in &orbit.members {
            let here = self.isotropy(y)?;
            if here.order() != base.order() {
                return Ok(false);
            }
            let g = orbit.connecting[&y];
            let g_inv = self.inverse(g).expect("valid groupoid");
            let image: Option<Vec<usize>> = here
                .elements
                .iter()
                .map(|&h| self.compose(h, g).and_then(|hg| self.compose(g_inv, hg)).and_then(|c| base.index_of(c)))
                .collect();
            let Some(image) = image else { return Ok(false) };
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != image.len() {
                return Ok(false);
            }
            let n = here.order();
            for a in 0..n {
                for b in 0..n {
                    if image[here.table.mul(a, b)] != base.table.mul(image[a], image[b]) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Per orbit: its size and the isotropy table at its basepoint.
    pub fn structured(&self) -> Result<StructuredGroupoid, GroupoidError> {
        let orbits = self
            .orbits()
            .iter()
            .map(|o| {
                let iso = self.isotropy(o.basepoint)?;
                Ok(OrbitSummary { size: o.size(), isotropy: Arc::new(IsotropyDescriptor::Finite(iso.table)) })
            })
            .collect::<Result<Vec<_>, GroupoidError>>()?;
        StructuredGroupoid::new(orbits)
    }
}
