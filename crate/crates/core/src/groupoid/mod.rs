//! Finite discrete groupoids given by explicit composition tables.
//!
//! A [`FiniteGroupoid`] is only structurally well formed when it is built or
//! parsed: every name resolves and every recorded composition is between
//! composable arrows. The groupoid axioms are checked separately by
//! [`FiniteGroupoid::validate`], which reports every violation it finds.

mod build;
mod orbit;
mod parse;

pub use build::subgroups;
pub use orbit::{IsotropyGroup, Orbit, OrbitSummary, StructuredGroupoid};
pub use parse::parse_groupoid;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::rings::GroupError;
use crate::text::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("groupoid axioms fail ({} violation(s)); first: {}", .0.len(), .0[0])]
    Invalid(Vec<Violation>),
    #[error("unknown object '{0}'")]
    UnknownObject(String),
    #[error("unknown arrow '{0}'")]
    UnknownArrow(String),
    #[error("{0}")]
    Structure(String),
    #[error("isotropy at '{object}' is not a group: {source}")]
    IsotropyNotGroup { object: String, source: GroupError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// An axiom violation with its witness, named by arrow and object names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    MissingIdentity { object: String },
    IdentityNotLoop { object: String, arrow: String },
    MissingComposition { left: String, right: String },
    EndpointMismatch { left: String, right: String, product: String },
    IdentityLaw { identity: String, arrow: String },
    Associativity { f: String, g: String, h: String, left: String, right: String },
    MissingInverse { arrow: String },
    InverseLaw { arrow: String, inverse: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingIdentity { object } => {
                write!(f, "identity law: no identity declared for object {object}")
            }
            Violation::IdentityNotLoop { object, arrow } => {
                write!(f, "identity law: identity {arrow} of {object} is not a loop at {object}")
            }
            Violation::MissingComposition { left, right } => {
                write!(f, "composition missing for composable pair ({left}, {right})")
            }
            Violation::EndpointMismatch { left, right, product } => {
                write!(f, "dom/cod mismatch: {left}*{right} = {product} has wrong endpoints")
            }
            Violation::IdentityLaw { identity, arrow } => {
                write!(f, "identity law: {identity} is not neutral for {arrow}")
            }
            Violation::Associativity { f: a, g, h, left, right } => {
                write!(f, "associativity: ({a}*{g})*{h} = {left} but {a}*({g}*{h}) = {right}")
            }
            Violation::MissingInverse { arrow } => write!(f, "inverse law: no inverse declared for {arrow}"),
            Violation::InverseLaw { arrow, inverse } => {
                write!(f, "inverse law: {inverse} is not a two-sided inverse of {arrow}")
            }
        }
    }
}

/// Objects, arrows, identities, a partial composition table and inverses.
///
/// `compose(g, h)` is `g ∘ h`, recorded only when `dom(g) = cod(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<Option<usize>>,
    composition: BTreeMap<(usize, usize), usize>,
    inverses: Vec<Option<usize>>,
}

/// Name-based construction of a [`FiniteGroupoid`].
#[derive(Debug, Default, Clone)]
pub struct GroupoidBuilder {
    objects: Vec<String>,
    object_index: BTreeMap<String, usize>,
    arrows: Vec<Arrow>,
    arrow_index: BTreeMap<String, usize>,
    identities: BTreeMap<usize, usize>,
    composition: BTreeMap<(usize, usize), usize>,
    inverses: BTreeMap<usize, usize>,
}

impl GroupoidBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> Result<usize, GroupoidError> {
        if self.object_index.contains_key(name) {
            return Err(GroupoidError::Structure(format!("object '{name}' declared twice")));
        }
        let i = self.objects.len();
        self.objects.push(name.to_string());
        self.object_index.insert(name.to_string(), i);
        Ok(i)
    }

    fn object_id(&self, name: &str) -> Result<usize, GroupoidError> {
        self.object_index.get(name).copied().ok_or_else(|| GroupoidError::UnknownObject(name.into()))
    }

    fn arrow_id(&self, name: &str) -> Result<usize, GroupoidError> {
        self.arrow_index.get(name).copied().ok_or_else(|| GroupoidError::UnknownArrow(name.into()))
    }

    pub fn arrow(&mut self, name: &str, dom: &str, cod: &str) -> Result<usize, GroupoidError> {
        if self.arrow_index.contains_key(name) {
            return Err(GroupoidError::Structure(format!("arrow '{name}' declared twice")));
        }
        let (dom, cod) = (self.object_id(dom)?, self.object_id(cod)?);
        let i = self.arrows.len();
        self.arrows.push(Arrow { name: name.to_string(), dom, cod });
        self.arrow_index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn identity(&mut self, object: &str, arrow: &str) -> Result<(), GroupoidError> {
        let (o, a) = (self.object_id(object)?, self.arrow_id(arrow)?);
        if self.identities.insert(o, a).is_some() {
            return Err(GroupoidError::Structure(format!("identity of '{object}' declared twice")));
        }
        Ok(())
    }

    /// Records `left ∘ right = product`; the pair must be composable.
    pub fn compose(&mut self, left: &str, right: &str, product: &str) -> Result<(), GroupoidError> {
        let (g, h, p) = (self.arrow_id(left)?, self.arrow_id(right)?, self.arrow_id(product)?);
        if self.arrows[g].dom != self.arrows[h].cod {
            return Err(GroupoidError::Structure(format!(
                "'{left}' and '{right}' are not composable: dom({left}) = {} but cod({right}) = {}",
                self.objects[self.arrows[g].dom], self.objects[self.arrows[h].cod]
            )));
        }
        if self.composition.insert((g, h), p).is_some() {
            return Err(GroupoidError::Structure(format!("composition {left} {right} given twice")));
        }
        Ok(())
    }

    pub fn inverse(&mut self, arrow: &str, inverse: &str) -> Result<(), GroupoidError> {
        let (a, b) = (self.arrow_id(arrow)?, self.arrow_id(inverse)?);
        if self.inverses.insert(a, b).is_some() {
            return Err(GroupoidError::Structure(format!("inverse of '{arrow}' declared twice")));
        }
        Ok(())
    }

    pub fn build(self) -> FiniteGroupoid {
        let n = self.objects.len();
        let m = self.arrows.len();
        FiniteGroupoid {
            identities: (0..n).map(|o| self.identities.get(&o).copied()).collect(),
            inverses: (0..m).map(|a| self.inverses.get(&a).copied()).collect(),
            objects: self.objects,
            arrows: self.arrows,
            composition: self.composition,
        }
    }
}

impl FiniteGroupoid {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn dom(&self, a: usize) -> usize {
        self.arrows[a].dom
    }

    pub fn cod(&self, a: usize) -> usize {
        self.arrows[a].cod
    }

    pub fn identity(&self, object: usize) -> Option<usize> {
        self.identities[object]
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverses[a]
    }

    /// `g ∘ h`, when recorded.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.composition.get(&(g, h)).copied()
    }

    /// Identity arrows, one per object with a declared identity.
    pub fn identity_arrows(&self) -> impl Iterator<Item = usize> + '_ {
        self.identities.iter().flatten().copied()
    }

    /// Every axiom violation, found by exhaustive search over all arrows,
    /// pairs and composable triples. Empty means the groupoid is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let name = |a: usize| self.arrows[a].name.clone();
        let m = self.arrows.len();

        for (o, id) in self.identities.iter().enumerate() {
            match id {
                None => out.push(Violation::MissingIdentity { object: self.objects[o].clone() }),
                Some(a) if self.dom(*a) != o || self.cod(*a) != o => {
                    out.push(Violation::IdentityNotLoop { object: self.objects[o].clone(), arrow: name(*a) })
                }
                _ => {}
            }
        }

        for g in 0..m {
            for h in 0..m {
                if self.dom(g) != self.cod(h) {
                    continue;
                }
                match self.compose(g, h) {
                    None => out.push(Violation::MissingComposition { left: name(g), right: name(h) }),
                    Some(p) if self.dom(p) != self.dom(h) || self.cod(p) != self.cod(g) => {
                        out.push(Violation::EndpointMismatch { left: name(g), right: name(h), product: name(p) })
                    }
                    _ => {}
                }
            }
        }

        for g in 0..m {
            if let Some(id) = self.identities[self.dom(g)] {
                if self.dom(id) == self.cod(id) && self.compose(g, id).is_some_and(|p| p != g) {
                    out.push(Violation::IdentityLaw { identity: name(id), arrow: name(g) });
                }
            }
            if let Some(id) = self.identities[self.cod(g)] {
                if self.dom(id) == self.cod(id) && self.compose(id, g).is_some_and(|p| p != g) {
                    out.push(Violation::IdentityLaw { identity: name(id), arrow: name(g) });
                }
            }
        }

        for f in 0..m {
            for g in 0..m {
                if self.dom(f) != self.cod(g) {
                    continue;
                }
                let Some(fg) = self.compose(f, g) else { continue };
                for h in 0..m {
                    if self.dom(g) != self.cod(h) {
                        continue;
                    }
                    let Some(gh) = self.compose(g, h) else { continue };
                    let (Some(l), Some(r)) = (self.compose(fg, h), self.compose(f, gh)) else { continue };
                    if l != r {
                        out.push(Violation::Associativity {
                            f: name(f),
                            g: name(g),
                            h: name(h),
                            left: name(l),
                            right: name(r),
                        });
                    }
                }
            }
        }

        for g in 0..m {
            let Some(inv) = self.inverses[g] else {
                out.push(Violation::MissingInverse { arrow: name(g) });
                continue;
            };
            let left_ok = self.compose(inv, g).is_some_and(|p| Some(p) == self.identities[self.dom(g)]);
            let right_ok = self.compose(g, inv).is_some_and(|p| Some(p) == self.identities[self.cod(g)]);
            if !(left_ok && right_ok) {
                out.push(Violation::InverseLaw { arrow: name(g), inverse: name(inv) });
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn ensure_valid(&self) -> Result<(), GroupoidError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(GroupoidError::Invalid(violations))
        }
    }

    /// Rendering in the groupoid text format; parses back to an equal value.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("objects: {}\n", self.objects.join(" ")));
        for a in &self.arrows {
            s.push_str(&format!("arrow {} : {} -> {}\n", a.name, self.objects[a.dom], self.objects[a.cod]));
        }
        for (o, id) in self.identities.iter().enumerate() {
            if let Some(id) = id {
                s.push_str(&format!("identity {} = {}\n", self.objects[o], self.arrows[*id].name));
            }
        }
        for ((g, h), p) in &self.composition {
            s.push_str(&format!(
                "compose {} {} = {}\n",
                self.arrows[*g].name, self.arrows[*h].name, self.arrows[*p].name
            ));
        }
        for (a, inv) in self.inverses.iter().enumerate() {
            if let Some(inv) = inv {
                s.push_str(&format!("inverse {} = {}\n", self.arrows[a].name, self.arrows[*inv].name));
            }
        }
        s
    }

    /// Replaces one composition entry; used to build corrupted fixtures.
    pub fn with_composition(mut self, g: usize, h: usize, product: usize) -> Self {
        assert_eq!(self.dom(g), self.cod(h), "corrupted entries must stay composable");
        self.composition.insert((g, h), product);
        self
    }

    /// Drops one inverse declaration; used to build corrupted fixtures.
    pub fn without_inverse(mut self, a: usize) -> Self {
        self.inverses[a] = None;
        self
    }
}
