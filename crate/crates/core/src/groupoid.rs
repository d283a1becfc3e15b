//! Finite categories and groupoids given by explicit composition tables.
//!
//! Objects and morphisms are addressed by dense indices so they can index
//! straight into matrices; names are kept for display and diagnostics.
//! Composition follows the usual convention: `compose(s, t) = st` is defined
//! exactly when `dom(s) = cod(t)`, and then `dom(st) = dom(t)`,
//! `cod(st) = cod(s)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default guard for exhaustive subgroupoid enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjectId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorphismId(pub usize);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorphismId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjectId,
    pub cod: ObjectId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// Unvalidated category description, by names.
///
/// `identities` maps an object to its identity morphism; objects missing
/// from it default to the morphism carrying the object's own name.
/// `compose` lists triples `[s, t, st]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDescription {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("object {0:?} is declared twice")]
    DuplicateObject(String),
    #[error("morphism {0:?} is declared twice")]
    DuplicateMorphism(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("object {object:?} has no identity morphism")]
    MissingIdentity { object: String },
    #[error("identity {morphism:?} of object {object:?} is not a loop at that object")]
    IdentityNotLoop { object: String, morphism: String },
    #[error("composite {s}·{t} is listed but dom({s}) != cod({t})")]
    NotComposable { s: String, t: String },
    #[error("composite {s}·{t} is listed twice with different values")]
    ConflictingComposite { s: String, t: String },
    #[error("missing composite {s}·{t}")]
    MissingComposite { s: String, t: String },
    #[error("identity law fails: {s} composed with identity {identity} gives {got}")]
    BrokenIdentity { s: String, identity: String, got: String },
    #[error("associativity fails on ({s}, {t}, {u}): ({s}{t}){u} = {left}, {s}({t}{u}) = {right}")]
    BrokenAssociativity {
        s: String,
        t: String,
        u: String,
        left: String,
        right: String,
    },
    #[error("composite {s}·{t} = {st} has the wrong domain or codomain")]
    IllTypedComposite { s: String, t: String, st: String },
    #[error("not a groupoid: no two-sided inverse for {}", .morphisms.join(", "))]
    NotAGroupoid { morphisms: Vec<String> },
    #[error("declared inverse of {morphism:?} is {declared:?}, but the table gives {actual:?}")]
    InverseMismatch {
        morphism: String,
        declared: String,
        actual: String,
    },
    #[error("{morphisms} morphisms exceed the enumeration limit of {limit}")]
    TooLarge { morphisms: usize, limit: usize },
}

/// A validated finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphismId>,
    table: Vec<Option<MorphismId>>,
}

/// Checks the category axioms, reporting the first violation with witnesses.
///
/// Order of checks: declarations, missing composites, identity laws,
/// associativity, then domain/codomain bookkeeping of composites.
pub fn validate_category(raw: &CategoryDescription) -> Result<FiniteCategory, CategoryError> {
    let mut object_ids = HashMap::new();
    for (i, name) in raw.objects.iter().enumerate() {
        if object_ids.insert(name.as_str(), ObjectId(i)).is_some() {
            return Err(CategoryError::DuplicateObject(name.clone()));
        }
    }
    let object = |name: &str| {
        object_ids
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    };

    let mut morphism_ids = HashMap::new();
    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    for (i, decl) in raw.morphisms.iter().enumerate() {
        if morphism_ids.insert(decl.name.as_str(), MorphismId(i)).is_some() {
            return Err(CategoryError::DuplicateMorphism(decl.name.clone()));
        }
        morphisms.push(Morphism {
            name: decl.name.clone(),
            dom: object(&decl.dom)?,
            cod: object(&decl.cod)?,
        });
    }
    let morphism = |name: &str| {
        morphism_ids
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
    };

    for key in raw.identities.keys() {
        object(key)?;
    }
    let mut identities = Vec::with_capacity(raw.objects.len());
    for (i, name) in raw.objects.iter().enumerate() {
        let id_name = raw.identities.get(name).unwrap_or(name);
        let id = morphism_ids
            .get(id_name.as_str())
            .copied()
            .ok_or_else(|| CategoryError::MissingIdentity { object: name.clone() })?;
        let m = &morphisms[id.0];
        if m.dom != ObjectId(i) || m.cod != ObjectId(i) {
            return Err(CategoryError::IdentityNotLoop {
                object: name.clone(),
                morphism: id_name.clone(),
            });
        }
        identities.push(id);
    }

    let n = morphisms.len();
    let mut table = vec![None; n * n];
    for [s, t, st] in &raw.compose {
        let (si, ti, sti) = (morphism(s)?, morphism(t)?, morphism(st)?);
        if morphisms[si.0].dom != morphisms[ti.0].cod {
            return Err(CategoryError::NotComposable {
                s: s.clone(),
                t: t.clone(),
            });
        }
        match table[si.0 * n + ti.0] {
            Some(prev) if prev != sti => {
                return Err(CategoryError::ConflictingComposite {
                    s: s.clone(),
                    t: t.clone(),
                })
            }
            _ => table[si.0 * n + ti.0] = Some(sti),
        }
    }

    let category = FiniteCategory {
        objects: raw.objects.clone(),
        morphisms,
        identities,
        table,
    };
    category.check_axioms()?;
    Ok(category)
}

impl FiniteCategory {
    fn check_axioms(&self) -> Result<(), CategoryError> {
        let name = |m: MorphismId| self.morphisms[m.0].name.clone();
        let opt_name = |m: Option<MorphismId>| m.map_or_else(|| "undefined".to_string(), name);
        let all = || self.morphism_ids();

        for s in all() {
            for t in all() {
                if self.composable(s, t) && self.compose(s, t).is_none() {
                    return Err(CategoryError::MissingComposite { s: name(s), t: name(t) });
                }
            }
        }
        for s in all() {
            let right = self.identity(self.dom(s));
            let left = self.identity(self.cod(s));
            for (got, identity) in [(self.compose(s, right), right), (self.compose(left, s), left)] {
                if got != Some(s) {
                    return Err(CategoryError::BrokenIdentity {
                        s: name(s),
                        identity: name(identity),
                        got: opt_name(got),
                    });
                }
            }
        }
        for s in all() {
            for t in all().filter(|&t| self.composable(s, t)) {
                for u in all().filter(|&u| self.composable(t, u)) {
                    let left = self.compose(s, t).and_then(|st| self.compose(st, u));
                    let right = self.compose(t, u).and_then(|tu| self.compose(s, tu));
                    if left != right {
                        return Err(CategoryError::BrokenAssociativity {
                            s: name(s),
                            t: name(t),
                            u: name(u),
                            left: opt_name(left),
                            right: opt_name(right),
                        });
                    }
                }
            }
        }
        for s in all() {
            for t in all() {
                if let Some(st) = self.compose(s, t) {
                    if self.dom(st) != self.dom(t) || self.cod(st) != self.cod(s) {
                        return Err(CategoryError::IllTypedComposite {
                            s: name(s),
                            t: name(t),
                            st: name(st),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjectId> + Clone {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorphismId> + Clone {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn object_name(&self, e: ObjectId) -> &str {
        &self.objects[e.0]
    }

    pub fn morphism(&self, s: MorphismId) -> &Morphism {
        &self.morphisms[s.0]
    }

    pub fn name(&self, s: MorphismId) -> &str {
        &self.morphisms[s.0].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name).map(ObjectId)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorphismId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorphismId)
    }

    pub fn dom(&self, s: MorphismId) -> ObjectId {
        self.morphisms[s.0].dom
    }

    pub fn cod(&self, s: MorphismId) -> ObjectId {
        self.morphisms[s.0].cod
    }

    pub fn identity(&self, e: ObjectId) -> MorphismId {
        self.identities[e.0]
    }

    pub fn is_identity(&self, s: MorphismId) -> bool {
        self.identities[self.dom(s).0] == s
    }

    /// The object whose identity is `s`, if any.
    pub fn identity_object(&self, s: MorphismId) -> Option<ObjectId> {
        self.is_identity(s).then(|| self.dom(s))
    }

    pub fn composable(&self, s: MorphismId, t: MorphismId) -> bool {
        self.dom(s) == self.cod(t)
    }

    /// `st`, defined iff `dom(s) = cod(t)`.
    pub fn compose(&self, s: MorphismId, t: MorphismId) -> Option<MorphismId> {
        self.table[s.0 * self.morphisms.len() + t.0]
    }

    /// Morphisms `s` with `cod(s) = cod` and `dom(s) = dom`, in id order.
    pub fn hom_set(&self, cod: ObjectId, dom: ObjectId) -> Result<Vec<MorphismId>, CategoryError> {
        for e in [cod, dom] {
            if e.0 >= self.objects.len() {
                return Err(CategoryError::UnknownObject(format!("#{}", e.0)));
            }
        }
        Ok(self
            .morphism_ids()
            .filter(|&s| self.cod(s) == cod && self.dom(s) == dom)
            .collect())
    }

    /// Loops at `e` (the monoid `G_e`).
    pub fn loops(&self, e: ObjectId) -> Vec<MorphismId> {
        self.hom_set(e, e).unwrap_or_default()
    }

    /// Left and right cancellation in the composition table.
    pub fn is_cancellative(&self) -> Result<(), CancellationFailure> {
        let all = || self.morphism_ids();
        // epic: t1 s = t2 s  =>  t1 = t2
        for s in all() {
            for t1 in all() {
                for t2 in all().filter(|&t2| t2 != t1) {
                    if let (Some(a), Some(b)) = (self.compose(t1, s), self.compose(t2, s)) {
                        if a == b {
                            return Err(CancellationFailure::NotEpic { s, left: [t1, t2] });
                        }
                    }
                }
            }
        }
        // monic: s t1 = s t2  =>  t1 = t2
        for s in all() {
            for t1 in all() {
                for t2 in all().filter(|&t2| t2 != t1) {
                    if let (Some(a), Some(b)) = (self.compose(s, t1), self.compose(s, t2)) {
                        if a == b {
                            return Err(CancellationFailure::NotMonic { s, right: [t1, t2] });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Finds two-sided inverses for every morphism.
    pub fn as_groupoid(&self) -> Result<FiniteGroupoid, CategoryError> {
        let mut inverse = Vec::with_capacity(self.morphisms.len());
        let mut missing = Vec::new();
        for s in self.morphism_ids() {
            let found = self.morphism_ids().find(|&t| {
                self.compose(s, t) == Some(self.identity(self.cod(s)))
                    && self.compose(t, s) == Some(self.identity(self.dom(s)))
            });
            match found {
                Some(t) => inverse.push(t),
                None => missing.push(self.name(s).to_string()),
            }
        }
        if !missing.is_empty() {
            return Err(CategoryError::NotAGroupoid { morphisms: missing });
        }
        Ok(FiniteGroupoid {
            category: self.clone(),
            inverse,
        })
    }

    /// Round-trips back to a named description with a complete composition list.
    pub fn to_description(&self) -> CategoryDescription {
        let identities = self
            .object_ids()
            .filter(|&e| self.name(self.identity(e)) != self.object_name(e))
            .map(|e| (self.object_name(e).to_string(), self.name(self.identity(e)).to_string()))
            .collect();
        let mut compose = Vec::new();
        for s in self.morphism_ids() {
            for t in self.morphism_ids() {
                if let Some(st) = self.compose(s, t) {
                    compose.push([
                        self.name(s).to_string(),
                        self.name(t).to_string(),
                        self.name(st).to_string(),
                    ]);
                }
            }
        }
        CategoryDescription {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismDecl {
                    name: m.name.clone(),
                    dom: self.objects[m.dom.0].clone(),
                    cod: self.objects[m.cod.0].clone(),
                })
                .collect(),
            identities,
            compose,
        }
    }
}

/// Witness that a category is not cancellative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CancellationFailure {
    /// `left[0]·s = left[1]·s` with distinct left factors.
    NotEpic { s: MorphismId, left: [MorphismId; 2] },
    /// `s·right[0] = s·right[1]` with distinct right factors.
    NotMonic { s: MorphismId, right: [MorphismId; 2] },
}

impl CancellationFailure {
    pub fn describe(&self, cat: &FiniteCategory) -> String {
        match self {
            CancellationFailure::NotEpic { s, left } => format!(
                "{}{} = {}{} with {} != {}",
                cat.name(left[0]),
                cat.name(*s),
                cat.name(left[1]),
                cat.name(*s),
                cat.name(left[0]),
                cat.name(left[1])
            ),
            CancellationFailure::NotMonic { s, right } => format!(
                "{}{} = {}{} with {} != {}",
                cat.name(*s),
                cat.name(right[0]),
                cat.name(*s),
                cat.name(right[1]),
                cat.name(right[0]),
                cat.name(right[1])
            ),
        }
    }
}

/// A validated category in which every morphism is invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    category: FiniteCategory,
    inverse: Vec<MorphismId>,
}

impl Deref for FiniteGroupoid {
    type Target = FiniteCategory;

    fn deref(&self) -> &FiniteCategory {
        &self.category
    }
}

impl FiniteGroupoid {
    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn inverse(&self, s: MorphismId) -> MorphismId {
        self.inverse[s.0]
    }

    /// Checks a declared inverse table (by names) against the computed one.
    pub fn check_declared_inverses(&self, declared: &BTreeMap<String, String>) -> Result<(), CategoryError> {
        for (s, inv) in declared {
            let sid = self
                .morphism_by_name(s)
                .ok_or_else(|| CategoryError::UnknownMorphism(s.clone()))?;
            let actual = self.name(self.inverse(sid));
            if actual != inv {
                return Err(CategoryError::InverseMismatch {
                    morphism: s.clone(),
                    declared: inv.clone(),
                    actual: actual.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Objects linked by a morphism share a block; returns the full
    /// subgroupoid on each block, ordered by smallest object id.
    pub fn connected_components(&self) -> Vec<Subgroupoid> {
        let n = self.object_count();
        let mut block = vec![usize::MAX; n];
        let mut blocks = 0;
        for start in 0..n {
            if block[start] != usize::MAX {
                continue;
            }
            block[start] = blocks;
            let mut queue = VecDeque::from([start]);
            while let Some(e) = queue.pop_front() {
                for s in self.morphism_ids() {
                    let (d, c) = (self.dom(s).0, self.cod(s).0);
                    for (from, to) in [(d, c), (c, d)] {
                        if from == e && block[to] == usize::MAX {
                            block[to] = blocks;
                            queue.push_back(to);
                        }
                    }
                }
            }
            blocks += 1;
        }
        (0..blocks)
            .map(|b| Subgroupoid {
                morphisms: self.morphism_ids().filter(|&s| block[self.dom(s).0] == b).collect(),
            })
            .collect()
    }

    /// Smallest subgroupoid containing `generators`: closed under
    /// composition and inverses, with identities of every touched object.
    pub fn closure(&self, generators: impl IntoIterator<Item = MorphismId>) -> Subgroupoid {
        let mut members: BTreeSet<MorphismId> = BTreeSet::new();
        let mut queue: VecDeque<MorphismId> = generators.into_iter().collect();
        while let Some(s) = queue.pop_front() {
            if !members.insert(s) {
                continue;
            }
            let mut new = vec![self.inverse(s), self.identity(self.dom(s)), self.identity(self.cod(s))];
            for &t in &members {
                new.extend(self.compose(s, t));
                new.extend(self.compose(t, s));
            }
            queue.extend(new.into_iter().filter(|m| !members.contains(m)));
        }
        Subgroupoid {
            morphisms: members.into_iter().collect(),
        }
    }

    pub fn is_subgroupoid(&self, candidate: &[MorphismId]) -> bool {
        let set: BTreeSet<MorphismId> = candidate.iter().copied().collect();
        !set.is_empty() && self.closure(set.iter().copied()).len() == set.len()
    }

    /// All subgroupoids, sorted by size then by morphism ids.
    ///
    /// Every subgroupoid is reached by adjoining one generator at a time to
    /// a smaller one, so a breadth-first search over closures is exhaustive.
    pub fn enumerate_subgroupoids(&self, limit: usize) -> Result<Vec<Subgroupoid>, CategoryError> {
        if self.morphism_count() > limit {
            return Err(CategoryError::TooLarge {
                morphisms: self.morphism_count(),
                limit,
            });
        }
        let mut seen: BTreeSet<Vec<MorphismId>> = BTreeSet::new();
        let mut queue: VecDeque<Subgroupoid> = VecDeque::new();
        for s in self.morphism_ids() {
            let h = self.closure([s]);
            if seen.insert(h.morphisms.clone()) {
                queue.push_back(h);
            }
        }
        while let Some(h) = queue.pop_front() {
            for s in self.morphism_ids().filter(|s| !h.contains(*s)) {
                let bigger = self.closure(h.morphisms.iter().copied().chain([s]));
                if seen.insert(bigger.morphisms.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
        let mut out: Vec<Subgroupoid> = seen.into_iter().map(|morphisms| Subgroupoid { morphisms }).collect();
        out.sort_by(|a, b| (a.len(), &a.morphisms).cmp(&(b.len(), &b.morphisms)));
        Ok(out)
    }
}

/// Morphism subset of a groupoid; see [`FiniteGroupoid::closure`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroupoid {
    morphisms: Vec<MorphismId>,
}

impl Subgroupoid {
    pub fn morphisms(&self) -> &[MorphismId] {
        &self.morphisms
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn contains(&self, s: MorphismId) -> bool {
        self.morphisms.binary_search(&s).is_ok()
    }

    /// Objects touched by the members, in id order.
    pub fn objects(&self, parent: &FiniteCategory) -> Vec<ObjectId> {
        let set: BTreeSet<ObjectId> = self
            .morphisms
            .iter()
            .flat_map(|&s| [parent.dom(s), parent.cod(s)])
            .collect();
        set.into_iter().collect()
    }

    pub fn display<'a>(&'a self, parent: &'a FiniteCategory) -> impl fmt::Display + 'a {
        DisplaySub { sub: self, parent }
    }
}

struct DisplaySub<'a> {
    sub: &'a Subgroupoid,
    parent: &'a FiniteCategory,
}

impl fmt::Display for DisplaySub<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.sub.morphisms.iter().map(|&s| self.parent.name(s)).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids(cat: &FiniteCategory, names: &[&str]) -> Vec<MorphismId> {
        names.iter().map(|n| cat.morphism_by_name(n).unwrap()).collect()
    }

    #[test]
    fn two_object_groupoid_validates_with_expected_inverses() {
        let g = fixtures::two_object_groupoid();
        assert_eq!(g.morphism_count(), 8);
        let t0 = g.morphism_by_name("t0").unwrap();
        assert_eq!(g.name(g.inverse(t0)), "u0");
        for s in g.morphism_ids() {
            assert_eq!(g.inverse(g.inverse(s)), s);
        }
    }

    #[test]
    fn identity_only_category() {
        let desc = CategoryDescription {
            objects: vec!["e".into()],
            morphisms: vec![MorphismDecl {
                name: "e".into(),
                dom: "e".into(),
                cod: "e".into(),
            }],
            identities: BTreeMap::new(),
            compose: vec![["e".into(), "e".into(), "e".into()]],
        };
        let cat = validate_category(&desc).unwrap();
        let g = cat.as_groupoid().unwrap();
        assert_eq!(g.inverse(MorphismId(0)), MorphismId(0));
        assert_eq!(cat.hom_set(ObjectId(0), ObjectId(0)).unwrap(), vec![MorphismId(0)]);
        assert_eq!(g.enumerate_subgroupoids(DEFAULT_ENUMERATION_LIMIT).unwrap().len(), 1);
    }

    #[test]
    fn corrupted_table_breaks_associativity() {
        let mut desc = fixtures::two_object_description();
        for triple in &mut desc.compose {
            if triple[0] == "t0" && triple[1] == "u0" {
                triple[2] = "e".into();
            }
        }
        // Oracle: scan every composable triple directly on the raw triples.
        let lookup = |s: &str, t: &str| {
            desc.compose
                .iter()
                .find(|c| c[0] == s && c[1] == t)
                .map(|c| c[2].clone())
        };
        let names: Vec<String> = desc.morphisms.iter().map(|m| m.name.clone()).collect();
        let mut oracle_found = false;
        for s in &names {
            for t in &names {
                for u in &names {
                    let Some(st) = lookup(s, t) else { continue };
                    let Some(tu) = lookup(t, u) else { continue };
                    if lookup(&st, u) != lookup(s, &tu) {
                        oracle_found = true;
                    }
                }
            }
        }
        assert!(oracle_found);
        match validate_category(&desc) {
            Err(CategoryError::BrokenAssociativity { s, t, u, .. }) => {
                let (s, t, u) = (s.as_str(), t.as_str(), u.as_str());
                let st = lookup(s, t).unwrap();
                let tu = lookup(t, u).unwrap();
                assert_ne!(lookup(&st, u), lookup(s, &tu));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn missing_composite_is_named() {
        let mut desc = fixtures::two_object_description();
        desc.compose.retain(|c| !(c[0] == "alpha" && c[1] == "u0"));
        assert_eq!(
            validate_category(&desc),
            Err(CategoryError::MissingComposite {
                s: "alpha".into(),
                t: "u0".into()
            })
        );
    }

    #[test]
    fn monoid_is_not_a_groupoid_nor_cancellative() {
        let cat = fixtures::idempotent_monoid();
        match cat.as_groupoid() {
            Err(CategoryError::NotAGroupoid { morphisms }) => assert_eq!(morphisms, vec!["s".to_string()]),
            other => panic!("{other:?}"),
        }
        let failure = cat.is_cancellative().unwrap_err();
        assert_eq!(failure.describe(&cat), "es = ss with e != s");
    }

    #[test]
    fn arrow_category_is_cancellative() {
        let cat = fixtures::arrow_category();
        assert_eq!(cat.morphism_count(), 3);
        assert!(cat.as_groupoid().is_err());
        // Oracle: brute-force over all pairs of composites.
        let all: Vec<_> = cat.morphism_ids().collect();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    if b != c {
                        if let (Some(x), Some(y)) = (cat.compose(a, b), cat.compose(a, c)) {
                            assert_ne!(x, y);
                        }
                        if let (Some(x), Some(y)) = (cat.compose(b, a), cat.compose(c, a)) {
                            assert_ne!(x, y);
                        }
                    }
                }
            }
        }
        assert!(cat.is_cancellative().is_ok());
    }

    #[test]
    fn components() {
        let g = fixtures::two_object_groupoid();
        assert_eq!(g.connected_components().len(), 1);

        let pair = fixtures::invertible_arrow();
        let comps = pair.connected_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 4);

        let two_z4 = fixtures::disjoint_union(&[fixtures::cyclic_group(4), fixtures::cyclic_group(4)]);
        let comps = two_z4.connected_components();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            for &s in c.morphisms() {
                assert!(c.objects(&two_z4).contains(&two_z4.dom(s)));
            }
        }
    }

    #[test]
    fn hom_sets() {
        let g = fixtures::two_object_groupoid();
        let (e, f) = (g.object_by_name("e").unwrap(), g.object_by_name("f").unwrap());
        assert_eq!(g.hom_set(f, e).unwrap(), ids(&g, &["t0", "t1"]));
        assert!(g.hom_set(ObjectId(7), e).is_err());
        let z4 = fixtures::cyclic_group(4);
        assert_eq!(z4.hom_set(ObjectId(0), ObjectId(0)).unwrap().len(), 4);
    }

    #[test]
    fn subgroupoids_of_two_object_groupoid() {
        let g = fixtures::two_object_groupoid();
        let subs = g.enumerate_subgroupoids(DEFAULT_ENUMERATION_LIMIT).unwrap();
        let listed: Vec<Vec<MorphismId>> = [
            &["e"][..],
            &["f"],
            &["e", "f"],
            &["e", "alpha"],
            &["f", "beta"],
            &["e", "f", "alpha"],
            &["e", "f", "beta"],
            &["e", "f", "alpha", "beta"],
            &["e", "f", "t0", "u0"],
            &["e", "f", "t1", "u1"],
            &["e", "alpha", "t0", "t1", "f", "beta", "u0", "u1"],
        ]
        .iter()
        .map(|names| {
            let mut v = ids(&g, names);
            v.sort();
            v
        })
        .collect();
        assert_eq!(subs.len(), 11);
        for l in &listed {
            assert!(subs.iter().any(|s| s.morphisms() == l.as_slice()), "missing {l:?}");
        }
        for s in &subs {
            assert_eq!(&g.closure(s.morphisms().iter().copied()), s);
        }
        assert!(subs
            .windows(2)
            .all(|w| (w[0].len(), w[0].morphisms()) < (w[1].len(), w[1].morphisms())));
    }

    #[test]
    fn subgroupoids_of_small_groups() {
        assert_eq!(fixtures::cyclic_group(1).enumerate_subgroupoids(20).unwrap().len(), 1);
        let z4 = fixtures::cyclic_group(4);
        let subs = z4.enumerate_subgroupoids(20).unwrap();
        let sizes: Vec<usize> = subs.iter().map(Subgroupoid::len).collect();
        assert_eq!(sizes, vec![1, 2, 4]);
        assert!(matches!(
            z4.enumerate_subgroupoids(3),
            Err(CategoryError::TooLarge { morphisms: 4, limit: 3 })
        ));
    }

    #[test]
    fn description_round_trip() {
        let g = fixtures::two_object_groupoid();
        let again = validate_category(&g.to_description()).unwrap();
        assert_eq!(&again, g.category());
    }
}
