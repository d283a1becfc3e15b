//! Builders for concrete gradings: the matrix-unit construction from a
//! selection of morphisms, category algebras, the nonfree-component witness
//! and the idempotent-monoid fixture.

use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteAlgebra};
use crate::doc::resolve_names;
use crate::fixtures;
use crate::graded::{GradedAlgebra, GradingError};
use crate::groupoid::{CategoryError, FiniteCategory, FiniteGroupoid, MorphismId};
use crate::linalg::{Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid selection: {0}")]
    InvalidSelection(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} is an identity morphism")]
    IdentityMorphism(String),
    #[error("construction for {morphism} did not verify: {reason}")]
    Unverified { morphism: String, reason: String },
}

/// A category together with a list `s_1, ..., s_n` of its morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionSpec {
    cat: FiniteCategory,
    selection: Vec<MorphismId>,
}

impl SelectionSpec {
    pub fn new(cat: FiniteCategory, selection: Vec<MorphismId>) -> Result<Self, ConstructionError> {
        if selection.is_empty() {
            return Err(ConstructionError::InvalidSelection("selection is empty".into()));
        }
        if let Some(bad) = selection.iter().find(|s| s.0 >= cat.morphism_count()) {
            return Err(ConstructionError::InvalidSelection(format!(
                "morphism index {} is out of range",
                bad.0
            )));
        }
        Ok(SelectionSpec { cat, selection })
    }

    pub fn from_names<S: AsRef<str>>(cat: FiniteCategory, names: &[S]) -> Result<Self, ConstructionError> {
        let ids = resolve_names(&cat, names)?;
        Self::new(cat, ids)
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn selection(&self) -> &[MorphismId] {
        &self.selection
    }

    pub fn len(&self) -> usize {
        self.selection.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selection.is_empty()
    }

    fn contains(&self, s: MorphismId) -> bool {
        self.selection.contains(&s)
    }

    /// Every morphism of the category occurs in the selection.
    pub fn covers_category(&self) -> bool {
        self.cat.morphism_ids().all(|s| self.contains(s))
    }

    /// `s_i s ∈ S` whenever the composite is defined.
    pub fn is_product_closed(&self) -> bool {
        self.selection.iter().all(|&si| {
            self.cat
                .morphism_ids()
                .all(|s| self.cat.compose(si, s).is_none_or(|p| self.contains(p)))
        })
    }

    /// The identity of every `d(s_i)` occurs in the selection.
    pub fn contains_domain_identities(&self) -> bool {
        self.selection
            .iter()
            .all(|&si| self.contains(self.cat.identity(self.cat.dom(si))))
    }
}

/// `X_s = {(i, j) : s_i s = s_j}` with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionSets {
    sets: Vec<Vec<(usize, usize)>>,
}

impl PositionSets {
    pub fn new(spec: &SelectionSpec) -> Self {
        let cat = spec.category();
        let sel = spec.selection();
        let sets = cat
            .morphism_ids()
            .map(|s| {
                let mut pairs = Vec::new();
                for (i, &si) in sel.iter().enumerate() {
                    if let Some(p) = cat.compose(si, s) {
                        for (j, &sj) in sel.iter().enumerate() {
                            if sj == p {
                                pairs.push((i + 1, j + 1));
                            }
                        }
                    }
                }
                pairs
            })
            .collect();
        PositionSets { sets }
    }

    pub fn get(&self, s: MorphismId) -> &[(usize, usize)] {
        &self.sets[s.0]
    }

    pub fn all(&self) -> &[Vec<(usize, usize)>] {
        &self.sets
    }

    /// First pair shared by two different position sets, if any.
    pub fn overlap(&self) -> Option<(MorphismId, MorphismId, (usize, usize))> {
        for (a, xa) in self.sets.iter().enumerate() {
            for (b, xb) in self.sets.iter().enumerate().skip(a + 1) {
                if let Some(p) = xa.iter().find(|p| xb.contains(p)) {
                    return Some((MorphismId(a), MorphismId(b), *p));
                }
            }
        }
        None
    }
}

/// Output of [`build_das`].
#[derive(Clone, Debug)]
pub struct DasBuild {
    pub graded: GradedAlgebra,
    pub positions: PositionSets,
    pub spec: SelectionSpec,
}

impl DasBuild {
    /// `I_n`, which is `Σ_f Σ_{d(s_i) = f} e_ii` summed over all objects.
    pub fn diagonal_unit(&self) -> Vector {
        self.graded.algebra().identity_matrix()
    }
}

/// `R_s = span{e_ij : s_i s = s_j}` inside `M_n(Q)`, `n` the selection length.
///
/// Fails with [`GradingError::NotDirect`] when position sets overlap, which
/// can only happen for non-cancellative categories.
pub fn build_das(spec: &SelectionSpec) -> Result<DasBuild, ConstructionError> {
    let n = spec.len();
    let positions = PositionSets::new(spec);
    let components = positions
        .all()
        .iter()
        .map(|pairs| Subspace::coordinate(n * n, pairs.iter().map(|&(i, j)| (i - 1) * n + (j - 1))))
        .collect();
    let algebra = Arc::new(FiniteAlgebra::matrix_units(n));
    let graded = GradedAlgebra::new(algebra, spec.category().clone(), components)?;
    Ok(DasBuild {
        graded,
        positions,
        spec: spec.clone(),
    })
}

/// Basis `u_s` with `u_s u_t = u_st` when composable and `0` otherwise;
/// `R_s = Q u_s`.
pub fn category_algebra(cat: &FiniteCategory) -> Result<GradedAlgebra, ConstructionError> {
    let n = cat.morphism_count();
    let mut constants = Vec::new();
    for s in cat.morphism_ids() {
        for t in cat.morphism_ids() {
            if let Some(st) = cat.compose(s, t) {
                constants.push((s.0, t.0, st.0, Scalar::one()));
            }
        }
    }
    let labels = cat.morphism_ids().map(|s| format!("u_{}", cat.name(s))).collect();
    let algebra = Arc::new(FiniteAlgebra::new(n, constants, Some(labels))?);
    let components = cat.morphism_ids().map(|s| Subspace::coordinate(n, [s.0])).collect();
    Ok(GradedAlgebra::new(algebra, cat.clone(), components)?)
}

/// `M_3(Q)` graded by the monoid `{e, s}`: `R_e = Q e33` and `R_s` the
/// upper-left `2×2` block.
pub fn monoid_counterexample() -> GradedAlgebra {
    let algebra = Arc::new(FiniteAlgebra::matrix_units(3));
    let r_e = Subspace::coordinate(9, [8]);
    let r_s = Subspace::coordinate(9, [0, 1, 3, 4]);
    GradedAlgebra::new(algebra, fixtures::idempotent_monoid(), vec![r_e, r_s])
        .expect("components are disjoint coordinate spans")
}

/// Dimension witness that `R_t` is not free over `R_{c(t)}`: a free module
/// of rank `d` would have dimension `d · dim_unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonfreeCertificate {
    pub t: MorphismId,
    /// Number of morphisms with domain `c(t)`.
    pub m: usize,
    pub dim_unit: usize,
    pub dim_t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonfreeVerdict {
    Certificate(NonfreeCertificate),
    Inconclusive { dim_unit: usize, dim_t: usize },
}

impl NonfreeVerdict {
    pub fn certificate(&self) -> Option<&NonfreeCertificate> {
        match self {
            NonfreeVerdict::Certificate(c) => Some(c),
            NonfreeVerdict::Inconclusive { .. } => None,
        }
    }
}

/// Certificate when `0 < dim R_t < dim R_{c(t)}`.
pub fn nonfree_check(ga: &GradedAlgebra, t: MorphismId) -> NonfreeVerdict {
    let cat = ga.category();
    let e = cat.cod(t);
    let dim_unit = ga.object_component(e).dim();
    let dim_t = ga.component(t).dim();
    if 0 < dim_t && dim_t < dim_unit {
        let m = cat.morphism_ids().filter(|&s| cat.dom(s) == e).count();
        NonfreeVerdict::Certificate(NonfreeCertificate { t, m, dim_unit, dim_t })
    } else {
        NonfreeVerdict::Inconclusive { dim_unit, dim_t }
    }
}

#[derive(Clone, Debug)]
pub struct NonfreeBuild {
    pub build: DasBuild,
    pub certificate: NonfreeCertificate,
}

/// Selection used by [`nonfree_example`]: components in order of their
/// smallest object; inside the component of `t`, `t` first (unless it is a
/// loop), then the remaining morphisms, then `id_{c(t)}` twice.
pub fn nonfree_selection(g: &FiniteGroupoid, t: MorphismId) -> Vec<MorphismId> {
    let unit = g.identity(g.cod(t));
    let mut selection = Vec::new();
    for component in g.connected_components() {
        if !component.contains(t) {
            selection.extend(component.morphisms());
            continue;
        }
        let loop_t = g.dom(t) == g.cod(t);
        if !loop_t {
            selection.push(t);
        }
        selection.extend(
            component
                .morphisms()
                .iter()
                .filter(|&&s| s != unit && (loop_t || s != t)),
        );
        selection.extend([unit, unit]);
    }
    selection
}

/// Strongly graded unital ring, all components nonzero, with `R_t` not free
/// over `R_{c(t)}`. Every claimed property is checked before returning.
pub fn nonfree_example(g: &FiniteGroupoid, t: MorphismId) -> Result<NonfreeBuild, ConstructionError> {
    if t.0 >= g.morphism_count() {
        return Err(GradingError::UnknownMorphism(t.0).into());
    }
    if g.is_identity(t) {
        return Err(ConstructionError::IdentityMorphism(g.name(t).to_string()));
    }
    let spec = SelectionSpec::new(g.category().clone(), nonfree_selection(g, t))?;
    let build = build_das(&spec)?;
    let ga = &build.graded;
    let fail = |reason: String| ConstructionError::Unverified {
        morphism: g.name(t).to_string(),
        reason,
    };
    if let Err(v) = ga.check_filter() {
        return Err(fail(format!("filter law fails at ({}, {})", g.name(v.s), g.name(v.t))));
    }
    if let Err(v) = ga.check_strong() {
        return Err(fail(format!("not strong: {v}")));
    }
    ga.check_unital().map_err(|e| fail(e.to_string()))?;
    if let Some(s) = g.morphism_ids().find(|&s| ga.component(s).is_zero()) {
        return Err(fail(format!("component of {} is zero", g.name(s))));
    }
    let certificate = match nonfree_check(ga, t) {
        NonfreeVerdict::Certificate(c) => c,
        NonfreeVerdict::Inconclusive { dim_unit, dim_t } => {
            return Err(fail(format!(
                "no certificate: dim R_t = {dim_t}, dim R_c(t) = {dim_unit}"
            )))
        }
    };
    let expected_t = if g.dom(t) == g.cod(t) {
        certificate.m + 2
    } else {
        certificate.m + 1
    };
    if certificate.dim_unit != certificate.m + 3 || certificate.dim_t != expected_t {
        return Err(fail(format!(
            "dimensions ({}, {}) differ from ({}, {expected_t})",
            certificate.dim_unit,
            certificate.dim_t,
            certificate.m + 3
        )));
    }
    Ok(NonfreeBuild { build, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::ObjectId;

    fn support(ga: &GradedAlgebra, s: MorphismId) -> Vec<String> {
        ga.component(s)
            .basis()
            .iter()
            .map(|v| ga.algebra().describe(v))
            .collect()
    }

    #[test]
    fn z4_components() {
        let g = fixtures::cyclic_group(4);
        let spec = SelectionSpec::from_names(g.category().clone(), &["0", "1", "2", "3", "3"]).unwrap();
        let b = build_das(&spec).unwrap();
        assert_eq!(b.graded.component_dims(), vec![7, 6, 6, 6]);
        assert_eq!(
            support(&b.graded, MorphismId(0)),
            ["e11", "e22", "e33", "e44", "e45", "e54", "e55"]
        );
        assert_eq!(b.positions.get(MorphismId(1))[0], (1, 2));
        assert!(b.positions.overlap().is_none());
    }

    #[test]
    fn trivial_group_single_selection() {
        let g = fixtures::cyclic_group(1);
        let spec = SelectionSpec::from_names(g.category().clone(), &["0"]).unwrap();
        let b = build_das(&spec).unwrap();
        assert_eq!(b.graded.component_dims(), vec![1]);
        assert_eq!(b.graded.total(), &Subspace::full(1));
    }

    #[test]
    fn selection_validation() {
        let g = fixtures::cyclic_group(2);
        let empty: [&str; 0] = [];
        assert!(matches!(
            SelectionSpec::from_names(g.category().clone(), &empty),
            Err(ConstructionError::InvalidSelection(_))
        ));
        assert!(matches!(
            SelectionSpec::from_names(g.category().clone(), &["7"]),
            Err(ConstructionError::Category(CategoryError::UnknownMorphism(_)))
        ));
        assert!(SelectionSpec::new(g.category().clone(), vec![MorphismId(2)]).is_err());
    }

    #[test]
    fn selection_predicates() {
        let g = fixtures::cyclic_group(4);
        let spec = SelectionSpec::from_names(g.category().clone(), &["1", "3"]).unwrap();
        assert!(!spec.covers_category());
        assert!(!spec.is_product_closed());
        assert!(!spec.contains_domain_identities());
        let spec = SelectionSpec::from_names(g.category().clone(), &["0", "0", "1", "2", "3"]).unwrap();
        assert!(spec.covers_category() && spec.is_product_closed() && spec.contains_domain_identities());
    }

    #[test]
    fn non_cancellative_selection_overlaps() {
        let spec = SelectionSpec::from_names(fixtures::idempotent_monoid(), &["e", "s"]).unwrap();
        assert_eq!(
            PositionSets::new(&spec).overlap(),
            Some((MorphismId(0), MorphismId(1), (2, 2)))
        );
        assert!(matches!(
            build_das(&spec),
            Err(ConstructionError::Grading(GradingError::NotDirect { .. }))
        ));
    }

    #[test]
    fn category_algebras() {
        let z4 = category_algebra(fixtures::cyclic_group(4).category()).unwrap();
        assert_eq!(z4.component_dims(), vec![1; 4]);
        assert!(z4.check_filter().is_ok() && z4.check_strong().is_ok());

        let arrow = category_algebra(fixtures::invertible_arrow().category()).unwrap();
        assert!(arrow.check_strong().is_ok());
        assert_eq!(arrow.local_units().unwrap().unit(ObjectId(0)), &Vector::unit(4, 0));

        // the monoid algebra: u_e u_s = u_s and every composable pair generates
        // its target, so the product scan reports a strong grading here
        let monoid = category_algebra(&fixtures::idempotent_monoid()).unwrap();
        assert!(monoid.check_filter().is_ok());
        assert!(monoid.check_strong().is_ok());
    }

    #[test]
    fn monoid_fixture_shape() {
        let ga = monoid_counterexample();
        assert_eq!(support(&ga, MorphismId(0)), ["e33"]);
        assert_eq!(support(&ga, MorphismId(1)), ["e11", "e12", "e21", "e22"]);
    }

    #[test]
    fn nonfree_on_invertible_arrow() {
        let g = fixtures::invertible_arrow();
        let t = g.morphism_by_name("t").unwrap();
        let names: Vec<&str> = nonfree_selection(&g, t).iter().map(|&s| g.name(s)).collect();
        assert_eq!(names, ["t", "f", "tinv", "e", "e"]);
        let out = nonfree_example(&g, t).unwrap();
        assert_eq!(
            out.certificate,
            NonfreeCertificate {
                t,
                m: 2,
                dim_unit: 5,
                dim_t: 3
            }
        );
        let e = g.morphism_by_name("e").unwrap();
        assert!(matches!(
            nonfree_example(&g, e),
            Err(ConstructionError::IdentityMorphism(name)) if name == "e"
        ));
    }

    #[test]
    fn nonfree_on_z4_loop() {
        let g = fixtures::cyclic_group(4);
        let out = nonfree_example(&g, MorphismId(1)).unwrap();
        assert_eq!((out.certificate.dim_unit, out.certificate.dim_t), (7, 6));
        assert_eq!(
            nonfree_check(&out.build.graded, MorphismId(1)),
            NonfreeVerdict::Certificate(out.certificate)
        );
    }

    #[test]
    fn nonfree_check_on_group_algebra_is_inconclusive() {
        let ga = category_algebra(fixtures::cyclic_group(4).category()).unwrap();
        assert_eq!(
            nonfree_check(&ga, MorphismId(1)),
            NonfreeVerdict::Inconclusive { dim_unit: 1, dim_t: 1 }
        );
    }
}
