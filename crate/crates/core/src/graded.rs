//! Category-graded algebras: a family of component subspaces `R_s`, one per
//! morphism, inside a [`FiniteAlgebra`], with `R = ⊕ R_s`.
//!
//! All ring-level answers are relative to the total space `R`, which may be
//! strictly smaller than the ambient algebra.

use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{subspace_product, FiniteAlgebra};
use crate::groupoid::{FiniteCategory, FiniteGroupoid, MorphismId, ObjectId};
use crate::linalg::{solve, LinalgError, Matrix, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("{found} components given for {expected} morphisms")]
    ComponentCount { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("components do not form a direct sum: dimensions add to {sum} but span {total}")]
    NotDirect { sum: usize, total: usize },
    #[error("not locally unital at object {object}: {reason}")]
    NotLocallyUnital { object: String, reason: String },
    #[error("ring has no identity element")]
    NotUnital,
    #[error("morphism index {0} is out of range")]
    UnknownMorphism(usize),
    #[error("grading category is not a groupoid")]
    NotAGroupoid,
    #[error("grading is not strong: {0}")]
    NotStrong(StrongViolation),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// First failure of the filter law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterViolation {
    pub s: MorphismId,
    pub t: MorphismId,
    /// `Some(st)` when the pair is composable and the product escaped `R_st`;
    /// `None` when a non-composable pair has a nonzero product.
    pub target: Option<MorphismId>,
    pub witness: Vector,
}

/// First pair where `R_s R_t` differs from the expected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongViolation {
    pub s: MorphismId,
    pub t: MorphismId,
    pub expected: MorphismId,
    pub product_dim: usize,
    pub expected_dim: usize,
}

impl std::fmt::Display for StrongViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "R_{} R_{} has dimension {} but R_{} has dimension {}",
            self.s.0, self.t.0, self.product_dim, self.expected.0, self.expected_dim
        )
    }
}

/// Units `1_e ∈ R_e`, indexed by object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalUnits {
    units: Vec<Vector>,
}

impl LocalUnits {
    pub fn unit(&self, e: ObjectId) -> &Vector {
        &self.units[e.0]
    }

    pub fn units(&self) -> &[Vector] {
        &self.units
    }

    pub fn sum(&self, dim: usize) -> Vector {
        self.units.iter().fold(Vector::zeros(dim), |acc, u| &acc + u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalReport {
    pub identity: Vector,
    /// `Σ_e 1_e` when the ring is locally unital; equal to `identity`.
    pub from_local_units: Option<Vector>,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    algebra: Arc<FiniteAlgebra>,
    category: FiniteCategory,
    groupoid: Option<FiniteGroupoid>,
    components: Vec<Subspace>,
    total: Subspace,
}

impl GradedAlgebra {
    /// Accepts one component per morphism, requiring the sum to be direct.
    /// The filter law is not enforced here; see [`Self::check_filter`].
    pub fn new(
        algebra: Arc<FiniteAlgebra>,
        category: FiniteCategory,
        components: Vec<Subspace>,
    ) -> Result<Self, GradingError> {
        if components.len() != category.morphism_count() {
            return Err(GradingError::ComponentCount {
                expected: category.morphism_count(),
                found: components.len(),
            });
        }
        let mut total = Subspace::zero(algebra.dim());
        for c in &components {
            total = total.sum(c)?;
        }
        let sum: usize = components.iter().map(Subspace::dim).sum();
        if sum != total.dim() {
            return Err(GradingError::NotDirect {
                sum,
                total: total.dim(),
            });
        }
        let groupoid = category.as_groupoid().ok();
        Ok(GradedAlgebra {
            algebra,
            category,
            groupoid,
            components,
            total,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<FiniteAlgebra> {
        Arc::clone(&self.algebra)
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn groupoid(&self) -> Option<&FiniteGroupoid> {
        self.groupoid.as_ref()
    }

    pub fn component(&self, s: MorphismId) -> &Subspace {
        &self.components[s.0]
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn component_dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    /// `R = Σ_s R_s`.
    pub fn total(&self) -> &Subspace {
        &self.total
    }

    /// `R_e` for an object, i.e. the component of its identity.
    pub fn object_component(&self, e: ObjectId) -> &Subspace {
        self.component(self.category.identity(e))
    }

    /// `R_H = ⊕_{s ∈ H} R_s`.
    pub fn subring(&self, morphisms: &[MorphismId]) -> Result<Subspace, GradingError> {
        let mut out = Subspace::zero(self.algebra.dim());
        for &s in morphisms {
            let c = self.components.get(s.0).ok_or(GradingError::UnknownMorphism(s.0))?;
            out = out.sum(c)?;
        }
        Ok(out)
    }

    /// `R_{G_e}`: the sum of the components of loops at `e`.
    pub fn vertex_ring(&self, e: ObjectId) -> Subspace {
        self.subring(&self.category.loops(e))
            .expect("loops are morphisms of the grading category")
    }

    pub fn product(&self, u: &Subspace, v: &Subspace) -> Subspace {
        subspace_product(&self.algebra, u, v).expect("subspaces share the ambient algebra")
    }

    /// `R_s R_t ⊆ R_st` on composable pairs and `R_s R_t = 0` otherwise.
    pub fn check_filter(&self) -> Result<(), FilterViolation> {
        let cat = &self.category;
        for s in cat.morphism_ids() {
            for t in cat.morphism_ids() {
                let target = cat.compose(s, t);
                for a in self.component(s).basis() {
                    for b in self.component(t).basis() {
                        let p = self.algebra.mul(a, b);
                        let ok = match target {
                            Some(st) => self.component(st).contains(&p),
                            None => p.is_zero(),
                        };
                        if !ok {
                            return Err(FilterViolation {
                                s,
                                t,
                                target,
                                witness: p,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Strong grading. For groupoids this checks `R_s R_{s⁻¹} = R_{c(s)}`
    /// for every `s`, which is equivalent under local unitality; otherwise
    /// every composable pair is checked.
    pub fn check_strong(&self) -> Result<(), StrongViolation> {
        match &self.groupoid {
            Some(g) => {
                for s in g.morphism_ids() {
                    let inv = g.inverse(s);
                    self.compare_product(s, inv, g.identity(g.cod(s)))?;
                }
                Ok(())
            }
            None => self.check_strong_exhaustive(),
        }
    }

    /// `R_s R_t = R_st` for every composable pair.
    pub fn check_strong_exhaustive(&self) -> Result<(), StrongViolation> {
        let cat = &self.category;
        for s in cat.morphism_ids() {
            for t in cat.morphism_ids() {
                if let Some(st) = cat.compose(s, t) {
                    self.compare_product(s, t, st)?;
                }
            }
        }
        Ok(())
    }

    fn compare_product(&self, s: MorphismId, t: MorphismId, expected: MorphismId) -> Result<(), StrongViolation> {
        let product = self.product(self.component(s), self.component(t));
        if &product == self.component(expected) {
            Ok(())
        } else {
            Err(StrongViolation {
                s,
                t,
                expected,
                product_dim: product.dim(),
                expected_dim: self.component(expected).dim(),
            })
        }
    }

    /// Solves, per object `e`, for `1_e ∈ R_e` acting as a two-sided unit on
    /// every component incident to `e`.
    pub fn local_units(&self) -> Result<LocalUnits, GradingError> {
        let cat = &self.category;
        let mut units = Vec::with_capacity(cat.object_count());
        for e in cat.object_ids() {
            let unit_space = self.object_component(e);
            // (morphism, acts-on-the-left) blocks of constraints
            let mut blocks = Vec::new();
            for s in cat.morphism_ids() {
                if cat.cod(s) == e {
                    blocks.push((s, true));
                }
                if cat.dom(s) == e {
                    blocks.push((s, false));
                }
            }
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            let mut first_failure = None;
            for &(s, left) in &blocks {
                for x in self.component(s).basis() {
                    let images: Vec<Vector> = unit_space
                        .basis()
                        .iter()
                        .map(|r| {
                            if left {
                                self.algebra.mul(r, x)
                            } else {
                                self.algebra.mul(x, r)
                            }
                        })
                        .collect();
                    for coord in 0..self.algebra.dim() {
                        let row: Vector = images.iter().map(|im| im[coord].clone()).collect();
                        if row.is_zero() && x[coord].is_zero() {
                            continue;
                        }
                        rows.push(row);
                        rhs.push(x[coord].clone());
                    }
                }
                if first_failure.is_none() {
                    let a = Matrix::from_rows(unit_space.dim(), rows.clone())?;
                    if let Err(LinalgError::Unsolvable) = solve(&a, &Vector::from_entries(rhs.clone())) {
                        first_failure = Some((s, left));
                        break;
                    }
                }
            }
            if let Some((s, left)) = first_failure {
                let side = if left { "left" } else { "right" };
                return Err(GradingError::NotLocallyUnital {
                    object: cat.object_name(e).to_string(),
                    reason: format!(
                        "no element of R_{} acts as a {side} identity on R_{}",
                        cat.object_name(e),
                        cat.name(s)
                    ),
                });
            }
            let a = Matrix::from_rows(unit_space.dim(), rows)?;
            let sol = solve(&a, &Vector::from_entries(rhs))?;
            if !sol.null_space.is_zero() {
                return Err(GradingError::Internal(format!(
                    "local unit at {} is not unique",
                    cat.object_name(e)
                )));
            }
            units.push(unit_space.from_coordinates(sol.particular.entries()));
        }
        Ok(LocalUnits { units })
    }

    /// Whether `u` is a two-sided identity on `R` (checked on a basis).
    pub fn is_identity_of_total(&self, u: &Vector) -> bool {
        self.total.contains(u)
            && self
                .total
                .basis()
                .iter()
                .all(|x| &self.algebra.mul(u, x) == x && &self.algebra.mul(x, u) == x)
    }

    /// Identity of `R`, found by a direct solve and, when the ring is
    /// locally unital, also as `Σ_e 1_e`; the two must agree.
    pub fn check_unital(&self) -> Result<UnitalReport, GradingError> {
        let from_local_units = match self.local_units() {
            Ok(lu) => {
                let s = lu.sum(self.algebra.dim());
                self.is_identity_of_total(&s).then_some(s)
            }
            Err(GradingError::NotLocallyUnital { .. }) => None,
            Err(other) => return Err(other),
        };
        let direct = self.solve_identity()?;
        match (&direct, &from_local_units) {
            (None, None) => Err(GradingError::NotUnital),
            (Some(d), Some(l)) if d != l => Err(GradingError::Internal(
                "identity from local units differs from the direct solve".into(),
            )),
            (None, Some(_)) => Err(GradingError::Internal(
                "sum of local units is an identity the direct solve missed".into(),
            )),
            (Some(d), _) => Ok(UnitalReport {
                identity: d.clone(),
                from_local_units,
            }),
        }
    }

    fn solve_identity(&self) -> Result<Option<Vector>, GradingError> {
        let basis = self.total.basis();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for x in basis {
            for left in [true, false] {
                let images: Vec<Vector> = basis
                    .iter()
                    .map(|r| {
                        if left {
                            self.algebra.mul(r, x)
                        } else {
                            self.algebra.mul(x, r)
                        }
                    })
                    .collect();
                for coord in 0..self.algebra.dim() {
                    let row: Vector = images.iter().map(|im| im[coord].clone()).collect();
                    if row.is_zero() && x[coord].is_zero() {
                        continue;
                    }
                    rows.push(row);
                    rhs.push(x[coord].clone());
                }
            }
        }
        let a = Matrix::from_rows(basis.len(), rows)?;
        match solve(&a, &Vector::from_entries(rhs)) {
            Ok(sol) => Ok(Some(self.total.from_coordinates(sol.particular.entries()))),
            Err(LinalgError::Unsolvable) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_das, category_algebra, monoid_counterexample, SelectionSpec};
    use crate::fixtures;

    fn z4_example() -> GradedAlgebra {
        let g = fixtures::cyclic_group(4);
        let sel = ["0", "1", "2", "3", "3"];
        build_das(&SelectionSpec::from_names(g.category().clone(), &sel).unwrap())
            .unwrap()
            .graded
    }

    #[test]
    fn products_in_z4_example() {
        let ga = z4_example();
        let r = |i: usize| ga.component(MorphismId(i)).clone();
        assert_eq!(ga.product(&r(1), &r(3)), r(0));
        assert_eq!(ga.product(&r(1), &r(1)), r(2));
        assert_eq!(ga.product(&r(1), &Subspace::zero(25)), Subspace::zero(25));
    }

    #[test]
    fn swapped_components_violate_the_filter() {
        let ga = z4_example();
        let mut comps = ga.components().to_vec();
        comps.swap(1, 2);
        let bad = GradedAlgebra::new(ga.algebra_arc(), ga.category().clone(), comps).unwrap();
        let v = bad.check_filter().unwrap_err();
        let alg = bad.algebra();
        assert!(v.target.is_some());
        assert!(!bad.component(v.target.unwrap()).contains(&v.witness));
        assert!(!v.witness.is_zero());
        // the witness really is a product of the two named components
        let products = bad.product(bad.component(v.s), bad.component(v.t));
        assert!(products.contains(&v.witness));
        assert!(alg.describe(&v.witness).starts_with('e'));
    }

    #[test]
    fn monoid_counterexample_checks() {
        let ga = monoid_counterexample();
        assert!(ga.check_filter().is_ok());
        let v = ga.check_strong().unwrap_err();
        let (e, s) = (MorphismId(0), MorphismId(1));
        assert_eq!((v.s, v.t, v.expected), (e, s, s));
        assert_eq!(v.product_dim, 0);
        match ga.local_units() {
            Err(GradingError::NotLocallyUnital { object, .. }) => assert_eq!(object, "*"),
            other => panic!("{other:?}"),
        }
        let report = ga.check_unital().unwrap();
        assert_eq!(report.identity, ga.algebra().identity_matrix());
        assert!(report.from_local_units.is_none());
    }

    #[test]
    fn trivial_grading_of_full_matrix_algebra() {
        let g = fixtures::cyclic_group(1);
        let alg = Arc::new(FiniteAlgebra::matrix_units(3));
        let ga = GradedAlgebra::new(alg.clone(), g.category().clone(), vec![Subspace::full(9)]).unwrap();
        assert!(ga.check_filter().is_ok());
        assert!(ga.check_strong().is_ok());
        let lu = ga.local_units().unwrap();
        assert_eq!(lu.unit(ObjectId(0)), &alg.identity_matrix());
    }

    #[test]
    fn two_object_local_units() {
        let g = fixtures::two_object_groupoid();
        let spec = SelectionSpec::from_names(g.category().clone(), &fixtures::two_object_selection()).unwrap();
        let ga = build_das(&spec).unwrap().graded;
        let lu = ga.local_units().unwrap();
        let alg = ga.algebra();
        let e = g.object_by_name("e").unwrap();
        let f = g.object_by_name("f").unwrap();
        assert_eq!(lu.unit(e), &alg.units(&[(5, 5), (6, 6), (7, 7), (8, 8), (9, 9)]));
        assert_eq!(lu.unit(f), &alg.units(&[(1, 1), (2, 2), (3, 3), (4, 4)]));
        assert_eq!(ga.check_unital().unwrap().identity, alg.identity_matrix());
    }

    #[test]
    fn subrings() {
        let ga = z4_example();
        assert_eq!(ga.subring(&[MorphismId(0), MorphismId(2)]).unwrap().dim(), 13);
        let all: Vec<_> = ga.category().morphism_ids().collect();
        assert_eq!(&ga.subring(&all).unwrap(), ga.total());
        assert_eq!(ga.subring(&[MorphismId(9)]), Err(GradingError::UnknownMorphism(9)));
        let g = fixtures::two_object_groupoid();
        let spec = SelectionSpec::from_names(g.category().clone(), &fixtures::two_object_selection()).unwrap();
        let ga = build_das(&spec).unwrap().graded;
        assert_eq!(ga.subring(&[g.morphism_by_name("e").unwrap()]).unwrap().dim(), 7);
    }

    #[test]
    fn category_algebra_of_two_object_groupoid_is_unital() {
        let ga = category_algebra(fixtures::invertible_arrow().category()).unwrap();
        let report = ga.check_unital().unwrap();
        let expected = Vector::indicator(4, [0, 1]);
        assert_eq!(report.identity, expected);
        assert_eq!(report.from_local_units, Some(expected));
    }

    #[test]
    fn not_direct_is_rejected() {
        let g = fixtures::cyclic_group(2);
        let alg = Arc::new(FiniteAlgebra::matrix_units(2));
        let err = GradedAlgebra::new(
            alg,
            g.category().clone(),
            vec![Subspace::full(4), Subspace::coordinate(4, [0])],
        )
        .unwrap_err();
        assert_eq!(err, GradingError::NotDirect { sum: 5, total: 4 });
    }
}
