//! Finite groupoid-graded algebras over the rationals: exact linear algebra,
//! finite categories and groupoids, graded algebras and their validators,
//! matrix-unit constructions, and the Miyashita action on commutants.

pub mod algebra;
pub mod construction;
pub mod doc;
pub mod fixtures;
pub mod graded;
pub mod groupoid;
pub mod linalg;
pub mod miyashita;

pub use algebra::{center, commutant, is_subring, subspace_product, AlgebraError, FiniteAlgebra};
pub use construction::{
    build_das, category_algebra, monoid_counterexample, nonfree_check, nonfree_example, ConstructionError, DasBuild,
    NonfreeBuild, NonfreeCertificate, NonfreeVerdict, PositionSets, SelectionSpec,
};
pub use doc::{DocError, GroupoidDoc};
pub use graded::{FilterViolation, GradedAlgebra, GradingError, LocalUnits, StrongViolation, UnitalReport};
pub use groupoid::{
    validate_category, CategoryDescription, CategoryError, FiniteCategory, FiniteGroupoid, MorphismId, ObjectId,
    Subgroupoid,
};
pub use linalg::{Matrix, Scalar, Subspace, Vector};
pub use miyashita::{
    apply_fx, commutant_group_theorem, commutant_groupoid_theorem, dual_basis, fixed_subspace, perturbed_dual_basis,
    projectivity_certificate, sigma_center, sigma_general, sigma_graded, verify_invertible, BimoduleMap, DualBasis,
    GradedAction, InvertiblePair, MiyashitaError, PairCondition, SigmaMap, TheoremCheck, UnitalSubring,
};
