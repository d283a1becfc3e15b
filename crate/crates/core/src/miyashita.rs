//! Invertible bimodules inside a ring, dual bases, the induced maps `f^X` on
//! bimodule endomorphisms, the ring isomorphisms `σ` between commutants, and
//! the two commutant theorems relating `C_R(R_H)` to fixed rings.
//!
//! Every map is checked against its defining identities before it is
//! returned, so an `Ok` value doubles as a verification certificate.

use std::fmt;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{center, commutant, subspace_product, FiniteAlgebra};
use crate::graded::{GradedAlgebra, GradingError, LocalUnits};
use crate::groupoid::{MorphismId, ObjectId, Subgroupoid};
use crate::linalg::{solve, LinalgError, Matrix, Scalar, Subspace, Vector};

/// Named conditions of an invertible pair, in the order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairCondition {
    InsideRing,
    UnitOfA,
    UnitOfB,
    ProductIsA,
    ProductIsB,
    LeftActionOnX,
    RightActionOnX,
    UnitalX,
    LeftActionOnInverse,
    RightActionOnInverse,
    UnitalInverse,
}

impl fmt::Display for PairCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            PairCondition::InsideRing => "A, B, X and X^-1 lie in R",
            PairCondition::UnitOfA => "1_A is an identity of A",
            PairCondition::UnitOfB => "1_B is an identity of B",
            PairCondition::ProductIsA => "X X^-1 = A",
            PairCondition::ProductIsB => "X^-1 X = B",
            PairCondition::LeftActionOnX => "A X ⊆ X",
            PairCondition::RightActionOnX => "X B ⊆ X",
            PairCondition::UnitalX => "1_A x = x = x 1_B on X",
            PairCondition::LeftActionOnInverse => "B X^-1 ⊆ X^-1",
            PairCondition::RightActionOnInverse => "X^-1 A ⊆ X^-1",
            PairCondition::UnitalInverse => "1_B y = y = y 1_A on X^-1",
        };
        f.write_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MiyashitaError {
    #[error("not an invertible pair: {condition} fails")]
    NotInvertible {
        condition: PairCondition,
        witness: Option<Vector>,
    },
    #[error("1_A is not a sum of products x y with x in X, y in X^-1")]
    NoDualBasis,
    #[error("dual-basis identity fails: {0}")]
    CertificateFailure(String),
    #[error("not a bimodule map: {reason}")]
    NotBimoduleMap { reason: String, witness: Vector },
    #[error("map {index} is not an endomorphism of the given subspace")]
    SourceMismatch { index: usize },
    #[error("maps cannot be composed: target and source differ")]
    NotComposable,
    #[error("verification of the induced map failed: {0}")]
    Unverified(String),
    #[error("grading has more than one object")]
    NotAGroup,
    #[error("morphisms do not form a subgroupoid")]
    NotASubgroupoid,
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

type Result<T> = std::result::Result<T, MiyashitaError>;

/// A subspace closed under multiplication together with its identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalSubring {
    pub space: Subspace,
    pub unit: Vector,
}

impl UnitalSubring {
    pub fn new(space: Subspace, unit: Vector) -> Self {
        UnitalSubring { space, unit }
    }
}

/// `X : B → A` with partner `X⁻¹`, inside a ring `R ⊆ algebra`.
#[derive(Clone, Debug)]
pub struct InvertiblePair {
    algebra: Arc<FiniteAlgebra>,
    ring: Subspace,
    a: UnitalSubring,
    b: UnitalSubring,
    x: Subspace,
    xinv: Subspace,
}

fn first_failure<'a>(
    vs: impl IntoIterator<Item = &'a Vector>,
    ok: impl FnMut(&Vector) -> Option<Vector>,
) -> Option<Vector> {
    vs.into_iter().find_map(ok)
}

fn product_escape(alg: &FiniteAlgebra, u: &Subspace, v: &Subspace, target: &Subspace) -> Option<Vector> {
    for a in u.basis() {
        for b in v.basis() {
            let p = alg.mul(a, b);
            if !target.contains(&p) {
                return Some(p);
            }
        }
    }
    None
}

/// Checks every defining condition of an invertible pair, reporting the
/// first one that fails.
pub fn verify_invertible(
    algebra: Arc<FiniteAlgebra>,
    ring: Subspace,
    a: UnitalSubring,
    b: UnitalSubring,
    x: Subspace,
    xinv: Subspace,
) -> Result<InvertiblePair> {
    let alg = &*algebra;
    let fail = |condition, witness| Err(MiyashitaError::NotInvertible { condition, witness });

    for s in [&a.space, &b.space, &x, &xinv] {
        if let Some(w) = first_failure(s.basis(), |v| (!ring.contains(v)).then(|| v.clone())) {
            return fail(PairCondition::InsideRing, Some(w));
        }
    }
    for (ring_part, cond) in [(&a, PairCondition::UnitOfA), (&b, PairCondition::UnitOfB)] {
        if !ring_part.space.contains(&ring_part.unit) {
            return fail(cond, Some(ring_part.unit.clone()));
        }
        let u = &ring_part.unit;
        let broken = first_failure(ring_part.space.basis(), |v| {
            (&alg.mul(u, v) != v || &alg.mul(v, u) != v).then(|| v.clone())
        });
        if broken.is_some() {
            return fail(cond, broken);
        }
    }
    if subspace_product(alg, &x, &xinv)? != a.space {
        return fail(PairCondition::ProductIsA, None);
    }
    if subspace_product(alg, &xinv, &x)? != b.space {
        return fail(PairCondition::ProductIsB, None);
    }
    let unital = |space: &Subspace, left: &Vector, right: &Vector| {
        first_failure(space.basis(), |v| {
            (&alg.mul(left, v) != v || &alg.mul(v, right) != v).then(|| v.clone())
        })
    };
    let checks = [
        (PairCondition::LeftActionOnX, product_escape(alg, &a.space, &x, &x)),
        (PairCondition::RightActionOnX, product_escape(alg, &x, &b.space, &x)),
        (PairCondition::UnitalX, unital(&x, &a.unit, &b.unit)),
        (
            PairCondition::LeftActionOnInverse,
            product_escape(alg, &b.space, &xinv, &xinv),
        ),
        (
            PairCondition::RightActionOnInverse,
            product_escape(alg, &xinv, &a.space, &xinv),
        ),
        (PairCondition::UnitalInverse, unital(&xinv, &b.unit, &a.unit)),
    ];
    for (cond, witness) in checks {
        if witness.is_some() {
            return fail(cond, witness);
        }
    }
    Ok(InvertiblePair {
        algebra,
        ring,
        a,
        b,
        x,
        xinv,
    })
}

impl InvertiblePair {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn ring(&self) -> &Subspace {
        &self.ring
    }

    pub fn a(&self) -> &UnitalSubring {
        &self.a
    }

    pub fn b(&self) -> &UnitalSubring {
        &self.b
    }

    pub fn x(&self) -> &Subspace {
        &self.x
    }

    pub fn xinv(&self) -> &Subspace {
        &self.xinv
    }

    /// The identity morphism `A : A → A`.
    pub fn identity(algebra: Arc<FiniteAlgebra>, ring: Subspace, a: UnitalSubring) -> Result<Self> {
        let space = a.space.clone();
        verify_invertible(algebra, ring, a.clone(), a, space.clone(), space)
    }

    /// `X⁻¹ : A → B`.
    pub fn reversed(&self) -> InvertiblePair {
        InvertiblePair {
            algebra: Arc::clone(&self.algebra),
            ring: self.ring.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
            x: self.xinv.clone(),
            xinv: self.x.clone(),
        }
    }

    /// `XY : C → A` for `self = X : B → A` and `other = Y : C → B`.
    pub fn compose(&self, other: &InvertiblePair) -> Result<InvertiblePair> {
        if self.b != other.a {
            return Err(MiyashitaError::NotComposable);
        }
        let alg = &*self.algebra;
        verify_invertible(
            Arc::clone(&self.algebra),
            self.ring.clone(),
            self.a.clone(),
            other.b.clone(),
            subspace_product(alg, &self.x, &other.x)?,
            subspace_product(alg, &other.xinv, &self.xinv)?,
        )
    }
}

/// Pairs `(x_i, y_i)` with `Σ x_i y_i = 1_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pairs: Vec<(Vector, Vector)>,
}

impl DualBasis {
    pub fn pairs(&self) -> &[(Vector, Vector)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `Σ x_i y_i`.
    pub fn sum(&self, alg: &FiniteAlgebra) -> Vector {
        self.pairs
            .iter()
            .fold(Vector::zeros(alg.dim()), |acc, (x, y)| &acc + &alg.mul(x, y))
    }
}

/// Solution set of `Σ λ_ab u_a v_b = 1_A` over bases `u` of `X`, `v` of `X⁻¹`.
fn dual_basis_system(p: &InvertiblePair) -> Result<crate::linalg::Solution> {
    let alg = p.algebra();
    let columns: Vec<Vector> =
        p.x.basis()
            .iter()
            .flat_map(|u| p.xinv.basis().iter().map(move |v| alg.mul(u, v)))
            .collect();
    let m = Matrix::from_columns(alg.dim(), &columns)?;
    match solve(&m, &p.a.unit) {
        Ok(sol) => Ok(sol),
        Err(LinalgError::Unsolvable) => Err(MiyashitaError::NoDualBasis),
        Err(e) => Err(e.into()),
    }
}

/// Number of free parameters in the choice of `λ`.
pub fn dual_basis_freedom(p: &InvertiblePair) -> Result<usize> {
    Ok(dual_basis_system(p)?.null_space.dim())
}

/// The solver's canonical dual basis. Coefficients are grouped by the
/// `X⁻¹` basis vector: the pair for `v_b` is `(Σ_a λ_ab u_a, v_b)`.
pub fn dual_basis(p: &InvertiblePair) -> Result<DualBasis> {
    perturbed_dual_basis(p, &[])
}

/// Dual basis from `λ = λ₀ + Σ_k c_k n_k`, with `n_k` the null-space basis of
/// the defining system (missing coefficients count as zero).
pub fn perturbed_dual_basis(p: &InvertiblePair, coefficients: &[Scalar]) -> Result<DualBasis> {
    let sol = dual_basis_system(p)?;
    let mut lambda = sol.particular;
    for (c, n) in coefficients.iter().zip(sol.null_space.basis()) {
        lambda.add_scaled(c, n);
    }
    let nv = p.xinv.dim();
    let mut pairs = Vec::new();
    for (b, v) in p.xinv.basis().iter().enumerate() {
        let mut x = Vector::zeros(p.algebra.dim());
        for (a, u) in p.x.basis().iter().enumerate() {
            x.add_scaled(&lambda[a * nv + b], u);
        }
        if !x.is_zero() {
            pairs.push((x, v.clone()));
        }
    }
    let basis = DualBasis { pairs };
    if basis.sum(p.algebra()) != p.a.unit {
        return Err(MiyashitaError::CertificateFailure("Σ x_i y_i differs from 1_A".into()));
    }
    Ok(basis)
}

/// Evidence that `X` is finitely generated projective on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityCertificate {
    /// Generators of `X` as a right `B`-module (the `x_i`).
    pub right_generators: usize,
    /// Generators of `X` as a left `A`-module.
    pub left_generators: usize,
}

/// Checks `x = Σ x_i (y_i x)` with `y_i x ∈ B`, and the mirrored identity
/// `x = Σ (x y'_j) x'_j` with `x y'_j ∈ A` from a dual basis of `X⁻¹ : A → B`.
pub fn projectivity_certificate(p: &InvertiblePair, d: &DualBasis) -> Result<ProjectivityCertificate> {
    let alg = p.algebra();
    let fail = |msg: &str, x: &Vector| MiyashitaError::CertificateFailure(format!("{msg} at {}", alg.describe(x)));
    for x in p.x.basis() {
        let mut acc = Vector::zeros(alg.dim());
        for (xi, yi) in d.pairs() {
            let coeff = alg.mul(yi, x);
            if !p.b.space.contains(&coeff) {
                return Err(fail("y_i x outside B", x));
            }
            acc = &acc + &alg.mul(xi, &coeff);
        }
        if &acc != x {
            return Err(fail("right dual-basis identity", x));
        }
    }
    let mirrored = dual_basis(&p.reversed())?;
    for x in p.x.basis() {
        let mut acc = Vector::zeros(alg.dim());
        for (yj, xj) in mirrored.pairs() {
            let coeff = alg.mul(x, yj);
            if !p.a.space.contains(&coeff) {
                return Err(fail("x y'_j outside A", x));
            }
            acc = &acc + &alg.mul(&coeff, xj);
        }
        if &acc != x {
            return Err(fail("left dual-basis identity", x));
        }
    }
    Ok(ProjectivityCertificate {
        right_generators: d.len(),
        left_generators: mirrored.len(),
    })
}

/// Linear map defined on a subspace `domain` of the algebra, stored as the
/// images of the canonical basis of `domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    domain: Subspace,
    images: Vec<Vector>,
}

impl BimoduleMap {
    pub fn new(domain: Subspace, images: Vec<Vector>) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: domain.dim(),
                found: images.len(),
            }
            .into());
        }
        for im in &images {
            crate::linalg::check_dim(domain.ambient_dim(), im.dim())?;
        }
        Ok(BimoduleMap { domain, images })
    }

    pub fn from_fn(domain: Subspace, f: impl Fn(&Vector) -> Vector) -> Self {
        let images = domain.basis().iter().map(f).collect();
        BimoduleMap { domain, images }
    }

    /// `m ↦ c m`.
    pub fn left_multiplication(alg: &FiniteAlgebra, domain: Subspace, c: &Vector) -> Self {
        Self::from_fn(domain, |m| alg.mul(c, m))
    }

    pub fn identity(domain: Subspace) -> Self {
        Self::from_fn(domain, Vector::clone)
    }

    pub fn zero(domain: Subspace) -> Self {
        let d = domain.ambient_dim();
        Self::from_fn(domain, |_| Vector::zeros(d))
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    /// `None` when `v` is outside the domain.
    pub fn apply(&self, v: &Vector) -> Option<Vector> {
        let coeffs = self.domain.coordinates(v)?;
        let mut out = Vector::zeros(self.domain.ambient_dim());
        for (c, im) in coeffs.iter().zip(&self.images) {
            out.add_scaled(c, im);
        }
        Some(out)
    }

    pub fn add(&self, other: &BimoduleMap) -> Result<BimoduleMap> {
        if self.domain != other.domain {
            return Err(MiyashitaError::NotComposable);
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect();
        Ok(BimoduleMap {
            domain: self.domain.clone(),
            images,
        })
    }

    pub fn scale(&self, c: &Scalar) -> BimoduleMap {
        BimoduleMap {
            domain: self.domain.clone(),
            images: self.images.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    /// `self ∘ inner`; the images of `inner` must lie in `self`'s domain.
    pub fn compose(&self, inner: &BimoduleMap) -> Result<BimoduleMap> {
        let images = inner
            .images
            .iter()
            .map(|v| self.apply(v).ok_or(MiyashitaError::NotComposable))
            .collect::<Result<_>>()?;
        Ok(BimoduleMap {
            domain: inner.domain.clone(),
            images,
        })
    }

    /// Checks `f(b m) = b f(m)` for basis `b` of `left` and
    /// `f(m r) = f(m) r` for basis `r` of `right`, `m` ranging over a basis
    /// of the domain; both products must stay in the domain.
    pub fn check_bimodule(&self, alg: &FiniteAlgebra, left: &Subspace, right: &Subspace) -> Result<()> {
        let not_map = |reason: &str, witness: Vector| MiyashitaError::NotBimoduleMap {
            reason: reason.to_string(),
            witness,
        };
        for (m, fm) in self.domain.basis().iter().zip(&self.images) {
            for b in left.basis() {
                let bm = alg.mul(b, m);
                match self.apply(&bm) {
                    None => return Err(not_map("left product leaves the domain", bm)),
                    Some(v) if v != alg.mul(b, fm) => return Err(not_map("not left linear", bm)),
                    _ => {}
                }
            }
            for r in right.basis() {
                let mr = alg.mul(m, r);
                match self.apply(&mr) {
                    None => return Err(not_map("right product leaves the domain", mr)),
                    Some(v) if v != alg.mul(fm, r) => return Err(not_map("not right linear", mr)),
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// `f^X(a m) = a Σ x_i f(y_i m)`, defined on `A R`.
///
/// `f` must be a left-`B`, right-`R` linear map whose domain contains
/// `X⁻¹ A R`; the result is checked against `f^X(x m) = x f(1_B m)` on
/// basis pairs of `X × R`.
pub fn apply_fx(p: &InvertiblePair, d: &DualBasis, f: &BimoduleMap) -> Result<BimoduleMap> {
    let alg = p.algebra();
    f.check_bimodule(alg, &p.b.space, &p.ring)?;
    let ar = subspace_product(alg, &p.a.space, &p.ring)?;
    let eval = |v: &Vector| {
        f.apply(v).ok_or_else(|| MiyashitaError::NotBimoduleMap {
            reason: "domain does not contain X^-1 A R".into(),
            witness: v.clone(),
        })
    };
    let mut images = Vec::with_capacity(ar.dim());
    for m in ar.basis() {
        let mut acc = Vector::zeros(alg.dim());
        for (x, y) in d.pairs() {
            acc = &acc + &alg.mul(x, &eval(&alg.mul(y, m))?);
        }
        images.push(acc);
    }
    let fx = BimoduleMap { domain: ar, images };
    for x in p.x.basis() {
        for m in p.ring.basis() {
            let lhs = fx.apply(&alg.mul(x, m));
            let rhs = alg.mul(x, &eval(&alg.mul(&p.b.unit, m))?);
            if lhs.as_ref() != Some(&rhs) {
                return Err(MiyashitaError::Unverified(format!(
                    "f^X(x m) = x f(1_B m) fails for x = {}, m = {}",
                    alg.describe(x),
                    alg.describe(m)
                )));
            }
        }
    }
    Ok(fx)
}

/// Linear map between two subspaces, as a matrix in their canonical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMap {
    source: Subspace,
    target: Subspace,
    matrix: Matrix,
}

impl SigmaMap {
    /// Builds the map from images of the source basis; fails if an image
    /// leaves the target.
    pub fn from_images(source: Subspace, target: Subspace, images: &[Vector]) -> Result<Self> {
        let mut cols = Vec::with_capacity(images.len());
        for v in images {
            let c = target
                .coordinates(v)
                .ok_or_else(|| MiyashitaError::Unverified("image outside the target".into()))?;
            cols.push(Vector::from_entries(c));
        }
        let matrix = Matrix::from_columns(target.dim(), &cols)?;
        Ok(SigmaMap { source, target, matrix })
    }

    pub fn identity(space: Subspace) -> Self {
        let n = space.dim();
        SigmaMap {
            source: space.clone(),
            target: space,
            matrix: Matrix::identity(n),
        }
    }

    pub fn source(&self) -> &Subspace {
        &self.source
    }

    pub fn target(&self) -> &Subspace {
        &self.target
    }

    /// Target coordinates (rows) of the images of source basis vectors (columns).
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Option<Vector> {
        let coeffs = Vector::from_entries(self.source.coordinates(v)?);
        let out = self.matrix.apply(&coeffs).expect("matrix matches the source dimension");
        Some(self.target.from_coordinates(out.entries()))
    }

    /// Images of the source basis, in ambient coordinates.
    pub fn images(&self) -> Vec<Vector> {
        (0..self.matrix.ncols())
            .map(|j| self.target.from_coordinates(self.matrix.column(j).entries()))
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SigmaMap) -> Result<SigmaMap> {
        if inner.target != self.source {
            return Err(MiyashitaError::NotComposable);
        }
        Ok(SigmaMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.compose(&inner.matrix)?,
        })
    }

    pub fn inverse(&self) -> Option<SigmaMap> {
        Some(SigmaMap {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: self.matrix.inverse()?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }

    /// Restriction to `sub ⊆ source`, landing in `codomain ⊆ target`.
    pub fn restrict(&self, sub: &Subspace, codomain: &Subspace) -> Result<SigmaMap> {
        let images = sub
            .basis()
            .iter()
            .map(|v| self.apply(v).ok_or(MiyashitaError::NotComposable))
            .collect::<Result<Vec<_>>>()?;
        SigmaMap::from_images(sub.clone(), codomain.clone(), &images)
    }
}

/// `σ(r) = Σ x_i r y_i` from `source` into `target`, verified to be a
/// bijective, multiplicative, unit-preserving map with `σ(r) x = x r`.
fn sigma_between(p: &InvertiblePair, d: &DualBasis, source: &Subspace, target: &Subspace) -> Result<SigmaMap> {
    let alg = p.algebra();
    let conj = |r: &Vector| {
        d.pairs().iter().fold(Vector::zeros(alg.dim()), |acc, (x, y)| {
            &acc + &alg.mul(&alg.mul(x, r), y)
        })
    };
    let images: Vec<Vector> = source.basis().iter().map(conj).collect();
    let sigma = SigmaMap::from_images(source.clone(), target.clone(), &images)?;
    let bad = |what: &str| Err(MiyashitaError::Unverified(what.to_string()));
    if !sigma.matrix.is_square_invertible() {
        return bad("σ is not bijective");
    }
    for (r, sr) in source.basis().iter().zip(&images) {
        for (r2, sr2) in source.basis().iter().zip(&images) {
            if sigma.apply(&alg.mul(r, r2)).as_ref() != Some(&alg.mul(sr, sr2)) {
                return bad("σ is not multiplicative");
            }
        }
        for x in p.x.basis() {
            if alg.mul(sr, x) != alg.mul(x, r) {
                return bad("σ(r) x = x r fails");
            }
        }
    }
    if sigma.apply(&p.b.unit).as_ref() != Some(&p.a.unit) {
        return bad("σ(1_B) differs from 1_A");
    }
    Ok(sigma)
}

/// `σ^X : C_{BR}(B) → C_{AR}(A)`.
pub fn sigma_general(p: &InvertiblePair, d: &DualBasis) -> Result<SigmaMap> {
    let alg = p.algebra();
    let br = subspace_product(alg, &p.b.space, &p.ring)?;
    let ar = subspace_product(alg, &p.a.space, &p.ring)?;
    let source = commutant(alg, &br, &p.b.space)?;
    let target = commutant(alg, &ar, &p.a.space)?;
    sigma_between(p, d, &source, &target)
}

/// Joint fixed points `{ y ∈ Y : σ(y) = y for every map }`.
pub fn fixed_subspace(y: &Subspace, maps: &[&SigmaMap]) -> Result<Subspace> {
    let n = y.dim();
    let mut equations = Subspace::zero(n);
    for (index, m) in maps.iter().enumerate() {
        if m.source() != y || m.target() != y {
            return Err(MiyashitaError::SourceMismatch { index });
        }
        let shifted = m.matrix().sub(&Matrix::identity(n))?;
        for row in shifted.rows() {
            equations.insert(row.clone());
        }
    }
    let kernel = equations.annihilator();
    Ok(Subspace::span(
        y.ambient_dim(),
        kernel.basis().iter().map(|c| y.from_coordinates(c.entries())),
    )?)
}

/// Both sides of a commutant identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    /// `C_R(R_H)` by a direct solve.
    pub lhs: Subspace,
    /// The fixed-ring side.
    pub rhs: Subspace,
    /// Sum of the components `R_t` with `d(t) ≠ c(t)` and both endpoints
    /// outside `ob(H)`: these commute with `R_H` but lie in no `R_{G_e}`.
    pub uncovered: Subspace,
}

impl TheoremCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Whether `C_R(R_H) = rhs ⊕ uncovered`.
    pub fn holds_with_uncovered(&self) -> bool {
        self.rhs.sum(&self.uncovered).is_ok_and(|s| s == self.lhs)
    }
}

/// The action `s ↦ σ_s` of a strongly graded, locally unital groupoid
/// grading on the commutants `C_{R_{G_e}}(R_e)`, with every `σ_s` built and
/// verified up front.
#[derive(Clone, Debug)]
pub struct GradedAction {
    graded: GradedAlgebra,
    units: LocalUnits,
    vertex_rings: Vec<Subspace>,
    commutants: Vec<Subspace>,
    pairs: Vec<InvertiblePair>,
    sigmas: Vec<SigmaMap>,
}

impl GradedAction {
    pub fn new(ga: &GradedAlgebra) -> Result<Self> {
        let g = ga.groupoid().ok_or(GradingError::NotAGroupoid)?;
        ga.check_strong().map_err(GradingError::NotStrong)?;
        let units = ga.local_units()?;
        let alg = ga.algebra();
        let mut vertex_rings = Vec::new();
        let mut commutants = Vec::new();
        for e in g.object_ids() {
            let ring = ga.vertex_ring(e);
            commutants.push(commutant(alg, &ring, ga.object_component(e))?);
            vertex_rings.push(ring);
        }
        let subring = |e: ObjectId| UnitalSubring::new(ga.object_component(e).clone(), units.unit(e).clone());
        let mut pairs = Vec::new();
        let mut sigmas = Vec::new();
        for s in g.morphism_ids() {
            let (d, c) = (g.dom(s), g.cod(s));
            let pair = verify_invertible(
                ga.algebra_arc(),
                ga.total().clone(),
                subring(c),
                subring(d),
                ga.component(s).clone(),
                ga.component(g.inverse(s)).clone(),
            )?;
            let basis = dual_basis(&pair)?;
            sigmas.push(sigma_between(&pair, &basis, &commutants[d.0], &commutants[c.0])?);
            pairs.push(pair);
        }
        Ok(GradedAction {
            graded: ga.clone(),
            units,
            vertex_rings,
            commutants,
            pairs,
            sigmas,
        })
    }

    pub fn graded(&self) -> &GradedAlgebra {
        &self.graded
    }

    pub fn local_units(&self) -> &LocalUnits {
        &self.units
    }

    /// `R_{G_e}`.
    pub fn vertex_ring(&self, e: ObjectId) -> &Subspace {
        &self.vertex_rings[e.0]
    }

    /// `C_{R_{G_e}}(R_e)`.
    pub fn commutant_at(&self, e: ObjectId) -> &Subspace {
        &self.commutants[e.0]
    }

    /// `R_s` as an invertible pair `R_{d(s)} → R_{c(s)}`.
    pub fn pair(&self, s: MorphismId) -> &InvertiblePair {
        &self.pairs[s.0]
    }

    pub fn sigma(&self, s: MorphismId) -> &SigmaMap {
        &self.sigmas[s.0]
    }

    /// `σ_s` recomputed from another dual basis of `R_s`.
    pub fn sigma_with(&self, s: MorphismId, d: &DualBasis) -> Result<SigmaMap> {
        let pair = self.pair(s);
        if d.sum(pair.algebra()) != pair.a.unit {
            return Err(MiyashitaError::NoDualBasis);
        }
        let cat = self.graded.category();
        sigma_between(pair, d, self.commutant_at(cat.dom(s)), self.commutant_at(cat.cod(s)))
    }

    /// `σ_s` restricted to `Z(R_{d(s)}) → Z(R_{c(s)})`, checked bijective.
    pub fn sigma_center(&self, s: MorphismId) -> Result<SigmaMap> {
        let cat = self.graded.category();
        let alg = self.graded.algebra();
        let zd = center(alg, self.graded.object_component(cat.dom(s)))?;
        let zc = center(alg, self.graded.object_component(cat.cod(s)))?;
        let restricted = self.sigma(s).restrict(&zd, &zc)?;
        if !restricted.matrix().is_square_invertible() {
            return Err(MiyashitaError::Unverified("σ does not map center onto center".into()));
        }
        Ok(restricted)
    }

    /// `C_R(R_H)` against `C_R(R_e)^H` for a one-object grading.
    pub fn group_theorem(&self, h: &[MorphismId]) -> Result<TheoremCheck> {
        let g = self.graded.groupoid().expect("action requires a groupoid");
        if g.object_count() != 1 {
            return Err(MiyashitaError::NotAGroup);
        }
        if !g.is_subgroupoid(h) {
            return Err(MiyashitaError::NotASubgroupoid);
        }
        let lhs = self.direct_commutant(h)?;
        let maps: Vec<&SigmaMap> = h.iter().map(|&s| self.sigma(s)).collect();
        let rhs = fixed_subspace(self.commutant_at(ObjectId(0)), &maps)?;
        let uncovered = Subspace::zero(lhs.ambient_dim());
        Ok(TheoremCheck { lhs, rhs, uncovered })
    }

    /// `C_R(R_H)` against the subspace of `Σ_e x_e` with `x_e ∈ R_{G_e}`
    /// free off `ob(H)`, `x_e ∈ C_{R_{G_e}}(R_e)` on `ob(H)`, and
    /// `σ_s(x_{d(s)}) = x_{c(s)}` for `s ∈ H`.
    pub fn groupoid_theorem(&self, h: &Subgroupoid) -> Result<TheoremCheck> {
        let ga = &self.graded;
        let g = ga.groupoid().expect("action requires a groupoid");
        if !g.is_subgroupoid(h.morphisms()) {
            return Err(MiyashitaError::NotASubgroupoid);
        }
        let lhs = self.direct_commutant(h.morphisms())?;
        let in_h = h.objects(g);
        let blocks: Vec<&Subspace> = g
            .object_ids()
            .map(|e| {
                if in_h.contains(&e) {
                    self.commutant_at(e)
                } else {
                    self.vertex_ring(e)
                }
            })
            .collect();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for b in &blocks {
            offsets.push(total);
            total += b.dim();
        }
        let mut equations = Subspace::zero(total);
        for &s in h.morphisms() {
            let (d, c) = (g.dom(s).0, g.cod(s).0);
            let sigma = self.sigma(s).matrix();
            for k in 0..sigma.nrows() {
                let mut row = Vector::zeros(total);
                for (j, x) in sigma.row(k).support() {
                    row[offsets[d] + j] += x;
                }
                row[offsets[c] + k] -= Scalar::one();
                equations.insert(row);
            }
        }
        let kernel = equations.annihilator();
        let ambient = ga.algebra().dim();
        let rhs = Subspace::span(
            ambient,
            kernel.basis().iter().map(|v| {
                blocks
                    .iter()
                    .zip(&offsets)
                    .fold(Vector::zeros(ambient), |acc, (b, &o)| {
                        &acc + &b.from_coordinates(&v.entries()[o..o + b.dim()])
                    })
            }),
        )?;
        let outside: Vec<MorphismId> = g
            .morphism_ids()
            .filter(|&t| {
                let (d, c) = (g.dom(t), g.cod(t));
                d != c && !in_h.contains(&d) && !in_h.contains(&c)
            })
            .collect();
        let uncovered = ga.subring(&outside)?;
        Ok(TheoremCheck { lhs, rhs, uncovered })
    }

    fn direct_commutant(&self, h: &[MorphismId]) -> Result<Subspace> {
        let ga = &self.graded;
        Ok(commutant(ga.algebra(), ga.total(), &ga.subring(h)?)?)
    }
}

/// `σ_s` for a strongly graded, locally unital groupoid grading.
pub fn sigma_graded(ga: &GradedAlgebra, s: MorphismId) -> Result<SigmaMap> {
    if s.0 >= ga.category().morphism_count() {
        return Err(GradingError::UnknownMorphism(s.0).into());
    }
    Ok(GradedAction::new(ga)?.sigma(s).clone())
}

/// `σ_s` on `Z(R_{d(s)}) → Z(R_{c(s)})`.
pub fn sigma_center(ga: &GradedAlgebra, s: MorphismId) -> Result<SigmaMap> {
    if s.0 >= ga.category().morphism_count() {
        return Err(GradingError::UnknownMorphism(s.0).into());
    }
    GradedAction::new(ga)?.sigma_center(s)
}

pub fn commutant_group_theorem(ga: &GradedAlgebra, h: &[MorphismId]) -> Result<TheoremCheck> {
    GradedAction::new(ga)?.group_theorem(h)
}

pub fn commutant_groupoid_theorem(ga: &GradedAlgebra, h: &Subgroupoid) -> Result<TheoremCheck> {
    GradedAction::new(ga)?.groupoid_theorem(h)
}
