use num_traits::{One, Zero};

use super::{check_dim, LinalgError, Matrix, Scalar, Vector};

/// Linear subspace of `Q^n`, stored as a reduced row-echelon basis.
///
/// Invariant: rows are nonzero, pivots strictly increase, every pivot entry
/// is 1 and every other row is 0 in each pivot column. Two subspaces are
/// equal iff their stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| Vector::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            check_dim(ambient, v.dim())?;
            s.insert(v);
        }
        Ok(s)
    }

    /// Span of standard basis vectors.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subspace::zero(ambient);
        for i in indices {
            s.insert(Vector::unit(ambient, i));
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let factor = -r[p].clone();
                r.add_scaled(&factor, row);
            }
        }
        r
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        debug_assert_eq!(v.dim(), self.ambient);
        let mut r = self.reduce(&v);
        let Some(pivot) = r.first_nonzero() else {
            return false;
        };
        let inv = r[pivot].recip();
        if !inv.is_one() {
            r.scale_in_place(&inv);
        }
        for row in &mut self.rows {
            if !row[pivot].is_zero() {
                let factor = -row[pivot].clone();
                row.add_scaled(&factor, &r);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, r);
        self.pivots.insert(at, pivot);
        true
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.dim() == self.ambient && self.reduce(v).is_zero()
    }

    /// Coefficients of `v` with respect to [`Self::basis`], if `v` lies in the span.
    pub fn coordinates(&self, v: &Vector) -> Option<Vec<Scalar>> {
        if v.dim() != self.ambient {
            return None;
        }
        let coeffs: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.from_coordinates(&coeffs) == *v).then_some(coeffs)
    }

    pub fn from_coordinates(&self, coeffs: &[Scalar]) -> Vector {
        let mut out = Vector::zeros(self.ambient);
        for (c, row) in coeffs.iter().zip(&self.rows) {
            out.add_scaled(c, row);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_dim(self.ambient, other.ambient)?;
        let (mut big, small) = if self.dim() >= other.dim() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for r in &small.rows {
            big.insert(r.clone());
        }
        Ok(big)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_dim(self.ambient, other.ambient)?;
        // U ∩ V = ann(ann U + ann V)
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `{ x : r · x = 0 for every basis row r }`, i.e. the kernel of the
    /// matrix whose rows span `self`.
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        // One kernel vector per free column; insert() canonicalizes.
        let mut out = Subspace::zero(n);
        for f in (0..n).filter(|&f| !is_pivot[f]) {
            let mut v = Vector::unit(n, f);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            out.insert(v);
        }
        out
    }

    /// Images of the basis under a map, as a subspace of the target.
    pub fn image<F>(&self, target_dim: usize, mut map: F) -> Subspace
    where
        F: FnMut(&Vector) -> Vector,
    {
        let mut out = Subspace::zero(target_dim);
        for r in &self.rows {
            out.insert(map(r));
        }
        out
    }
}

/// Affine solution set of `A x = b`: `particular + null_space`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vector,
    pub null_space: Subspace,
}

/// Solves `A x = b` exactly. The particular solution sets every free
/// variable of the reduced system to zero.
pub fn solve(a: &Matrix, b: &Vector) -> Result<Solution, LinalgError> {
    check_dim(a.nrows(), b.dim())?;
    let n = a.ncols();
    let mut reduced = Subspace::zero(n + 1);
    for (row, rhs) in a.rows().iter().zip(b.entries()) {
        reduced.insert(row.concat(&Vector::from_entries(vec![rhs.clone()])));
    }
    if reduced.pivots.last() == Some(&n) {
        return Err(LinalgError::Unsolvable);
    }
    let mut particular = Vector::zeros(n);
    let mut coefficient_rows = Subspace::zero(n);
    for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
        particular[p] = row[n].clone();
        let trimmed: Vector = row.entries()[..n].iter().cloned().collect();
        coefficient_rows.rows.push(trimmed);
        coefficient_rows.pivots.push(p);
    }
    Ok(Solution {
        particular,
        null_space: coefficient_rows.annihilator(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vector {
        Vector::from_ints(xs)
    }

    #[test]
    fn span_examples() {
        assert_eq!(Subspace::span(2, [v(&[1, 0]), v(&[1, 0])]).unwrap().dim(), 1);
        assert!(Subspace::span(2, []).unwrap().is_zero());
        assert_eq!(Subspace::span(2, [v(&[1, 2]), v(&[3, 4])]).unwrap(), Subspace::full(2));
        assert_eq!(
            Subspace::span(2, [v(&[1, 2]), v(&[1])]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn equal_spans_are_identical() {
        let a = Subspace::span(2, [v(&[1, 0]), v(&[0, 1])]).unwrap();
        let b = Subspace::span(2, [v(&[1, 1]), v(&[1, -1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sum_with_zero_is_identity() {
        let u = Subspace::span(3, [v(&[1, 2, 3])]).unwrap();
        assert_eq!(u.sum(&Subspace::zero(3)).unwrap(), u);
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -1, 2]);
        let sol = solve(&Matrix::identity(3), &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.null_space.is_zero());

        assert_eq!(solve(&Matrix::zeros(2, 2), &v(&[1, 0])), Err(LinalgError::Unsolvable));

        let a = Matrix::from_rows(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        let sol = solve(&a, &v(&[1, 1])).unwrap();
        assert_eq!(sol.null_space.dim(), 1);
        assert_eq!(a.apply(&sol.particular).unwrap(), v(&[1, 1]));
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(3, [v(&[1, 1, 0]), v(&[0, 2, 4])]).unwrap();
        let x = v(&[2, 5, 6]);
        let c = s.coordinates(&x).unwrap();
        assert_eq!(s.from_coordinates(&c), x);
        assert!(s.coordinates(&v(&[0, 0, 1])).is_none());
    }

    fn small_vec(dim: usize) -> impl Strategy<Value = Vector> {
        proptest::collection::vec(-3i64..=3, dim).prop_map(|xs| Vector::from_ints(&xs))
    }

    fn subspace6() -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(small_vec(6), 0..5).prop_map(|vs| Subspace::span(6, vs).unwrap())
    }

    fn is_rref(s: &Subspace) -> bool {
        s.pivots.windows(2).all(|w| w[0] < w[1])
            && s.rows
                .iter()
                .zip(&s.pivots)
                .all(|(r, &p)| r[p].is_one() && r.first_nonzero() == Some(p))
            && s.pivots
                .iter()
                .enumerate()
                .all(|(i, &p)| s.rows.iter().enumerate().all(|(j, r)| i == j || r[p].is_zero()))
    }

    proptest! {
        #[test]
        fn modular_law(u in subspace6(), w in subspace6()) {
            let sum = u.sum(&w).unwrap();
            let meet = u.intersect(&w).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
            prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
            prop_assert!(is_rref(&sum) && is_rref(&meet));
        }

        #[test]
        fn span_is_idempotent(vs in proptest::collection::vec(small_vec(5), 0..6)) {
            let s = Subspace::span(5, vs).unwrap();
            prop_assert!(is_rref(&s));
            prop_assert_eq!(Subspace::span(5, s.basis().to_vec()).unwrap(), s);
        }

        #[test]
        fn solve_is_exact(rows in proptest::collection::vec(small_vec(4), 1..5), x in small_vec(4)) {
            let a = Matrix::from_rows(4, rows).unwrap();
            let b = a.apply(&x).unwrap();
            let sol = solve(&a, &b).unwrap();
            prop_assert_eq!(a.apply(&sol.particular).unwrap(), b);
            for n in sol.null_space.basis() {
                prop_assert!(a.apply(n).unwrap().is_zero());
            }
            prop_assert_eq!(sol.null_space.dim() + a.rank(), 4);
        }
    }
}
