use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{int, Scalar};

/// Dense coordinate vector with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = Scalar::one();
        v
    }

    pub fn from_entries(entries: Vec<Scalar>) -> Self {
        Vector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&n| int(n)).collect())
    }

    /// Sum of unit vectors at `indices` (repeats accumulate).
    pub fn indicator(dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(dim);
        for i in indices {
            v.0[i] += Scalar::one();
        }
        v
    }

    /// Accumulates `(index, value)` pairs.
    pub fn from_sparse(dim: usize, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Self::zeros(dim);
        for (k, c) in entries {
            v.0[k] += c;
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Nonzero entries with their positions.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }

    /// `self += factor * other`, touching only the support of `other`.
    pub fn add_scaled(&mut self, factor: &Scalar, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if factor.is_zero() {
            return;
        }
        for (i, x) in other.support() {
            self.0[i] += factor * x;
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn scale_in_place(&mut self, factor: &Scalar) {
        for x in self.0.iter_mut().filter(|x| !x.is_zero()) {
            *x *= factor;
        }
    }

    /// Appends the entries of `other` (direct-sum coordinates).
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut entries = self.0.clone();
        entries.extend(other.0.iter().cloned());
        Vector(entries)
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}
