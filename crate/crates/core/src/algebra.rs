//! Finite-dimensional associative algebras over the rationals, given by
//! structure constants, and the subspace-level operations on them.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{check_dim, format_scalar, LinalgError, Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure constant refers to basis index {index} but the dimension is {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Structure {
    /// `M_n(Q)` in the basis `e_ab`, index `a * n + b` (0-based).
    MatrixUnits(usize),
    /// Sparse products `b_i b_j`, stored at `i * dim + j`.
    Table(Vec<Vec<(usize, Scalar)>>),
}

/// Associative algebra with basis `b_0 .. b_{D-1}` and
/// `b_i b_j = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    dim: usize,
    structure: Structure,
    labels: Vec<String>,
}

impl FiniteAlgebra {
    /// Builds an algebra from `(i, j, k, c)` entries meaning `c[i][j][k] += c`,
    /// checking associativity on every basis triple.
    pub fn new<I>(dim: usize, constants: I, labels: Option<Vec<String>>) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut table: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index, dim });
                }
            }
            let cell = &mut table[i * dim + j];
            match cell.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, existing)) => *existing += c,
                None => cell.push((k, c)),
            }
        }
        for cell in &mut table {
            cell.retain(|(_, c)| !c.is_zero());
            cell.sort_by_key(|(k, _)| *k);
        }
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(AlgebraError::LabelCount {
                    expected: dim,
                    found: l.len(),
                })
            }
            Some(l) => l,
            None => (0..dim).map(|i| format!("b{i}")).collect(),
        };
        let alg = FiniteAlgebra {
            dim,
            structure: Structure::Table(table),
            labels,
        };
        alg.check_associative()?;
        Ok(alg)
    }

    /// `M_n(Q)` with basis `e_ij` (labels `e11`, `e12`, ...; `e(10,3)` style
    /// once `n > 9`). Basis index of `e_ij` (1-based `i, j`) is `(i-1) n + (j-1)`.
    pub fn matrix_units(n: usize) -> Self {
        assert!(n >= 1, "matrix algebra needs n >= 1");
        let labels = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| matrix_unit_label(n, i, j)))
            .collect();
        FiniteAlgebra {
            dim: n * n,
            structure: Structure::MatrixUnits(n),
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `Some(n)` when this is the matrix-unit algebra `M_n`.
    pub fn matrix_order(&self) -> Option<usize> {
        match self.structure {
            Structure::MatrixUnits(n) => Some(n),
            Structure::Table(_) => None,
        }
    }

    /// The matrix unit `e_ij` (1-based), for matrix-unit algebras.
    pub fn matrix_unit(&self, i: usize, j: usize) -> Vector {
        let n = self.matrix_order().expect("not a matrix-unit algebra");
        Vector::unit(self.dim, (i - 1) * n + (j - 1))
    }

    /// Sum of matrix units, e.g. `units(&[(4, 4), (5, 5)])` for `e44 + e55`.
    pub fn units(&self, pairs: &[(usize, usize)]) -> Vector {
        let mut v = Vector::zeros(self.dim);
        for &(i, j) in pairs {
            v.add_scaled(&Scalar::one(), &self.matrix_unit(i, j));
        }
        v
    }

    pub fn identity_matrix(&self) -> Vector {
        let n = self.matrix_order().expect("not a matrix-unit algebra");
        Vector::indicator(self.dim, (0..n).map(|i| i * n + i))
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        match &self.structure {
            Structure::MatrixUnits(n) => {
                let (a, b) = (i / n, i % n);
                let (c, d) = (j / n, j % n);
                if b == c {
                    vec![(a * n + d, Scalar::one())]
                } else {
                    Vec::new()
                }
            }
            Structure::Table(t) => t[i * self.dim + j].clone(),
        }
    }

    pub fn mul(&self, u: &Vector, v: &Vector) -> Vector {
        debug_assert_eq!(u.dim(), self.dim);
        debug_assert_eq!(v.dim(), self.dim);
        let mut out = Vector::zeros(self.dim);
        match &self.structure {
            Structure::MatrixUnits(n) => {
                let n = *n;
                let mut rows_of_v: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); n];
                for (idx, x) in v.support() {
                    rows_of_v[idx / n].push((idx % n, x));
                }
                for (idx, x) in u.support() {
                    let (a, b) = (idx / n, idx % n);
                    for &(d, y) in &rows_of_v[b] {
                        out[a * n + d] += x * y;
                    }
                }
            }
            Structure::Table(t) => {
                let v_support: Vec<(usize, &Scalar)> = v.support().collect();
                for (i, x) in u.support() {
                    for &(j, y) in &v_support {
                        for (k, c) in &t[i * self.dim + j] {
                            out[*k] += x * y * c;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = Vector::from_sparse(d, self.basis_product(i, j));
                for k in 0..d {
                    let jk = Vector::from_sparse(d, self.basis_product(j, k));
                    if ij.is_zero() && jk.is_zero() {
                        continue;
                    }
                    let left = self.mul(&ij, &Vector::unit(d, k));
                    let right = self.mul(&Vector::unit(d, i), &jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `m ↦ c m` in ambient coordinates.
    pub fn left_mul_matrix(&self, c: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(c, &Vector::unit(self.dim, j))).collect();
        Matrix::from_columns(self.dim, &cols).expect("columns have the ambient dimension")
    }

    /// Human-readable linear combination of basis labels, e.g. `e11+e33` or
    /// `2*e12-1/3*e21`.
    pub fn describe(&self, v: &Vector) -> String {
        let mut out = String::new();
        for (i, c) in v.support() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if !magnitude.is_one() {
                out.push_str(&format_scalar(&magnitude));
                out.push('*');
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn check(&self, s: &Subspace) -> Result<(), LinalgError> {
        check_dim(self.dim, s.ambient_dim())
    }
}

fn matrix_unit_label(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("e{i}{j}")
    } else {
        format!("e({i},{j})")
    }
}

/// `U·V`: span of all products `u v` of basis elements.
pub fn subspace_product(alg: &FiniteAlgebra, u: &Subspace, v: &Subspace) -> Result<Subspace, LinalgError> {
    alg.check(u)?;
    alg.check(v)?;
    let mut out = Subspace::zero(alg.dim());
    for a in u.basis() {
        for b in v.basis() {
            out.insert(alg.mul(a, b));
        }
    }
    Ok(out)
}

/// `{ w ∈ W : w x = x w for all x ∈ X }`.
///
/// One exact solve: the unknowns are coordinates in the basis of `W`, one
/// equation per (basis element of `X`, ambient coordinate). Elimination
/// stops early once the equations pin every unknown to zero.
pub fn commutant(alg: &FiniteAlgebra, w: &Subspace, x: &Subspace) -> Result<Subspace, LinalgError> {
    alg.check(w)?;
    alg.check(x)?;
    let unknowns = w.dim();
    let mut equations = Subspace::zero(unknowns);
    'outer: for xb in x.basis() {
        let columns: Vec<Vector> = w.basis().iter().map(|wb| &alg.mul(wb, xb) - &alg.mul(xb, wb)).collect();
        for coord in 0..alg.dim() {
            let row: Vector = columns.iter().map(|c| c[coord].clone()).collect();
            if !row.is_zero() {
                equations.insert(row);
                if equations.dim() == unknowns {
                    break 'outer;
                }
            }
        }
    }
    let kernel = equations.annihilator();
    Subspace::span(
        alg.dim(),
        kernel.basis().iter().map(|c| w.from_coordinates(c.entries())),
    )
}

/// `Z(W) = C_W(W)`.
pub fn center(alg: &FiniteAlgebra, w: &Subspace) -> Result<Subspace, LinalgError> {
    commutant(alg, w, w)
}

/// Whether `W·W ⊆ W`.
pub fn is_subring(alg: &FiniteAlgebra, w: &Subspace) -> bool {
    w.basis()
        .iter()
        .all(|a| w.basis().iter().all(|b| w.contains(&alg.mul(a, b))))
}
