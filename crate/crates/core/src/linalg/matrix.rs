use num_traits::Zero;

use super::{check_dim, LinalgError, Scalar, Subspace, Vector};

/// Dense exact matrix, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| Vector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self, LinalgError> {
        for r in &rows {
            check_dim(cols, r.dim())?;
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_dim(rows, c.dim())?;
            for (i, x) in c.support() {
                m.data[i][j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.data[i]
    }

    pub fn rows(&self) -> &[Vector] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vector {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i][j] = value;
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector, LinalgError> {
        check_dim(self.cols, v.dim())?;
        let mut out = Vector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (j, x) in v.support() {
                let a = &row[j];
                if !a.is_zero() {
                    acc += a * x;
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// `self * rhs`.
    pub fn compose(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        check_dim(self.cols, rhs.rows)?;
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row.support() {
                out.data[i].add_scaled(a, &rhs.data[k]);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row.support() {
                out.data[j][i] = x.clone();
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        check_dim(self.rows, rhs.rows)?;
        check_dim(self.cols, rhs.cols)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vector::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn row_space(&self) -> Subspace {
        let mut s = Subspace::zero(self.cols);
        for r in &self.data {
            s.insert(r.clone());
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    /// Kernel `{ v : self * v = 0 }`.
    pub fn null_space(&self) -> Subspace {
        self.row_space().annihilator()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // Row-reduce [A | I]; A is invertible iff the left block reduces to I.
        let augmented: Vec<Vector> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&Vector::unit(n, i)))
            .collect();
        let mut reduced = Subspace::zero(2 * n);
        for r in augmented {
            reduced.insert(r);
        }
        if reduced.dim() != n || reduced.pivots().iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let data = reduced
            .basis()
            .iter()
            .map(|r| r.entries()[n..].iter().cloned().collect())
            .collect();
        Some(Matrix { rows: n, cols: n, data })
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scaled(factor)).collect(),
        }
    }

    pub fn is_square_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl Default for Matrix {
    fn default() -> Self {
        Matrix::zeros(0, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_small_matrix() {
        let a = Matrix::from_rows(2, vec![Vector::from_ints(&[1, 2]), Vector::from_ints(&[3, 4])]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&a).unwrap().is_identity());
        assert_eq!(inv.get(0, 0), &crate::linalg::parse_scalar("-2").unwrap());
        assert_eq!(inv.get(1, 0), &crate::linalg::parse_scalar("3/2").unwrap());
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = Matrix::from_rows(2, vec![Vector::from_ints(&[1, 2]), Vector::from_ints(&[2, 4])]).unwrap();
        assert!(a.inverse().is_none());
        assert_eq!(a.rank(), 1);
        assert_eq!(a.null_space().dim(), 1);
    }

    #[test]
    fn columns_and_transpose_agree() {
        let cols = [Vector::from_ints(&[1, 0, 2]), Vector::from_ints(&[0, 5, 0])];
        let m = Matrix::from_columns(3, &cols).unwrap();
        assert_eq!(m.column(1), cols[1]);
        assert_eq!(m.transpose().row(0), &cols[0]);
        assert_eq!(
            m.apply(&Vector::from_ints(&[1, 1])).unwrap(),
            Vector::from_ints(&[1, 5, 2])
        );
    }
}
