use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::poly::UnivariatePolynomial;
use super::rational::Rational;
use super::scalar::Scalar;
use super::ExactError;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type RationalMatrix = Matrix<Rational>;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, PartialEq)]
pub struct Rref<S> {
    pub reduced: Matrix<S>,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl<S: fmt::Display> fmt::Debug for Rref<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Rref {{ reduced: {:?}, pivot_columns: {:?}, rank: {} }}",
            self.reduced, self.pivot_columns, self.rank
        )
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` disambiguates the empty case.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "incompatible matrix product");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc = acc + a.clone() * rhs[(k, j)].clone();
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "incompatible matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(S::zero(), |acc, k| acc + self[(i, k)].clone() * v[k].clone()))
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `I - self`.
    pub fn one_minus(&self) -> Result<Self, ExactError> {
        self.require_square()?;
        Ok(Self::identity(self.rows).sub(self))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    fn require_square(&self) -> Result<(), ExactError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(ExactError::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Gauss-Jordan reduction to reduced row echelon form.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().unwrap();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { reduced: m, pivot_columns: pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space `{v : Mv = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let Rref { reduced, pivot_columns, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_columns.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (row, &pc) in pivot_columns.iter().enumerate() {
                    v[pc] = -reduced[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Linearly independent columns spanning the column space.
    pub fn column_space_basis(&self) -> Vec<Vec<S>> {
        self.rref().pivot_columns.iter().map(|&c| self.column(c)).collect()
    }

    /// Some solution of `Mx = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let Rref { reduced, pivot_columns, .. } = aug.rref();
        if pivot_columns.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &pc) in pivot_columns.iter().enumerate() {
            x[pc] = reduced[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Solves `M X = B` column by column.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        let cols: Option<Vec<Vec<S>>> = b.columns().iter().map(|c| self.solve(c)).collect();
        Some(Matrix::from_columns(self.cols, &cols?))
    }

    pub fn inverse(&self) -> Result<Option<Self>, ExactError> {
        self.require_square()?;
        let n = self.rows;
        let Rref { reduced, rank, .. } = self.hstack(&Self::identity(n)).rref();
        if rank < n || (0..n).any(|i| !reduced[(i, i)].is_one()) {
            return Ok(None);
        }
        Ok(Some(Self::from_fn(n, n, |i, j| reduced[(i, n + j)].clone())))
    }

    pub fn determinant(&self) -> Result<S, ExactError> {
        self.require_square()?;
        Ok(S::matrix_determinant(self))
    }

    /// Fraction-free (Bareiss) elimination; exact in any field.
    pub fn bareiss_determinant(&self) -> S {
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut m = self.clone();
        let mut sign = S::one();
        let mut prev = S::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return S::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = num.div(&prev);
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Coefficients of `det(xI - M)` in ascending degree (monic), by
    /// Faddeev-LeVerrier.
    pub fn characteristic_coefficients(&self) -> Result<Vec<S>, ExactError> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut aux = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&aux);
            for i in 0..n {
                next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            aux = next;
            let t = self.mul(&aux).trace();
            coeffs[n - k] = -t.div(&S::from_int(k as i64));
        }
        Ok(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates a polynomial with coefficients in `S` (ascending) at this matrix.
    pub fn eval_poly(&self, coeffs: &[S]) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc[(i, i)] = acc[(i, i)].clone() + c.clone();
            }
        }
        acc
    }
}

impl RationalMatrix {
    pub fn char_poly(&self) -> Result<UnivariatePolynomial, ExactError> {
        Ok(UnivariatePolynomial::new(self.characteristic_coefficients()?))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
