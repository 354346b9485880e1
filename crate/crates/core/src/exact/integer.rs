use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `D = U * M * V` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_0 | d_1 | ...` (length `min(rows, cols)`).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

impl IntegerMatrix {
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(entries.len(), rows);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix { rows, cols, data: entries.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_rows(r, c, rows.iter().map(|row| row.iter().map(|&x| x.into()).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Converts a rational matrix whose entries are all integers.
    pub fn try_from_rational(m: &RationalMatrix) -> Option<Self> {
        let data: Option<Vec<BigInt>> = m.entries().iter().map(Rational::to_integer).collect();
        Some(IntegerMatrix { rows: m.rows(), cols: m.cols(), data: data? })
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::new(self.rows, self.cols, self.data.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "incompatible matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows).map(|i| (0..self.cols).map(|k| &self[(i, k)] * &v[k]).sum()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Bareiss fraction-free determinant. Panics on non-square input.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self.data[r * self.cols + j] = v;
        }
    }

    /// Smith normal form with transforms. Pivots are chosen as the entry of
    /// smallest absolute value in the remaining block.
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut d = self.clone();
        let mut u = Self::identity(self.rows);
        let mut v = Self::identity(self.cols);
        let n = self.rows.min(self.cols);

        for t in 0..n {
            loop {
                let pivot = (t..d.rows)
                    .flat_map(|i| (t..d.cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !d[(i, j)].is_zero())
                    .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
                let Some((pi, pj)) = pivot else {
                    return SmithForm { u, d, v };
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let p = d[(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..d.rows {
                    if d[(i, t)].is_zero() {
                        continue;
                    }
                    let qt = -d[(i, t)].div_floor(&p);
                    d.add_row(i, t, &qt);
                    u.add_row(i, t, &qt);
                    dirty |= !d[(i, t)].is_zero();
                }
                for j in t + 1..d.cols {
                    if d[(t, j)].is_zero() {
                        continue;
                    }
                    let qt = -d[(t, j)].div_floor(&p);
                    d.add_col(j, t, &qt);
                    v.add_col(j, t, &qt);
                    dirty |= !d[(t, j)].is_zero();
                }
                if dirty {
                    continue;
                }
                // Enforce the divisibility chain: pull an offending row into row t.
                let bad = (t + 1..d.rows).find(|&i| (t + 1..d.cols).any(|j| !d[(i, j)].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
        }
        SmithForm { u, d, v }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}
