use super::algebra::{unit, LieAlgebra};
use super::series::{lower_central_series, Subalgebra};
use super::LieError;
use crate::exact::{Matrix, Scalar};

/// Bracket-preserving linear map of a Lie algebra; column `j` of the matrix
/// is the image of `e_j`.
#[derive(Clone, PartialEq)]
pub struct LieEndomorphism<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> std::fmt::Debug for LieEndomorphism<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieEndomorphism({:?})", self.matrix)
    }
}

impl<S: Scalar> LieEndomorphism<S> {
    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix.mul_vec(v)
    }

    /// Matrix of the restriction to an invariant subspace, in its basis.
    pub fn restrict(&self, p: &Subalgebra<S>) -> Result<Matrix<S>, LieError> {
        let m = p.dim();
        if m == 0 {
            return Ok(Matrix::zeros(0, 0));
        }
        let mut cols = Vec::with_capacity(m);
        for b in p.basis() {
            cols.push(p.coordinates(&self.apply(b)).ok_or(LieError::NotInvariant)?);
        }
        Ok(Matrix::from_columns(m, &cols))
    }

    /// `det(1 - f)` on the whole algebra.
    pub fn det_one_minus(&self) -> S {
        self.matrix.one_minus().and_then(|m| m.determinant()).expect("square by construction")
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieEndomorphism<T> {
        LieEndomorphism { matrix: self.matrix.map(f) }
    }
}

/// Checks that `matrix` preserves brackets on all basis pairs and leaves
/// each term of the lower central series invariant.
pub fn validate_homomorphism<S: Scalar>(l: &LieAlgebra<S>, matrix: Matrix<S>) -> Result<LieEndomorphism<S>, LieError> {
    let d = l.dim();
    if matrix.rows() != d || matrix.cols() != d {
        return Err(LieError::DimensionMismatch { expected: d, found: matrix.rows().max(matrix.cols()) });
    }
    let images = matrix.columns();
    for i in 0..d {
        for j in i + 1..d {
            let lhs = matrix.mul_vec(&l.basis_bracket(i, j));
            let rhs = l.bracket(&images[i], &images[j]);
            if lhs != rhs {
                return Err(LieError::NotHomomorphism { i, j });
            }
        }
    }
    let f = LieEndomorphism { matrix };
    if let Ok(chain) = lower_central_series(l) {
        for c in &chain {
            if !c.basis().iter().all(|v| c.contains(&f.apply(v))) {
                return Err(LieError::NotInvariant);
            }
        }
    }
    Ok(f)
}

/// As `validate_homomorphism`, and refuses maps with eigenvalue 1.
pub fn validate_endomorphism<S: Scalar>(l: &LieAlgebra<S>, matrix: Matrix<S>) -> Result<LieEndomorphism<S>, LieError> {
    let f = validate_homomorphism(l, matrix)?;
    if f.det_one_minus().is_zero() {
        return Err(LieError::EigenvalueOne);
    }
    Ok(f)
}

/// Identity map, mostly for tests.
pub fn identity_endomorphism<S: Scalar>(l: &LieAlgebra<S>) -> LieEndomorphism<S> {
    let d = l.dim();
    let cols: Vec<Vec<S>> = (0..d).map(|i| unit(d, i)).collect();
    LieEndomorphism { matrix: Matrix::from_columns(d, &cols) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Rational, RationalMatrix, UnivariatePolynomial};
    use crate::lie::NilpotentLieAlgebra;

    fn heisenberg() -> NilpotentLieAlgebra {
        LieAlgebra::from_brackets(3, [(0, 1, 2, q(1, 1))]).unwrap()
    }

    fn heisenberg_f() -> RationalMatrix {
        RationalMatrix::from_rows(vec![
            vec![q(1, 1), q(1, 1), q(0, 1)],
            vec![q(2, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 2), q(-1, 1)],
        ])
    }

    #[test]
    fn heisenberg_map_is_valid() {
        let f = validate_endomorphism(&heisenberg(), heisenberg_f()).unwrap();
        let cp = f.matrix().char_poly().unwrap();
        assert_eq!(cp, &UnivariatePolynomial::from_i64(&[-1, -2, 1]) * &UnivariatePolynomial::from_i64(&[1, 1]));
        assert_eq!(cp.eval(&Rational::one()), q(-4, 1));
        assert_eq!(f.det_one_minus(), q(-4, 1));
    }

    #[test]
    fn identity_has_eigenvalue_one() {
        let a = NilpotentLieAlgebra::abelian(2);
        assert_eq!(validate_endomorphism(&a, RationalMatrix::identity(2)).unwrap_err(), LieError::EigenvalueOne);
        assert!(validate_homomorphism(&a, RationalMatrix::identity(2)).is_ok());
    }

    #[test]
    fn cat_map_is_valid() {
        let a = NilpotentLieAlgebra::abelian(2);
        let f = validate_endomorphism(&a, RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(f.det_one_minus(), q(-1, 1));
    }

    #[test]
    fn non_homomorphism_has_witness() {
        // Swapping X and Z does not preserve [X, Y] = Z.
        let m = RationalMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(validate_endomorphism(&heisenberg(), m).unwrap_err(), LieError::NotHomomorphism { i: 0, j: 1 });
    }

    #[test]
    fn restriction_to_center() {
        let f = validate_endomorphism(&heisenberg(), heisenberg_f()).unwrap();
        let z = Subalgebra::new(&heisenberg(), vec![vec![q(0, 1), q(0, 1), q(1, 1)]]).unwrap();
        assert_eq!(f.restrict(&z).unwrap(), RationalMatrix::from_i64_rows(&[&[-1]]));
        let x = Subalgebra::new(&heisenberg(), vec![vec![q(1, 1), q(0, 1), q(0, 1)]]).unwrap();
        assert_eq!(f.restrict(&x).unwrap_err(), LieError::NotInvariant);
    }
}
