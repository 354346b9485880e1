use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::LieError;
use crate::exact::{Matrix, Rational, Scalar};

/// Finite-dimensional Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` over an exact scalar domain.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra<S> {
    dim: usize,
    constants: Vec<S>,
}

/// The rational algebras read from problem files.
pub type NilpotentLieAlgebra = LieAlgebra<Rational>;

impl<S: Scalar> std::fmt::Debug for LieAlgebra<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}", self.dim)?;
        for (i, j, k, c) in self.nonzero_upper() {
            write!(f, ", [e{i},e{j}]_{k} = {c}")?;
        }
        write!(f, ")")
    }
}

impl<S: Scalar> LieAlgebra<S> {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, constants: vec![S::zero(); dim * dim * dim] }
    }

    /// Builds from `(i, j, k, c)` entries with `i < j`; the `(j, i)` entries
    /// are filled in by antisymmetry.
    pub fn from_brackets(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self, LieError> {
        let mut alg = Self::abelian(dim);
        let mut seen = BTreeSet::new();
        for (i, j, k, c) in brackets {
            if i >= dim || j >= dim || k >= dim {
                return Err(LieError::IndexOutOfRange { index: i.max(j).max(k), dim });
            }
            if i >= j {
                return Err(LieError::BracketOrder { i, j });
            }
            if !seen.insert((i, j, k)) {
                return Err(LieError::DuplicateBracket { i, j, k });
            }
            alg.set(i, j, k, c.clone());
            alg.set(j, i, k, -c);
        }
        Ok(alg)
    }

    /// Builds from a full tensor `c[i][j][k]` without imposing antisymmetry;
    /// `validate_algebra` reports on it.
    pub fn from_tensor(dim: usize, constants: Vec<S>) -> Self {
        assert_eq!(constants.len(), dim * dim * dim, "tensor size");
        LieAlgebra { dim, constants }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, c: S) {
        let d = self.dim;
        self.constants[(i * d + j) * d + k] = c;
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<S> {
        let d = self.dim;
        self.constants[(i * d + j) * d..(i * d + j + 1) * d].to_vec()
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let d = self.dim;
        let mut out = vec![S::zero(); d];
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let w = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x`.
    pub fn ad(&self, x: &[S]) -> Matrix<S> {
        let d = self.dim;
        let cols: Vec<Vec<S>> = (0..d).map(|j| self.bracket(x, &unit(d, j))).collect();
        Matrix::from_columns(d, &cols)
    }

    /// Nonzero constants with `i < j`, in lexicographic order.
    pub fn nonzero_upper(&self) -> Vec<(usize, usize, usize, S)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(S::is_zero)
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        LieAlgebra { dim: self.dim, constants: self.constants.iter().map(f).collect() }
    }

    /// The same algebra in the basis given by the columns of `p`:
    /// `[p_i, p_j] = Σ_k c'_{ijk} p_k`.
    pub fn change_basis(&self, p: &Matrix<S>) -> Result<Self, LieError> {
        let d = self.dim;
        let inv = p.inverse().map_err(|_| LieError::DependentBasis)?.ok_or(LieError::DependentBasis)?;
        let cols = p.columns();
        let mut out = Self::abelian(d);
        for i in 0..d {
            for j in 0..d {
                let coords = inv.mul_vec(&self.bracket(&cols[i], &cols[j]));
                for (k, c) in coords.into_iter().enumerate() {
                    out.set(i, j, k, c);
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn unit<S: Scalar>(d: usize, i: usize) -> Vec<S> {
    (0..d).map(|k| if k == i { S::one() } else { S::zero() }).collect()
}

/// Outcome of one structural check; a failure names the offending basis
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl Check {
    fn pass() -> Self {
        Check { passed: true, witness: None }
    }

    fn fail(witness: Vec<usize>) -> Self {
        Check { passed: false, witness: Some(witness) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub antisymmetry: Check,
    pub jacobi: Check,
    pub nilpotency: Check,
    /// Length of the lower central series before it reaches zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency_class: Option<usize>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.passed && self.jacobi.passed && self.nilpotency.passed
    }
}

/// Checks antisymmetry, the Jacobi identity on all basis triples, and
/// nilpotency.
pub fn validate_algebra<S: Scalar>(l: &LieAlgebra<S>) -> AlgebraReport {
    let d = l.dim();
    let mut antisymmetry = Check::pass();
    'anti: for i in 0..d {
        for j in i..d {
            for k in 0..d {
                if !(l.constant(i, j, k).clone() + l.constant(j, i, k).clone()).is_zero() {
                    antisymmetry = Check::fail(vec![i, j, k]);
                    break 'anti;
                }
            }
        }
    }
    let mut jacobi = Check::pass();
    'jac: for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let (ei, ej, ek) = (unit::<S>(d, i), unit::<S>(d, j), unit::<S>(d, k));
                let a = l.bracket(&ei, &l.bracket(&ej, &ek));
                let b = l.bracket(&ej, &l.bracket(&ek, &ei));
                let c = l.bracket(&ek, &l.bracket(&ei, &ej));
                if (0..d).any(|m| !(a[m].clone() + b[m].clone() + c[m].clone()).is_zero()) {
                    jacobi = Check::fail(vec![i, j, k]);
                    break 'jac;
                }
            }
        }
    }
    let (nilpotency, nilpotency_class) = match super::lower_central_series(l) {
        Ok(chain) => (Check::pass(), Some(chain.len() - 1)),
        Err(_) => {
            let stuck = super::series::stable_term_dim(l);
            (Check::fail(vec![stuck]), None)
        }
    };
    AlgebraReport { antisymmetry, jacobi, nilpotency, nilpotency_class }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketRepr {
    i: usize,
    j: usize,
    k: usize,
    c: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraRepr {
    dim: usize,
    #[serde(default)]
    brackets: Vec<BracketRepr>,
}

impl Serialize for LieAlgebra<Rational> {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        let brackets = self.nonzero_upper().into_iter().map(|(i, j, k, c)| BracketRepr { i, j, k, c }).collect();
        AlgebraRepr { dim: self.dim, brackets }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = AlgebraRepr::deserialize(deserializer)?;
        LieAlgebra::from_brackets(repr.dim, repr.brackets.into_iter().map(|b| (b.i, b.j, b.k, b.c)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    pub(crate) fn heisenberg() -> NilpotentLieAlgebra {
        LieAlgebra::from_brackets(3, [(0, 1, 2, q(1, 1))]).unwrap()
    }

    #[test]
    fn heisenberg_is_valid_class_two() {
        let r = validate_algebra(&heisenberg());
        assert!(r.is_valid());
        assert_eq!(r.nilpotency_class, Some(2));
        assert_eq!(
            heisenberg().bracket(&[q(1, 1), q(0, 1), q(0, 1)], &[q(0, 1), q(1, 1), q(0, 1)]),
            vec![q(0, 1), q(0, 1), q(1, 1)]
        );
        assert_eq!(heisenberg().basis_bracket(1, 0), vec![q(0, 1), q(0, 1), q(-1, 1)]);
    }

    #[test]
    fn abelian_is_class_one() {
        let r = validate_algebra(&NilpotentLieAlgebra::abelian(2));
        assert!(r.is_valid());
        assert_eq!(r.nilpotency_class, Some(1));
    }

    #[test]
    fn sl2_fails_nilpotency() {
        // e = 0, f = 1, h = 2: [e,f] = h, [h,e] = 2e, [h,f] = -2f
        let sl2 = LieAlgebra::from_brackets(3, [(0, 1, 2, q(1, 1)), (0, 2, 0, q(-2, 1)), (1, 2, 1, q(2, 1))]).unwrap();
        let r = validate_algebra(&sl2);
        assert!(r.antisymmetry.passed && r.jacobi.passed);
        assert!(!r.nilpotency.passed);
        assert_eq!(r.nilpotency_class, None);
    }

    #[test]
    fn jacobi_failure_has_witness() {
        // [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0 is not a Lie algebra
        let bad = LieAlgebra::from_brackets(3, [(0, 1, 2, q(1, 1)), (1, 2, 0, q(1, 1)), (0, 2, 0, q(1, 1))]).unwrap();
        let r = validate_algebra(&bad);
        assert!(!r.jacobi.passed);
        assert_eq!(r.jacobi.witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn antisymmetry_failure_is_reported() {
        let mut c = vec![q(0, 1); 8];
        // entry (i * dim + j) * dim + k: [e0, e1] = e1 but [e1, e0] = 0
        c[3] = q(1, 1);
        let r = validate_algebra(&LieAlgebra::from_tensor(2, c));
        assert!(!r.antisymmetry.passed);
        assert_eq!(r.antisymmetry.witness, Some(vec![0, 1, 1]));
    }

    #[test]
    fn json_roundtrip_and_rejections() {
        let s = serde_json::to_string(&heisenberg()).unwrap();
        assert_eq!(s, r#"{"dim":3,"brackets":[{"i":0,"j":1,"k":2,"c":"1"}]}"#);
        let back: NilpotentLieAlgebra = serde_json::from_str(&s).unwrap();
        assert_eq!(back, heisenberg());
        assert!(serde_json::from_str::<NilpotentLieAlgebra>(r#"{"dim":3,"brackets":[{"i":1,"j":0,"k":2,"c":"1"}]}"#)
            .is_err());
        assert!(serde_json::from_str::<NilpotentLieAlgebra>(r#"{"dim":2,"brackets":[{"i":0,"j":1,"k":2,"c":"1"}]}"#)
            .is_err());
        assert!(serde_json::from_str::<NilpotentLieAlgebra>(r#"{"dim":2,"extra":1}"#).is_err());
    }

    #[test]
    fn change_of_basis_preserves_brackets() {
        let h = heisenberg();
        let p = crate::exact::RationalMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 2]]);
        let h2 = h.change_basis(&p).unwrap();
        let cols = p.columns();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = h.bracket(&cols[i], &cols[j]);
                let rhs = p.mul_vec(&h2.basis_bracket(i, j));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
