use std::collections::HashMap;

use super::endomorphism::LieEndomorphism;
use super::series::Subalgebra;
use super::{LieAlgebra, LieError};
use crate::exact::{Matrix, Scalar};

/// Increasing index tuples of length `p` from `0..n`, lexicographic.
pub fn wedge_basis(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - left {
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        go(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

fn index_of(basis: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    basis.iter().enumerate().map(|(n, t)| (t.clone(), n)).collect()
}

/// Chevalley-Eilenberg cochain complex with trivial coefficients:
/// `differentials[p]` maps `Λ^p` into `Λ^{p+1}` of the dual, in wedge bases.
#[derive(Clone)]
pub struct CEComplex<S> {
    dim: usize,
    differentials: Vec<Matrix<S>>,
}

impl<S: Scalar> std::fmt::Debug for CEComplex<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CEComplex").field("dim", &self.dim).field("differentials", &self.differentials).finish()
    }
}

impl<S: Scalar> CEComplex<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn differential(&self, p: usize) -> &Matrix<S> {
        &self.differentials[p]
    }

    pub fn differentials(&self) -> &[Matrix<S>] {
        &self.differentials
    }

    /// Whether every `d_{p+1} d_p` vanishes.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::rank).collect();
        (0..=self.dim)
            .map(|p| {
                let cochains = self.differentials[p].cols();
                cochains - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 }
            })
            .collect()
    }
}

/// Builds the complex of a Lie algebra from
/// `(dω)(x_0..x_p) = Σ_{i<j} (-1)^{i+j} ω([x_i, x_j], x_0..x̂_i..x̂_j..x_p)`.
pub fn ce_complex_of<S: Scalar>(l: &LieAlgebra<S>) -> CEComplex<S> {
    let n = l.dim();
    let bases: Vec<Vec<Vec<usize>>> = (0..=n + 1).map(|p| wedge_basis(n, p)).collect();
    let mut differentials = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let src = index_of(&bases[p]);
        let mut d = Matrix::<S>::zeros(bases[p + 1].len(), bases[p].len());
        for (row, tuple) in bases[p + 1].iter().enumerate() {
            for a in 0..tuple.len() {
                for b in a + 1..tuple.len() {
                    let rest: Vec<usize> =
                        tuple.iter().enumerate().filter(|&(t, _)| t != a && t != b).map(|(_, &x)| x).collect();
                    let pair_sign = if (a + b) % 2 == 0 { S::one() } else { -S::one() };
                    for (k, c) in l.basis_bracket(tuple[a], tuple[b]).into_iter().enumerate() {
                        if c.is_zero() || rest.contains(&k) {
                            continue;
                        }
                        // ω(e_k, e_rest) for ω = e^I with I = sorted({k} ∪ rest)
                        let pos = rest.iter().filter(|&&r| r < k).count();
                        let mut target = rest.clone();
                        target.insert(pos, k);
                        let col = src[&target];
                        let sort_sign = if pos % 2 == 0 { S::one() } else { -S::one() };
                        d[(row, col)] = d[(row, col)].clone() + pair_sign.clone() * sort_sign * c;
                    }
                }
            }
        }
        differentials.push(d);
    }
    CEComplex { dim: n, differentials }
}

/// The complex of a subalgebra, through its induced structure constants.
pub fn ce_complex<S: Scalar>(p: &Subalgebra<S>) -> Result<CEComplex<S>, LieError> {
    let complex = ce_complex_of(&p.induced_algebra());
    if !complex.is_complex() {
        return Err(LieError::NotAComplex);
    }
    Ok(complex)
}

pub fn betti_numbers<S: Scalar>(c: &CEComplex<S>) -> Vec<usize> {
    c.betti_numbers()
}

/// `f^*` on `Λ^p` of the dual: entry `(J, I) = det F[I, J]`.
pub fn exterior_power_dual<S: Scalar>(f: &Matrix<S>, p: usize) -> Matrix<S> {
    let n = f.rows();
    let basis = wedge_basis(n, p);
    Matrix::from_fn(basis.len(), basis.len(), |j, i| {
        f.submatrix(&basis[i], &basis[j]).determinant().expect("square minor")
    })
}

/// Trace of `a` on the invariant subspace spanned by the columns of `w`.
fn trace_on_subspace<S: Scalar>(a: &Matrix<S>, w: &[Vec<S>]) -> Result<S, LieError> {
    if w.is_empty() {
        return Ok(S::zero());
    }
    let wm = Matrix::from_columns(a.rows(), w);
    let restricted = wm.solve_matrix(&a.mul(&wm)).ok_or(LieError::NotInvariant)?;
    Ok(restricted.trace())
}

/// `Tr(f^* | H^p)` from the complex and the matrix of `f` on the same algebra.
pub fn cohomology_trace_in_complex<S: Scalar>(c: &CEComplex<S>, f: &Matrix<S>, degree: usize) -> Result<S, LieError> {
    if degree > c.dim() {
        return Ok(S::zero());
    }
    let fp = exterior_power_dual(f, degree);
    let cycles = c.differential(degree).kernel_basis();
    let boundaries = if degree == 0 { Vec::new() } else { c.differential(degree - 1).column_space_basis() };
    Ok(trace_on_subspace(&fp, &cycles)? - trace_on_subspace(&fp, &boundaries)?)
}

/// `Tr(f^* | H^p(p))` for an `f`-invariant subalgebra `p`.
pub fn cohomology_trace<S: Scalar>(p: &Subalgebra<S>, f: &LieEndomorphism<S>, degree: usize) -> Result<S, LieError> {
    let restricted = f.restrict(p)?;
    let complex = ce_complex(p)?;
    cohomology_trace_in_complex(&complex, &restricted, degree)
}

/// Per-degree cohomology traces, their alternating sum and `det(1 - f|p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingTrace<S> {
    pub traces: Vec<S>,
    pub alternating: S,
    pub determinant: S,
}

/// `Σ_p (-1)^p Tr(f^* | H^p(p))`, checked against `det(1 - f|p)`.
pub fn alternating_cohomology_trace<S: Scalar>(
    p: &Subalgebra<S>,
    f: &LieEndomorphism<S>,
) -> Result<AlternatingTrace<S>, LieError> {
    let restricted = f.restrict(p)?;
    let complex = ce_complex(p)?;
    let traces =
        (0..=p.dim()).map(|k| cohomology_trace_in_complex(&complex, &restricted, k)).collect::<Result<Vec<_>, _>>()?;
    let alternating =
        traces
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (k, t)| if k % 2 == 0 { acc + t.clone() } else { acc - t.clone() });
    let determinant = restricted.one_minus().and_then(|m| m.determinant()).expect("square");
    if alternating != determinant {
        return Err(LieError::TraceIdentity {
            cohomology: alternating.to_string(),
            determinant: determinant.to_string(),
        });
    }
    Ok(AlternatingTrace { traces, alternating, determinant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Rational, RationalMatrix};
    use crate::lie::{validate_endomorphism, NilpotentLieAlgebra};

    fn heisenberg() -> NilpotentLieAlgebra {
        LieAlgebra::from_brackets(3, [(0, 1, 2, q(1, 1))]).unwrap()
    }

    #[test]
    fn wedge_bases_are_lexicographic() {
        assert_eq!(wedge_basis(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(wedge_basis(3, 0), vec![Vec::<usize>::new()]);
        assert!(wedge_basis(2, 3).is_empty());
        assert_eq!(wedge_basis(5, 2).len(), 10);
    }

    #[test]
    fn heisenberg_differential_sign() {
        let c = ce_complex(&Subalgebra::full(&heisenberg())).unwrap();
        let d1 = c.differential(1);
        // columns X^∨, Y^∨, Z^∨; rows X∧Y, X∧Z, Y∧Z
        assert_eq!(d1.column(2), vec![q(-1, 1), q(0, 1), q(0, 1)]);
        assert!(d1.column(0).iter().all(Rational::is_zero));
        assert!(d1.column(1).iter().all(Rational::is_zero));
        assert!(c.differential(0).is_zero());
        assert!(c.is_complex());
    }

    #[test]
    fn betti_numbers_of_fixtures() {
        let c = ce_complex(&Subalgebra::full(&heisenberg())).unwrap();
        assert_eq!(betti_numbers(&c), vec![1, 2, 2, 1]);
        let a = ce_complex(&Subalgebra::full(&NilpotentLieAlgebra::abelian(4))).unwrap();
        assert_eq!(betti_numbers(&a), vec![1, 4, 6, 4, 1]);
        assert!(a.differentials().iter().all(Matrix::is_zero));
        let fil = LieAlgebra::from_brackets(4, [(0, 1, 2, q(1, 1)), (0, 2, 3, q(1, 1))]).unwrap();
        let b = betti_numbers(&ce_complex(&Subalgebra::full(&fil)).unwrap());
        assert_eq!(&b[..2], &[1, 2]);
        let euler: i64 = b.iter().enumerate().map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        assert_eq!(euler, 0);
    }

    #[test]
    fn zero_and_one_dimensional_complexes() {
        let z = ce_complex(&Subalgebra::zero(&heisenberg())).unwrap();
        assert_eq!(betti_numbers(&z), vec![1]);
        let line = Subalgebra::new(&heisenberg(), vec![vec![q(0, 1), q(0, 1), q(1, 1)]]).unwrap();
        let c = ce_complex(&line).unwrap();
        assert_eq!(c.differentials().len(), 2);
        assert!(c.differentials().iter().all(Matrix::is_zero));
    }

    #[test]
    fn heisenberg_traces_on_full_algebra() {
        let h = heisenberg();
        let f = validate_endomorphism(
            &h,
            RationalMatrix::from_rows(vec![
                vec![q(1, 1), q(1, 1), q(0, 1)],
                vec![q(2, 1), q(1, 1), q(0, 1)],
                vec![q(0, 1), q(1, 2), q(-1, 1)],
            ]),
        )
        .unwrap();
        let t = alternating_cohomology_trace(&Subalgebra::full(&h), &f).unwrap();
        assert_eq!(t.determinant, q(-4, 1));
        assert_eq!(t.traces[0], q(1, 1));
        // H^1 is spanned by X^∨, Y^∨ with f^* the transpose of the upper block
        assert_eq!(t.traces[1], q(2, 1));
        // H^3 is the top form, scaled by det f = 1
        assert_eq!(t.traces[3], Rational::from(1));
        assert_eq!(t.traces[2], q(-4, 1) - q(1, 1) + q(2, 1) + q(1, 1));
        let z = Subalgebra::zero(&h);
        let t0 = alternating_cohomology_trace(&z, &f).unwrap();
        assert_eq!((t0.alternating, t0.determinant), (q(1, 1), q(1, 1)));
    }

    #[test]
    fn exterior_power_of_diagonal() {
        let f = RationalMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        let e2 = exterior_power_dual(&f, 2);
        assert_eq!(e2, RationalMatrix::from_i64_rows(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]));
        assert_eq!(exterior_power_dual(&f, 0), RationalMatrix::identity(1));
        assert_eq!(exterior_power_dual(&f, 3), RationalMatrix::from_i64_rows(&[&[30]]));
    }
}
