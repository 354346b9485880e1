use super::algebra::{unit, LieAlgebra};
use super::LieError;
use crate::exact::{Matrix, Scalar};

/// Subspace of a Lie algebra closed under the bracket, with a fixed basis in
/// the parent's coordinates.
#[derive(Clone, PartialEq)]
pub struct Subalgebra<S> {
    parent: LieAlgebra<S>,
    basis: Vec<Vec<S>>,
}

impl<S: Scalar> std::fmt::Debug for Subalgebra<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Subalgebra[")?;
        for (n, v) in self.basis.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        f.write_str("]")
    }
}

impl<S: Scalar> Subalgebra<S> {
    /// Validates independence and bracket closure.
    pub fn new(parent: &LieAlgebra<S>, basis: Vec<Vec<S>>) -> Result<Self, LieError> {
        let d = parent.dim();
        if let Some(v) = basis.iter().find(|v| v.len() != d) {
            return Err(LieError::DimensionMismatch { expected: d, found: v.len() });
        }
        let sub = Subalgebra { parent: parent.clone(), basis };
        if sub.basis_matrix().rank() != sub.dim() {
            return Err(LieError::DependentBasis);
        }
        for a in 0..sub.dim() {
            for b in a + 1..sub.dim() {
                if !sub.contains(&parent.bracket(&sub.basis[a], &sub.basis[b])) {
                    return Err(LieError::NotClosedUnderBracket { a, b });
                }
            }
        }
        Ok(sub)
    }

    pub fn full(parent: &LieAlgebra<S>) -> Self {
        let d = parent.dim();
        Subalgebra { parent: parent.clone(), basis: (0..d).map(|i| unit(d, i)).collect() }
    }

    pub fn zero(parent: &LieAlgebra<S>) -> Self {
        Subalgebra { parent: parent.clone(), basis: Vec::new() }
    }

    pub fn parent(&self) -> &LieAlgebra<S> {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    /// Basis vectors as columns (`parent dim × dim`).
    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_columns(self.parent.dim(), &self.basis)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        if self.basis.is_empty() {
            return v.iter().all(S::is_zero).then(Vec::new);
        }
        self.basis_matrix().solve(v)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &[Vec<S>]) -> bool {
        other.iter().all(|v| self.contains(v))
    }

    /// Structure constants of the subalgebra in its own basis.
    pub fn induced_algebra(&self) -> LieAlgebra<S> {
        let m = self.dim();
        let mut entries = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let br = self.parent.bracket(&self.basis[a], &self.basis[b]);
                let coords = self.coordinates(&br).expect("closure verified at construction");
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        LieAlgebra::from_brackets(m, entries).expect("indices in range")
    }

    /// Intersection with another subalgebra of the same parent.
    pub fn intersection(&self, other: &Subalgebra<S>) -> Subalgebra<S> {
        let basis = intersect_spans(self.parent.dim(), &self.basis, &other.basis);
        Subalgebra { parent: self.parent.clone(), basis }
    }

    /// Rebuilds over a larger scalar domain.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Subalgebra<T> {
        Subalgebra {
            parent: self.parent.map_scalars(&f),
            basis: self.basis.iter().map(|v| v.iter().map(&f).collect()).collect(),
        }
    }
}

/// Basis of `span(a) ∩ span(b)` in ambient dimension `d`, from the kernel of
/// `[A | -B]`.
pub fn intersect_spans<S: Scalar>(d: usize, a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let am = Matrix::from_columns(d, a);
    let bm = Matrix::from_columns(d, b);
    let stacked = am.hstack(&bm.scale(&-S::one()));
    let raw: Vec<Vec<S>> = stacked.kernel_basis().into_iter().map(|k| am.mul_vec(&k[..a.len()])).collect();
    if raw.is_empty() {
        return raw;
    }
    Matrix::from_columns(d, &raw).column_space_basis()
}

/// `[L, W]` for a subspace `W`, as a basis.
fn bracket_with_algebra<S: Scalar>(l: &LieAlgebra<S>, w: &[Vec<S>]) -> Vec<Vec<S>> {
    let d = l.dim();
    let mut gens = Vec::new();
    for i in 0..d {
        for v in w {
            let b = l.bracket(&unit(d, i), v);
            if b.iter().any(|x| !x.is_zero()) {
                gens.push(b);
            }
        }
    }
    if gens.is_empty() {
        return gens;
    }
    Matrix::from_columns(d, &gens).column_space_basis()
}

/// Lower central series `c_0 = L`, `c_{j+1} = [L, c_j]`, ending with the
/// zero subalgebra.
pub fn lower_central_series<S: Scalar>(l: &LieAlgebra<S>) -> Result<Vec<Subalgebra<S>>, LieError> {
    let mut chain = vec![Subalgebra::full(l)];
    while chain.last().unwrap().dim() > 0 {
        let cur = chain.last().unwrap();
        let next = bracket_with_algebra(l, &cur.basis);
        if next.len() == cur.dim() {
            return Err(LieError::NotNilpotent);
        }
        chain.push(Subalgebra { parent: l.clone(), basis: next });
    }
    Ok(chain)
}

/// Dimension at which the lower central series stabilizes.
pub(crate) fn stable_term_dim<S: Scalar>(l: &LieAlgebra<S>) -> usize {
    let d = l.dim();
    let mut cur: Vec<Vec<S>> = (0..d).map(|i| unit(d, i)).collect();
    loop {
        let next = bracket_with_algebra(l, &cur);
        if next.len() == cur.len() {
            return cur.len();
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Rational};
    use crate::lie::NilpotentLieAlgebra;

    fn v(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn heisenberg_series() {
        let h = LieAlgebra::from_brackets(3, [(0, 1, 2, q(1, 1))]).unwrap();
        let chain = lower_central_series(&h).unwrap();
        assert_eq!(chain.iter().map(Subalgebra::dim).collect::<Vec<_>>(), vec![3, 1, 0]);
        assert!(chain[1].contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn abelian_series() {
        let chain = lower_central_series(&NilpotentLieAlgebra::abelian(4)).unwrap();
        assert_eq!(chain.iter().map(Subalgebra::dim).collect::<Vec<_>>(), vec![4, 0]);
    }

    #[test]
    fn filiform_series() {
        let f = LieAlgebra::from_brackets(4, [(0, 1, 2, q(1, 1)), (0, 2, 3, q(1, 1))]).unwrap();
        let chain = lower_central_series(&f).unwrap();
        assert_eq!(chain.iter().map(Subalgebra::dim).collect::<Vec<_>>(), vec![4, 2, 1, 0]);
    }

    #[test]
    fn subalgebra_validation() {
        let h = LieAlgebra::from_brackets(3, [(0, 1, 2, q(1, 1))]).unwrap();
        assert_eq!(
            Subalgebra::new(&h, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap_err(),
            LieError::NotClosedUnderBracket { a: 0, b: 1 }
        );
        assert_eq!(Subalgebra::new(&h, vec![v(&[1, 0, 0]), v(&[2, 0, 0])]).unwrap_err(), LieError::DependentBasis);
        let p = Subalgebra::new(&h, vec![v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap();
        assert!(p.induced_algebra().is_abelian());
        let full = Subalgebra::full(&h);
        let induced = full.induced_algebra();
        assert_eq!(induced, h);
    }

    #[test]
    fn intersections() {
        let h = LieAlgebra::from_brackets(3, [(0, 1, 2, q(1, 1))]).unwrap();
        let a = Subalgebra::new(&h, vec![v(&[1, 1, 0])]).unwrap();
        let center = Subalgebra::new(&h, vec![v(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersection(&center).dim(), 0);
        let plane = Subalgebra::new(&h, vec![v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap();
        let line = Subalgebra::new(&h, vec![v(&[1, 0, 1])]).unwrap();
        assert_eq!(plane.intersection(&line).dim(), 1);
        assert_eq!(plane.intersection(&Subalgebra::full(&h)).dim(), 2);
    }
}
