use serde::Serialize;

use super::group::PolynomialGroup;
use super::poly::{default_name, MultiPoly, PolynomialMap};
use super::DynamicsError;
use crate::exact::RationalMatrix;

/// Polynomial endomorphism of a coordinatized group that preserves `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupEndomorphism {
    map: PolynomialMap,
    linear_part: RationalMatrix,
}

impl GroupEndomorphism {
    pub fn map(&self) -> &PolynomialMap {
        &self.map
    }

    /// Derivative at the identity, `f_*` in the coordinate basis.
    pub fn linear_part(&self) -> &RationalMatrix {
        &self.linear_part
    }
}

/// Checks `f(0) = 0`, the homomorphism identity `f(x y) = f(x) f(y)` and that
/// every output is integer valued on `Z^n` (binomial-basis test), then
/// extracts the linear part and refuses eigenvalue 1.
pub fn validate_endomorphism_map(g: &PolynomialGroup, f: PolynomialMap) -> Result<GroupEndomorphism, DynamicsError> {
    let n = g.dim();
    if f.arity() != n || f.outputs().len() != n {
        return Err(DynamicsError::DimensionMismatch { expected: n, found: f.arity().max(f.outputs().len()) });
    }
    for (k, p) in f.outputs().iter().enumerate() {
        let c = p.constant_term();
        if !c.is_zero() {
            return Err(DynamicsError::NotHomomorphism {
                coordinate: k + 1,
                detail: format!("f(0) has coordinate {c}"),
            });
        }
    }

    let nv = 2 * n;
    let fx: Vec<MultiPoly> = f.outputs().iter().map(|p| p.embed(nv, 0)).collect();
    let fy: Vec<MultiPoly> = f.outputs().iter().map(|p| p.embed(nv, n)).collect();
    let lhs = f.compose(g.multiplication().outputs(), nv);
    let rhs = g.multiplication().compose(&[fx, fy].concat(), nv);
    for (k, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
        let d = a - b;
        let last = d.terms().next_back().map(|(e, c)| (e.clone(), c.clone()));
        if let Some((e, c)) = last {
            let e = &e;
            let names = |i: usize| if i < n { format!("x{}", i + 1) } else { format!("y{}", i - n + 1) };
            return Err(DynamicsError::NotHomomorphism {
                coordinate: k + 1,
                detail: format!("f(x y) and f(x) f(y) differ by {c} on {}", MultiPoly::fmt_monomial(e, &names)),
            });
        }
    }

    for (k, p) in f.outputs().iter().enumerate() {
        if let Some((e, c)) = p.non_integer_binomial_coordinate() {
            let binom = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| format!("C({}, {k})", default_name(i)))
                .collect::<Vec<_>>()
                .join("*");
            return Err(DynamicsError::NonIntegerCoefficients {
                coordinate: k + 1,
                detail: format!("coefficient {c} on {}", if binom.is_empty() { "1".into() } else { binom }),
            });
        }
    }

    let linear_part = f.linear_part();
    if linear_part.one_minus().and_then(|m| m.determinant()).expect("square").is_zero() {
        return Err(DynamicsError::EigenvalueOne);
    }
    Ok(GroupEndomorphism { map: f, linear_part })
}
