//! Floating-point root approximations. Never trusted on their own: they only
//! seed small boxes that the exact counters then certify.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::FromPrimitive;

use crate::exact::{Rational, UnivariatePolynomial};

/// `x` rounded to the nearest multiple of `2^-bits`.
pub(crate) fn dyadic(x: f64, bits: i32) -> Rational {
    let scaled = (x * 2f64.powi(bits)).round();
    let n = BigInt::from_f64(scaled).expect("finite value");
    &Rational::from_integer(n) * &Rational::pow2(-bits)
}

const MAX_ITERATIONS: usize = 500;

/// All complex roots of a squarefree polynomial by Aberth-Ehrlich iteration,
/// or `None` when the coefficients do not fit in `f64` or the iteration
/// fails to settle.
pub(crate) fn approximate_roots(p: &UnivariatePolynomial) -> Option<Vec<Complex64>> {
    let n = p.deg();
    if n == 0 {
        return Some(Vec::new());
    }
    let lc = p.leading_coefficient();
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| (c / &lc).to_f64()).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..MAX_ITERATIONS {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.is_finite() {
                return None;
            }
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            return Some(z);
        }
    }
    // Clustered or ill-conditioned roots: still usable as seeds if finite.
    z.iter().all(|x| x.is_finite()).then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        let mut r = approximate_roots(&UnivariatePolynomial::from_i64(&[1, 0, 1])).unwrap();
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn sextic_residuals_are_small() {
        let p = UnivariatePolynomial::from_i64(&[3, -7, 2, 9, -4, 1, 5]);
        for z in approximate_roots(&p).unwrap() {
            let v = p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64());
            assert!(v.norm() < 1e-9, "residual {v}");
        }
    }
}
