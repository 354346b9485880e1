use lefschetz_core::exact::{q, IntegerMatrix, Rational, RationalMatrix};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int_matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, cols), rows)
}

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((-6i64..=6, 1i64..=4), rows * cols).prop_map(move |v| {
        RationalMatrix::from_fn(rows, cols, |i, j| {
            let (n, d) = v[i * cols + j];
            q(n, d)
        })
    })
}

fn to_rational(rows: &[Vec<i64>]) -> RationalMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    RationalMatrix::from_i64_rows(&refs)
}

fn to_integer(rows: &[Vec<i64>]) -> IntegerMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    IntegerMatrix::from_i64_rows(&refs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| rational_matrix(r, c))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
        if !kernel.is_empty() {
            let k = RationalMatrix::from_columns(m.cols(), &kernel);
            prop_assert_eq!(k.rank(), kernel.len());
        }
    }

    #[test]
    fn char_poly_matches_direct_determinant(
        m in (1usize..5).prop_flat_map(|n| rational_matrix(n, n)),
        num in -7i64..7,
        den in 1i64..5,
    ) {
        let r = q(num, den);
        let n = m.rows();
        let shifted = RationalMatrix::identity(n).scale(&r).sub(&m);
        prop_assert_eq!(m.char_poly().unwrap().eval(&r), shifted.determinant().unwrap());
    }

    #[test]
    fn char_poly_constant_term(m in (1usize..5).prop_flat_map(|n| rational_matrix(n, n))) {
        let n = m.rows();
        let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        prop_assert_eq!(m.char_poly().unwrap().eval(&Rational::zero()), sign * m.determinant().unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in int_matrix(4, 4, 5), b in int_matrix(4, 4, 5)) {
        let (a, b) = (to_rational(&a), to_rational(&b));
        let lhs = a.mul(&b).determinant().unwrap();
        prop_assert_eq!(lhs, a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn determinant_agrees_with_float_oracle(rows in (1usize..6).prop_flat_map(|n| int_matrix(n, n, 9))) {
        let n = rows.len();
        let exact = to_rational(&rows).determinant().unwrap().to_f64();
        let float = DMatrix::from_fn(n, n, |i, j| rows[i][j] as f64).determinant();
        prop_assert!((exact - float).abs() <= 1e-6 * (1.0 + exact.abs()), "{} vs {}", exact, float);
    }

    #[test]
    fn smith_normal_form_identities(rows in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| int_matrix(r, c, 8))) {
        let m = to_integer(&rows);
        let snf = m.smith_normal_form();
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        prop_assert!(snf.d.is_diagonal());
        prop_assert_eq!(snf.u.determinant().abs(), BigInt::one());
        prop_assert_eq!(snf.v.determinant().abs(), BigInt::one());
        let factors = snf.invariant_factors();
        for w in factors.windows(2) {
            prop_assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        if m.rows() == m.cols() {
            let det = m.determinant();
            if !det.is_zero() {
                let prod: BigInt = factors.iter().product();
                prop_assert_eq!(prod, det.abs());
            }
        }
    }
}
