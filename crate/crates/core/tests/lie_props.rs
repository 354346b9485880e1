use lefschetz_core::exact::{Rational, RationalMatrix};
use lefschetz_core::lie::{
    alternating_cohomology_trace, betti_numbers, ce_complex_of, exterior_power_dual, lower_central_series,
    validate_algebra, validate_homomorphism, LieAlgebra, Subalgebra,
};
use lefschetz_core::samples::{monomial_algebras, random_invertible, random_nilpotent_sample};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn to_float(m: &RationalMatrix) -> nalgebra::DMatrix<f64> {
    nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)].to_f64())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn differentials_square_to_zero() {
    for (name, l) in monomial_algebras() {
        assert!(ce_complex_of(&l).is_complex(), "{name}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let s = random_nilpotent_sample(&mut rng, 5);
        assert!(ce_complex_of(&s.algebra).is_complex(), "{}", s.name);
    }
}

#[test]
fn alternating_trace_equals_determinant_on_random_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..80 {
        let s = random_nilpotent_sample(&mut rng, 5);
        let full = Subalgebra::full(&s.algebra);
        let f = validate_homomorphism(&s.algebra, s.automorphism.clone()).expect("automorphism");
        let t = alternating_cohomology_trace(&full, &f).unwrap_or_else(|e| panic!("case {case} {}: {e}", s.name));

        // oracle 1: characteristic polynomial at 1 is det(1 - f)
        let chi = s.automorphism.char_poly().unwrap();
        assert_eq!(t.alternating, chi.eval(&Rational::from(1)), "case {case} {}", s.name);
        // oracle 2: floating point determinant
        let n = s.algebra.dim();
        let float = (nalgebra::DMatrix::<f64>::identity(n, n) - to_float(&s.automorphism)).determinant();
        assert!((t.alternating.to_f64() - float).abs() < 1e-6 * (1.0 + float.abs()));
        // degree 0 and top degree
        assert_eq!(t.traces[0], Rational::from(1));
        assert_eq!(t.traces[n], s.automorphism.determinant().unwrap());
    }
}

#[test]
fn betti_numbers_are_basis_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..30 {
        let s = random_nilpotent_sample(&mut rng, 5);
        let p = random_invertible(&mut rng, s.algebra.dim());
        let moved = s.algebra.change_basis(&p).unwrap();
        assert!(validate_algebra(&moved).is_valid());
        assert_eq!(betti_numbers(&ce_complex_of(&moved)), betti_numbers(&ce_complex_of(&s.algebra)), "{}", s.name);
        let dims =
            |l: &LieAlgebra<Rational>| lower_central_series(l).unwrap().iter().map(|c| c.dim()).collect::<Vec<_>>();
        assert_eq!(dims(&moved), dims(&s.algebra));
    }
}

#[test]
fn poincare_duality_and_euler_characteristic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut algebras: Vec<_> = monomial_algebras().into_iter().map(|(_, a)| a).collect();
    algebras.extend((0..20).map(|_| random_nilpotent_sample(&mut rng, 5).algebra));
    for l in algebras {
        let b = betti_numbers(&ce_complex_of(&l));
        let n = l.dim();
        assert_eq!(b[0], 1);
        for k in 0..=n {
            assert_eq!(b[k], b[n - k], "{b:?}");
        }
        let euler: i64 = b.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        assert_eq!(euler, 0, "{b:?}");
    }
}

#[test]
fn abelian_betti_numbers_are_binomial() {
    for n in 1..=5 {
        let b = betti_numbers(&ce_complex_of(&LieAlgebra::<Rational>::abelian(n)));
        assert_eq!(b, (0..=n).map(|k| binomial(n, k)).collect::<Vec<_>>());
    }
}

fn small_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(-4i64..=4, n * n)
        .prop_map(move |v| RationalMatrix::from_fn(n, n, |r, c| Rational::from(v[r * n + c])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exterior_powers_are_functorial(a in small_matrix(4), b in small_matrix(4), p in 0usize..=4) {
        // pullback reverses composition: (ab)^* = b^* a^*
        let lhs = exterior_power_dual(&a.mul(&b), p);
        let rhs = exterior_power_dual(&b, p).mul(&exterior_power_dual(&a, p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exterior_power_traces_give_char_poly(a in small_matrix(4)) {
        // det(1 - a) = Σ (-1)^p tr Λ^p a
        let alt = (0..=4).fold(Rational::from(0), |acc, p| {
            let t = exterior_power_dual(&a, p).trace();
            if p % 2 == 0 { acc + t } else { acc - t }
        });
        prop_assert_eq!(alt, a.one_minus().unwrap().determinant().unwrap());
    }
}
