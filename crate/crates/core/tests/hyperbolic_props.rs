use lefschetz_core::algebraic::{CircleClass, FieldElement};
use lefschetz_core::exact::{Rational, RationalMatrix};
use lefschetz_core::hyperbolic::{
    anosov_class_of_matrix, is_gamma_acceptable, spectral_acceptability, split, AnosovClass, HyperbolicError,
};
use lefschetz_core::lie::{intersect_spans, lower_central_series, validate_homomorphism, LieAlgebra};
use lefschetz_core::samples::random_nilpotent_sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn float_eigen_moduli(m: &RationalMatrix) -> Vec<f64> {
    let a = nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)].to_f64());
    a.complex_eigenvalues().iter().map(|z| z.norm()).collect()
}

fn restricted_float(s: &lefschetz_core::hyperbolic::Splitting, class: CircleClass) -> Vec<f64> {
    let p = s.summand(class);
    if p.dim() == 0 {
        return Vec::new();
    }
    let r = s.map().restrict(p).unwrap();
    let a = nalgebra::DMatrix::from_fn(r.rows(), r.cols(), |i, j| r[(i, j)].to_f64());
    a.complex_eigenvalues().iter().map(|z| z.norm()).collect()
}

/// Random integer matrices of dimension 2 or 3 with no eigenvalue 1.
fn random_matrix(rng: &mut ChaCha8Rng) -> RationalMatrix {
    loop {
        let n = rng.gen_range(2..=3);
        let m = RationalMatrix::from_fn(n, n, |_, _| Rational::from(rng.gen_range(-3i64..=3)));
        let det = m.one_minus().unwrap().determinant().unwrap();
        if !det.is_zero() && !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

#[test]
fn torus_splittings_match_float_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut checked, mut dense_checked) = (0, 0);
    for _ in 0..200 {
        let m = random_matrix(&mut rng);
        let l = LieAlgebra::abelian(m.rows());
        let f = validate_homomorphism(&l, m.clone()).unwrap();
        let moduli = float_eigen_moduli(&m);
        if moduli.iter().any(|r| (r - 1.0).abs() < 1e-6 && (r - 1.0).abs() > 0.0) {
            continue;
        }
        let s = match split(&l, &f) {
            Ok(s) => s,
            Err(HyperbolicError::UnsupportedScalarTower(_)) | Err(HyperbolicError::JordanOnCircle { .. }) => continue,
            Err(e) => panic!("{m:?}: {e}"),
        };
        let (u, st, e) = s.dims();
        assert_eq!(u + st + e, m.rows());
        assert_eq!(u, moduli.iter().filter(|&&r| r > 1.0 + 1e-9).count(), "{m:?}");
        assert_eq!(st, moduli.iter().filter(|&&r| r < 1.0 - 1e-9).count(), "{m:?}");
        assert!(restricted_float(&s, CircleClass::Outside).iter().all(|&r| r > 1.0));
        assert!(restricted_float(&s, CircleClass::Inside).iter().all(|&r| r < 1.0));
        let product = s.det_one_minus(CircleClass::Outside)
            * s.det_one_minus(CircleClass::Inside)
            * s.det_one_minus(CircleClass::On);
        assert_eq!(product, FieldElement::rational(m.one_minus().unwrap().determinant().unwrap()));

        if anosov_class_of_matrix(&m) == AnosovClass::Anosov {
            // for a hyperbolic toral automorphism with irreducible characteristic
            // polynomial both foliations are irrational, hence dense
            let factors = lefschetz_core::algebraic::partial_factor(&m.char_poly().unwrap());
            let irreducible = factors.len() == 1 && factors[0].multiplicity == 1;
            let unimodular = m.determinant().unwrap().abs() == Rational::one();
            if irreducible && unimodular {
                assert!(is_gamma_acceptable(&s.unstable).unwrap().overall, "{m:?}");
                assert!(is_gamma_acceptable(&s.stable).unwrap().overall, "{m:?}");
                dense_checked += 1;
            }
        }
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} splittings checked");
    assert!(dense_checked >= 5, "only {dense_checked} automorphisms checked for density");
}

#[test]
fn nilpotent_splittings_are_subalgebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    for _ in 0..80 {
        let sample = random_nilpotent_sample(&mut rng, 5);
        let f = validate_homomorphism(&sample.algebra, sample.automorphism.clone()).unwrap();
        match split(&sample.algebra, &f) {
            Ok(s) => {
                let (u, st, e) = s.dims();
                assert_eq!(u + st + e, sample.algebra.dim());
                // brackets of the summands: [gᵘ, gᵘ] ⊂ gᵘ is checked inside split,
                // re-check membership here through the public API
                for p in [&s.unstable, &s.stable, &s.neutral] {
                    for a in p.basis() {
                        for b in p.basis() {
                            assert!(p.contains(&p.parent().bracket(a, b)), "{}", sample.name);
                        }
                        assert!(p.contains(&s.map().apply(a)), "{}", sample.name);
                    }
                }
                checked += 1;
            }
            Err(HyperbolicError::EigenvalueOne)
            | Err(HyperbolicError::UnsupportedScalarTower(_))
            | Err(HyperbolicError::JordanOnCircle { .. }) => {}
            Err(e) => panic!("{}: {e}", sample.name),
        }
    }
    assert!(checked >= 30, "only {checked} splittings checked");
}

/// The spectral test must agree, layer by layer, with the test on the
/// explicit splitting, and its witnesses must annihilate `p ∩ c_j` and `c_{j+1}`.
fn compare_acceptability(l: &LieAlgebra<Rational>, m: &RationalMatrix, label: &str) -> bool {
    let f = validate_homomorphism(l, m.clone()).unwrap();
    let Ok(s) = split(l, &f) else { return false };
    let series = lower_central_series(l).unwrap();
    let n = l.dim();
    for class in [CircleClass::Outside, CircleClass::Inside, CircleClass::On] {
        let p = s.summand(class);
        let direct = is_gamma_acceptable(p).unwrap();
        let Some(spectral) = spectral_acceptability(l, &f, class).unwrap() else { return false };
        assert_eq!(spectral.overall, direct.overall, "{label} {class:?}");
        for (a, b) in spectral.layers.iter().zip(&direct.layers) {
            assert_eq!(a.dense, b.dense, "{label} {class:?} layer {}", a.j);
            let Some(w) = &a.witness else { continue };
            let cj = series[a.j].map_scalars(|c| FieldElement::rational(c.clone()));
            let next =
                series[a.j + 1].basis().iter().map(|v| v.iter().map(|c| FieldElement::rational(c.clone())).collect());
            let pj = intersect_spans(n, p.basis(), cj.basis());
            for v in pj.into_iter().chain(next) {
                let dot = w.iter().zip(&v).fold(FieldElement::rational(Rational::zero()), |acc, (x, y)| {
                    acc + FieldElement::rational(x.clone()) * y.clone()
                });
                assert!(dot.sign() == 0, "{label} {class:?} layer {}: witness {w:?}", a.j);
            }
        }
    }
    true
}

#[test]
fn spectral_acceptability_agrees_with_splittings() {
    let mut rng = ChaCha8Rng::seed_from_u64(4141);
    let mut tori = 0;
    for _ in 0..150 {
        let m = random_matrix(&mut rng);
        if compare_acceptability(&LieAlgebra::abelian(m.rows()), &m, &format!("{m:?}")) {
            tori += 1;
        }
    }
    let mut nilpotent = 0;
    for _ in 0..80 {
        let sample = random_nilpotent_sample(&mut rng, 5);
        if compare_acceptability(&sample.algebra, &sample.automorphism, &sample.name) {
            nilpotent += 1;
        }
    }
    assert!(tori >= 50 && nilpotent >= 30, "{tori} tori, {nilpotent} nilpotent samples compared");
}

#[test]
fn spectral_acceptability_without_a_common_field() {
    // 1 ± √2 next to the cat map: no single quadratic field holds the splitting
    let m = RationalMatrix::from_i64_rows(&[&[0, 1, 0, 0], &[1, 2, 0, 0], &[0, 0, 2, 1], &[0, 0, 1, 1]]);
    let l = LieAlgebra::abelian(4);
    let f = validate_homomorphism(&l, m).unwrap();
    assert!(matches!(split(&l, &f), Err(HyperbolicError::UnsupportedScalarTower(_))));
    for class in [CircleClass::Outside, CircleClass::Inside] {
        assert!(spectral_acceptability(&l, &f, class).unwrap().unwrap().overall);
    }
}
