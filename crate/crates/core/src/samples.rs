//! Named example algebras and seeded generators of random nilpotent Lie
//! algebras paired with integer automorphisms. Shared by tests, the
//! acceptance suite and the benchmarks.

use rand::Rng;

use crate::dynamics::{MultiPoly, PolynomialGroup, PolynomialMap};
use crate::exact::{q, Rational, RationalMatrix};
use crate::lie::{LieAlgebra, NilpotentLieAlgebra};

fn alg(dim: usize, brackets: &[(usize, usize, usize)]) -> NilpotentLieAlgebra {
    LieAlgebra::from_brackets(dim, brackets.iter().map(|&(i, j, k)| (i, j, k, q(1, 1)))).expect("valid sample")
}

pub fn heisenberg() -> NilpotentLieAlgebra {
    alg(3, &[(0, 1, 2)])
}

/// The derivative `[a, b, c] ↦ [a + b, 2a + b, b/2 - c]` of the Heisenberg
/// example map.
pub fn heisenberg_derivative() -> RationalMatrix {
    RationalMatrix::from_rows(vec![
        vec![q(1, 1), q(1, 1), q(0, 1)],
        vec![q(2, 1), q(1, 1), q(0, 1)],
        vec![q(0, 1), q(1, 2), q(-1, 1)],
    ])
}

/// Upper unitriangular matrices `[[1, x, z], [0, 1, y], [0, 0, 1]]` in the
/// coordinates `(x, y, z)`: `m = (x + x', y + y', z + z' + x y')`.
pub fn heisenberg_group() -> PolynomialGroup {
    let v6 = |i| MultiPoly::var(6, i);
    let v3 = |i| MultiPoly::var(3, i);
    let m = vec![&v6(0) + &v6(3), &v6(1) + &v6(4), &(&v6(2) + &v6(5)) + &(&v6(0) * &v6(4))];
    let inv = vec![-&v3(0), -&v3(1), &-&v3(2) + &(&v3(0) * &v3(1))];
    PolynomialGroup::new(3, PolynomialMap::new(6, m), PolynomialMap::new(3, inv), vec![vec![0, 1], vec![2]])
}

/// `f(x, y, z) = (x + y, 2x + y, -z + (x + y)^2 - y(y - 1)/2)`.
pub fn heisenberg_map() -> PolynomialMap {
    let v = |i| MultiPoly::var(3, i);
    let one = MultiPoly::constant(3, q(1, 1));
    let s = &v(0) + &v(1);
    let z = &(&-&v(2) + &s.pow(2)) - &(&v(1) * &(&v(1) - &one)).scale(&q(1, 2));
    PolynomialMap::new(3, vec![s.clone(), &v(0).scale(&q(2, 1)) + &v(1), z])
}

/// Heisenberg endomorphism with linear block `[[a, b], [c, d]]` on `(x, y)`:
/// `z ↦ (ad - bc) z + (ac x^2 + bd y^2)/2 + bc x y + e x + g y`. It preserves
/// the lattice when `e - ac/2` and `g - bd/2` are integers.
pub fn heisenberg_endomorphism([a, b, c, d]: [i64; 4], e: Rational, g: Rational) -> PolynomialMap {
    let v = |i| MultiPoly::var(3, i);
    let (x, y) = (v(0), v(1));
    let quadratic = &(&(&x * &x).scale(&q(a * c, 2)) + &(&y * &y).scale(&q(b * d, 2))) + &(&x * &y).scale(&q(b * c, 1));
    let z = &(&v(2).scale(&q(a * d - b * c, 1)) + &quadratic) + &(&x.scale(&e) + &y.scale(&g));
    PolynomialMap::new(3, vec![&x.scale(&q(a, 1)) + &y.scale(&q(b, 1)), &x.scale(&q(c, 1)) + &y.scale(&q(d, 1)), z])
}

/// `R ⋉ R^3` with `a` acting on `(b, c, d)` by `(1 + N)^a`, `N` the shift
/// `b → c → d`. The law has the integer-valued term `C(a, 2) b'`, so `Z^4` is
/// a lattice although the coefficients are not all integers.
pub fn filiform_group() -> PolynomialGroup {
    let v8 = |i| MultiPoly::var(8, i);
    let v4 = |i| MultiPoly::var(4, i);
    let one8 = MultiPoly::constant(8, q(1, 1));
    let one4 = MultiPoly::constant(4, q(1, 1));
    let choose2 = (&v8(0) * &(&v8(0) - &one8)).scale(&q(1, 2));
    let m = vec![
        &v8(0) + &v8(4),
        &v8(1) + &v8(5),
        &(&v8(2) + &v8(6)) + &(&v8(0) * &v8(5)),
        &(&(&v8(3) + &v8(7)) + &(&v8(0) * &v8(6))) + &(&choose2 * &v8(5)),
    ];
    // (a, v)^-1 = (-a, -(1 + N)^(-a) v), with C(-a, 2) = a(a + 1)/2
    let up2 = (&v4(0) * &(&v4(0) + &one4)).scale(&q(1, 2));
    let inv =
        vec![-&v4(0), -&v4(1), &-&v4(2) + &(&v4(0) * &v4(1)), &(&-&v4(3) + &(&v4(0) * &v4(2))) - &(&up2 * &v4(1))];
    PolynomialGroup::new(4, PolynomialMap::new(8, m), PolynomialMap::new(4, inv), vec![vec![0, 1], vec![2], vec![3]])
}

/// Automorphism of [`filiform_group`] scaling `a` by `t` and `b` by `s`:
/// `(a, b, c, d) ↦ (t a, s b, ts c, ts(t - 1)/2 c + t²s d)`.
pub fn filiform_endomorphism(t: i64, s: i64) -> PolynomialMap {
    let v = |i| MultiPoly::var(4, i);
    PolynomialMap::new(
        4,
        vec![
            v(0).scale(&q(t, 1)),
            v(1).scale(&q(s, 1)),
            v(2).scale(&q(t * s, 1)),
            &v(2).scale(&q(t * s * (t - 1), 2)) + &v(3).scale(&q(t * t * s, 1)),
        ],
    )
}

pub fn cat_map() -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]])
}

/// `[e0, e1] = e2`, `[e0, e2] = e3`, ... up to `dim`.
pub fn filiform(dim: usize) -> NilpotentLieAlgebra {
    let brackets: Vec<_> = (2..dim).map(|k| (0, k - 1, k)).collect();
    alg(dim, &brackets)
}

/// Algebras whose brackets send basis pairs to single basis vectors.
pub fn monomial_algebras() -> Vec<(&'static str, NilpotentLieAlgebra)> {
    vec![
        ("abelian-1", NilpotentLieAlgebra::abelian(1)),
        ("abelian-2", NilpotentLieAlgebra::abelian(2)),
        ("abelian-3", NilpotentLieAlgebra::abelian(3)),
        ("heisenberg", heisenberg()),
        ("heisenberg+R", alg(4, &[(0, 1, 2)])),
        ("heisenberg+R2", alg(5, &[(0, 1, 2)])),
        ("filiform-4", filiform(4)),
        ("filiform-5", filiform(5)),
        ("free-2-3", alg(5, &[(0, 1, 2), (0, 2, 3), (1, 2, 4)])),
        ("heisenberg-5", alg(5, &[(0, 1, 4), (2, 3, 4)])),
        ("l5-6", alg(5, &[(0, 1, 2), (0, 2, 3), (0, 3, 4), (1, 2, 4)])),
    ]
}

/// A nilpotent algebra with an integer automorphism that is block triangular
/// with respect to its lower central series.
#[derive(Debug, Clone)]
pub struct NilpotentSample {
    pub name: String,
    pub algebra: NilpotentLieAlgebra,
    pub automorphism: RationalMatrix,
}

/// Diagonal `diag(t_k)` with `t_k = t_i t_j` whenever `[e_i, e_j]` has an
/// `e_k` component, generator values drawn from `values`; `None` if they clash.
fn random_dilation<R: Rng>(l: &NilpotentLieAlgebra, rng: &mut R, values: &[i64]) -> Option<Vec<i64>> {
    let d = l.dim();
    let brackets = l.nonzero_upper();
    let mut t: Vec<Option<i64>> = vec![None; d];
    for k in 0..d {
        let produced = brackets.iter().find(|b| b.2 == k);
        t[k] = Some(match produced {
            Some(&(i, j, _, _)) => t[i]? * t[j]?,
            None => values[rng.gen_range(0..values.len())],
        });
    }
    let t: Vec<i64> = t.into_iter().collect::<Option<_>>()?;
    brackets.iter().all(|&(i, j, k, _)| t[k] == t[i] * t[j]).then_some(t)
}

/// `exp(ad x)` for an integer vector scaled so the series stays integral.
fn inner_automorphism<R: Rng>(l: &NilpotentLieAlgebra, rng: &mut R) -> RationalMatrix {
    let d = l.dim();
    let class = crate::lie::lower_central_series(l).map(|c| c.len() - 1).unwrap_or(1);
    let scale: i64 = (1..class.max(1) as i64).product();
    let x: Vec<Rational> = (0..d).map(|_| Rational::from(rng.gen_range(-1i64..=1) * scale)).collect();
    let ad = l.ad(&x);
    let mut term = RationalMatrix::identity(d);
    let mut sum = RationalMatrix::identity(d);
    for n in 1..=d {
        term = term.mul(&ad).scale(&q(1, n as i64));
        sum = sum.add(&term);
    }
    sum
}

fn random_two_step<R: Rng>(rng: &mut R, max_dim: usize) -> NilpotentSample {
    let total = rng.gen_range(3..=max_dim.max(3));
    let w = rng.gen_range(1..=(total - 2).min(2));
    let v = total - w;
    let mut brackets = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            for k in v..total {
                let c = rng.gen_range(-2i64..=2);
                if c != 0 {
                    brackets.push((i, j, k, Rational::from(c)));
                }
            }
        }
    }
    let algebra = LieAlgebra::from_brackets(total, brackets).expect("valid two-step algebra");
    // v ↦ t v + φ(v), w ↦ t² w is an automorphism of any two-step algebra
    let t = *[-3i64, -2, 2, 3].get(rng.gen_range(0..4)).unwrap();
    let f = RationalMatrix::from_fn(total, total, |r, c| {
        if r == c {
            Rational::from(if c < v { t } else { t * t })
        } else if c < v && r >= v {
            Rational::from(rng.gen_range(-2i64..=2))
        } else {
            Rational::zero()
        }
    });
    let automorphism = f.mul(&inner_automorphism(&algebra, rng));
    NilpotentSample { name: format!("two-step-{v}+{w}"), algebra, automorphism }
}

fn random_monomial<R: Rng>(rng: &mut R, max_dim: usize) -> NilpotentSample {
    let choices: Vec<_> = monomial_algebras().into_iter().filter(|(_, a)| a.dim() <= max_dim).collect();
    let (name, algebra) = choices[rng.gen_range(0..choices.len())].clone();
    let automorphism = if algebra.is_abelian() {
        // any integer matrix is an endomorphism of an abelian algebra
        let d = algebra.dim();
        RationalMatrix::from_fn(d, d, |_, _| Rational::from(rng.gen_range(-3i64..=3)))
    } else {
        // relations like t_1 = t_0^2 make most draws clash; signs, then ones, always fit eventually
        let t = (0..50)
            .find_map(|_| random_dilation(&algebra, rng, &[-3, -2, -1, 1, 2, 3]))
            .or_else(|| (0..50).find_map(|_| random_dilation(&algebra, rng, &[-1, 1])))
            .or_else(|| random_dilation(&algebra, rng, &[1]))
            .expect("all-ones dilation");
        let diag =
            RationalMatrix::from_fn(
                t.len(),
                t.len(),
                |r, c| if r == c { Rational::from(t[r]) } else { Rational::zero() },
            );
        diag.mul(&inner_automorphism(&algebra, rng))
    };
    NilpotentSample { name: name.to_string(), algebra, automorphism }
}

/// A random nilpotent algebra of dimension at most `max_dim` (at least 3)
/// with an integer automorphism.
pub fn random_nilpotent_sample<R: Rng>(rng: &mut R, max_dim: usize) -> NilpotentSample {
    if rng.gen_bool(0.5) {
        random_two_step(rng, max_dim)
    } else {
        random_monomial(rng, max_dim)
    }
}

/// Random invertible rational matrix with small entries.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    loop {
        let m = RationalMatrix::from_fn(n, n, |_, _| q(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2)));
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{validate_algebra, validate_homomorphism};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_algebras_are_nilpotent() {
        for (name, a) in monomial_algebras() {
            assert!(validate_algebra(&a).is_valid(), "{name}");
        }
    }

    #[test]
    fn constrained_dilations_never_run_dry() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..300 {
            let s = random_monomial(&mut rng, 5);
            validate_homomorphism(&s.algebra, s.automorphism.clone()).unwrap_or_else(|e| panic!("{}: {e}", s.name));
        }
    }

    #[test]
    fn random_samples_are_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let s = random_nilpotent_sample(&mut rng, 5);
            assert!(validate_algebra(&s.algebra).is_valid(), "{}", s.name);
            assert!(s.automorphism.entries().iter().all(Rational::is_integer), "{}", s.name);
            validate_homomorphism(&s.algebra, s.automorphism.clone()).unwrap_or_else(|e| panic!("{}: {e}", s.name));
        }
    }
}
