//! Coordinatized simply connected nilpotent groups with lattice `Z^n`.

use serde::{Deserialize, Deserializer, Serialize};

use super::poly::{MultiPoly, PolynomialMap};
use super::DynamicsError;
use crate::exact::{Rational, RationalMatrix};
use crate::lie::{lower_central_series, LieAlgebra, NilpotentLieAlgebra};

/// Group law `m: R^n x R^n -> R^n` with identity 0, an inverse map, and the
/// coordinate blocks of the central-series layers (outermost first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolynomialGroup {
    dim: usize,
    multiplication: PolynomialMap,
    inverse: PolynomialMap,
    layers: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRepr {
    dim: usize,
    multiplication: PolynomialMap,
    inverse: PolynomialMap,
    layers: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for PolynomialGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = GroupRepr::deserialize(deserializer)?;
        let multiplication = r
            .multiplication
            .with_arity(2 * r.dim)
            .ok_or_else(|| D::Error::custom("multiplication must take 2 * dim variables"))?;
        let inverse = r.inverse.with_arity(r.dim).ok_or_else(|| D::Error::custom("inverse must take dim variables"))?;
        Ok(PolynomialGroup { dim: r.dim, multiplication, inverse, layers: r.layers })
    }
}

impl PolynomialGroup {
    /// Unchecked constructor; run [`validate_group`] before relying on it.
    pub fn new(dim: usize, multiplication: PolynomialMap, inverse: PolynomialMap, layers: Vec<Vec<usize>>) -> Self {
        PolynomialGroup { dim, multiplication, inverse, layers }
    }

    /// `R^n` under addition.
    pub fn abelian(dim: usize) -> Self {
        let n = 2 * dim;
        let m = (0..dim).map(|i| &MultiPoly::var(n, i) + &MultiPoly::var(n, dim + i)).collect();
        let inv = (0..dim).map(|i| -&MultiPoly::var(dim, i)).collect();
        PolynomialGroup::new(dim, PolynomialMap::new(n, m), PolynomialMap::new(dim, inv), vec![(0..dim).collect()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn multiplication(&self) -> &PolynomialMap {
        &self.multiplication
    }

    pub fn inverse(&self) -> &PolynomialMap {
        &self.inverse
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let point: Vec<Rational> = x.iter().chain(y).cloned().collect();
        self.multiplication.eval(&point)
    }

    /// Layer index of every coordinate.
    pub(crate) fn layer_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.dim];
        for (j, block) in self.layers.iter().enumerate() {
            for &i in block {
                if i < self.dim {
                    out[i] = j;
                }
            }
        }
        out
    }

    /// Lie algebra of the group in the coordinate basis: `[X, Y] = B(X, Y) - B(Y, X)`
    /// for the bilinear part `B` of the multiplication.
    pub fn lie_algebra(&self) -> NilpotentLieAlgebra {
        let n = self.dim;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut e = vec![0; 2 * n];
                    e[i] = 1;
                    e[n + j] = 1;
                    let b_ij = self.multiplication.output(k).coeff(&e);
                    let mut e = vec![0; 2 * n];
                    e[j] = 1;
                    e[n + i] = 1;
                    let c = &b_ij - &self.multiplication.output(k).coeff(&e);
                    if !c.is_zero() {
                        brackets.push((i, j, k, c));
                    }
                }
            }
        }
        LieAlgebra::from_brackets(n, brackets).expect("indices in range")
    }
}

fn mul_name(n: usize) -> impl Fn(usize) -> String {
    move |i| if i < n { format!("x{}", i + 1) } else { format!("y{}", i - n + 1) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub checks: Vec<GroupCheck>,
    pub layers: usize,
}

impl GroupReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&GroupCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// First monomial where two polynomial vectors differ.
fn difference_witness(lhs: &[MultiPoly], rhs: &[MultiPoly], names: &dyn Fn(usize) -> String) -> Option<String> {
    for (k, (a, b)) in lhs.iter().zip(rhs).enumerate() {
        let d = a - b;
        let last = d.terms().next_back().map(|(e, c)| (e.clone(), c.clone()));
        if let Some((e, c)) = last {
            let e = &e;
            return Some(format!("coordinate {}: monomial {} off by {c}", k + 1, MultiPoly::fmt_monomial(e, names)));
        }
    }
    None
}

fn check(name: &'static str, witness: Option<String>) -> GroupCheck {
    GroupCheck { name, passed: witness.is_none(), witness }
}

/// Checks every group-law invariant by exact polynomial identities.
pub fn validate_group(g: &PolynomialGroup) -> GroupReport {
    let n = g.dim;
    let m = &g.multiplication;
    let mut checks = Vec::new();

    let shape = if m.arity() != 2 * n || m.outputs().len() != n {
        Some(format!("multiplication must map {} variables to {n}", 2 * n))
    } else if g.inverse.arity() != n || g.inverse.outputs().len() != n {
        Some(format!("inverse must map {n} variables to {n}"))
    } else {
        let mut seen: Vec<usize> = g.layers.iter().flatten().copied().collect();
        seen.sort_unstable();
        (seen != (0..n).collect::<Vec<_>>() || g.layers.iter().any(Vec::is_empty))
            .then(|| "layers must partition the coordinates into nonempty blocks".to_string())
    };
    let shape_ok = shape.is_none();
    checks.push(check("shape", shape));
    if !shape_ok {
        return GroupReport { checks, layers: g.layers.len() };
    }

    let xs: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let zeros: Vec<MultiPoly> = (0..n).map(|_| MultiPoly::zero(n)).collect();
    let names = &crate::dynamics::poly::default_name;

    let right: Vec<MultiPoly> = xs.iter().chain(&zeros).cloned().collect();
    let left: Vec<MultiPoly> = zeros.iter().chain(&xs).cloned().collect();
    let identity = difference_witness(&m.compose(&right, n), &xs, names)
        .map(|w| format!("m(x, 0) != x at {w}"))
        .or_else(|| difference_witness(&m.compose(&left, n), &xs, names).map(|w| format!("m(0, x) != x at {w}")));
    checks.push(check("identity", identity));

    let inv = g.inverse.outputs().to_vec();
    let x_inv: Vec<MultiPoly> = xs.iter().chain(&inv).cloned().collect();
    let inv_x: Vec<MultiPoly> = inv.iter().chain(&xs).cloned().collect();
    let inverse =
        difference_witness(&m.compose(&x_inv, n), &zeros, names).map(|w| format!("m(x, x^-1) != 0 at {w}")).or_else(
            || difference_witness(&m.compose(&inv_x, n), &zeros, names).map(|w| format!("m(x^-1, x) != 0 at {w}")),
        );
    checks.push(check("inverse", inverse));

    // (x y) z = x (y z) in 3n variables
    let v3 = 3 * n;
    let x3: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(v3, i)).collect();
    let y3: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(v3, n + i)).collect();
    let z3: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(v3, 2 * n + i)).collect();
    let xy = m.compose(&[x3.clone(), y3.clone()].concat(), v3);
    let yz = m.compose(&[y3, z3.clone()].concat(), v3);
    let lhs = m.compose(&[xy, z3].concat(), v3);
    let rhs = m.compose(&[x3, yz].concat(), v3);
    let names3 = |i: usize| format!("{}{}", ["x", "y", "z"][i / n], i % n + 1);
    checks.push(check("associativity", difference_witness(&lhs, &rhs, &names3)));

    let layer_of = g.layer_of();
    let mut tri = None;
    'outer: for k in 0..n {
        let rest = &(m.output(k) - &MultiPoly::var(2 * n, k)) - &MultiPoly::var(2 * n, n + k);
        for (e, _) in rest.terms() {
            if e.iter().enumerate().any(|(v, &p)| p > 0 && layer_of[v % n] >= layer_of[k]) {
                tri = Some(format!(
                    "coordinate {} (layer {}) has term {}",
                    k + 1,
                    layer_of[k],
                    MultiPoly::fmt_monomial(e, &mul_name(n))
                ));
                break 'outer;
            }
        }
    }
    checks.push(check("triangularity", tri));

    // Z^n is closed under m and inverse iff every output is integer valued
    let mut integral = None;
    'ints: for (what, map, names) in
        [("multiplication", m, &mul_name(n) as &dyn Fn(usize) -> String), ("inverse", &g.inverse, names)]
    {
        for (k, p) in map.outputs().iter().enumerate() {
            if let Some((e, c)) = p.non_integer_binomial_coordinate() {
                let binom: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(i, &d)| format!("C({}, {d})", names(i)))
                    .collect();
                integral = Some(format!("{what} coordinate {}: coefficient {c} on {}", k + 1, binom.join("*")));
                break 'ints;
            }
        }
    }
    checks.push(check("lattice_closure", integral));

    GroupReport { checks, layers: g.layers.len() }
}

/// Coordinate blocks of the lower central series layers, when each term of
/// the series is spanned by basis vectors.
pub fn coordinate_layers(l: &NilpotentLieAlgebra) -> Result<Vec<Vec<usize>>, DynamicsError> {
    let series = lower_central_series(l)?;
    let mut supports = Vec::new();
    for c in &series {
        let basis = c.basis();
        if basis.is_empty() {
            supports.push(Vec::new());
            continue;
        }
        let r = RationalMatrix::from_rows(basis.to_vec()).rref();
        let aligned = (0..r.rank).all(|i| r.reduced.row(i).iter().filter(|x| !x.is_zero()).count() == 1);
        if !aligned {
            return Err(DynamicsError::BasisNotAdapted);
        }
        supports.push(r.pivot_columns);
    }
    Ok(supports.windows(2).map(|w| w[0].iter().filter(|i| !w[1].contains(i)).copied().collect()).collect())
}

pub const MAX_BCH_CLASS: usize = 6;

/// Bernoulli numbers `B_2, B_4` over their factorials, enough for class 6.
fn bernoulli_weight(p: usize) -> Rational {
    match p {
        1 => Rational::new(1, 12),
        2 => Rational::new(-1, 720),
        _ => unreachable!("class bounded by {MAX_BCH_CLASS}"),
    }
}

type Vector = Vec<MultiPoly>;

fn bracket(l: &NilpotentLieAlgebra, u: &Vector, v: &Vector) -> Vector {
    let d = l.dim();
    let nv = u[0].nvars();
    let mut out: Vector = (0..d).map(|_| MultiPoly::zero(nv)).collect();
    for (i, j, k, c) in l.nonzero_upper() {
        // c [e_i, e_j] with antisymmetry
        let t = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
        out[k] = &out[k] + &t.scale(&c);
    }
    out
}

fn add(u: &Vector, v: &Vector) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

fn scale(u: &Vector, c: &Rational) -> Vector {
    u.iter().map(|a| a.scale(c)).collect()
}

/// Compositions of `n` into `parts` positive parts.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(parts - 1) {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Homogeneous Baker-Campbell-Hausdorff components `Z_1, ..., Z_class` from
/// the recursion `(n+1) Z_{n+1} = ½[X - Y, Z_n] + Σ_p B_2p/(2p)! Σ [Z_k1, [..., [Z_k2p, X + Y]]]`.
fn bch_components(l: &NilpotentLieAlgebra, x: &Vector, y: &Vector, class: usize) -> Vec<Vector> {
    let sum = add(x, y);
    let diff = add(x, &scale(y, &-Rational::one()));
    let mut z: Vec<Vector> = vec![Vec::new(), sum.clone()];
    for n in 1..class {
        let mut next = scale(&bracket(l, &diff, &z[n]), &Rational::new(1, 2));
        for p in 1..=n / 2 {
            for ks in compositions(n, 2 * p) {
                let mut acc = sum.clone();
                for &k in ks.iter().rev() {
                    acc = bracket(l, &z[k], &acc);
                }
                next = add(&next, &scale(&acc, &bernoulli_weight(p)));
            }
        }
        z.push(scale(&next, &Rational::new(1, n as i64 + 1)));
    }
    z.into_iter().skip(1).collect()
}

/// Group in exponential coordinates: `m(x, y) = log(exp x exp y)` truncated
/// at the nilpotency class, inverse `-x`. Returns warnings for non-integer
/// coefficients, under which `Z^n` is not a subgroup.
pub fn bch_group_from_algebra(l: &NilpotentLieAlgebra) -> Result<(PolynomialGroup, Vec<String>), DynamicsError> {
    let n = l.dim();
    let series = lower_central_series(l)?;
    let class = series.len().saturating_sub(1).max(1);
    if class > MAX_BCH_CLASS {
        return Err(DynamicsError::ClassTooHigh(class));
    }
    let layers = coordinate_layers(l)?;
    let nv = 2 * n;
    let x: Vector = (0..n).map(|i| MultiPoly::var(nv, i)).collect();
    let y: Vector = (0..n).map(|i| MultiPoly::var(nv, n + i)).collect();
    let mut total: Vector = (0..n).map(|_| MultiPoly::zero(nv)).collect();
    if n > 0 {
        for zk in bch_components(l, &x, &y, class) {
            total = add(&total, &zk);
        }
    }
    let inverse = (0..n).map(|i| -&MultiPoly::var(n, i)).collect();
    let g = PolynomialGroup::new(n, PolynomialMap::new(nv, total), PolynomialMap::new(n, inverse), layers);
    let mut warnings = Vec::new();
    let mut denominators: Vec<Rational> = g
        .multiplication
        .outputs()
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.clone()))
        .filter(|c| !c.is_integer())
        .collect();
    denominators.sort_by(|a, b| a.denom().cmp(b.denom()).then(a.cmp(b)));
    denominators.dedup_by(|a, b| a.denom() == b.denom());
    for c in denominators {
        warnings.push(format!(
            "non-integer coefficient {c} in the BCH group law: Z^n is not closed under multiplication, fixed points are unavailable"
        ));
    }
    Ok((g, warnings))
}
