//! Bicoloured Coxeter elements, exponent angles and Weyl-invariant
//! polynomials.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dynkin::{bicolour, cartan_eigen, Bicolouration, CartanMatrix, Colour, DynkinDiagram};
use crate::linalg::{primitive_integer_vector, IntMatrix, RatMatrix};
use crate::weyl::{reflection_matrix, word_matrix, WeylWord};
use crate::{Error, Label, Result};

/// `σ = σ₋ σ₊`, each factor a product of pairwise commuting reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicolourFactorization {
    pub sigma_minus: WeylWord,
    pub sigma_plus: WeylWord,
}

impl BicolourFactorization {
    pub fn new(sigma_minus: WeylWord, sigma_plus: WeylWord) -> Self {
        BicolourFactorization { sigma_minus, sigma_plus }
    }

    pub fn from_bicolouration(b: &Bicolouration) -> Self {
        Self::new(WeylWord::new(b.minus()), WeylWord::new(b.plus()))
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.sigma_plus.clone(), self.sigma_minus.clone())
    }

    /// The Coxeter word `σ₋σ₊`.
    pub fn coxeter_word(&self) -> WeylWord {
        self.sigma_minus.concat(&self.sigma_plus)
    }

    pub fn validate(&self, d: &DynkinDiagram) -> Result<()> {
        for (name, w) in [("minus", &self.sigma_minus), ("plus", &self.sigma_plus)] {
            let l = w.letters();
            for (i, &a) in l.iter().enumerate() {
                d.index_of(a)?;
                for &b in &l[i + 1..] {
                    if a == b {
                        return Err(Error::InvalidFactorization(format!("{a} repeated in {name}")));
                    }
                    if d.adjacent(a, b) {
                        return Err(Error::InvalidFactorization(format!(
                            "{a} and {b} are adjacent in {name}"
                        )));
                    }
                }
            }
        }
        let mut all: Vec<Label> =
            self.sigma_minus.letters().iter().chain(self.sigma_plus.letters()).copied().collect();
        all.sort_unstable();
        let mut labels = d.labels().to_vec();
        labels.sort_unstable();
        if all != labels {
            return Err(Error::InvalidFactorization(format!(
                "letters {all:?} do not cover the labels {labels:?} exactly once"
            )));
        }
        Ok(())
    }
}

/// `σ₋(α_i) + σ₊(α_i) = Σ_j (2δ_ij − K_ij) α_j` for every simple root.
pub fn kostant_check(d: &DynkinDiagram, f: &BicolourFactorization) -> Result<bool> {
    f.validate(d)?;
    let k = d.cartan();
    let wm = word_matrix(&f.sigma_minus, &k)?;
    let wp = word_matrix(&f.sigma_plus, &k)?;
    let r = k.rank();
    let mut ok = true;
    for i in 0..r {
        for j in 0..r {
            let lhs = wm.matrix().get(i, j) + wp.matrix().get(i, j);
            let rhs = BigInt::from(if i == j { 2 } else { 0 } - k.at(i, j));
            ok &= lhs == rhs;
        }
    }
    Ok(ok)
}

/// Angles with `λ_j = 2 − 2cos θ_j`, ascending in `λ`.
///
/// For `|1 − λ/2| > 1` the angle is complex: `θ = −i·acosh(c)` when
/// `c > 1` and `θ = π + i·acosh(−c)` when `c < −1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoxeterAngles {
    pub eigenvalues: Vec<f64>,
    pub thetas: Vec<Complex64>,
}

impl CoxeterAngles {
    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// The real angle in `[0, π]`, or `None` for a complex one.
    pub fn real_angle(&self, j: usize) -> Option<f64> {
        let t = self.thetas[j];
        (t.im == 0.0).then_some(t.re)
    }

    /// `max_j |λ_j − (2 − 2cos θ_j)|`
    pub fn eigen_relation_defect(&self) -> f64 {
        self.thetas
            .iter()
            .zip(&self.eigenvalues)
            .map(|(t, l)| (Complex64::new(2.0, 0.0) - t.cos() * 2.0 - l).norm())
            .fold(0.0, f64::max)
    }

    /// `max_j |θ_j + θ_{r+1−j} − π|`
    pub fn pairing_defect(&self) -> f64 {
        let r = self.thetas.len();
        (0..r)
            .map(|j| (self.thetas[j] + self.thetas[r - 1 - j] - PI).norm())
            .fold(0.0, f64::max)
    }
}

fn angle(lambda: f64) -> Complex64 {
    let c = 1.0 - lambda / 2.0;
    if c > 1.0 {
        Complex64::new(0.0, -libm::acosh(c))
    } else if c < -1.0 {
        Complex64::new(PI, libm::acosh(-c))
    } else {
        Complex64::new(libm::acos(c), 0.0)
    }
}

pub fn coxeter_angles(k: &CartanMatrix) -> CoxeterAngles {
    let eigenvalues: Vec<f64> = cartan_eigen(k).into_iter().map(|p| p.value).collect();
    let thetas = eigenvalues.iter().map(|&l| angle(l)).collect();
    CoxeterAngles { eigenvalues, thetas }
}

/// `true` iff no `h ≤ h_max` makes every `h θ_j / π` an integer (1e−9).
pub fn no_finite_order(angles: &CoxeterAngles, h_max: u64) -> bool {
    !(1..=h_max).any(|h| {
        angles.thetas.iter().all(|t| {
            let x = *t * (h as f64) / PI;
            x.im.abs() < 1e-9 && (x.re - libm::round(x.re)).abs() < 1e-9
        })
    })
}

/// Sparse multivariate polynomial keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T> MPoly<T>
where
    T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `Σ coeffs_j x_j`
    pub fn linear(coeffs: &[T]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, T> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(T::zero);
        let sum = core::mem::replace(entry, T::zero()) + c;
        if sum.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        } else {
            *entry = sum;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(self.nvars, T::one()), |acc, _| acc.mul(self))
    }

    /// `P(L₁, …, L_n)` for polynomials `L_j` in a common set of variables.
    pub fn substitute(&self, images: &[MPoly<T>]) -> MPoly<T> {
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MPoly<T>>> = images.iter().map(|l| vec![l.pow(0)]).collect();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(target, c.clone());
            for (j, &a) in e.iter().enumerate() {
                while powers[j].len() <= a as usize {
                    let next = powers[j].last().unwrap().mul(&images[j]);
                    powers[j].push(next);
                }
                term = term.mul(&powers[j][a as usize]);
            }
            out = out.add(&term);
        }
        out
    }
}

/// Homogeneous polynomial with rational coefficients in the coefficient
/// variables `x_i` of `x = Σ x_i α_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialInvariant {
    pub degree: u32,
    pub poly: MPoly<BigRational>,
}

impl PolynomialInvariant {
    /// Monomials in graded-lex order (largest exponent of `x_1` first) with
    /// their coefficients.
    pub fn monomials(&self) -> Vec<(Vec<u32>, BigRational)> {
        self.poly.terms.iter().rev().map(|(e, c)| (e.clone(), c.clone())).collect()
    }

    /// Exact check of `P(σ_i x) = P(x)` for every reflection of `k`.
    pub fn is_invariant(&self, k: &CartanMatrix) -> bool {
        k.labels().iter().all(|&l| {
            let r = reflection_matrix(l, k).expect("label from k");
            substitute_matrix(&self.poly, &r) == self.poly
        })
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.poly
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (&a, xi)| acc * num_traits::pow(xi.clone(), a as usize))
            })
            .sum()
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `xᵀ K x`
pub fn cartan_form(k: &CartanMatrix) -> PolynomialInvariant {
    let r = k.rank();
    let mut p = MPoly::zero(r);
    for i in 0..r {
        for j in 0..r {
            let mut e = vec![0; r];
            e[i] += 1;
            e[j] += 1;
            p.add_term(e, q(k.at(i, j)));
        }
    }
    PolynomialInvariant { degree: 2, poly: p }
}

/// `P(M x)` for an integer matrix `M`.
fn substitute_matrix(p: &MPoly<BigRational>, m: &IntMatrix) -> MPoly<BigRational> {
    let images: Vec<MPoly<BigRational>> = (0..m.rows())
        .map(|i| MPoly::linear(&m.row(i).iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>()))
        .collect();
    p.substitute(&images)
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Exponent vectors of all degree-`d` monomials in `r` variables, descending
/// lexicographic.
fn monomial_basis(r: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(r: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == r {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(r, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        rec(r, d, &mut Vec::new(), &mut out);
    }
    out
}

pub const MAX_BASIS: u128 = 1_000_000;

/// Basis of the degree-`degree` polynomials fixed by every simple
/// reflection, as the nullspace of the stacked `(ρ(σ_i) − I)` matrices.
pub fn invariant_space(k: &CartanMatrix, degree: u32) -> Result<Vec<PolynomialInvariant>> {
    let r = k.rank();
    let size = binomial(u128::from(degree) + r as u128 - 1, u128::from(degree));
    if size > MAX_BASIS {
        return Err(Error::BasisTooLarge { size, limit: MAX_BASIS });
    }
    let basis = monomial_basis(r, degree);
    let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = basis.len();
    let mut constraints = RatMatrix::zeros(0, n);
    for &label in k.labels() {
        let refl = reflection_matrix(label, k)?;
        let images: Vec<MPoly<BigRational>> = (0..r)
            .map(|i| MPoly::linear(&refl.row(i).iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>()))
            .collect();
        let mut block = RatMatrix::zeros(n, n);
        for (col, e) in basis.iter().enumerate() {
            let mut mono = MPoly::zero(r);
            mono.add_term(e.clone(), q(1));
            let image = mono.substitute(&images);
            for (ee, c) in image.terms() {
                block.set(index[ee], col, c.clone());
            }
            let diag = block.get(col, col) - q(1);
            block.set(col, col, diag);
        }
        // drop zero rows so the stacked system stays small
        let mut rows = Vec::new();
        for i in 0..n {
            let row: Vec<BigRational> = (0..n).map(|j| block.get(i, j).clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
        if !rows.is_empty() {
            let mut reduced = RatMatrix::from_rows(rows)?;
            reduced.rref();
            let rank_rows: Vec<Vec<BigRational>> = (0..reduced.rows())
                .map(|i| (0..n).map(|j| reduced.get(i, j).clone()).collect::<Vec<_>>())
                .filter(|row| row.iter().any(|x| !x.is_zero()))
                .collect();
            constraints.stack(&RatMatrix::from_rows(rank_rows)?);
        }
    }
    let null = if constraints.rows() == 0 {
        (0..n)
            .map(|i| (0..n).map(|j| q(i64::from(i == j))).collect())
            .collect()
    } else {
        constraints.nullspace()
    };
    Ok(null
        .into_iter()
        .map(|v| {
            let ints = primitive_integer_vector(&v);
            let mut poly = MPoly::zero(r);
            for (e, c) in basis.iter().zip(ints) {
                poly.add_term(e.clone(), BigRational::from_integer(c));
            }
            PolynomialInvariant { degree, poly }
        })
        .collect())
}

/// Whether `a` is a rational multiple of `b`.
pub fn proportional(a: &PolynomialInvariant, b: &PolynomialInvariant) -> bool {
    let Some((e, cb)) = b.poly.terms.iter().next() else {
        return a.poly.is_zero();
    };
    let Some(ca) = a.poly.terms.get(e) else { return false };
    let ratio = ca / cb;
    b.poly.scale(&ratio) == a.poly
}

/// Coxeter eigenbasis `q_j = e^{iθ_j/2} q_j⁻ + e^{−iθ_j/2} q_j⁺` in the
/// simple-root basis; column `j` belongs to the `j`-th smallest Cartan
/// eigenvalue. Degenerate Cartan eigenspaces are split by colour, minus
/// colour first, whenever the colour projections are themselves eigenvectors.
pub fn coxeter_eigenbasis(k: &CartanMatrix) -> Result<(Vec<Vec<Complex64>>, CoxeterAngles)> {
    let d = DynkinDiagram::from_cartan(k)?;
    let colours = bicolour(&d)
        .ok_or_else(|| Error::InvalidFactorization("diagram is not bipartite".into()))?;
    let r = k.rank();
    let is_minus: Vec<bool> = k.labels().iter().map(|&l| colours.colour(l) == Some(Colour::Minus)).collect();
    let pairs = cartan_eigen(k);
    let mut vecs: Vec<Vec<f64>> = pairs.iter().map(|p| p.vector.clone()).collect();
    let values: Vec<f64> = pairs.iter().map(|p| p.value).collect();
    let kf: Vec<Vec<f64>> = k.to_i64_rows().iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let mut j = 0;
    while j < r {
        let mut end = j + 1;
        while end < r && (values[end] - values[j]).abs() < 1e-8 {
            end += 1;
        }
        if end - j > 1 {
            if let Some(split) = colour_split(&vecs[j..end], &is_minus, &kf, values[j]) {
                vecs.splice(j..end, split);
            }
        }
        j = end;
    }
    let angles = CoxeterAngles { eigenvalues: values.clone(), thetas: values.iter().map(|&l| angle(l)).collect() };
    let i = Complex64::new(0.0, 1.0);
    let cols: Vec<Vec<Complex64>> = (0..r)
        .map(|j| {
            let t = angles.thetas[j];
            let (em, ep) = ((i * t / 2.0).exp(), (-i * t / 2.0).exp());
            (0..r).map(|n| if is_minus[n] { em * vecs[j][n] } else { ep * vecs[j][n] }).collect()
        })
        .collect();
    Ok((cols, angles))
}

fn colour_split(
    space: &[Vec<f64>],
    is_minus: &[bool],
    k: &[Vec<f64>],
    lambda: f64,
) -> Option<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for want_minus in [true, false] {
        for v in space {
            let mut p: Vec<f64> =
                v.iter().zip(is_minus).map(|(&x, &m)| if m == want_minus { x } else { 0.0 }).collect();
            for b in &out {
                let dot: f64 = p.iter().zip(b).map(|(x, y)| x * y).sum();
                p.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
            }
            let norm = libm::sqrt(p.iter().map(|x| x * x).sum::<f64>());
            if norm > 1e-6 {
                p.iter_mut().for_each(|x| *x /= norm);
                if p.iter().find(|x| x.abs() > 1e-9).is_some_and(|&x| x < 0.0) {
                    p.iter_mut().for_each(|x| *x = -*x);
                }
                out.push(p);
            }
        }
    }
    let residual = out
        .iter()
        .map(|v| {
            (0..v.len())
                .map(|i| {
                    let kv: f64 = (0..v.len()).map(|j| k[i][j] * v[j]).sum();
                    (kv - lambda * v[i]).abs()
                })
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    (out.len() == space.len() && residual < 1e-9).then_some(out)
}

/// Support of `P(x)` rewritten in the Coxeter eigen-coordinates `w`
/// (`x = Σ w_j q_j`): exponent vectors whose coefficient exceeds `1e−8`
/// of the largest one.
pub fn w_monomial_pattern(k: &CartanMatrix, p: &PolynomialInvariant) -> Result<BTreeSet<Vec<u32>>> {
    let (cols, _) = coxeter_eigenbasis(k)?;
    let r = k.rank();
    let qm = DMatrix::from_fn(r, r, |i, j| cols[j][i]);
    let inv = qm.clone().try_inverse().ok_or(Error::DegenerateEigenbasis { condition: f64::INFINITY })?;
    let condition = qm.norm() * inv.norm();
    if !(condition <= 1e8) {
        return Err(Error::DegenerateEigenbasis { condition });
    }
    let images: Vec<MPoly<Complex64>> =
        (0..r).map(|i| MPoly::linear(&(0..r).map(|j| qm[(i, j)]).collect::<Vec<_>>())).collect();
    let pc = MPoly {
        nvars: r,
        terms: p
            .poly
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)))
            .collect(),
    };
    let w = pc.substitute(&images);
    let largest = w.terms.values().map(|c| c.norm()).fold(0.0, f64::max);
    Ok(w.terms
        .iter()
        .filter(|(_, c)| c.norm() > 1e-8 * largest)
        .map(|(e, _)| e.clone())
        .collect())
}

/// `Σ a_j θ_j ≡ 0 (mod π)` within `tol`.
pub fn satisfies_angle_constraint(exps: &[u32], angles: &CoxeterAngles, tol: f64) -> bool {
    let s: Complex64 = exps.iter().zip(&angles.thetas).map(|(&a, t)| t * a as f64).sum();
    let x = s / PI;
    x.im.abs() < tol && (x.re - libm::round(x.re)).abs() < tol
}

pub fn leading_coefficient_positive(p: &PolynomialInvariant) -> bool {
    p.monomials().first().is_none_or(|(_, c)| c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::build_extended_a;

    fn a3m2() -> DynkinDiagram {
        build_extended_a(3, 2).unwrap()
    }

    fn factorization() -> BicolourFactorization {
        BicolourFactorization::new(WeylWord::new(vec![-2, 0, 2]), WeylWord::new(vec![-1, 1, 3]))
    }

    #[test]
    fn kostant_identity() {
        let d = a3m2();
        assert!(kostant_check(&d, &factorization()).unwrap());
        assert!(kostant_check(&d, &factorization().swapped()).unwrap());
        let a2 = DynkinDiagram::finite_a(2).unwrap();
        let f = BicolourFactorization::new(WeylWord::new(vec![2]), WeylWord::new(vec![1]));
        assert!(kostant_check(&a2, &f).unwrap());
        let bad = BicolourFactorization::new(WeylWord::new(vec![-2, -1, 2]), WeylWord::new(vec![0, 1, 3]));
        assert!(matches!(kostant_check(&d, &bad), Err(Error::InvalidFactorization(_))));
        let b = bicolour(&d).unwrap();
        assert_eq!(BicolourFactorization::from_bicolouration(&b), factorization());
    }

    #[test]
    fn angles_of_a3m2() {
        let a = coxeter_angles(&a3m2().cartan());
        assert!(a.eigen_relation_defect() < 1e-9);
        assert!(a.pairing_defect() < 1e-9);
        assert!((a.real_angle(2).unwrap() - PI / 2.0).abs() < 1e-9);
        assert!((a.real_angle(3).unwrap() - PI / 2.0).abs() < 1e-9);
        assert!(a.real_angle(0).is_none());
        assert!(no_finite_order(&a, 1000));
        let fin = coxeter_angles(&DynkinDiagram::finite_a(2).unwrap().cartan());
        assert!((fin.real_angle(0).unwrap() - PI / 3.0).abs() < 1e-12);
        assert!((fin.real_angle(1).unwrap() - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!(!no_finite_order(&fin, 3));
        assert!(no_finite_order(&fin, 2));
    }

    #[test]
    fn coxeter_eigenbasis_diagonalises() {
        let k = a3m2().cartan();
        let (cols, angles) = coxeter_eigenbasis(&k).unwrap();
        let c = word_matrix(&factorization().coxeter_word(), &k).unwrap();
        let m: Vec<Vec<f64>> = c
            .matrix()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect())
            .collect();
        for (j, v) in cols.iter().enumerate() {
            let mu = (Complex64::new(0.0, 2.0) * angles.thetas[j]).exp();
            for i in 0..6 {
                let mv: Complex64 = (0..6).map(|l| v[l] * m[i][l]).sum();
                assert!((mv - mu * v[i]).norm() < 1e-9, "column {j}");
            }
        }
    }

    #[test]
    fn low_degree_invariants() {
        let k = a3m2().cartan();
        assert!(invariant_space(&k, 1).unwrap().is_empty());
        let two = invariant_space(&k, 2).unwrap();
        assert_eq!(two.len(), 1);
        assert!(proportional(&two[0], &cartan_form(&k)));
        assert!(two[0].is_invariant(&k));
        assert!(leading_coefficient_positive(&two[0]));
        assert!(invariant_space(&k, 3).unwrap().is_empty());
    }

    #[test]
    fn diagonal_inclusive_reading_is_not_invariant() {
        // Σ x_i² + Σ_{i,j} K_ij x_i x_j
        let k = a3m2().cartan();
        let mut p = cartan_form(&k).poly;
        for i in 0..6 {
            let mut e = vec![0; 6];
            e[i] = 2;
            p.add_term(e, q(1));
        }
        let bad = PolynomialInvariant { degree: 2, poly: p };
        assert!(!bad.is_invariant(&k));
        // Σ x_i² + Σ_{i<j} K_ij x_i x_j = ½ xᵀKx
        let half = PolynomialInvariant {
            degree: 2,
            poly: cartan_form(&k).poly.scale(&BigRational::new(1.into(), 2.into())),
        };
        assert!(half.is_invariant(&k));
    }

    #[test]
    fn invariant_form_for_other_algebras() {
        for (n, m) in [(2, 0), (2, 1), (2, 2), (4, 1)] {
            let k = build_extended_a(n, m).unwrap().cartan();
            let two = invariant_space(&k, 2).unwrap();
            assert!(two.iter().any(|p| proportional(p, &cartan_form(&k))), "({n}, {m})");
        }
    }

    #[test]
    fn w_support_of_quadratic_invariant() {
        let k = a3m2().cartan();
        let i2 = cartan_form(&k);
        let support = w_monomial_pattern(&k, &i2).unwrap();
        let expected: BTreeSet<Vec<u32>> = [
            vec![0, 0, 2, 0, 0, 0],
            vec![0, 0, 0, 2, 0, 0],
            vec![0, 1, 0, 0, 1, 0],
            vec![1, 0, 0, 0, 0, 1],
        ]
        .into_iter()
        .collect();
        assert_eq!(support, expected);
        let angles = coxeter_angles(&k);
        assert!(support.iter().all(|e| satisfies_angle_constraint(e, &angles, 1e-6)));
        let zero = PolynomialInvariant { degree: 2, poly: MPoly::zero(6) };
        assert!(w_monomial_pattern(&k, &zero).unwrap().is_empty());
    }

    #[test]
    fn binomial_guard() {
        assert_eq!(binomial(9, 4), 126);
        assert_eq!(monomial_basis(6, 4).len(), 126);
        assert_eq!(monomial_basis(3, 2)[0], vec![2, 0, 0]);
        let k = build_extended_a(20, 20).unwrap().cartan();
        assert!(matches!(invariant_space(&k, 8), Err(Error::BasisTooLarge { .. })));
    }
}
