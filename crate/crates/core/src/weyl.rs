//! Weyl reflections and Coxeter words as exact integer matrices.
//!
//! A word `[w0, w1, …, wk]` stands for `σ_{w0} σ_{w1} ⋯ σ_{wk}` and acts
//! right to left, so `wk` is applied first.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dynkin::CartanMatrix;
use crate::linalg::IntMatrix;
use crate::poly::{cyclotomic_factorization, IntPoly};
use crate::roots::{LatticeEmbedding, RootVector};
use crate::{Error, Label, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeylWord {
    letters: Vec<Label>,
}

impl WeylWord {
    pub fn new(letters: Vec<Label>) -> Self {
        WeylWord { letters }
    }

    pub fn letters(&self) -> &[Label] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse element (reflections are involutions).
    pub fn inverse(&self) -> Self {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn concat(&self, other: &WeylWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }

    /// `u · self · u⁻¹`
    pub fn conjugate_by(&self, u: &WeylWord) -> Self {
        u.concat(self).concat(&u.inverse())
    }

    pub fn validate(&self, k: &CartanMatrix) -> Result<()> {
        self.letters.iter().try_for_each(|&l| k.index_of(l).map(|_| ()))
    }
}

impl From<Vec<Label>> for WeylWord {
    fn from(letters: Vec<Label>) -> Self {
        WeylWord::new(letters)
    }
}

/// Unimodular integer matrix of a Weyl group element acting on coefficient
/// vectors, kept together with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    mat: IntMatrix,
    inv: IntMatrix,
}

impl CoxeterMatrix {
    /// Wraps an arbitrary matrix after checking `Mᵀ K M = K` and
    /// unimodularity.
    pub fn from_matrix(mat: IntMatrix, k: &CartanMatrix) -> Result<Self> {
        if mat.rows() != k.rank() || !mat.is_square() {
            return Err(Error::DimensionMismatch { expected: k.rank(), found: mat.rows() });
        }
        let inv = mat.inverse()?;
        let c = CoxeterMatrix { mat, inv };
        if !c.preserves_form(k) {
            return Err(Error::InvalidDiagram("matrix does not preserve the Cartan form".into()));
        }
        Ok(c)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.inv
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn inverse(&self) -> CoxeterMatrix {
        CoxeterMatrix { mat: self.inv.clone(), inv: self.mat.clone() }
    }

    /// `Cᵏ` for any integer `k`.
    pub fn power(&self, k: i64) -> IntMatrix {
        if k >= 0 {
            self.mat.pow(k as u64)
        } else {
            self.inv.pow(k.unsigned_abs())
        }
    }

    pub fn preserves_form(&self, k: &CartanMatrix) -> bool {
        let t = self.mat.transpose();
        &(&t * k.matrix()) * &self.mat == *k.matrix()
    }

    pub fn characteristic_polynomial(&self) -> IntPoly {
        IntPoly::new(self.mat.characteristic_polynomial())
    }
}

fn check_dim(k: &CartanMatrix, a: &RootVector) -> Result<()> {
    if a.len() == k.rank() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: k.rank(), found: a.len() })
    }
}

/// `σ_i(a)`: only the coefficient at `i` changes, `c_i ↦ c_i − Σ_j K_ij c_j`.
pub fn reflect(i: Label, a: &RootVector, k: &CartanMatrix) -> Result<RootVector> {
    let idx = k.index_of(i)?;
    check_dim(k, a)?;
    let mut c = a.coeffs().to_vec();
    let s: BigInt = (0..k.rank()).map(|j| BigInt::from(k.at(idx, j)) * &c[j]).sum();
    c[idx] -= s;
    Ok(RootVector::new(c))
}

/// Matrix of the single reflection `σ_i`.
pub fn reflection_matrix(i: Label, k: &CartanMatrix) -> Result<IntMatrix> {
    let idx = k.index_of(i)?;
    let mut m = IntMatrix::identity(k.rank());
    for j in 0..k.rank() {
        let v = m.get(idx, j) - BigInt::from(k.at(idx, j));
        m.set(idx, j, v);
    }
    Ok(m)
}

pub fn word_matrix(w: &WeylWord, k: &CartanMatrix) -> Result<CoxeterMatrix> {
    w.validate(k)?;
    let mut mat = IntMatrix::identity(k.rank());
    let mut inv = IntMatrix::identity(k.rank());
    for &l in w.letters() {
        let r = reflection_matrix(l, k)?;
        mat = &mat * &r;
        inv = &r * &inv;
    }
    Ok(CoxeterMatrix { mat, inv })
}

/// `Cᵏ a`, exact, for any integer `k`.
pub fn apply_power(c: &CoxeterMatrix, k: i64, a: &RootVector) -> Result<RootVector> {
    let step = if k >= 0 { &c.mat } else { &c.inv };
    let mut e = k.unsigned_abs();
    // square-and-multiply on the vector side keeps intermediate products small
    let mut base = step.clone();
    let mut v = a.coeffs().to_vec();
    if v.len() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), found: v.len() });
    }
    while e > 0 {
        if e & 1 == 1 {
            v = base.mul_vec(&v)?;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    Ok(RootVector::new(v))
}

/// `[(k, Cᵏ seed)]` for `k_min ≤ k ≤ k_max`.
pub fn orbit(
    c: &CoxeterMatrix,
    seed: &RootVector,
    k_min: i64,
    k_max: i64,
) -> Result<Vec<(i64, RootVector)>> {
    if k_min > k_max {
        return Err(Error::InvalidBounds { lo: k_min, hi: k_max });
    }
    let mut cur = apply_power(c, k_min, seed)?;
    let mut out = Vec::with_capacity((k_max - k_min + 1) as usize);
    for k in k_min..=k_max {
        let next = if k < k_max { Some(RootVector::new(c.mat.mul_vec(cur.coeffs())?)) } else { None };
        out.push((k, cur));
        match next {
            Some(n) => cur = n,
            None => break,
        }
    }
    Ok(out)
}

/// Least `h ≤ h_max` with `Cʰ = I`, or `None`.
///
/// A finite-order integer matrix is diagonalisable with root-of-unity
/// eigenvalues, so its order is the lcm of the cyclotomic indices in the
/// characteristic polynomial. Anything else has infinite order.
pub fn coxeter_order(c: &CoxeterMatrix, h_max: u64) -> Option<u64> {
    let factors = cyclotomic_factorization(&c.characteristic_polynomial())?;
    let h = factors.iter().fold(1u64, |acc, &(n, _)| acc.lcm(&u64::from(n)));
    let id = IntMatrix::identity(c.dim());
    if c.mat.pow(h) != id {
        return None;
    }
    let order = (1..=h).find(|d| h % d == 0 && c.mat.pow(*d) == id)?;
    (order <= h_max).then_some(order)
}

/// `σ_i(q) = q − (α_i·q) α_i` in the ambient space.
pub fn ambient_reflect(
    i: Label,
    q: &[BigRational],
    e: &LatticeEmbedding,
) -> Result<Vec<BigRational>> {
    let alpha = e.simple(i)?;
    let s = e.ambient_inner(alpha, q)?;
    Ok(q.iter().zip(alpha).map(|(x, a)| x - &s * a).collect())
}

/// Floating-point version of [`ambient_reflect`].
pub fn ambient_reflect_f64(i: Label, q: &[f64], e: &LatticeEmbedding) -> Result<Vec<f64>> {
    let alpha: Vec<f64> = e.simple(i)?.iter().map(rational_to_f64).collect();
    let s = e.ambient_inner_f64(&alpha, q)?;
    Ok(q.iter().zip(&alpha).map(|(x, a)| x - s * a).collect())
}

/// Applies a whole word to ambient coordinates, rightmost letter first.
pub fn ambient_word(w: &WeylWord, q: &[BigRational], e: &LatticeEmbedding) -> Result<Vec<BigRational>> {
    w.letters().iter().rev().try_fold(q.to_vec(), |acc, &l| ambient_reflect(l, &acc, e))
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Identity check used by orbit searches: `C = I`?
pub fn is_identity(c: &CoxeterMatrix) -> bool {
    let n = c.dim();
    (0..n).all(|i| (0..n).all(|j| {
        let v = c.mat.get(i, j);
        if i == j { v.is_one() } else { v.is_zero() }
    }))
}
