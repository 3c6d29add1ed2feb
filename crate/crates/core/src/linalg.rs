//! Dense exact matrices over `BigInt` and `BigRational`.
//!
//! Sizes here are tiny (rank ≤ ~10) except for the invariant-polynomial
//! constraint systems, which stay in the low hundreds of columns.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Non-negative power by binary exponentiation.
    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let d = self.to_rational().determinant();
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    /// Exact inverse; fails unless the determinant is ±1.
    pub fn inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let inv = self.to_rational().inverse().ok_or(Error::NotUnimodular)?;
        if inv.data.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotUnimodular);
        }
        Ok(IntMatrix {
            rows: inv.rows,
            cols: inv.cols,
            data: inv.data.into_iter().map(|x| x.to_integer()).collect(),
        })
    }

    /// Characteristic polynomial `det(xI − A)`, coefficients in ascending
    /// degree, computed by the Faddeev–LeVerrier recursion.
    pub fn characteristic_polynomial(&self) -> Vec<BigInt> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next.data[i * n + i] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self * &m;
            let trace = (0..n).fold(BigInt::zero(), |acc, i| acc + am.get(i, i));
            let (q, r) = (-trace).div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[n - k] = q;
        }
        coeffs
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(RatMatrix { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&mut self, other: &RatMatrix) {
        assert_eq!(self.cols, other.cols, "stacked matrices need equal widths");
        self.data.extend(other.data.iter().cloned());
        self.rows += other.rows;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pivot_entry = self.get(r, j);
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &factor * pivot_entry;
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace `{x : A x = 0}`, one vector per free
    /// column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A x = b`. Returns `None` when the system is inconsistent,
    /// otherwise the solution with all free variables set to zero together
    /// with a flag telling whether it is unique.
    pub fn solve(&self, b: &[BigRational]) -> Option<(Vec<BigRational>, bool)> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(row, self.cols).clone();
        }
        Some((x, pivots.len() == self.cols))
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                let factor = m.get(i, c) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &factor * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]))
            .finish()
    }
}

/// Scales a rational vector to coprime integers whose first nonzero entry is
/// positive. The zero vector stays zero.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| x.signum());
    let d = g * sign;
    ints.into_iter().map(|x| x / &d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m = int(&[&[1, 1], &[1, 0]]);
        let p = m.pow(10);
        // Fibonacci: F11 F10 / F10 F9
        assert_eq!(p, int(&[&[89, 55], &[55, 34]]));
        assert_eq!(m.pow(0), IntMatrix::identity(2));
    }

    #[test]
    fn unimodular_inverse_is_integral() {
        let m = int(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, IntMatrix::identity(2));
        assert_eq!(int(&[&[2, 0], &[0, 1]]).inverse(), Err(Error::NotUnimodular));
    }

    #[test]
    fn characteristic_polynomial_of_companion() {
        // companion of x^3 - 2x^2 - x + 2
        let m = int(&[&[0, 0, -2], &[1, 0, 1], &[0, 1, 2]]);
        let cp: Vec<i64> =
            m.characteristic_polynomial().iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(cp, vec![2, -1, -2, 1]);
        assert_eq!(m.determinant(), BigInt::from(-2));
    }

    #[test]
    fn nullspace_and_solve() {
        let a = RatMatrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]).unwrap();
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for i in 0..2 {
                let s: BigRational = (0..3).map(|j| a.get(i, j) * &v[j]).sum();
                assert!(s.is_zero());
            }
        }
        let (x, unique) = a.solve(&[q(6), q(12)]).unwrap();
        assert!(!unique);
        assert_eq!(x, vec![q(6), q(0), q(0)]);
        assert!(a.solve(&[q(1), q(1)]).is_none());
    }

    #[test]
    fn primitive_vector_normalisation() {
        let v = [BigRational::new((-2).into(), 3.into()), q(0), BigRational::new(4.into(), 3.into())];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(0), BigInt::from(-2)]);
    }
}
