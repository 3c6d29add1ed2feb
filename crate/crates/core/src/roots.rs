//! Root vectors in the simple-root basis and the Lorentzian lattice model.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dynkin::{CartanMatrix, DynkinDiagram};
use crate::{Error, Label, Result};

/// Integer coefficients of a root in the simple-root basis, in label order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    coeffs: Vec<BigInt>,
}

impl RootVector {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        RootVector { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RootVector { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        RootVector { coeffs: vec![BigInt::zero(); rank] }
    }

    /// The simple root at position `index`.
    pub fn simple(rank: usize, index: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coeffs[index] = BigInt::from(1);
        v
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn neg(&self) -> Self {
        RootVector { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// `true` when the first nonzero coefficient is positive.
    pub fn is_canonical(&self) -> bool {
        self.coeffs.iter().find(|c| !c.is_zero()).is_none_or(Signed::is_positive)
    }

    /// Representative of `±self` whose first nonzero coefficient is positive.
    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Graded-lexicographic comparison: coefficient sum first, then lex.
    pub fn graded_cmp(&self, other: &Self) -> Ordering {
        self.height().cmp(&other.height()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `aᵀ K b`
pub fn inner(a: &RootVector, b: &RootVector, k: &CartanMatrix) -> Result<BigInt> {
    check_dim(k.rank(), a.len())?;
    check_dim(k.rank(), b.len())?;
    let kb = k.matrix().mul_vec(b.coeffs())?;
    Ok(a.coeffs.iter().zip(&kb).map(|(x, y)| x * y).sum())
}

/// Real-root test: `a·a = 2`.
pub fn diophantine_check(a: &RootVector, k: &CartanMatrix) -> bool {
    inner(a, a, k).is_ok_and(|n| n == BigInt::from(2))
}

/// All norm-2 vectors in `[lo, hi]^rank`, graded-lex ordered.
pub fn enumerate_real_roots(k: &CartanMatrix, lo: i64, hi: i64) -> Result<Vec<RootVector>> {
    enumerate_real_roots_in(k, &vec![(lo, hi); k.rank()])
}

/// As [`enumerate_real_roots`] with a separate inclusive range per label.
pub fn enumerate_real_roots_in(k: &CartanMatrix, bounds: &[(i64, i64)]) -> Result<Vec<RootVector>> {
    check_dim(k.rank(), bounds.len())?;
    if let Some(&(lo, hi)) = bounds.iter().find(|(lo, hi)| lo > hi) {
        return Err(Error::InvalidBounds { lo, hi });
    }
    let r = k.rank();
    let km: Vec<Vec<i64>> = k.to_i64_rows();
    let mut out = Vec::new();
    let mut cur: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    // odometer over the box; norms stay far from i64 overflow for any
    // box that is feasible to scan
    'outer: loop {
        let norm: i64 =
            (0..r).map(|i| cur[i] * (0..r).map(|j| km[i][j] * cur[j]).sum::<i64>()).sum();
        if norm == 2 {
            out.push(RootVector::from_i64(&cur));
        }
        for pos in (0..r).rev() {
            if cur[pos] < bounds[pos].1 {
                cur[pos] += 1;
                continue 'outer;
            }
            cur[pos] = bounds[pos].0;
        }
        break;
    }
    out.sort_by(RootVector::graded_cmp);
    Ok(out)
}

/// Simple roots realised in `R^e ⊕ (Π^{1,1})^b` with metric
/// `x·y = Σ_{i≤e} x_i y_i − Σ_blocks (x_a y_b + x_b y_a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    labels: Vec<Label>,
    euclidean: usize,
    blocks: usize,
    vectors: Vec<Vec<BigRational>>,
}

impl LatticeEmbedding {
    /// Validates that the Gram matrix of `vectors` equals `k`.
    pub fn new(
        euclidean: usize,
        blocks: usize,
        vectors: Vec<Vec<BigRational>>,
        k: &CartanMatrix,
    ) -> Result<Self> {
        check_dim(k.rank(), vectors.len())?;
        let e = LatticeEmbedding { labels: k.labels().to_vec(), euclidean, blocks, vectors };
        for v in &e.vectors {
            check_dim(e.dim(), v.len())?;
        }
        for i in 0..k.rank() {
            for j in 0..k.rank() {
                let g = e.ambient_inner(&e.vectors[i], &e.vectors[j])?;
                if g != BigRational::from_integer(BigInt::from(k.at(i, j))) {
                    return Err(Error::InvalidDiagram(format!(
                        "embedding Gram entry ({i}, {j}) is {g}, Cartan entry is {}",
                        k.at(i, j)
                    )));
                }
            }
        }
        Ok(e)
    }

    /// Standard model of `(A_n)_{-m}`: `α_i = e_i − e_{i+1}` for `1 ≤ i ≤ n`,
    /// `α_0 = −e_1 + e_{n+1} + f_1`, `α_{-1} = −f_1 + f̄_1` and
    /// `α_{-k} = f_{k-1} − f_k + f̄_k`, where `(f_k, f̄_k)` spans the k-th
    /// hyperbolic block.
    pub fn for_extended_a(d: &DynkinDiagram) -> Result<Self> {
        let (n, m) = d
            .extended_params()
            .ok_or_else(|| Error::InvalidDiagram("not an extended A-series diagram".into()))?;
        let euclidean = n + 1;
        let blocks = m.max(1);
        let dim = euclidean + 2 * blocks;
        let block = |k: usize| euclidean + 2 * (k - 1);
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let mut vectors = Vec::with_capacity(d.rank());
        for &label in d.labels() {
            let mut v = vec![q(0); dim];
            match label {
                l if l > 0 => {
                    let i = l as usize;
                    v[i - 1] = q(1);
                    v[i] = q(-1);
                }
                0 => {
                    v[0] = q(-1);
                    v[n] = q(1);
                    v[block(1)] = q(1);
                }
                l => {
                    let k = (-l) as usize;
                    if k >= 2 {
                        v[block(k - 1)] = q(1);
                    }
                    v[block(k)] = q(-1);
                    v[block(k) + 1] = q(1);
                }
            }
            vectors.push(v);
        }
        Self::new(euclidean, blocks, vectors, &d.cartan())
    }

    pub fn dim(&self) -> usize {
        self.euclidean + 2 * self.blocks
    }

    pub fn euclidean_dim(&self) -> usize {
        self.euclidean
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn simple_vectors(&self) -> &[Vec<BigRational>] {
        &self.vectors
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn simple(&self, label: Label) -> Result<&[BigRational]> {
        let i = self.labels.iter().position(|&l| l == label).ok_or(Error::UnknownLabel(label))?;
        Ok(&self.vectors[i])
    }

    pub fn embed(&self, a: &RootVector) -> Result<Vec<BigRational>> {
        check_dim(self.vectors.len(), a.len())?;
        let mut out = vec![BigRational::zero(); self.dim()];
        for (c, v) in a.coeffs().iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            let c = BigRational::from_integer(c.clone());
            for (o, x) in out.iter_mut().zip(v) {
                *o += &c * x;
            }
        }
        Ok(out)
    }

    pub fn ambient_inner(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), y.len())?;
        let f = self.lower(x)?;
        Ok(f.iter().zip(y).map(|(a, b)| a * b).sum())
    }

    pub fn ambient_inner_f64(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), y.len())?;
        let e = self.euclidean;
        let mut s: f64 = (0..e).map(|i| x[i] * y[i]).sum();
        for b in 0..self.blocks {
            let (a, c) = (e + 2 * b, e + 2 * b + 1);
            s -= x[a] * y[c] + x[c] * y[a];
        }
        Ok(s)
    }

    /// Lowers an index with the metric: returns `f` with `Σ f_i y_i = x·y`.
    pub fn lower(&self, x: &[BigRational]) -> Result<Vec<BigRational>> {
        check_dim(self.dim(), x.len())?;
        let mut f = x.to_vec();
        for b in 0..self.blocks {
            let (a, c) = (self.euclidean + 2 * b, self.euclidean + 2 * b + 1);
            f[a] = -x[c].clone();
            f[c] = -x[a].clone();
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::build_extended_a;

    fn k22() -> CartanMatrix {
        build_extended_a(2, 2).unwrap().cartan()
    }

    fn diophantine_lhs(v: [i64; 5]) -> i64 {
        let [p, q, l, m, n] = v;
        l * l - l * (m + n + q) + m * m - m * n + n * n + p * p - p * q + q * q
    }

    #[test]
    fn cartan_form_matches_explicit_quadratic() {
        let k = k22();
        for v in [[0, 0, 1, 1, 1], [1, 2, 3, -1, 4], [0, 1, 1, 1, 1], [0, 0, 2, 1, 1]] {
            let a = RootVector::from_i64(&v);
            assert_eq!(inner(&a, &a, &k).unwrap(), BigInt::from(2 * diophantine_lhs(v)));
        }
        let a0 = RootVector::simple(5, 2);
        let am1 = RootVector::simple(5, 1);
        assert_eq!(inner(&a0, &am1, &k).unwrap(), BigInt::from(-1));
        assert!(inner(&a0, &RootVector::zero(4), &k).is_err());
    }

    #[test]
    fn diophantine_examples() {
        let k = k22();
        for i in 0..5 {
            assert!(diophantine_check(&RootVector::simple(5, i), &k));
        }
        assert!(!diophantine_check(&RootVector::from_i64(&[0, 0, 1, 1, 1]), &k));
        assert!(!diophantine_check(&RootVector::from_i64(&[0, 1, 1, 1, 1]), &k));
        assert!(diophantine_check(&RootVector::from_i64(&[0, 0, 2, 1, 1]), &k));
    }

    #[test]
    fn affine_slice_has_thirty_roots() {
        let k = k22();
        let b = [(0, 0), (0, 0), (0, 5), (0, 5), (0, 5)];
        let roots = enumerate_real_roots_in(&k, &b).unwrap();
        assert_eq!(roots.len(), 30);
        assert_eq!(roots[0], RootVector::from_i64(&[0, 0, 0, 0, 1]));
        assert_eq!(roots[29], RootVector::from_i64(&[0, 0, 5, 5, 4]));
        let small = enumerate_real_roots_in(&k, &[(0, 0), (0, 0), (0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(small.len(), 6);
        assert!(enumerate_real_roots(&k, 0, 0).unwrap().is_empty());
        assert_eq!(enumerate_real_roots(&k, 1, 0), Err(Error::InvalidBounds { lo: 1, hi: 0 }));
    }

    #[test]
    fn standard_embedding_reproduces_root_list() {
        let d = build_extended_a(2, 2).unwrap();
        let e = LatticeEmbedding::for_extended_a(&d).unwrap();
        assert_eq!(e.dim(), 7);
        let as_i64 = |v: &Vec<BigRational>| -> Vec<i64> {
            v.iter().map(|x| x.to_integer().to_i64().unwrap()).collect()
        };
        let s = e.simple_vectors();
        assert_eq!(as_i64(&s[3]), vec![1, -1, 0, 0, 0, 0, 0]);
        assert_eq!(as_i64(&s[4]), vec![0, 1, -1, 0, 0, 0, 0]);
        assert_eq!(as_i64(&s[2]), vec![-1, 0, 1, 1, 0, 0, 0]);
        assert_eq!(as_i64(&s[1]), vec![0, 0, 0, -1, 1, 0, 0]);
        let z = e.embed(&RootVector::zero(5)).unwrap();
        assert!(z.iter().all(Zero::is_zero));
        let e3 = LatticeEmbedding::for_extended_a(&build_extended_a(3, 2).unwrap()).unwrap();
        assert_eq!(e3.dim(), 8);
    }
}
