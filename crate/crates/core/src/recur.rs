//! Linear recurrences of Coxeter orbit coefficients and their closed forms.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::hp::{self, HComplex};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::poly::{cyclotomic, totient, IntPoly, RatPoly};
use crate::roots::RootVector;
use crate::weyl::{apply_power, CoxeterMatrix};
use crate::{Error, Result};

/// `s(k+1) = Σ_{i=1}^N c_i s(k+1−i)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRecurrence {
    coeffs: Vec<BigRational>,
}

impl LinearRecurrence {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        LinearRecurrence { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The coefficients as machine integers, when they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten()).collect()
    }

    /// `true` if every term from index `order` on obeys the recurrence.
    pub fn satisfied_by(&self, seq: &[BigRational]) -> bool {
        let n = self.order();
        (n..seq.len()).all(|k| {
            let pred: BigRational = (1..=n).map(|i| &self.coeffs[i - 1] * &seq[k - i]).sum();
            pred == seq[k]
        })
    }

    /// Extends `init` (at least `order` terms) to `len` terms.
    pub fn extend(&self, init: &[BigRational], len: usize) -> Vec<BigRational> {
        let n = self.order();
        let mut s = init.to_vec();
        while s.len() < len {
            let k = s.len();
            let next: BigRational = (1..=n).map(|i| &self.coeffs[i - 1] * &s[k - i]).sum();
            s.push(next);
        }
        s.truncate(len.max(init.len()));
        s
    }

    /// `x^N − c₁x^{N−1} − … − c_N`, scaled to a primitive integer polynomial.
    pub fn char_poly(&self) -> IntPoly {
        let n = self.order();
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        for i in 1..=n {
            c[n - i] = -self.coeffs[i - 1].clone();
        }
        RatPoly::new(c).to_primitive_int()
    }
}

pub fn char_poly(r: &LinearRecurrence) -> IntPoly {
    r.char_poly()
}

fn to_rationals(seq: &[BigInt]) -> Vec<BigRational> {
    seq.iter().cloned().map(BigRational::from_integer).collect()
}

/// Shortest recurrence generating `seq`, by Berlekamp–Massey over the
/// rationals.
pub fn fit_min_recurrence(seq: &[BigInt]) -> Result<LinearRecurrence> {
    let s = to_rationals(seq);
    // connection polynomial C(x) = 1 + Σ C_i x^i with Σ_{i=0}^L C_i s_{n-i} = 0
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for n in 0..s.len() {
        let d: BigRational = (0..=l.min(c.len() - 1)).map(|i| &c[i] * &s[n - i]).sum();
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    let limit = (s.len() / 2).saturating_sub(1);
    if l > limit {
        return Err(Error::NoRecurrenceFound { terms: s.len() });
    }
    c.resize(l + 1, BigRational::zero());
    let r = LinearRecurrence::new(c[1..].iter().map(|x| -x.clone()).collect());
    debug_assert!(r.satisfied_by(&s));
    Ok(r)
}

/// Least-order recurrence satisfied by every sequence at once, found by
/// solving the stacked Hankel systems for increasing order.
pub fn fit_common_recurrence(seqs: &[Vec<BigInt>]) -> Result<LinearRecurrence> {
    let len = seqs.iter().map(Vec::len).min().unwrap_or(0);
    let limit = (len / 2).saturating_sub(1);
    let rs: Vec<Vec<BigRational>> = seqs.iter().map(|s| to_rationals(s)).collect();
    for n in 0..=limit {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for s in &rs {
            for k in n..s.len() {
                rows.push((1..=n).map(|i| s[k - i].clone()).collect::<Vec<_>>());
                rhs.push(s[k].clone());
            }
        }
        if n == 0 {
            if rhs.iter().all(Zero::is_zero) {
                return Ok(LinearRecurrence::new(Vec::new()));
            }
            continue;
        }
        let a = RatMatrix::from_rows(rows)?;
        if let Some((x, _)) = a.solve(&rhs) {
            return Ok(LinearRecurrence::new(x));
        }
    }
    Err(Error::NoRecurrenceFound { terms: len })
}

/// Sequences `(Cᵏ)_{νμ}` for `k = 0..len`, one per matrix entry, row-major.
pub fn matrix_power_sequences(c: &CoxeterMatrix, len: usize) -> Vec<Vec<BigInt>> {
    let n = c.dim();
    let mut out = vec![Vec::with_capacity(len); n * n];
    let mut p = IntMatrix::identity(n);
    for _ in 0..len {
        for i in 0..n {
            for j in 0..n {
                out[i * n + j].push(p.get(i, j).clone());
            }
        }
        p = &p * c.matrix();
    }
    out
}

/// Recurrence obeyed by every entry of the powers of `C`, i.e. the
/// minimal polynomial of `C`.
pub fn coxeter_recurrence(c: &CoxeterMatrix) -> Result<LinearRecurrence> {
    let len = 2 * c.dim() + 4;
    fit_common_recurrence(&matrix_power_sequences(c, len))
}

/// Exact description of a root of a characteristic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum CharRootKind {
    Integer(BigInt),
    /// `(a + b√d)/c` with `d` squarefree, `d ≠ 1`, `c > 0`.
    QuadraticSurd { a: BigInt, b: BigInt, d: BigInt, c: BigInt },
    /// `exp(2πi p/q)` with `p` in `(−q/2, q/2]` and `gcd(p, q) = 1`.
    RootOfUnity { p: i64, q: u64 },
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharRoot {
    pub kind: CharRootKind,
    pub value: Complex64,
    pub multiplicity: usize,
}

impl CharRoot {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CharRootKind::Integer(_) => "integer",
            CharRootKind::QuadraticSurd { .. } => "quadratic-surd",
            CharRootKind::RootOfUnity { .. } => "root-of-unity",
            CharRootKind::Numeric => "numeric-complex",
        }
    }
}

fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    // n = f² d with d squarefree; n is a small discriminant here
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            f *= &p;
        }
        p += 1;
    }
    (f, rest * sign)
}

fn surd_roots(s: &BigInt, prod: &BigInt) -> [CharRootKind; 2] {
    // x² − s x + prod: roots (s ± √(s² − 4 prod))/2
    let disc = s * s - BigInt::from(4) * prod;
    let (f, d) = squarefree_split(&disc);
    let two = BigInt::from(2);
    let g = s.gcd(&f).gcd(&two);
    let (a, b, c) = (s / &g, &f / &g, &two / &g);
    [
        CharRootKind::QuadraticSurd { a: a.clone(), b: b.clone(), d: d.clone(), c: c.clone() },
        CharRootKind::QuadraticSurd { a, b: -b, d, c },
    ]
}

fn surd_value(a: &BigInt, b: &BigInt, d: &BigInt, c: &BigInt) -> Complex64 {
    let to = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
    let root = Complex64::new(to(d), 0.0).sqrt();
    (Complex64::new(to(a), 0.0) + root * to(b)) / to(c)
}

fn integer_near(x: f64) -> Option<BigInt> {
    let r = libm::round(x);
    ((x - r).abs() < 1e-6 * (1.0 + x.abs())).then(|| BigInt::from(r as i64))
}

/// Classifies the roots of `p`: integer roots, cyclotomic factors,
/// integer quadratic factors, then whatever is left numerically.
pub fn char_roots(p: &IntPoly) -> Vec<CharRoot> {
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_factors() {
        let mut rest = factor;
        for r in rest.integer_roots() {
            out.push(CharRoot {
                value: Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
                kind: CharRootKind::Integer(r.clone()),
                multiplicity: mult,
            });
            rest = rest.exact_div(&IntPoly::linear(&r)).expect("integer root divides");
        }
        let deg = rest.degree().unwrap_or(0) as u32;
        for q in 3..=(2 * deg * deg + 2) {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            if totient(q) > rest.degree().unwrap_or(0) as u32 {
                continue;
            }
            if let Some(quot) = rest.exact_div(&cyclotomic(q)) {
                rest = quot;
                let qi = q as i64;
                for pnum in (-(qi - 1) / 2)..=(qi / 2) {
                    if pnum.gcd(&qi) != 1 {
                        continue;
                    }
                    let angle = 2.0 * core::f64::consts::PI * pnum as f64 / q as f64;
                    out.push(CharRoot {
                        kind: CharRootKind::RootOfUnity { p: pnum, q: u64::from(q) },
                        value: Complex64::from_polar(1.0, angle),
                        multiplicity: mult,
                    });
                }
            }
        }
        // integer quadratic factors from pairs of numeric roots
        let mut numeric = rest.complex_roots();
        let mut changed = true;
        while changed && numeric.len() >= 2 {
            changed = false;
            'pairs: for i in 0..numeric.len() {
                for j in i + 1..numeric.len() {
                    let s = numeric[i] + numeric[j];
                    let pr = numeric[i] * numeric[j];
                    if s.im.abs() > 1e-6 || pr.im.abs() > 1e-6 {
                        continue;
                    }
                    let (Some(si), Some(pi)) = (integer_near(s.re), integer_near(pr.re)) else {
                        continue;
                    };
                    let quad = IntPoly::new(vec![pi.clone(), -si.clone(), BigInt::one()]);
                    let Some(quot) = rest.exact_div(&quad) else { continue };
                    rest = quot;
                    for kind in surd_roots(&si, &pi) {
                        let CharRootKind::QuadraticSurd { a, b, d, c } = &kind else { unreachable!() };
                        let value = surd_value(a, b, d, c);
                        out.push(CharRoot { kind, value, multiplicity: mult });
                    }
                    numeric.remove(j);
                    numeric.remove(i);
                    changed = true;
                    break 'pairs;
                }
            }
        }
        for z in numeric {
            out.push(CharRoot { kind: CharRootKind::Numeric, value: z, multiplicity: mult });
        }
    }
    out.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    out
}

/// `|p(λ)| / Σ|c_i||λ|^i`
pub fn root_residual(p: &IntPoly, z: Complex64) -> f64 {
    let scale: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.to_f64().unwrap_or(f64::NAN).abs() * z.norm().powi(i as i32))
        .sum();
    p.eval_complex(z).norm() / scale.max(f64::MIN_POSITIVE)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormTerm {
    pub root: CharRoot,
    /// Coefficients of the polynomial in `k` multiplying `λᵏ`, ascending.
    pub poly: Vec<Complex64>,
}

/// `s(k) = Σ P_j(k) λ_jᵏ`
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub terms: Vec<ClosedFormTerm>,
}

impl ClosedForm {
    pub fn eval_complex(&self, k: i64) -> Complex64 {
        let kf = k as f64;
        self.terms
            .iter()
            .map(|t| {
                let pk = t.poly.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * kf + c);
                if pk.norm() == 0.0 {
                    return pk;
                }
                pk * t.root.value.powi(k as i32)
            })
            .sum()
    }

    pub fn eval(&self, k: i64) -> f64 {
        self.eval_complex(k).re
    }

    /// Highest power of `k` with a nonzero coefficient (relative 1e−9).
    pub fn polynomial_degree(&self) -> usize {
        let scale = self
            .terms
            .iter()
            .flat_map(|t| t.poly.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        self.terms
            .iter()
            .flat_map(|t| {
                t.poly.iter().enumerate().filter(|(_, c)| c.norm() > 1e-9 * scale).map(|(j, _)| j)
            })
            .max()
            .unwrap_or(0)
    }
}

/// Closed form of the sequence with recurrence `r` and initial terms
/// `init[k]` for `k = 0..N`. Checked on `2N` terms.
pub fn solve_closed_form(r: &LinearRecurrence, init: &[BigInt]) -> Result<ClosedForm> {
    let n = r.order();
    if init.len() < n {
        return Err(Error::DimensionMismatch { expected: n, found: init.len() });
    }
    let cp = r.char_poly();
    let roots = char_roots(&cp);
    let sqf = squarefree_part(&cp);
    let hroots: Vec<HComplex> = roots
        .iter()
        .map(|root| match &root.kind {
            CharRootKind::Integer(v) => HComplex::from_int(v),
            _ => hp::polish_root(sqf.coeffs(), root.value, 8),
        })
        .collect();
    // confluent Vandermonde: column (root, j) is k^j λ^k
    let mut a = vec![Vec::with_capacity(n); n];
    for (root, h) in roots.iter().zip(&hroots) {
        for j in 0..root.multiplicity {
            let mut pow = HComplex::one();
            for (k, row) in a.iter_mut().enumerate() {
                let kj = HComplex::from_int(&BigInt::from(k).pow(j as u32));
                row.push(kj.mul(&pow));
                pow = pow.mul(h);
            }
        }
    }
    let b: Vec<HComplex> = init[..n].iter().map(HComplex::from_int).collect();
    let x = hp::solve(a, b).ok_or(Error::IllConditioned { residual: f64::INFINITY })?;
    let mut xs = x.iter().map(HComplex::to_c64);
    let terms = roots
        .into_iter()
        .map(|root| {
            let poly = (0..root.multiplicity).map(|_| xs.next().unwrap()).collect();
            ClosedFormTerm { root, poly }
        })
        .collect();
    let cf = ClosedForm { terms };
    let check = r.extend(&to_rationals(&init[..n]), 2 * n);
    let residual = check
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let exact = s.to_f64().unwrap_or(f64::NAN);
            (cf.eval(k as i64) - exact).abs() / (1.0 + exact.abs())
        })
        .fold(0.0, f64::max);
    if !(residual <= 1e-8) {
        return Err(Error::IllConditioned { residual });
    }
    Ok(cf)
}

fn squarefree_part(p: &IntPoly) -> IntPoly {
    p.squarefree_factors().iter().fold(IntPoly::one(), |acc, (f, _)| acc.mul(f))
}

/// Closed forms for every entry of `Cᵏ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoxeterClosedForm {
    pub recurrence: LinearRecurrence,
    dim: usize,
    entries: Vec<ClosedForm>,
}

impl CoxeterClosedForm {
    pub fn new(c: &CoxeterMatrix) -> Result<Self> {
        let recurrence = coxeter_recurrence(c)?;
        let n = recurrence.order();
        let seqs = matrix_power_sequences(c, n.max(1));
        let entries =
            seqs.iter().map(|s| solve_closed_form(&recurrence, s)).collect::<Result<Vec<_>>>()?;
        Ok(CoxeterClosedForm { recurrence, dim: c.dim(), entries })
    }

    pub fn entry(&self, nu: usize, mu: usize) -> &ClosedForm {
        &self.entries[nu * self.dim + mu]
    }

    /// Approximation of `Cᵏ`.
    pub fn matrix(&self, k: i64) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.entry(i, j).eval(k)).collect()).collect()
    }

    /// Approximation of `Cᵏ a`.
    pub fn apply(&self, k: i64, a: &RootVector) -> Vec<f64> {
        let m = self.matrix(k);
        let v: Vec<f64> = a.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        m.iter().map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum()).collect()
    }
}

/// Largest `|cf(k) − exact| / (1 + |exact|)` over `k_range` and all
/// components of `Cᵏ seed`.
pub fn verify_closed_form(
    cf: &CoxeterClosedForm,
    c: &CoxeterMatrix,
    seed: &RootVector,
    k_range: core::ops::RangeInclusive<i64>,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in k_range {
        let exact = apply_power(c, k, seed)?;
        for (approx, e) in cf.apply(k, seed).iter().zip(exact.coeffs()) {
            let e = e.to_f64().unwrap_or(f64::NAN);
            let err = (approx - e).abs() / (1.0 + e.abs());
            worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
        }
    }
    Ok(worst)
}

/// Exact orbit of the affine Coxeter element `σ₀σ₁σ₂` of `(A₂)_{−m}`
/// (`m ≤ 2`) in closed form, for seed `(p, q, l, m, n)`:
///
/// ```text
/// l(k) = (6k²+1)q/8 + (6k+3)l/4 − (6k+1)n/4 + m/2 + (−1)ᵏ s/8
/// m(k) = (6k²−4k−1)q/8 + (6k+1)l/4 − (6k−1)n/4 + m/2 − (−1)ᵏ s/8
/// n(k) = (6k²−8k+1)q/8 + (6k−1)l/4 − (6k−3)n/4 + m/2 + (−1)ᵏ s/8
/// ```
///
/// with `s = 2l − 4m + 2n − q`; `p` and `q` are fixed.
pub fn affine_a2_orbit(k: i64, seed: &RootVector) -> Result<RootVector> {
    if seed.len() != 5 {
        return Err(Error::DimensionMismatch { expected: 5, found: seed.len() });
    }
    let c = seed.coeffs();
    let (p, q, l, m, n) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
    let r = |num: BigInt, den: i64| BigRational::new(num, BigInt::from(den));
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let i = |x: i64| BigInt::from(x);
    let s = i(2) * l - i(4) * m + i(2) * n - q;
    let sign = if k.is_odd() { -BigInt::one() } else { BigInt::one() };
    let half_m = r(m.clone(), 2);
    let alt = r(&sign * &s, 8);
    let a0 = r((i(6) * &k2 + 1) * q, 8) + r((i(6) * &k + 3) * l, 4) - r((i(6) * &k + 1) * n, 4)
        + &half_m
        + &alt;
    let a1 = r((i(6) * &k2 - i(4) * &k - 1) * q, 8) + r((i(6) * &k + 1) * l, 4)
        - r((i(6) * &k - 1) * n, 4)
        + &half_m
        - &alt;
    let a2 = r((i(6) * &k2 - i(8) * &k + 1) * q, 8) + r((i(6) * &k - 1) * l, 4)
        - r((i(6) * &k - 3) * n, 4)
        + &half_m
        + &alt;
    let mut out = vec![p.clone(), q.clone()];
    for x in [a0, a1, a2] {
        if !x.is_integer() {
            return Err(Error::IllConditioned { residual: 1.0 });
        }
        out.push(x.to_integer());
    }
    Ok(RootVector::new(out))
}
