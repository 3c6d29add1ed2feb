//! Univariate polynomials with integer coefficients.
//!
//! Coefficients are stored in ascending degree and kept trimmed, so the zero
//! polynomial is the empty vector.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - r`
    pub fn linear(r: &BigInt) -> Self {
        Self::new(vec![-r.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let g = if self.leading().is_some_and(Signed::is_negative) { -g } else { g };
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient when `divisor` divides `self` over the integers.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = RatPoly::from_int(self).div_rem(&RatPoly::from_int(divisor));
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + to_f64(c))
    }

    /// Squarefree decomposition `p = c · Π f_i^i` (Yun). Returns the
    /// nonconstant primitive factors with their multiplicities.
    pub fn squarefree_factors(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = RatPoly::from_int(self);
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.to_primitive_int(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Integer roots of the polynomial (candidates are divisors of the
    /// trailing nonzero coefficient, plus zero).
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let mut roots = Vec::new();
        let Some(low) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return roots;
        };
        if low > 0 {
            roots.push(BigInt::zero());
        }
        let t = self.coeffs[low].abs();
        // trailing coefficients here stay small; trial division is fine
        let limit = t.to_u64().unwrap_or(u64::MAX).min(1 << 20);
        for d in 1..=limit {
            let d = BigInt::from(d);
            if !(&t % &d).is_zero() {
                continue;
            }
            for cand in [d.clone(), -d] {
                if self.eval_int(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
        roots.sort();
        roots
    }

    /// All complex roots by Aberth–Ehrlich iteration, polished by Newton.
    /// Roots are returned with multiplicity and sorted by (re, im).
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let Some(n) = self.degree() else {
            return Vec::new();
        };
        if n == 0 {
            return Vec::new();
        }
        let lead = to_f64(&self.coeffs[n]);
        let monic: Vec<Complex64> =
            self.coeffs.iter().map(|c| Complex64::new(to_f64(c) / lead, 0.0)).collect();
        let eval = |z: Complex64| -> (Complex64, Complex64) {
            let mut p = Complex64::new(0.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            for c in monic.iter().rev() {
                dp = dp * z + p;
                p = p * z + c;
            }
            (p, dp)
        };
        let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let angle = 2.0 * core::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
                Complex64::from_polar(0.5 * radius, angle)
            })
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let (p, dp) = eval(z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let d = z[i] - z[j];
                        if d.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { d.inv() }
                    })
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    z[i] -= step;
                    moved = moved.max(step.norm() / (1.0 + z[i].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        for r in &mut z {
            for _ in 0..3 {
                let (p, dp) = eval(*r);
                let step = p / dp;
                if !step.is_finite() || step.norm() < 1e-17 * (1.0 + r.norm()) {
                    break;
                }
                *r -= step;
            }
            if r.im.abs() < 1e-13 * (1.0 + r.re.abs()) && self.eval_complex(Complex64::new(r.re, 0.0)).norm() <= self.eval_complex(*r).norm() {
                r.im = 0.0;
            }
        }
        z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        z
    }
}

/// The n-th cyclotomic polynomial, built as `(x^n − 1) / Π_{d|n, d<n} Φ_d`.
pub fn cyclotomic(n: u32) -> IntPoly {
    assert!(n >= 1, "cyclotomic index starts at 1");
    let mut xn = vec![BigInt::zero(); n as usize + 1];
    xn[0] = BigInt::from(-1);
    xn[n as usize] = BigInt::one();
    let mut p = IntPoly::new(xn);
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.exact_div(&cyclotomic(d)).expect("cyclotomic divisor");
    }
    p
}

/// Euler's totient, used to bound the cyclotomic search by degree.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// If `p` (primitive, squarefree or not) equals some Φ_n, returns n.
pub fn cyclotomic_index(p: &IntPoly) -> Option<u32> {
    let deg = p.degree()? as u32;
    if deg == 0 {
        return None;
    }
    // φ(n) ≥ sqrt(n/2), so n ≤ 2·deg² bounds the search
    let bound = 2 * deg * deg + 2;
    (1..=bound).filter(|&n| totient(n) == deg).find(|&n| cyclotomic(n) == p.primitive())
}

/// Writes `p` as `±Π Φ_n^{e_n}` if possible, returning `(n, e_n)` ascending.
pub fn cyclotomic_factorization(p: &IntPoly) -> Option<Vec<(u32, usize)>> {
    let mut rest = p.primitive();
    let deg = rest.degree()? as u32;
    let mut out = Vec::new();
    let bound = 2 * deg * deg + 2;
    for n in 1..=bound {
        if rest.degree() == Some(0) {
            break;
        }
        if totient(n) > rest.degree()? as u32 {
            continue;
        }
        let phi = cyclotomic(n);
        let mut e = 0;
        while let Some(q) = rest.exact_div(&phi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((n, e));
        }
    }
    (rest.degree() == Some(0) && rest.coeffs()[0].abs().is_one()).then_some(out)
}

pub(crate) fn to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            if !unit || i == 0 {
                s.push_str(&alloc::format!("{mag}"));
            }
            match i {
                0 => {}
                1 => s.push('x'),
                _ => s.push_str(&alloc::format!("x^{i}")),
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Polynomial over the rationals; used for division and gcd.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        Self::new(p.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (RatPoly::default(), self.clone());
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn monic(&self) -> RatPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let l = l.clone();
                RatPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn to_int(&self) -> Option<IntPoly> {
        if self.coeffs.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
    }

    /// Clears denominators and returns the primitive integer multiple.
    pub fn to_primitive_int(&self) -> IntPoly {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(self.coeffs.iter().map(|c| (c * &l).to_integer()).collect()).primitive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_reads_naturally() {
        let p = IntPoly::from_i64(&[-1, 2, 2, -2, -2, 1]);
        assert_eq!(alloc::format!("{p}"), "x^5 - 2x^4 - 2x^3 + 2x^2 + 2x - 1");
        assert_eq!(alloc::format!("{}", IntPoly::from_i64(&[3])), "3");
        assert_eq!(alloc::format!("{}", IntPoly::from_i64(&[0, -1])), "-x");
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_index(&IntPoly::from_i64(&[1, 0, 1])), Some(4));
        assert_eq!(cyclotomic_index(&IntPoly::from_i64(&[1, -3, 1])), None);
        assert_eq!(totient(36), 12);
    }

    #[test]
    fn squarefree_of_affine_char_poly() {
        // (x-1)^3 (x+1)
        let p = IntPoly::from_i64(&[-1, 2, 0, -2, 1]);
        let f = p.squarefree_factors();
        assert_eq!(
            f,
            vec![(IntPoly::from_i64(&[1, 1]), 1), (IntPoly::from_i64(&[-1, 1]), 3)]
        );
        assert_eq!(p.integer_roots(), vec![BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn exact_division() {
        let p = IntPoly::from_i64(&[1, -1, -3, -3, -1, 1]);
        let q = p.exact_div(&IntPoly::from_i64(&[1, 1])).unwrap();
        assert_eq!(q.mul(&IntPoly::from_i64(&[1, 1])), p);
        assert!(p.exact_div(&IntPoly::from_i64(&[-1, 1])).is_none());
    }

    #[test]
    fn aberth_finds_all_roots() {
        let p = IntPoly::from_i64(&[-1, 2, 2, -2, -2, 1]);
        let roots = p.complex_roots();
        assert_eq!(roots.len(), 5);
        for r in roots {
            assert!(p.eval_complex(r).norm() < 1e-10, "{r}");
        }
    }
}
