//! High-precision complex arithmetic for the closed-form solver.

use alloc::vec::Vec;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_bigint::{BigInt, Sign};
use num_complex::Complex64;

type F = FBig<HalfEven>;

/// Working precision in bits (about 77 decimal digits).
pub(crate) const PRECISION: usize = 256;

fn real(x: f64) -> F {
    F::try_from(x).expect("finite float").with_precision(PRECISION).value()
}

fn zero() -> F {
    F::ZERO.with_precision(PRECISION).value()
}

fn from_bigint(n: &BigInt) -> F {
    let (sign, digits) = n.to_u32_digits();
    let base = F::from(1u64 << 32).with_precision(PRECISION).value();
    let mut acc = zero();
    for d in digits.iter().rev() {
        acc = &acc * &base + F::from(*d);
    }
    if sign == Sign::Minus {
        -acc
    } else {
        acc
    }
}

#[derive(Clone, Debug)]
pub(crate) struct HComplex {
    re: F,
    im: F,
}

impl HComplex {
    pub fn zero() -> Self {
        HComplex { re: zero(), im: zero() }
    }

    pub fn one() -> Self {
        Self::from_f64(1.0)
    }

    pub fn from_f64(x: f64) -> Self {
        HComplex { re: real(x), im: zero() }
    }

    pub fn from_c64(z: Complex64) -> Self {
        HComplex { re: real(z.re), im: real(z.im) }
    }

    pub fn from_int(n: &BigInt) -> Self {
        HComplex { re: from_bigint(n), im: zero() }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }

    pub fn add(&self, o: &Self) -> Self {
        HComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        HComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let den = &o.re * &o.re + &o.im * &o.im;
        HComplex {
            re: (&self.re * &o.re + &self.im * &o.im) / &den,
            im: (&self.im * &o.re - &self.re * &o.im) / &den,
        }
    }

    /// |re| + |im|, enough for pivot selection.
    pub fn magnitude(&self) -> f64 {
        self.re.to_f64().value().abs() + self.im.to_f64().value().abs()
    }

    pub fn is_zero(&self) -> bool {
        self.re == F::ZERO && self.im == F::ZERO
    }
}

/// Newton iteration on an integer polynomial (ascending coefficients).
/// `root` should be a simple root of `coeffs`.
pub(crate) fn polish_root(coeffs: &[BigInt], root: Complex64, iterations: usize) -> HComplex {
    let cs: Vec<HComplex> = coeffs.iter().map(HComplex::from_int).collect();
    let mut z = HComplex::from_c64(root);
    for _ in 0..iterations {
        let mut p = HComplex::zero();
        let mut dp = HComplex::zero();
        for c in cs.iter().rev() {
            dp = dp.mul(&z).add(&p);
            p = p.mul(&z).add(c);
        }
        if dp.is_zero() {
            break;
        }
        z = z.sub(&p.div(&dp));
    }
    z
}

/// Solves the dense square system `a x = b` by Gaussian elimination with
/// partial pivoting. Returns `None` for a numerically singular matrix.
pub(crate) fn solve(mut a: Vec<Vec<HComplex>>, mut b: Vec<HComplex>) -> Option<Vec<HComplex>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].magnitude().total_cmp(&a[j][c].magnitude()))?;
        if a[p][c].is_zero() {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for i in c + 1..n {
            let f = a[i][c].div(&a[c][c]);
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a[i][j].sub(&f.mul(&a[c][j]));
                a[i][j] = v;
            }
            let v = b[i].sub(&f.mul(&b[c]));
            b[i] = v;
        }
    }
    let mut x = alloc::vec![HComplex::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i].clone();
        for j in i + 1..n {
            s = s.sub(&a[i][j].mul(&x[j]));
        }
        x[i] = s.div(&a[i][i]);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polishes_golden_ratio_past_double_precision() {
        // x^2 - x - 1
        let coeffs = [BigInt::from(-1), BigInt::from(-1), BigInt::from(1)];
        let phi = polish_root(&coeffs, Complex64::new(1.6, 0.0), 12);
        // phi^2 - phi - 1 evaluated in high precision is far below f64 epsilon
        let r = phi.mul(&phi).sub(&phi).sub(&HComplex::one());
        assert!(r.magnitude() < 1e-60);
        assert!((phi.to_c64().re - 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn big_integers_convert_exactly() {
        let n: BigInt = BigInt::from(3).pow(70);
        let h = HComplex::from_int(&n);
        let back = h.to_c64().re;
        assert!((back / 2.5031555049932416e33 - 1.0).abs() < 1e-15);
        assert_eq!(HComplex::from_int(&BigInt::from(-7)).to_c64().re, -7.0);
    }

    #[test]
    fn solves_small_system() {
        let a = alloc::vec![
            alloc::vec![HComplex::from_f64(0.0), HComplex::from_f64(2.0)],
            alloc::vec![HComplex::from_f64(1.0), HComplex::from_f64(1.0)],
        ];
        let b = alloc::vec![HComplex::from_f64(4.0), HComplex::from_f64(3.0)];
        let x = solve(a, b).unwrap();
        assert!((x[0].to_c64().re - 1.0).abs() < 1e-15);
        assert!((x[1].to_c64().re - 2.0).abs() < 1e-15);
    }
}
