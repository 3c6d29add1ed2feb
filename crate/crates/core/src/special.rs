//! Trigamma and inverse-square lattice sums.

use alloc::format;
use core::f64::consts::PI;

use crate::{Error, Result};

/// `Ψ(x) = d²/dx² ln Γ(x)`.
///
/// Shifts `x` up with `Ψ(x) = Ψ(x+1) + 1/x²` until `x ≥ 10`, then sums the
/// asymptotic series. Negative arguments are handled by the same recurrence.
pub fn trigamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::PoleEncountered(format!("trigamma({x})")));
    }
    if x <= 0.0 && x == libm::floor(x) {
        return Err(Error::PoleEncountered(format!("trigamma({x})")));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let z = 1.0 / x;
    let z2 = z * z;
    // 1/x + 1/2x² + Σ B_2k / x^{2k+1}
    let series = z
        * (1.0
            + z / 2.0
            + z2 * (1.0 / 6.0
                + z2 * (-1.0 / 30.0
                    + z2 * (1.0 / 42.0
                        + z2 * (-1.0 / 30.0
                            + z2 * (5.0 / 66.0 + z2 * (-691.0 / 2730.0 + z2 * (7.0 / 6.0))))))));
    Ok(acc + series)
}

/// `Σ_{n∈ℤ} (A + B n)^{−2} = π² / (B² sin²(π A/B))`.
pub fn inverse_square_lattice_sum(a: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::PoleEncountered(format!("lattice sum with B = 0 (A = {a})")));
    }
    let s = sin_pi(a / b);
    if s == 0.0 {
        return Err(Error::PoleEncountered(format!("lattice sum with A/B = {} integral", a / b)));
    }
    Ok(PI * PI / (b * b * s * s))
}

/// `sin(π x)`, exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * libm::round(x / 2.0);
    if r == libm::round(r) {
        return 0.0;
    }
    libm::sin(PI * r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trigamma_special_values() {
        assert!((trigamma(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        assert!((trigamma(0.5).unwrap() - PI * PI / 2.0).abs() < 1e-12);
        // Ψ(2) = π²/6 − 1
        assert!((trigamma(2.0).unwrap() - (PI * PI / 6.0 - 1.0)).abs() < 1e-12);
        assert!(trigamma(0.0).is_err());
        assert!(trigamma(-3.0).is_err());
        // reflection at a negative non-integer
        let x = -0.25;
        let lhs = trigamma(x).unwrap() + trigamma(1.0 - x).unwrap();
        assert!((lhs - PI * PI / sin_pi(x).powi(2)).abs() < 1e-9 * lhs);
    }

    #[test]
    fn reflection_identity() {
        let v = trigamma(0.3).unwrap() + trigamma(0.7).unwrap();
        assert!((v - PI * PI / sin_pi(0.3).powi(2)).abs() < 1e-9);
    }

    #[test]
    fn lattice_sums() {
        let v = inverse_square_lattice_sum(1.0, 3.0).unwrap();
        assert!((v - 4.0 * PI * PI / 27.0).abs() < 1e-12);
        assert!((inverse_square_lattice_sum(0.5, 1.0).unwrap() - PI * PI).abs() < 1e-12);
        assert_eq!(
            inverse_square_lattice_sum(0.7, 2.3).unwrap(),
            inverse_square_lattice_sum(-0.7, 2.3).unwrap()
        );
        assert!(inverse_square_lattice_sum(3.0, 1.5).is_err());
        assert!(inverse_square_lattice_sum(1.0, 0.0).is_err());
    }
}
