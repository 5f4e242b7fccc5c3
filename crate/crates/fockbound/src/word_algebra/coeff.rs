//! Scalar rings for the symbolic engine.
//!
//! The default ring is `Complex64`. When every input scalar lies in the
//! Gaussian rationals (uniform dyadic weights, fourth roots of unity), the
//! exact ring `GaussianRational` makes normal forms and eigen checks testable
//! with exact equality.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt::Debug;

/// Exact complex scalar with rational real and imaginary parts.
pub type GaussianRational = num_complex::Complex<BigRational>;

/// Coefficient ring of the symbolic algebra.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn div(&self, other: &Self) -> Self;

    fn from_real(x: f64) -> Self;
    fn to_c64(&self) -> Complex64;

    /// Squared modulus as a double, for tolerance checks.
    fn norm_sqr_f64(&self) -> f64;

    /// True when the coefficient should be dropped from a term map:
    /// |c| < 1e-14 in float mode, exactly zero in exact mode.
    fn is_negligible(&self) -> bool;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    /// Total order used only for canonical term ordering.
    fn key_cmp(&self, other: &Self) -> Ordering;

    fn abs_f64(&self) -> f64 {
        self.norm_sqr_f64().sqrt()
    }
}

const FLOAT_ZERO_EPS: f64 = 1e-14;

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn norm_sqr_f64(&self) -> f64 {
        self.norm_sqr()
    }
    fn is_negligible(&self) -> bool {
        self.norm() < FLOAT_ZERO_EPS
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_one(&self) -> bool {
        self.re == 1.0 && self.im == 0.0
    }
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.re
            .total_cmp(&other.re)
            .then(self.im.total_cmp(&other.im))
    }
}

impl Coeff for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn from_real(x: f64) -> Self {
        let r = BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        GaussianRational::new(r, BigRational::zero())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn norm_sqr_f64(&self) -> f64 {
        let n = &self.re * &self.re + &self.im * &self.im;
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn is_negligible(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.re
            .cmp(&other.re)
            .then_with(|| self.im.cmp(&other.im))
    }
}

/// Exact rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact Gaussian rational from integer pairs (re_num/re_den, im_num/im_den).
pub fn gauss(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussianRational {
    GaussianRational::new(ratio(re_num, re_den), ratio(im_num, im_den))
}

/// Fourth root of unity i^p as an exact Gaussian rational.
pub fn gauss_i_power(p: u32) -> GaussianRational {
    match p % 4 {
        0 => gauss(1, 1, 0, 1),
        1 => gauss(0, 1, 1, 1),
        2 => gauss(-1, 1, 0, 1),
        _ => gauss(0, 1, -1, 1),
    }
}

/// Checks |c| = 1 exactly in the exact ring, within `tol` in the float ring.
pub fn is_unit_modulus<C: Coeff>(c: &C, tol: f64) -> bool {
    let one = C::one();
    let prod = c.mul(&c.conj());
    if prod == one {
        return true;
    }
    (prod.sub(&one)).abs_f64() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rational_field_ops() {
        let i = gauss_i_power(1);
        assert_eq!(i.mul(&i), gauss(-1, 1, 0, 1));
        assert_eq!(i.mul(&i.conj()), Coeff::one());
        let half = gauss(1, 2, 0, 1);
        assert_eq!(half.add(&half), Coeff::one());
        assert_eq!(Coeff::div(&Coeff::one(), &i), i.conj());
    }

    #[test]
    fn unit_modulus_checks() {
        assert!(is_unit_modulus(&gauss_i_power(3), 0.0));
        assert!(!is_unit_modulus(&gauss(1, 2, 0, 1), 1e-12));
        let l = Complex64::from_polar(1.0, 0.77);
        assert!(is_unit_modulus(&l, 1e-12));
    }
}
