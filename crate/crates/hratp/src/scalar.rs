//! Scalar abstraction shared by the floating-point and exact-rational paths.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::Rational;

/// Field element used by every generic routine in the crate.
///
/// Implemented for `f64` (working precision) and `rug::Rational` (exact).
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + FromStr
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact conversion for `Rational` (the binary value of `v`), identity for `f64`.
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// True when arithmetic never rounds.
    fn is_exact() -> bool;

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn from_f64(v: f64) -> Self {
        Rational::from_f64(v).expect("finite f64")
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn is_exact() -> bool {
        true
    }
}

/// Shorthand for an exact rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}
