use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Float, Rational};

/// Real arithmetic shared by the working-precision and multiprecision dense routines.
///
/// Constants are created from an existing value so multiprecision numbers keep their
/// precision.
pub trait Real:
    Clone
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn lit(&self, v: f64) -> Self;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Unit roundoff of this value's precision.
    fn epsilon(&self) -> Self;

    fn is_zero(&self) -> bool {
        *self == self.lit(0.0)
    }
}

impl Real for f64 {
    fn lit(&self, v: f64) -> Self {
        v
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn epsilon(&self) -> Self {
        f64::EPSILON / 2.0
    }
}

impl Real for Float {
    fn lit(&self, v: f64) -> Self {
        Float::with_val(self.prec(), v)
    }
    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }
    fn abs(&self) -> Self {
        self.clone().abs()
    }
    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }
    fn epsilon(&self) -> Self {
        Float::with_val(self.prec(), 1u32) >> self.prec()
    }
}

/// Binary precision giving at least `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

pub fn to_float(v: &Rational, bits: u32) -> Float {
    Float::with_val(bits, v)
}
