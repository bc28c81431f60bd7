//! Arithmetic backends and the small complex type built on them.
//!
//! Everything numerical in this crate is generic over [`Scalar`], with two
//! implementations: plain `f64` (standard precision, ~15 decimal digits) and
//! [`Dd`] (pairwise-compensated double-double, ~31 digits) for oracle
//! generation and precision-hungry checks.

mod dd;

pub use dd::Dd;

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Real arithmetic backend.
pub trait Scalar:
    Copy
    + Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Default
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;
    const ONE: Self;
    /// Roundoff unit of the format.
    const EPSILON: Self;
    /// Significant decimal digits carried by the format.
    const PRECISION_DIGITS: u32;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn from_usize(n: usize) -> Self {
        // Exact for the table sizes used here (well below 2^53).
        Self::from_f64(n as f64)
    }
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn recip(self) -> Self;
    fn max(self, other: Self) -> Self;
    fn min(self, other: Self) -> Self;
    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    const ZERO: f64 = 0.0;
    const ONE: f64 = 1.0;
    const EPSILON: f64 = f64::EPSILON;
    const PRECISION_DIGITS: u32 = 15;

    #[inline]
    fn from_f64(x: f64) -> f64 {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    #[inline]
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    #[inline]
    fn exp(self) -> f64 {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> f64 {
        f64::ln(self)
    }
    #[inline]
    fn ln_1p(self) -> f64 {
        f64::ln_1p(self)
    }
    #[inline]
    fn sin_cos(self) -> (f64, f64) {
        f64::sin_cos(self)
    }
    #[inline]
    fn recip(self) -> f64 {
        1.0 / self
    }
    #[inline]
    fn max(self, other: f64) -> f64 {
        f64::max(self, other)
    }
    #[inline]
    fn min(self, other: f64) -> f64 {
        f64::min(self, other)
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Scalar for Dd {
    const ZERO: Dd = Dd::ZERO;
    const ONE: Dd = Dd::ONE;
    const EPSILON: Dd = Dd::EPSILON;
    const PRECISION_DIGITS: u32 = 31;

    #[inline]
    fn from_f64(x: f64) -> Dd {
        Dd::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn abs(self) -> Dd {
        Dd::abs(self)
    }
    #[inline]
    fn sqrt(self) -> Dd {
        Dd::sqrt(self)
    }
    #[inline]
    fn exp(self) -> Dd {
        Dd::exp(self)
    }
    #[inline]
    fn ln(self) -> Dd {
        Dd::ln(self)
    }
    #[inline]
    fn ln_1p(self) -> Dd {
        Dd::ln_1p(self)
    }
    #[inline]
    fn sin_cos(self) -> (Dd, Dd) {
        Dd::sin_cos(self)
    }
    #[inline]
    fn recip(self) -> Dd {
        Dd::recip(self)
    }
    #[inline]
    fn max(self, other: Dd) -> Dd {
        Dd::max(self, other)
    }
    #[inline]
    fn min(self, other: Dd) -> Dd {
        Dd::min(self, other)
    }
    #[inline]
    fn is_finite(self) -> bool {
        Dd::is_finite(self)
    }
}

/// Complex number over a [`Scalar`] backend.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex<S: Scalar> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> Complex<S> {
    pub const fn new(re: S, im: S) -> Self {
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Complex {
            re: S::from_f64(re),
            im: S::from_f64(im),
        }
    }

    pub fn zero() -> Self {
        Complex {
            re: S::ZERO,
            im: S::ZERO,
        }
    }

    pub fn from_real(re: S) -> Self {
        Complex { re, im: S::ZERO }
    }

    #[inline]
    pub fn norm_sq(self) -> S {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn norm(self) -> S {
        self.norm_sq().sqrt()
    }

    pub fn conj(self) -> Self {
        Complex {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// exp(z) = exp(re) (cos im + i sin im)
    pub fn exp(self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Complex {
            re: m * c,
            im: m * s,
        }
    }

    pub fn scale(self, k: S) -> Self {
        Complex {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn to_f64_pair(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl<S: Scalar> Add for Complex<S> {
    type Output = Complex<S>;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Complex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<S: Scalar> Sub for Complex<S> {
    type Output = Complex<S>;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Complex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<S: Scalar> Mul for Complex<S> {
    type Output = Complex<S>;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Complex {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<S: Scalar> Div for Complex<S> {
    type Output = Complex<S>;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let d = rhs.norm_sq();
        Complex {
            re: (self.re * rhs.re + self.im * rhs.im) / d,
            im: (self.im * rhs.re - self.re * rhs.im) / d,
        }
    }
}

impl<S: Scalar> Neg for Complex<S> {
    type Output = Complex<S>;
    #[inline]
    fn neg(self) -> Self {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Neumaier-compensated running sum.
///
/// Keeps the relative error of long positive sums at the roundoff unit
/// instead of growing with the term count.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<S: Scalar> {
    sum: S,
    carry: S,
}

impl<S: Scalar> CompensatedSum<S> {
    pub fn new() -> Self {
        CompensatedSum {
            sum: S::ZERO,
            carry: S::ZERO,
        }
    }

    #[inline]
    pub fn add(&mut self, x: S) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> S {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_div_and_mul_invert() {
        let a = Complex::<f64>::new(3.5, -1.25);
        let b = Complex::<f64>::new(-0.75, 2.0);
        let q = a / b;
        let back = q * b;
        assert!((back.re - a.re).abs() < 1e-14 && (back.im - a.im).abs() < 1e-14);
    }

    #[test]
    fn complex_exp_matches_euler() {
        let z = Complex::<f64>::new(0.0, std::f64::consts::PI);
        let e = z.exp();
        assert!((e.re + 1.0).abs() < 1e-15 && e.im.abs() < 1e-15);
    }

    #[test]
    fn complex_exp_dd_agrees_with_f64() {
        let z64 = Complex::<f64>::new(0.3, -1.7);
        let zdd = Complex::<Dd>::from_f64(0.3, -1.7);
        let (er, ei) = zdd.exp().to_f64_pair();
        let e = z64.exp();
        assert!((er - e.re).abs() < 1e-15 && (ei - e.im).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_beats_plain() {
        // 10^7 copies of a value whose plain sum drifts
        let x = 0.1f64;
        let mut c = CompensatedSum::<f64>::new();
        let mut plain = 0.0f64;
        for _ in 0..1_000_000 {
            c.add(x);
            plain += x;
        }
        let exact = 100_000.0;
        assert!((c.value() - exact).abs() <= 1e-11);
        assert!((c.value() - exact).abs() <= (plain - exact).abs());
    }
}
