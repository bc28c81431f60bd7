//! Double-double arithmetic: an unevaluated sum of two `f64`s giving roughly
//! 31 significant decimal digits.
//!
//! Used as the extended-precision backend for oracle generation and
//! precision-hungry checks. The error-free kernels (`two_sum`, `two_prod`)
//! follow Dekker/Knuth; `two_prod` relies on a fused multiply-add.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Sum of two doubles with exact error term (no ordering requirement).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Sum assuming |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Product with exact error term, via FMA.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// A number stored as `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

// ln 2 and pi/2 split into two doubles (hi = nearest f64, lo = remainder).
const LN2_HI: f64 = std::f64::consts::LN_2;
const LN2_LO: f64 = 2.319_046_813_846_299_6e-17;
const FRAC_PI_2_HI: f64 = std::f64::consts::FRAC_PI_2;
const FRAC_PI_2_LO: f64 = 6.123_233_995_736_766e-17;

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// 2^-104, the roundoff unit of the format.
    pub const EPSILON: Dd = Dd {
        hi: 4.930_380_657_631_324e-32,
        lo: 0.0,
    };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest f64 (the high word, since the pair is normalized).
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    fn mul_pow2(self, k: f64) -> Self {
        // k must be a power of two; exact scaling.
        Dd {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        // One Newton correction on the f64 estimate doubles its accuracy.
        let x = self.hi.sqrt();
        let t = Dd::from_f64(x);
        let diff = self - t * t;
        t + Dd::from_f64(diff.hi / (2.0 * x))
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -709.0 {
            return Dd::ZERO;
        }
        // exp(x) = 2^m * exp(r),  r = x - m ln2,  |r| <= ln2/2,
        // then exp(r) = exp(r/64)^64 with a short Taylor sum for exp(r/64).
        let m = (self.hi / LN2_HI).round();
        let r = self - Dd::new(LN2_HI, LN2_LO) * Dd::from_f64(m);
        let rs = r.mul_pow2(1.0 / 64.0);
        // Taylor of exp(rs) - 1 for |rs| <= 0.0055.
        let mut term = rs;
        let mut sum = rs;
        for i in 2..=14u32 {
            term = term * rs / Dd::from_f64(f64::from(i));
            sum += term;
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        // Undo the scaling: (1+s)^2 - 1 = s(2+s), six times.
        let mut s = sum;
        for _ in 0..6 {
            s = s * (Dd::from_f64(2.0) + s);
        }
        let e = Dd::ONE + s;
        let scale = f64::powi(2.0, m as i32);
        Dd {
            hi: e.hi * scale,
            lo: e.lo * scale,
        }
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::from_f64(if self.hi == 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            });
        }
        // Newton on exp(x) = a starting from the f64 logarithm.
        let mut x = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            x = x + self * (-x).exp() - Dd::ONE;
        }
        x
    }

    /// ln(1 + x), accurate for tiny |x|.
    pub fn ln_1p(self) -> Self {
        if self.hi.abs() < 1e-4 {
            // Alternating series; converges in <= 9 terms here.
            let mut term = self;
            let mut sum = self;
            let mut i = 2.0f64;
            loop {
                term *= -self;
                let contrib = term / Dd::from_f64(i);
                sum += contrib;
                if contrib.hi.abs() < 1e-40 || i > 12.0 {
                    return sum;
                }
                i += 1.0;
            }
        } else {
            (Dd::ONE + self).ln()
        }
    }

    pub fn sin_cos(self) -> (Self, Self) {
        // Reduce modulo pi/2; adequate for the moderate arguments used here.
        let j = (self.hi / FRAC_PI_2_HI).round();
        let r = self - Dd::new(FRAC_PI_2_HI, FRAC_PI_2_LO) * Dd::from_f64(j);
        let (s, c) = sin_cos_taylor(r);
        match (j as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self < other {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }
}

/// Taylor sin/cos for |r| <= pi/4.
fn sin_cos_taylor(r: Dd) -> (Dd, Dd) {
    let r2 = r * r;
    let mut term = r;
    let mut sin = r;
    let mut i = 1.0f64;
    loop {
        term = term * r2 / Dd::from_f64(-((i + 1.0) * (i + 2.0)));
        sin += term;
        i += 2.0;
        if term.hi.abs() < 1e-36 || i > 40.0 {
            break;
        }
    }
    let mut term = Dd::ONE;
    let mut cos = Dd::ONE;
    let mut i = 0.0f64;
    loop {
        term = term * r2 / Dd::from_f64(-((i + 1.0) * (i + 2.0)));
        cos += term;
        i += 2.0;
        if term.hi.abs() < 1e-36 || i > 40.0 {
            break;
        }
    }
    (sin, cos)
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, e1) = two_sum(self.hi, rhs.hi);
        let (s2, e2) = two_sum(self.lo, rhs.lo);
        let (s1, e1) = quick_two_sum(s1, e1 + s2);
        let (hi, lo) = quick_two_sum(s1, e1 + e2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, rhs: Dd) {
        *self = *self + rhs;
    }
}
impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, rhs: Dd) {
        *self = *self - rhs;
    }
}
impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, rhs: Dd) {
        *self = *self * rhs;
    }
}
impl DivAssign for Dd {
    #[inline]
    fn div_assign(&mut self, rhs: Dd) {
        *self = *self / rhs;
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hi)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(x: Dd, hi: f64, lo: f64, tol: f64) {
        let diff = (x - Dd::new(hi, lo)).abs();
        let scale = hi.abs().max(1e-300);
        assert!(
            diff.to_f64() <= tol * scale,
            "got {:?}, want ({}, {}), rel diff {}",
            x,
            hi,
            lo,
            diff.to_f64() / scale
        );
    }

    // Reference pairs below were produced by splitting 36-digit values into
    // nearest-double + remainder.

    #[test]
    fn sqrt_two() {
        let r = Dd::from_f64(2.0).sqrt();
        // 1.41421356237309504880168872420969808
        assert_close(r, std::f64::consts::SQRT_2, -9.667293313452913e-17, 1e-30);
        let back = r * r - Dd::from_f64(2.0);
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_one() {
        // 2.71828182845904523536028747135266250
        assert_close(
            Dd::ONE.exp(),
            std::f64::consts::E,
            1.4456468917292502e-16,
            1e-29,
        );
    }

    #[test]
    fn exp_small_and_negative() {
        // exp(0.1): f64 word must match the libm value, and ln must invert it.
        let e = Dd::from_f64(0.1).exp();
        assert!((e.to_f64() - 0.1f64.exp()).abs() <= 3e-16);
        assert!((e.ln() - Dd::from_f64(0.1)).abs().to_f64() < 1e-30);
        // exp(-20) = 2.06115362243855782796594038016e-9
        let e = Dd::from_f64(-20.0).exp();
        assert!((e.to_f64() - 2.061153622438558e-9).abs() < 1e-23);
        // exp(5) = 148.413159102576603421115580040552
        let e5 = Dd::from_f64(5.0).exp();
        assert!((e5.to_f64() - 148.4131591025766).abs() < 1e-12);
        assert!((e5.ln() - Dd::from_f64(5.0)).abs().to_f64() < 1e-29);
    }

    #[test]
    fn ln_two() {
        // 0.693147180559945309417232121458176568
        assert_close(Dd::from_f64(2.0).ln(), LN2_HI, LN2_LO, 1e-29);
        // round trip
        let x = Dd::from_f64(1.5);
        assert!((x.ln().exp() - x).abs().to_f64() < 1e-30);
    }

    #[test]
    fn ln_1p_tiny() {
        // log1p(1e-8) = 9.99999995000000033333333083333335333e-9
        let r = Dd::from_f64(1e-8).ln_1p();
        assert!((r.to_f64() - 1e-8f64.ln_1p()).abs() < 1e-24);
        // round trip through exp (an independent code path)
        let back = r.exp() - Dd::ONE;
        assert!(
            ((back - Dd::from_f64(1e-8)) / Dd::from_f64(1e-8))
                .abs()
                .to_f64()
                < 1e-22
        );
        // the boundary with the general-ln branch must be seamless
        let a = Dd::from_f64(1.0001e-4).ln_1p();
        let b = (Dd::ONE + Dd::from_f64(1.0001e-4)).ln();
        assert!((a - b).abs().to_f64() < 1e-28);
    }

    #[test]
    fn sin_cos_one() {
        let (s, c) = Dd::ONE.sin_cos();
        // sin 1 = 0.841470984807896506652502321630299
        // cos 1 = 0.540302305868139717400936607442976604
        assert!((s.to_f64() - 0.8414709848078965).abs() < 1e-16);
        assert!((c.to_f64() - 0.5403023058681398).abs() < 1e-16);
        let unit = s * s + c * c - Dd::ONE;
        assert!(unit.to_f64().abs() < 1e-30);
    }

    #[test]
    fn division_round_trip() {
        let a = Dd::from_f64(3.0).sqrt();
        let b = Dd::from_f64(7.0).ln();
        let q = a / b;
        assert!(((q * b - a) / a).abs().to_f64() < 1e-30);
    }

    #[test]
    fn ordering_uses_low_word() {
        let a = Dd::new(1.0, 1e-20);
        let b = Dd::new(1.0, -1e-20);
        assert!(b < a);
        assert!(a > Dd::ONE && b < Dd::ONE);
    }
}
