//! The rational map `psi(z) = z - 1/z` on the Riemann sphere, its increasing
//! real inverse branch `phi`, iterated application, and sampling-based disc
//! containment certificates.
//!
//! `psi` is total on the sphere with `psi(0) = psi(inf) = inf`. Iteration
//! routines collapse any magnitude above [`OVERFLOW_THRESHOLD`] to the point
//! at infinity, and once there the orbit stays there.

use crate::arith::{Complex, Scalar};
use crate::error::{Error, Result};
use crate::seq::LambdaTable;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Finite magnitudes above this are treated as the point at infinity.
/// Squaring during `1/z` stays representable well past this, and no
/// legitimate finite value in this domain comes anywhere near it.
pub const OVERFLOW_THRESHOLD: f64 = 1e150;

const OVERFLOW_NORM_SQ: f64 = 1e300;

/// A point of the Riemann sphere: a finite complex number or infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtComplex<S: Scalar> {
    Finite(Complex<S>),
    Infinity,
}

impl<S: Scalar> ExtComplex<S> {
    pub fn from_f64(re: f64, im: f64) -> Self {
        ExtComplex::Finite(Complex::from_f64(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn finite(&self) -> Option<Complex<S>> {
        match self {
            ExtComplex::Finite(w) => Some(*w),
            ExtComplex::Infinity => None,
        }
    }

    /// Wraps a raw complex value, collapsing overflow and non-finite
    /// components to infinity.
    pub fn collapse(w: Complex<S>) -> Self {
        if !w.is_finite() || w.norm_sq().to_f64() > OVERFLOW_NORM_SQ {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite(w)
        }
    }
}

/// One application of `z - 1/z`, total on the sphere.
pub fn psi<S: Scalar>(z: ExtComplex<S>) -> ExtComplex<S> {
    match z {
        ExtComplex::Infinity => ExtComplex::Infinity,
        ExtComplex::Finite(w) => {
            let nsq = w.norm_sq();
            if nsq == S::ZERO {
                return ExtComplex::Infinity;
            }
            // 1/w = conj(w) / |w|^2
            let inv = Complex::new(w.re / nsq, -w.im / nsq);
            ExtComplex::collapse(w - inv)
        }
    }
}

/// `n`-fold composition of [`psi`].
pub fn psi_iter<S: Scalar>(z: ExtComplex<S>, n: usize) -> ExtComplex<S> {
    let mut w = z;
    for _ in 0..n {
        if w.is_infinity() {
            return ExtComplex::Infinity;
        }
        w = psi(w);
    }
    w
}

/// The positive root of `psi(y) = x`: `phi(x) = (x + sqrt(x^2 + 4)) / 2`,
/// strictly increasing on the whole real line.
///
/// For negative `x` the naive form subtracts nearly equal quantities, so the
/// algebraically identical `2 / (sqrt(x^2 + 4) - x)` is used there.
pub fn phi<S: Scalar>(x: S) -> S {
    let four = S::from_f64(4.0);
    let root = (x * x + four).sqrt();
    if x >= S::ZERO {
        (x + root) * S::from_f64(0.5)
    } else {
        S::from_f64(2.0) / (root - x)
    }
}

/// `k`-fold composition of [`phi`].
pub fn phi_iter<S: Scalar>(x: S, k: usize) -> S {
    let mut y = x;
    for _ in 0..k {
        y = phi(y);
    }
    y
}

/// A disc `D(lambda[n], c * gap)` whose image under `psi` is certified to
/// land in `D(lambda[n-1], c * gap')`, where the gaps are
/// `lambda_gap(n, width)` and `lambda_gap(n-1, width)`.
#[derive(Clone, Copy, Debug)]
pub struct DiscCert {
    n: usize,
    width: usize,
    c: f64,
    center: f64,
    radius: f64,
}

impl DiscCert {
    /// Requires `n > width >= 1` and `0 < c <= 1`.
    pub fn new(n: usize, width: usize, c: f64, table: &LambdaTable<f64>) -> Result<Self> {
        if width == 0 || n <= width {
            return Err(Error::InvalidArgument(format!(
                "disc certificate requires n > width >= 1 (got n={n}, width={width})"
            )));
        }
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "disc certificate requires 0 < c <= 1 (got c={c})"
            )));
        }
        if n > table.nmax() {
            return Err(Error::IndexOutOfRange {
                index: n,
                limit: table.nmax(),
            });
        }
        let radius = c * table.lambda_gap(n, width)?;
        Ok(DiscCert {
            n,
            width,
            c,
            center: table.lambda(n),
            radius,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn width(&self) -> usize {
        self.width
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn center(&self) -> f64 {
        self.center
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Draws `samples` pseudo-random points in the certificate's open disc and
/// checks that every image under `psi` lies in the target disc one level
/// down, with a small boundary slack for roundoff.
///
/// Sampling is seeded and deterministic; this is an empirical check of an
/// analytically guaranteed inclusion, not a proof.
pub fn check_disc_step(
    cert: &DiscCert,
    table: &LambdaTable<f64>,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    let n = cert.n;
    let target_center = table.lambda(n - 1);
    let target_radius = cert.c * table.lambda_gap(n - 1, cert.width.min(n - 1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const SLACK: f64 = 1e-12;
    for _ in 0..samples {
        // uniform over the disc: sqrt-radius times a uniform angle
        let r = cert.radius * rng.gen::<f64>().sqrt();
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        let z = Complex::<f64>::new(cert.center + r * theta.cos(), r * theta.sin());
        match psi(ExtComplex::Finite(z)) {
            ExtComplex::Infinity => return Ok(false),
            ExtComplex::Finite(w) => {
                let dist = (w - Complex::new(target_center, 0.0)).norm();
                if dist >= target_radius + SLACK {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c64(re: f64, im: f64) -> ExtComplex<f64> {
        ExtComplex::from_f64(re, im)
    }

    fn finite(z: ExtComplex<f64>) -> Complex<f64> {
        z.finite().expect("expected a finite value")
    }

    #[test]
    fn psi_point_values() {
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        let w = finite(psi(c64(golden, 0.0)));
        assert!((w.re - 1.0).abs() < 1e-15 && w.im == 0.0);

        let w = finite(psi(c64(1.0, 0.0)));
        assert_eq!((w.re, w.im), (0.0, 0.0));

        // psi(i) = 2i exactly in binary arithmetic
        let w = finite(psi(c64(0.0, 1.0)));
        assert_eq!((w.re, w.im), (0.0, 2.0));

        assert!(psi(c64(0.0, 0.0)).is_infinity());
        assert!(psi::<f64>(ExtComplex::Infinity).is_infinity());
    }

    #[test]
    fn overflow_collapses_and_sticks() {
        let big = c64(1e200, 0.0);
        assert!(psi(big).is_infinity());
        assert!(psi_iter(big, 5).is_infinity());
        // near-zero blows up to infinity on the next step
        assert!(psi(c64(1e-301, 0.0)).is_infinity());
    }

    #[test]
    fn phi_point_values() {
        assert_eq!(phi(0.0f64), 1.0);
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((phi(1.0f64) - golden).abs() < 1e-15);
        let t = LambdaTable::<f64>::build(500).unwrap();
        for n in (0..500).step_by(13) {
            let next = phi(t.lambda(n));
            assert!(
                (next - t.lambda(n + 1)).abs() <= 1e-14 * t.lambda(n + 1).max(1.0),
                "phi chain off at {n}"
            );
        }
    }

    #[test]
    fn phi_iter_reproduces_table() {
        let t = LambdaTable::<f64>::build(50).unwrap();
        for k in 0..=50usize {
            let v = phi_iter(0.0f64, k);
            let rel = (v - t.lambda(k)).abs() / t.lambda(k).max(1.0);
            assert!(rel < 1e-13, "phi_iter(0, {k}) off by {rel}");
        }
        // two steps by hand
        assert!((phi_iter(0.0f64, 2) - (1.0 + 5.0f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn orbit_returns_to_zero() {
        let t = LambdaTable::<f64>::build(51).unwrap();
        for n in 1..=50usize {
            let end = psi_iter(c64(t.lambda(n), 0.0), n);
            let w = finite(end);
            assert!(
                w.norm() <= 1e-10 * n as f64,
                "orbit from lambda[{n}] ends at {:?}",
                w
            );
        }
    }

    #[test]
    fn identity_at_zero_iterations() {
        let z = c64(2.5, -0.75);
        assert_eq!(psi_iter(z, 0), z);
    }

    #[test]
    fn pinned_orbit_from_two_i() {
        // three steps from 2i stay on the imaginary axis:
        // 2 -> 2.5 -> 2.9 -> 2.9 + 1/2.9
        let w = finite(psi_iter(c64(0.0, 2.0), 3));
        assert!(w.re.abs() < 1e-15);
        assert!((w.im - 3.2448275862068966).abs() < 1e-15);
    }

    #[test]
    fn escape_off_the_real_axis() {
        // Escape toward infinity is slow (|orbit| ~ sqrt(2n)), so a deep
        // iteration is needed before a comfortable threshold holds.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..8 {
            let re = rand::Rng::gen_range(&mut rng, -10.0..10.0);
            let im_mag = rand::Rng::gen_range(&mut rng, 1.0..10.0);
            let im = if rand::Rng::gen::<bool>(&mut rng) {
                im_mag
            } else {
                -im_mag
            };
            match psi_iter(c64(re, im), 1_000_000) {
                ExtComplex::Infinity => {}
                ExtComplex::Finite(w) => {
                    assert!(w.norm() > 1e3, "slow escape from {re}+{im}i: {:?}", w);
                }
            }
        }
    }

    #[test]
    fn disc_certificates_hold() {
        let t = LambdaTable::<f64>::build(300).unwrap();
        for &(n, width, c) in &[(10usize, 3usize, 0.5f64), (10, 3, 1.0), (200, 20, 0.25)] {
            let cert = DiscCert::new(n, width, c, &t).unwrap();
            assert!(cert.radius() > 0.0);
            assert!(check_disc_step(&cert, &t, 10_000, 7).unwrap());
        }
        // the center maps to the next center, strictly inside
        let cert = DiscCert::new(10, 3, 0.5, &t).unwrap();
        let image = finite(psi(c64(cert.center(), 0.0)));
        let dist = (image.re - t.lambda(9)).abs();
        assert!(dist < 0.5 * t.lambda_gap(9, 3).unwrap());
        assert!(dist < 1e-14);
    }

    #[test]
    fn disc_certificate_rejects_bad_parameters() {
        let t = LambdaTable::<f64>::build(50).unwrap();
        assert!(DiscCert::new(3, 3, 0.5, &t).is_err()); // needs n > width
        assert!(DiscCert::new(10, 0, 0.5, &t).is_err());
        assert!(DiscCert::new(10, 3, 0.0, &t).is_err());
        assert!(DiscCert::new(10, 3, 1.5, &t).is_err());
        assert!(DiscCert::new(100, 3, 0.5, &t).is_err()); // beyond the table
    }

    proptest! {
        #[test]
        fn phi_inverts_psi_on_the_line(x in -1e3f64..1e3) {
            let y = phi(x);
            let back = y - 1.0 / y;
            prop_assert!((back - x).abs() <= 1e-13 * x.abs().max(1.0));
        }

        #[test]
        fn psi_is_odd(re in -50.0f64..50.0, im in -50.0f64..50.0) {
            prop_assume!(re != 0.0 || im != 0.0);
            let a = finite(psi(c64(re, im)));
            let b = finite(psi(c64(-re, -im)));
            prop_assert!((a.re + b.re).abs() <= 1e-12 * a.norm().max(1.0));
            prop_assert!((a.im + b.im).abs() <= 1e-12 * a.norm().max(1.0));
        }

        #[test]
        fn psi_increases_on_the_positive_half_line(x in 1e-3f64..1e3, bump in 1e-3f64..10.0) {
            let (a, b) = (x, x + bump);
            let pa = a - 1.0 / a;
            let pb = b - 1.0 / b;
            prop_assert!(pa < pb);
        }

        #[test]
        fn upper_half_plane_is_invariant(re in -100.0f64..100.0, im in 1e-6f64..100.0) {
            let w = finite(psi(c64(re, im)));
            prop_assert!(w.im > 0.0);
        }

        #[test]
        fn psi_iter_inverts_phi_iter(x in 0.0f64..10.0, k in 0usize..20) {
            let lifted = phi_iter(x, k);
            match psi_iter::<f64>(ExtComplex::from_f64(lifted, 0.0), k) {
                ExtComplex::Finite(w) => {
                    prop_assert!((w.re - x).abs() <= 1e-10);
                    prop_assert!(w.im == 0.0);
                }
                ExtComplex::Infinity => prop_assert!(false, "unexpected overflow"),
            }
        }
    }
}
