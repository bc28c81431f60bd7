//! Evaluation of the Bernstein transform `f` and Mellin transform `F` of the
//! fixed-point measure anywhere in the complex plane.
//!
//! The scheme iterates `psi(z) = z - 1/z` on two interpolation seeds built
//! from the lambda table,
//!
//! ```text
//! backward: lambda[n] * (lambda[n]   / lambda[n-1])^z
//! forward:  lambda[n] * (lambda[n+1] / lambda[n]  )^z
//! ```
//!
//! both of which converge to `f(z)` under `n`-fold iteration, uniformly on
//! compact sets. The raw iterates converge only like `1/n`, with an error
//! expansion `C/n + c ln(n)/n^2 + d/n^2 + ...` (measured), so the evaluator
//! extrapolates iterates at doubling depths with a ladder whose elimination
//! factors `2, 4, 4, 8, 8, ...` match that expansion. The forward-route
//! extrapolation is the returned value; the backward route supplies an
//! independent limit whose distance from it forms the error proxy.
//!
//! On the real axis the two raw iterates bracket `f(s)` for `0 < s <= 1`,
//! which [`certified_bracket`] and [`eval_bernstein_real`] expose together
//! with the explicit gap bound [`seed_gap_bound`].

use crate::arith::{Complex, Scalar};
use crate::dynamics::{phi_iter, psi, ExtComplex, OVERFLOW_THRESHOLD};
use crate::error::{Error, Result};
use crate::seq::LambdaTable;

/// Orbit points closer to the origin than this (before the final step) mark
/// the evaluation as pole-limited. The closest approach at a pole is floored
/// by the truncation error of the seed, so thresholds far below ~1e-3 can
/// never fire in practice.
pub const POLE_PROXIMITY_SCALE: f64 = 1e-3;

const POLE_PROXIMITY_NORM_SQ: f64 = POLE_PROXIMITY_SCALE * POLE_PROXIMITY_SCALE;
const OVERFLOW_NORM_SQ: f64 = OVERFLOW_THRESHOLD * OVERFLOW_THRESHOLD;

/// Elimination factors for the depth-doubling extrapolation ladder; the
/// repeated entries absorb the logarithmic terms of the error expansion.
const LADDER_FACTORS: [f64; 11] = [2.0, 4.0, 4.0, 8.0, 8.0, 16.0, 16.0, 32.0, 32.0, 64.0, 64.0];

/// Tuning knobs for adaptive evaluation.
#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    /// Target for the error proxy.
    pub tol: f64,
    /// Smallest iteration depth considered.
    pub n_start: usize,
    /// Depth ceiling; the table must extend one entry past it.
    pub n_max: usize,
    /// Margin `c` in `(0, 1]`; evaluation at `z` starts no shallower than
    /// `|z| / c` so the seed stays inside the certified disc chain.
    pub c_margin: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            tol: 1e-10,
            n_start: 16,
            n_max: 1 << 20,
            c_margin: 0.25,
        }
    }
}

impl EvalConfig {
    fn validate(&self) -> Result<()> {
        if self.n_start < 2 || self.n_start > self.n_max {
            return Err(Error::InvalidArgument(format!(
                "need 2 <= n_start <= n_max (got {} and {})",
                self.n_start, self.n_max
            )));
        }
        if !(self.c_margin > 0.0 && self.c_margin <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "c_margin must lie in (0, 1] (got {})",
                self.c_margin
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tol must be positive (got {})",
                self.tol
            )));
        }
        Ok(())
    }

    fn initial_depth(&self, z_norm: f64) -> usize {
        let margin_floor = (z_norm / self.c_margin).ceil() as usize;
        self.n_start.max(16).max(margin_floor)
    }
}

/// Diagnostic flags attached to an evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalFlags {
    /// The orbit passed close to the origin: the requested point is near a
    /// pole and the reported accuracy is limited.
    pub pole_proximity: bool,
    /// The value collapsed to the point at infinity.
    pub overflow: bool,
    /// The depth ceiling (or the accuracy floor of the backend) was reached
    /// before the proxy met the tolerance.
    pub max_depth_reached: bool,
}

impl EvalFlags {
    pub fn is_empty(&self) -> bool {
        !(self.pole_proximity || self.overflow || self.max_depth_reached)
    }

    pub fn union(self, other: EvalFlags) -> EvalFlags {
        EvalFlags {
            pole_proximity: self.pole_proximity || other.pole_proximity,
            overflow: self.overflow || other.overflow,
            max_depth_reached: self.max_depth_reached || other.max_depth_reached,
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.pole_proximity {
            v.push("pole_proximity");
        }
        if self.overflow {
            v.push("overflow");
        }
        if self.max_depth_reached {
            v.push("max_depth_reached");
        }
        v
    }
}

/// An evaluated transform value with its error proxy and diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult<S: Scalar> {
    pub value: ExtComplex<S>,
    /// Heuristic error proxy: distance between the two independently seeded
    /// extrapolations plus the last refinement increment. On the real-axis
    /// path it is a transported bracket width plus the orbit roundoff floor.
    pub error_estimate: S,
    /// Iteration depth of the pass that produced the value.
    pub n_used: usize,
    pub flags: EvalFlags,
}

impl<S: Scalar> EvalResult<S> {
    /// Finite value, or None at the point at infinity.
    pub fn finite_value(&self) -> Option<Complex<S>> {
        self.value.finite()
    }
}

/// Forward-ratio seed `lambda[n] * (lambda[n+1]/lambda[n])^z`; requires
/// `1 <= n < table.nmax()`.
pub fn seed_forward<S: Scalar>(
    table: &LambdaTable<S>,
    n: usize,
    z: Complex<S>,
) -> Result<Complex<S>> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "seed_forward requires n >= 1".into(),
        ));
    }
    let ls = table.log_step(n)?;
    Ok(z.scale(ls).exp().scale(table.lambda(n)))
}

/// Backward-ratio seed `lambda[n] * (lambda[n]/lambda[n-1])^z`; requires
/// `2 <= n <= table.nmax()`.
pub fn seed_backward<S: Scalar>(
    table: &LambdaTable<S>,
    n: usize,
    z: Complex<S>,
) -> Result<Complex<S>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "seed_backward requires n >= 2".into(),
        ));
    }
    let ls = table.log_step(n - 1)?;
    Ok(z.scale(ls).exp().scale(table.lambda(n)))
}

/// Runs the orbit for `n` steps, tracking the closest non-final approach to
/// the origin (squared, as f64).
fn iterate_tracked<S: Scalar>(seed: Complex<S>, n: usize) -> (ExtComplex<S>, f64) {
    let mut w = seed;
    let mut min_nsq = f64::INFINITY;
    for i in 0..n {
        let nsq = w.norm_sq();
        let nsq64 = nsq.to_f64();
        if !nsq64.is_finite() || nsq64 > OVERFLOW_NORM_SQ {
            return (ExtComplex::Infinity, min_nsq);
        }
        if nsq64 == 0.0 {
            return (ExtComplex::Infinity, 0.0);
        }
        if i > 0 && nsq64 < min_nsq {
            min_nsq = nsq64;
        }
        let inv = Complex::new(w.re / nsq, -(w.im / nsq));
        w = w - inv;
    }
    (ExtComplex::collapse(w), min_nsq)
}

/// Triangular extrapolation table over values at doubling depths.
struct Ladder<S: Scalar> {
    rows: Vec<Vec<Complex<S>>>,
}

impl<S: Scalar> Ladder<S> {
    fn new() -> Self {
        Ladder {
            rows: vec![Vec::new()],
        }
    }

    /// Adds the next raw value and returns the refreshed diagonal entry.
    fn push(&mut self, v: Complex<S>) -> Complex<S> {
        self.rows[0].push(v);
        for j in 1..=LADDER_FACTORS.len() {
            let prev_len = self.rows[j - 1].len();
            if prev_len < 2 {
                break;
            }
            if self.rows.len() == j {
                self.rows.push(Vec::with_capacity(4));
            }
            debug_assert_eq!(self.rows[j].len() + 2, prev_len);
            let last = self.rows[j - 1][prev_len - 1];
            let before = self.rows[j - 1][prev_len - 2];
            let weight = (S::from_f64(LADDER_FACTORS[j - 1]) - S::ONE).recip();
            let refined = last + (last - before).scale(weight);
            self.rows[j].push(refined);
        }
        self.diagonal()
    }

    fn diagonal(&self) -> Complex<S> {
        *self
            .rows
            .last()
            .and_then(|r| r.last())
            .expect("ladder never empty after a push")
    }
}

fn overflow_result<S: Scalar>(n: usize, pole: bool) -> EvalResult<S> {
    EvalResult {
        value: ExtComplex::Infinity,
        error_estimate: S::from_f64(f64::INFINITY),
        n_used: n,
        flags: EvalFlags {
            pole_proximity: pole,
            overflow: true,
            max_depth_reached: false,
        },
    }
}

/// Evaluates the Bernstein transform `f` at any complex `z`.
///
/// Depth starts at `max(n_start, |z|/c_margin)` and doubles until the error
/// proxy meets `cfg.tol`, stops improving (accuracy floor of the backend), or
/// hits `cfg.n_max`. The table must extend one entry past `cfg.n_max`.
pub fn eval_bernstein<S: Scalar>(
    z: Complex<S>,
    cfg: &EvalConfig,
    table: &LambdaTable<S>,
) -> Result<EvalResult<S>> {
    cfg.validate()?;
    if table.nmax() < cfg.n_max + 1 {
        return Err(Error::Capacity {
            requested: cfg.n_max + 1,
            cap: table.nmax(),
        });
    }
    let n0 = cfg.initial_depth(z.norm().to_f64());
    if n0 > cfg.n_max {
        return Err(Error::Capacity {
            requested: n0,
            cap: cfg.n_max,
        });
    }

    let mut fwd = Ladder::new();
    let mut bwd = Ladder::new();
    let mut diag_prev: Option<Complex<S>> = None;
    let mut est_prev = f64::INFINITY;
    let mut stall = 0u32;
    let mut level = 0usize;
    let mut n = n0;
    // the sharpest refinement seen so far; returned whenever the loop ends
    // without meeting the tolerance (deeper levels only add roundoff noise)
    let mut best: Option<(Complex<S>, f64, usize, bool)> = None;
    let mut last: Option<(Complex<S>, f64, usize, bool)> = None;

    loop {
        let seed_f = seed_forward(table, n, z)?;
        let seed_b = seed_backward(table, n, z)?;
        let (vf, min_nsq) = iterate_tracked(seed_f, n);
        let (vb, _) = iterate_tracked(seed_b, n);
        let pole = min_nsq < POLE_PROXIMITY_NORM_SQ;
        let (wf, wb) = match (vf.finite(), vb.finite()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(overflow_result(n, pole)),
        };

        let df = fwd.push(wf);
        let db = bwd.push(wb);
        let route_gap = (df - db).norm().to_f64();
        let est = match diag_prev {
            Some(prev) => route_gap + (df - prev).norm().to_f64(),
            None => route_gap,
        };
        let refined_once = diag_prev.is_some();
        diag_prev = Some(df);
        if !refined_once {
            // fallback if the depth budget allows no refinement at all
            last = Some((df, est, n, pole));
        }

        if refined_once {
            if est <= cfg.tol {
                return Ok(EvalResult {
                    value: ExtComplex::collapse(df),
                    error_estimate: S::from_f64(est),
                    n_used: n,
                    flags: EvalFlags {
                        pole_proximity: pole,
                        overflow: false,
                        max_depth_reached: false,
                    },
                });
            }
            let best_est = best.map_or(f64::INFINITY, |(_, e, _, _)| e);
            if est < best_est {
                best = Some((df, est, n, pole));
            }
            // past the accuracy floor: estimates rise away from the optimum
            if level >= 3 && est > 8.0 * best_est {
                break;
            }
            // diminishing returns two levels in a row
            if est > 0.6 * est_prev {
                stall += 1;
                if stall >= 2 && level >= 3 {
                    break;
                }
            } else {
                stall = 0;
            }
            est_prev = est;
        }
        if n > cfg.n_max / 2 {
            break;
        }
        n *= 2;
        level += 1;
    }

    let (value, est, n_used, pole) = best
        .or(last)
        .expect("the loop always runs at least one level");
    Ok(EvalResult {
        value: ExtComplex::collapse(value),
        error_estimate: S::from_f64(est),
        n_used,
        flags: EvalFlags {
            pole_proximity: pole,
            overflow: false,
            max_depth_reached: est > cfg.tol,
        },
    })
}

/// Evaluates the Mellin transform `F(z) = 1 / f(z+1)`.
///
/// Where `f(z+1)` is the point at infinity, `F(z)` is zero; where `f(z+1)`
/// vanishes, `F(z)` is the point at infinity. The error proxy propagates by
/// the first-order reciprocal rule `|dF| ~ |df| / |f|^2`, and proximity of
/// `f(z+1)` to zero marks `F` as pole-limited.
pub fn eval_mellin<S: Scalar>(
    z: Complex<S>,
    cfg: &EvalConfig,
    table: &LambdaTable<S>,
) -> Result<EvalResult<S>> {
    let shifted = z + Complex::new(S::ONE, S::ZERO);
    let inner = eval_bernstein(shifted, cfg, table)?;
    match inner.value {
        ExtComplex::Infinity => Ok(EvalResult {
            value: ExtComplex::Finite(Complex::zero()),
            error_estimate: S::ZERO,
            n_used: inner.n_used,
            flags: EvalFlags {
                overflow: false,
                ..inner.flags
            },
        }),
        ExtComplex::Finite(w) => {
            let nsq = w.norm_sq();
            if nsq.to_f64() == 0.0 {
                return Ok(EvalResult {
                    value: ExtComplex::Infinity,
                    error_estimate: S::from_f64(f64::INFINITY),
                    n_used: inner.n_used,
                    flags: EvalFlags {
                        overflow: true,
                        pole_proximity: true,
                        ..inner.flags
                    },
                });
            }
            let value = Complex::new(w.re / nsq, -(w.im / nsq));
            let mut flags = inner.flags;
            if nsq.to_f64() < POLE_PROXIMITY_NORM_SQ {
                flags.pole_proximity = true;
            }
            Ok(EvalResult {
                value: ExtComplex::collapse(value),
                error_estimate: inner.error_estimate / nsq,
                n_used: inner.n_used,
                flags,
            })
        }
    }
}

fn iterate_real<S: Scalar>(seed: S, n: usize) -> S {
    let mut w = seed;
    for _ in 0..n {
        w = w - w.recip();
    }
    w
}

/// Certified two-sided bracket for `f(s)` with `0 < s <= 1`:
/// `lo = psi^n(forward seed) <= f(s) <= psi^n(backward seed) = hi`.
///
/// The inequality is mathematically exact for real `s` in `(0, 1]`; in
/// floating point it holds up to roundoff of the two orbit evaluations.
pub fn certified_bracket<S: Scalar>(s: S, n: usize, table: &LambdaTable<S>) -> Result<(S, S)> {
    let s64 = s.to_f64();
    if !(s64 > 0.0 && s64 <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "bracket is certified only for 0 < s <= 1 (got {s64})"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(
            "bracket requires depth n >= 2".into(),
        ));
    }
    if table.nmax() < n + 1 {
        return Err(Error::Capacity {
            requested: n + 1,
            cap: table.nmax(),
        });
    }
    let lam = table.lambda(n);
    let lo = iterate_real(lam * (s * table.log_step(n)?).exp(), n);
    let hi = iterate_real(lam * (s * table.log_step(n - 1)?).exp(), n);
    Ok((lo, hi))
}

/// Evaluates `f(s)` for real `s > 0` through the certified real-axis path.
///
/// Splits `s = s0 + k` with `s0` in `(0, 1]`, brackets `f(s0)` at adaptive
/// depth, then lifts the bracket midpoint with `k` applications of the
/// increasing inverse branch, so the bracket transports monotonically. The
/// error estimate is the transported bracket width.
pub fn eval_bernstein_real<S: Scalar>(
    s: S,
    cfg: &EvalConfig,
    table: &LambdaTable<S>,
) -> Result<EvalResult<S>> {
    cfg.validate()?;
    let s64 = s.to_f64();
    if s64.is_nan() || s64 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "real-axis evaluation requires s > 0 (got {s64})"
        )));
    }
    if table.nmax() < cfg.n_max + 1 {
        return Err(Error::Capacity {
            requested: cfg.n_max + 1,
            cap: table.nmax(),
        });
    }
    let shift = if s64 <= 1.0 {
        0
    } else {
        s64.ceil() as usize - 1
    };
    let s0 = s - S::from_usize(shift);
    let mut n = cfg.initial_depth(s64).max(2);
    loop {
        let (lo, hi) = certified_bracket(s0, n, table)?;
        let width = (hi - lo).to_f64();
        // bracket ends drift by accumulated orbit roundoff; below this floor
        // extra depth narrows the computed width without gaining accuracy
        let floor = orbit_roundoff_floor::<S>(n);
        if width <= cfg.tol || width <= floor || n > cfg.n_max / 2 {
            let mid = (lo + hi) * S::from_f64(0.5);
            let value = phi_iter(mid, shift);
            let transported = phi_iter(hi, shift) - phi_iter(lo, shift);
            let est = transported + S::from_f64(floor);
            return Ok(EvalResult {
                value: ExtComplex::Finite(Complex::from_real(value)),
                error_estimate: est,
                n_used: n,
                flags: EvalFlags {
                    max_depth_reached: est.to_f64() > cfg.tol,
                    ..EvalFlags::default()
                },
            });
        }
        n *= 2;
    }
}

/// Accumulated roundoff of an `n`-step orbit in the backend's arithmetic:
/// per-step representation errors are amplified by the remaining descent,
/// giving growth near `epsilon * n^(3/2)` (measured against extended
/// references; the constant carries margin).
fn orbit_roundoff_floor<S: Scalar>(n: usize) -> f64 {
    8.0 * S::EPSILON.to_f64() * (n as f64).powf(1.5)
}

/// Explicit upper bound on the gap `|psi^n(backward) - psi^n(forward)|` for
/// real `s > 0` and depth `n >= 2`:
///
/// ```text
/// max(lambda[2]^(s-1), 1) * s (n+1) / (lambda[n] lambda[n-1]^2)
///   * (lambda[n]^2 - lambda[n-1]^2)
/// ```
///
/// The squared difference is evaluated as `(lambda[n] + lambda[n-1]) /
/// lambda[n]`, which is exact up to roundoff (no cancellation).
pub fn seed_gap_bound<S: Scalar>(s: S, n: usize, table: &LambdaTable<S>) -> Result<S> {
    if s.to_f64().is_nan() || s.to_f64() <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "gap bound requires s > 0 (got {})",
            s.to_f64()
        )));
    }
    if n < 2 || n > table.nmax() {
        return Err(Error::IndexOutOfRange {
            index: n,
            limit: table.nmax(),
        });
    }
    let lam2 = table.lambda(2);
    let amp = ((s - S::ONE) * lam2.ln()).exp().max(S::ONE);
    let ln = table.lambda(n);
    let lp = table.lambda(n - 1);
    let sq_diff = (ln + lp) / ln;
    Ok(amp * s * S::from_usize(n + 1) / (ln * lp * lp) * sq_diff)
}

/// Residual of the downward functional equation, `|f(z) - psi(f(z+1))|`,
/// with both sides evaluated independently. Flags from either evaluation are
/// merged into the result.
pub fn functional_equation_residual<S: Scalar>(
    z: Complex<S>,
    cfg: &EvalConfig,
    table: &LambdaTable<S>,
) -> Result<(S, EvalFlags)> {
    let here = eval_bernstein(z, cfg, table)?;
    let above = eval_bernstein(z + Complex::new(S::ONE, S::ZERO), cfg, table)?;
    let flags = here.flags.union(above.flags);
    let residual = match (here.value, psi(above.value)) {
        (ExtComplex::Finite(a), ExtComplex::Finite(b)) => (a - b).norm(),
        _ => S::from_f64(f64::INFINITY),
    };
    Ok((residual, flags))
}
