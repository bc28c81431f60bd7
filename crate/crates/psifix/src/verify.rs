//! Measured verification checks over every module, shared by the `verify`
//! CLI subcommand and the acceptance test suite.
//!
//! Each check takes its sizes and tolerances explicitly and reports the
//! worst measured quantity, so callers pin the thresholds they care about.

use crate::arith::Complex;
use crate::dynamics::{check_disc_step, phi, psi_iter, DiscCert, ExtComplex};
use crate::error::Result;
use crate::eval::{
    certified_bracket, eval_bernstein, eval_bernstein_real, eval_mellin,
    functional_equation_residual, seed_backward, seed_forward, seed_gap_bound, EvalConfig,
};
use crate::moments::{fixed_point_residual, MomentSeq};
use crate::seq::LambdaTable;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Outcome of one verification check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst measured quantity (meaning depends on the check).
    pub worst: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, worst: f64, detail: String) -> Self {
        Check {
            name,
            passed,
            worst,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} worst={:<12.3e} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.detail
        )
    }
}

/// `sqrt(n) <= lambda[n] <= sqrt(2n)` at every index of the table.
pub fn lambda_bounds(table: &LambdaTable<f64>) -> Check {
    let mut worst = f64::NEG_INFINITY;
    let mut ok = true;
    for k in 0..=table.nmax() {
        let kf = k as f64;
        let low = kf.sqrt() - table.lambda(k);
        let high = table.lambda(k) - (2.0 * kf).sqrt();
        let margin = low.max(high);
        if margin > worst {
            worst = margin;
        }
        if margin > 0.0 {
            ok = false;
        }
    }
    Check::new(
        "lambda.bounds",
        ok,
        worst,
        format!("every index to {}", table.nmax()),
    )
}

/// Successive ratios `lambda[n+1]/lambda[n]` strictly decrease and exceed 1.
pub fn lambda_ratio_decreasing(table: &LambdaTable<f64>) -> Check {
    let mut prev = f64::INFINITY;
    let mut worst = f64::NEG_INFINITY;
    let mut ok = true;
    for n in 1..table.nmax() {
        let ratio = table.lambda(n + 1) / table.lambda(n);
        if ratio >= prev || ratio <= 1.0 {
            ok = false;
        }
        worst = worst.max(ratio - prev);
        prev = ratio;
    }
    Check::new(
        "lambda.ratio_decreasing",
        ok,
        worst,
        format!("indices 1..{}", table.nmax()),
    )
}

/// `|lambda[n+1]^2 - lambda[n]^2 - 2|` at index `at`.
pub fn lambda_square_step(table: &LambdaTable<f64>, at: usize, tol: f64) -> Check {
    let v = (table.lambda(at + 1).powi(2) - table.lambda(at).powi(2) - 2.0).abs();
    Check::new(
        "lambda.square_step",
        v < tol,
        v,
        format!("at n={at}, tol {tol:e}"),
    )
}

/// `|lambda[n]^2 / n - 2|` at index `at`.
pub fn lambda_square_over_index(table: &LambdaTable<f64>, at: usize, tol: f64) -> Check {
    let v = (table.lambda(at).powi(2) / at as f64 - 2.0).abs();
    Check::new(
        "lambda.square_over_index",
        v < tol,
        v,
        format!("at n={at}, tol {tol:e}"),
    )
}

/// Fixed-point identity residual `|m_n (m_0 + ... + m_n) - 1|`.
pub fn fixed_point_identity(table: &LambdaTable<f64>, n_check: usize, tol: f64) -> Result<Check> {
    let worst = fixed_point_residual(table, n_check)?;
    Ok(Check::new(
        "moments.fixed_point_identity",
        worst < tol,
        worst,
        format!("n <= {n_check}, tol {tol:e}"),
    ))
}

/// Quadratic recursion residual `|m_{k+1}^2 + m_{k+1}/m_k - 1|`.
pub fn moment_recursion(table: &LambdaTable<f64>, n_check: usize, tol: f64) -> Result<Check> {
    let mut worst = 0.0f64;
    for k in 0..n_check {
        let mk = table.moment(k)?;
        let mk1 = table.moment(k + 1)?;
        worst = worst.max((mk1 * mk1 + mk1 / mk - 1.0).abs());
    }
    Ok(Check::new(
        "moments.recursion",
        worst < tol,
        worst,
        format!("k < {n_check}, tol {tol:e}"),
    ))
}

/// Log-concavity chain `lambda[n+1]^(k-1) lambda[n-k+1] <= lambda[n]^k`,
/// compared in log space with relative slack.
pub fn log_concavity_chain(
    table: &LambdaTable<f64>,
    n_limit: usize,
    k_limit: usize,
    slack: f64,
) -> Check {
    let mut worst = f64::NEG_INFINITY;
    let mut ok = true;
    for n in 1..=n_limit {
        let ln_next = table.lambda(n + 1).ln();
        let ln_here = table.lambda(n).ln();
        for k in 1..=k_limit.min(n) {
            let excess =
                (k - 1) as f64 * ln_next + table.lambda(n - k + 1).ln() - k as f64 * ln_here;
            worst = worst.max(excess);
            if excess > slack {
                ok = false;
            }
        }
    }
    Check::new(
        "lambda.log_concavity_chain",
        ok,
        worst,
        format!("n <= {n_limit}, k <= {k_limit}, slack {slack:e}"),
    )
}

/// `|psi(phi(x)) - x|` over seeded samples of the real line, measured
/// relative to `max(1, |x|)` (one ulp of `x` already exceeds any fixed
/// absolute tolerance at the span boundary).
pub fn inverse_branch_identity(samples: usize, span: f64, tol: f64, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let x = rng.gen_range(-span..span);
        let y = phi(x);
        worst = worst.max((y - 1.0 / y - x).abs() / x.abs().max(1.0));
    }
    Check::new(
        "dynamics.inverse_branch",
        worst <= tol,
        worst,
        format!("{samples} samples on [-{span}, {span}], scale-relative"),
    )
}

/// Orbit of `lambda[n]` returns to the origin: `|psi^n(lambda[n])| <=
/// scale_tol * n`.
pub fn orbit_zero(table: &LambdaTable<f64>, n_limit: usize, scale_tol: f64) -> Check {
    let mut worst = 0.0f64;
    let mut ok = true;
    for n in 1..=n_limit {
        let end: ExtComplex<f64> = psi_iter(ExtComplex::from_f64(table.lambda(n), 0.0), n);
        match end.finite() {
            Some(w) => {
                let scaled = w.norm() / n as f64;
                worst = worst.max(scaled);
                if scaled > scale_tol {
                    ok = false;
                }
            }
            None => ok = false,
        }
    }
    Check::new(
        "dynamics.orbit_zero",
        ok,
        worst,
        format!("n <= {n_limit}, per-step tol {scale_tol:e}"),
    )
}

/// Disc-containment certificates over the grid `n <= n_limit`,
/// `width <= min(n/2, width_cap)`, `c` in the given set.
pub fn disc_grid(
    table: &LambdaTable<f64>,
    n_limit: usize,
    width_cap: usize,
    cs: &[f64],
    samples: usize,
    seed: u64,
) -> Result<Check> {
    let mut combos = 0usize;
    let mut failures = 0usize;
    for n in 2..=n_limit {
        for width in 1..=(n / 2).min(width_cap) {
            for (i, &c) in cs.iter().enumerate() {
                let cert = DiscCert::new(n, width, c, table)?;
                combos += 1;
                let sub_seed = seed
                    .wrapping_mul(0x9e3779b97f4a7c15)
                    .wrapping_add((n * 1000 + width * 10 + i) as u64);
                if !check_disc_step(&cert, table, samples, sub_seed)? {
                    failures += 1;
                }
            }
        }
    }
    Ok(Check::new(
        "dynamics.disc_containment",
        failures == 0,
        failures as f64,
        format!("{combos} certificates x {samples} samples"),
    ))
}

/// Escape to infinity off the real axis: min |psi^depth(z)| over samples
/// with |Im z| >= 1 must clear the threshold (or be at infinity).
pub fn escape_off_axis(depth: usize, threshold: f64, samples: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_mag = f64::INFINITY;
    for _ in 0..samples {
        let re = rng.gen_range(-10.0..10.0);
        let im_mag = rng.gen_range(1.0..10.0);
        let im = if rng.gen::<bool>() { im_mag } else { -im_mag };
        match psi_iter(ExtComplex::from_f64(re, im), depth) {
            ExtComplex::Infinity => {}
            ExtComplex::Finite(w) => min_mag = min_mag.min(w.norm()),
        }
    }
    Check::new(
        "dynamics.escape",
        min_mag > threshold,
        min_mag,
        format!("{samples} samples, depth {depth}, threshold {threshold:e}"),
    )
}

/// Golden integer values: worst relative error of `f(n)` against the table.
pub fn golden_integers(
    table: &LambdaTable<f64>,
    cfg: &EvalConfig,
    n_limit: usize,
    rel_tol: f64,
) -> Result<Check> {
    let mut worst = 0.0f64;
    for n in 1..=n_limit {
        let r = eval_bernstein(Complex::from_real(n as f64), cfg, table)?;
        match r.finite_value() {
            Some(w) => {
                worst = worst.max((w.re - table.lambda(n)).abs() / table.lambda(n));
            }
            None => worst = f64::INFINITY,
        }
    }
    Ok(Check::new(
        "eval.golden_integers",
        worst < rel_tol,
        worst,
        format!("n <= {n_limit}, rel tol {rel_tol:e}"),
    ))
}

/// Reciprocal duality at integers: worst relative error of `F(n)` against
/// the independent moment recursion.
pub fn mellin_duality(
    table: &LambdaTable<f64>,
    cfg: &EvalConfig,
    n_limit: usize,
    rel_tol: f64,
) -> Result<Check> {
    let mut worst = 0.0f64;
    for n in 0..=n_limit {
        let r = eval_mellin(Complex::from_real(n as f64), cfg, table)?;
        let m = table.moment(n)?;
        match r.finite_value() {
            Some(w) => worst = worst.max((w.re - m).abs() / m),
            None => worst = f64::INFINITY,
        }
    }
    Ok(Check::new(
        "eval.mellin_duality",
        worst < rel_tol,
        worst,
        format!("n <= {n_limit}, rel tol {rel_tol:e}"),
    ))
}

/// Downward functional-equation residual over a rectangular grid,
/// excluding pole-flagged points.
pub fn functional_equation_grid(
    table: &LambdaTable<f64>,
    cfg: &EvalConfig,
    re_range: (f64, f64),
    im_range: (f64, f64),
    steps: usize,
    tol: f64,
) -> Result<Check> {
    let mut worst = 0.0f64;
    let mut excluded = 0usize;
    let dre = (re_range.1 - re_range.0) / (steps - 1) as f64;
    let dim = (im_range.1 - im_range.0) / (steps - 1) as f64;
    for iy in 0..steps {
        for ix in 0..steps {
            let z = Complex::new(re_range.0 + dre * ix as f64, im_range.0 + dim * iy as f64);
            let (residual, flags) = functional_equation_residual(z, cfg, table)?;
            if flags.pole_proximity || flags.overflow {
                excluded += 1;
                continue;
            }
            worst = worst.max(residual);
        }
    }
    Ok(Check::new(
        "eval.functional_equation",
        worst < tol,
        worst,
        format!("{steps}x{steps} grid, {excluded} pole points excluded, tol {tol:e}"),
    ))
}

/// Certified brackets at seeded `s` in (0, 1] and the given depths:
/// ordering, width against the explicit bound, and containment of the
/// adaptive evaluation within `containment_slack`.
///
/// `worst` is the largest violation (negative when everything holds with
/// margin).
pub fn bracket_containment(
    table: &LambdaTable<f64>,
    cfg: &EvalConfig,
    count: usize,
    depths: &[usize],
    containment_slack: f64,
    seed: u64,
) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    let mut cases = 0usize;
    for _ in 0..count {
        let s: f64 = 1.0 - rng.gen::<f64>(); // in (0, 1]
        let value = eval_bernstein(Complex::from_real(s), cfg, table)?
            .finite_value()
            .expect("finite on (0,1]")
            .re;
        for &n in depths {
            let (lo, hi) = certified_bracket(s, n, table)?;
            let bound = seed_gap_bound(s, n, table)?;
            worst = worst.max(lo - hi);
            worst = worst.max((hi - lo) - bound);
            worst = worst.max(lo - containment_slack - value);
            worst = worst.max(value - hi - containment_slack);
            cases += 1;
        }
    }
    Ok(Check::new(
        "eval.bracket_containment",
        worst <= 0.0,
        worst,
        format!("{cases} bracket cases"),
    ))
}

/// The explicit gap bound dominates the observed two-route gap.
pub fn gap_bound_domination(
    table: &LambdaTable<f64>,
    s_values: &[f64],
    depths: &[usize],
) -> Result<Check> {
    let mut worst = f64::NEG_INFINITY;
    for &s in s_values {
        for &n in depths {
            let (lo, hi) = certified_bracket(s, n, table)?;
            let bound = seed_gap_bound(s, n, table)?;
            worst = worst.max((hi - lo) - bound);
        }
    }
    Ok(Check::new(
        "eval.gap_bound_domination",
        worst <= 0.0,
        worst,
        format!("{} s-values x {} depths", s_values.len(), depths.len()),
    ))
}

/// Agreement of the certified real-axis path with the complex path, within
/// the two error estimates. `worst` is max(|difference| - budget).
pub fn cross_path_consistency(
    table: &LambdaTable<f64>,
    cfg: &EvalConfig,
    count: usize,
    seed: u64,
) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..count {
        let s = 10.0 * (1.0 - rng.gen::<f64>()); // in (0, 10]
        let real = eval_bernstein_real(s, cfg, table)?;
        let cplx = eval_bernstein(Complex::from_real(s), cfg, table)?;
        let a = real.finite_value().expect("real path finite").re;
        let b = cplx.finite_value().expect("complex path finite").re;
        let budget = real.error_estimate + cplx.error_estimate;
        worst = worst.max((a - b).abs() - budget);
    }
    Ok(Check::new(
        "eval.cross_path",
        worst <= 0.0,
        worst,
        format!("{count} seeded points in (0, 10]"),
    ))
}

/// Convexity of `-ln f` on the positive axis via second central differences
/// at step `h`; `worst` is the most negative difference.
pub fn log_reciprocal_convexity(
    table: &LambdaTable<f64>,
    cfg: &EvalConfig,
    s_range: (f64, f64),
    points: usize,
    h: f64,
    tol: f64,
) -> Result<Check> {
    let mut worst = f64::INFINITY;
    let step = (s_range.1 - s_range.0) / (points - 1) as f64;
    let g = |x: f64| -> Result<f64> {
        Ok(-eval_bernstein(Complex::from_real(x), cfg, table)?
            .finite_value()
            .expect("finite on the positive axis")
            .re
            .ln())
    };
    for i in 0..points {
        let s = s_range.0 + step * i as f64;
        let second = g(s - h)? - 2.0 * g(s)? + g(s + h)?;
        worst = worst.min(second);
    }
    Ok(Check::new(
        "eval.log_reciprocal_convexity",
        worst >= -tol,
        worst,
        format!("{points} points on [{}, {}], h={h}", s_range.0, s_range.1),
    ))
}

/// Both seed routes drift together: the raw route gap at the deepest depth
/// is below `tol` and below its value at the shallowest depth.
pub fn seed_route_equivalence(
    table: &LambdaTable<f64>,
    zs: &[(f64, f64)],
    depths: &[usize],
    tol: f64,
) -> Result<Check> {
    let mut worst = 0.0f64;
    let mut ok = true;
    for &(re, im) in zs {
        let z = Complex::new(re, im);
        let mut first_gap = None;
        let mut last_gap = 0.0;
        for &n in depths {
            let f = iterate_plain(seed_forward(table, n, z)?, n);
            let b = iterate_plain(seed_backward(table, n, z)?, n);
            last_gap = match (f, b) {
                (ExtComplex::Finite(a), ExtComplex::Finite(c)) => (a - c).norm(),
                _ => f64::INFINITY,
            };
            first_gap.get_or_insert(last_gap);
        }
        if last_gap >= first_gap.unwrap() || last_gap > tol {
            ok = false;
        }
        worst = worst.max(last_gap);
    }
    Ok(Check::new(
        "eval.seed_route_equivalence",
        ok,
        worst,
        format!("{} points, deepest n={}", zs.len(), depths.last().unwrap()),
    ))
}

fn iterate_plain(seed: Complex<f64>, n: usize) -> ExtComplex<f64> {
    psi_iter(ExtComplex::Finite(seed), n)
}

/// The transform reproduces the fixed-point prefix entrywise.
pub fn transform_fixed_point(table: &LambdaTable<f64>, len: usize, rel_tol: f64) -> Result<Check> {
    let m = MomentSeq::fixed_point_prefix(table, len)?;
    let back = m.transform()?;
    let mut worst = 0.0f64;
    for (a, b) in m.values().iter().zip(back.values()) {
        worst = worst.max((a - b).abs() / a);
    }
    Ok(Check::new(
        "moments.transform_fixed_point",
        worst < rel_tol,
        worst,
        format!("prefix length {}, rel tol {rel_tol:e}", len + 1),
    ))
}

/// Complete monotonicity of the fixed-point prefix.
pub fn fixed_point_monotone(
    table: &LambdaTable<f64>,
    len: usize,
    depth: usize,
    tol: f64,
) -> Result<Check> {
    let m = MomentSeq::fixed_point_prefix(table, len)?;
    let rep = m.completely_monotone(depth, tol)?;
    Ok(Check::new(
        "moments.completely_monotone",
        rep.pass,
        rep.worst,
        format!("depth {depth}, tol {tol:e}, worst at {:?}", rep.at),
    ))
}

/// Which family of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Sequences,
    Dynamics,
    Evaluator,
    Moments,
    All,
}

/// Runs a suite at its standard sizes against the given table.
///
/// The table should extend past `cfg.n_max`; index-scale checks clamp to
/// what the table provides.
pub fn run_suite(
    suite: Suite,
    table: &LambdaTable<f64>,
    cfg: &EvalConfig,
    seed: u64,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let deep = table.nmax().saturating_sub(1);
    if matches!(suite, Suite::Sequences | Suite::All) {
        checks.push(lambda_bounds(table));
        checks.push(lambda_ratio_decreasing(table));
        // the square gaps approach their limits like ln(n)/n, so the tight
        // tolerance only applies once the probe index is deep enough
        let at = deep.min(1_000_000);
        let square_tol = if at >= 100_000 { 1e-4 } else { 2e-3 };
        checks.push(lambda_square_step(table, at, square_tol));
        checks.push(lambda_square_over_index(table, at, square_tol));
        checks.push(fixed_point_identity(table, 10_000.min(deep), 1e-11)?);
        checks.push(moment_recursion(table, 10_000.min(deep), 1e-12)?);
        checks.push(log_concavity_chain(table, 1000.min(deep), 50, 1e-12));
    }
    if matches!(suite, Suite::Dynamics | Suite::All) {
        checks.push(inverse_branch_identity(10_000, 1e3, 1e-13, seed));
        checks.push(orbit_zero(table, 50, 1e-10));
        checks.push(disc_grid(
            table,
            200.min(deep),
            20,
            &[0.25, 0.5, 1.0],
            1000,
            seed,
        )?);
        checks.push(escape_off_axis(1_000_000, 1e3, 10, seed));
    }
    if matches!(suite, Suite::Evaluator | Suite::All) {
        checks.push(golden_integers(table, cfg, 20, 1e-9)?);
        checks.push(mellin_duality(table, cfg, 20, 1e-9)?);
        checks.push(functional_equation_grid(
            table,
            cfg,
            (-0.5, 4.0),
            (-3.0, 3.0),
            41,
            1e-8,
        )?);
        checks.push(bracket_containment(
            table,
            cfg,
            100,
            &[16, 64, 256, 1024],
            1e-12,
            seed,
        )?);
        checks.push(gap_bound_domination(
            table,
            &[0.1, 0.5, 1.0],
            &[10, 100, 1000, 10_000],
        )?);
        checks.push(cross_path_consistency(table, cfg, 50, seed)?);
        checks.push(log_reciprocal_convexity(
            table,
            cfg,
            (0.1, 10.0),
            100,
            0.01,
            1e-6,
        )?);
        checks.push(seed_route_equivalence(
            table,
            &[(0.5, 0.0), (2.0, 1.5), (-0.5, 3.0), (4.0, -2.0)],
            &[16, 32, 64, 128, 256, 512, 1024],
            1e-1,
        )?);
    }
    if matches!(suite, Suite::Moments | Suite::All) {
        checks.push(transform_fixed_point(table, 500.min(deep), 1e-11)?);
        checks.push(fixed_point_monotone(table, 25, 12, 1e-8)?);
    }
    Ok(checks)
}
