//! Acceptance suite: every shipped guarantee at its stated tolerance, one
//! pass/fail line per check (run with `--nocapture` to see them).
//!
//! Golden values come from closed forms of the first sequence entries; the
//! remaining checks are property-based at pinned sizes, seeds, and
//! tolerances, with extended-precision (double-double) oracles confirming
//! the threshold calibrations.

use psifix::arith::Dd;
use psifix::eval::{eval_bernstein, EvalConfig};
use psifix::verify::{
    bracket_containment, cross_path_consistency, disc_grid, fixed_point_monotone,
    functional_equation_grid, gap_bound_domination, golden_integers, lambda_bounds,
    lambda_ratio_decreasing, lambda_square_over_index, lambda_square_step, log_concavity_chain,
    log_reciprocal_convexity, mellin_duality, orbit_zero, transform_fixed_point, Check,
};
use psifix::{Complex, LambdaTable};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

const SEED: u64 = 42;

fn table() -> &'static LambdaTable<f64> {
    static T: OnceLock<LambdaTable<f64>> = OnceLock::new();
    T.get_or_init(|| LambdaTable::build((1 << 20) + 1).expect("table fits the default cap"))
}

fn config() -> EvalConfig {
    EvalConfig::default() // tol 1e-10, depth ceiling 2^20
}

fn report(check: &Check) {
    println!("{check}");
    assert!(check.passed, "{check}");
}

fn report_timed(check: &Check, elapsed: Duration, limit: Duration) {
    println!("{check} [{elapsed:.2?}]");
    assert!(check.passed, "{check}");
    assert!(
        elapsed <= limit,
        "{} took {elapsed:.2?}, limit {limit:.2?}",
        check.name
    );
}

#[test]
fn golden_integer_values() {
    let t = table();
    let cfg = config();
    let start = Instant::now();
    let check = golden_integers(t, &cfg, 20, 1e-9).unwrap();
    // the n = 2 value against its closed form, independent of the table
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    let f2 = eval_bernstein(Complex::from_real(2.0), &cfg, t)
        .unwrap()
        .finite_value()
        .expect("finite at z = 2")
        .re;
    let elapsed = start.elapsed();
    assert!(
        (f2 - golden).abs() / golden < 1e-9,
        "f(2) = {f2}, want {golden}"
    );
    report_timed(&check, elapsed, Duration::from_secs(1));
}

#[test]
fn functional_equation_on_a_grid() {
    let t = table();
    let start = Instant::now();
    let check = functional_equation_grid(t, &config(), (-0.5, 4.0), (-3.0, 3.0), 41, 1e-8).unwrap();
    report_timed(&check, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn mellin_duality_at_integers() {
    let check = mellin_duality(table(), &config(), 20, 1e-9).unwrap();
    report(&check);
}

#[test]
fn certified_brackets_contain_the_evaluation() {
    let check =
        bracket_containment(table(), &config(), 100, &[16, 64, 256, 1024], 1e-12, SEED).unwrap();
    report(&check);
}

#[test]
fn explicit_bound_dominates_the_observed_gap() {
    let check = gap_bound_domination(table(), &[0.1, 0.5, 1.0], &[10, 100, 1000, 10_000]).unwrap();
    report(&check);
}

#[test]
fn lambda_asymptotics_at_one_million() {
    let start = Instant::now();
    let t = LambdaTable::<f64>::build(1_000_001).unwrap();
    let at = 1_000_000;
    let checks = [
        lambda_bounds(&t),
        lambda_ratio_decreasing(&t),
        lambda_square_over_index(&t, at, 1e-3),
        lambda_square_step(&t, at, 1e-3),
    ];
    let elapsed = start.elapsed();
    for c in &checks {
        report(c);
    }
    assert!(elapsed <= Duration::from_secs(5), "took {elapsed:.2?}");

    // extended-precision oracle confirms both thresholds and the f64 values
    let td = LambdaTable::<Dd>::build(1_000_001).unwrap();
    let lam = td.lambda(at);
    let lam_next = td.lambda(at + 1);
    let over_index = (lam * lam / Dd::from_f64(at as f64) - Dd::from_f64(2.0))
        .abs()
        .to_f64();
    let square_step = (lam_next * lam_next - lam * lam - Dd::from_f64(2.0))
        .abs()
        .to_f64();
    println!(
        "PASS lambda.oracle_confirmation   over_index={over_index:.3e} square_step={square_step:.3e}"
    );
    assert!(over_index < 1e-3 && square_step < 1e-3);
    assert!((checks[2].worst - over_index).abs() < 1e-6);
    assert!((checks[3].worst - square_step).abs() < 1e-6);
}

#[test]
fn disc_containment_certificates() {
    let check = disc_grid(table(), 200, 20, &[0.25, 0.5, 1.0], 1000, SEED).unwrap();
    report(&check);
}

#[test]
fn log_concavity_power_chain() {
    let check = log_concavity_chain(table(), 1000, 50, 1e-12);
    report(&check);
}

#[test]
fn moment_transform_fixed_point() {
    let check = transform_fixed_point(table(), 500, 1e-11).unwrap();
    report(&check);
    let check = fixed_point_monotone(table(), 25, 12, 1e-8).unwrap();
    report(&check);
}

#[test]
fn orbit_from_table_entries_returns_to_zero() {
    let check = orbit_zero(table(), 50, 1e-10);
    report(&check);
}

#[test]
fn real_axis_and_complex_paths_agree() {
    let check = cross_path_consistency(table(), &config(), 50, SEED).unwrap();
    report(&check);
}

#[test]
fn log_reciprocal_is_convex() {
    let check = log_reciprocal_convexity(table(), &config(), (0.1, 10.0), 100, 0.01, 1e-6).unwrap();
    report(&check);
}
