//! Two-sided certified brackets for f(s) on the real axis: the two seed
//! orbits pin f(s) between them for 0 < s <= 1, the explicit gap bound
//! dominates the width, and the increasing inverse branch lifts the bracket
//! to any s > 0.
//!
//! Run with: cargo run --example certified_bracket

use psifix::{certified_bracket, eval_bernstein_real, seed_gap_bound, EvalConfig, LambdaTable};

fn main() -> psifix::Result<()> {
    let table = LambdaTable::<f64>::build((1 << 20) + 1)?;
    let s = 0.5;

    println!("brackets for f({s}) at increasing depth:");
    println!(
        "  {:>6} {:>22} {:>22} {:>12} {:>12}",
        "n", "lo", "hi", "width", "gap bound"
    );
    for n in [16usize, 64, 256, 1024, 4096, 16384] {
        let (lo, hi) = certified_bracket(s, n, &table)?;
        let bound = seed_gap_bound(s, n, &table)?;
        println!(
            "  {n:>6} {lo:>22.15} {hi:>22.15} {:>12.3e} {:>12.3e}",
            hi - lo,
            bound
        );
    }

    println!();
    println!("lifting the bracket past s = 1 with the inverse branch:");
    let cfg = EvalConfig::default();
    for s in [0.7, 2.0, 5.5, 9.75] {
        let r = eval_bernstein_real(s, &cfg, &table)?;
        let v = r.finite_value().expect("finite on the positive axis").re;
        println!(
            "  f({s:<5}) = {v:<22.15} err~{:.2e}  depth {}",
            r.error_estimate, r.n_used
        );
    }
    Ok(())
}
