//! Build the lambda table and inspect the sequence it caches: the first
//! entries with their closed forms, the reciprocal moments, and the
//! square-gap asymptotics that the deeper machinery relies on.
//!
//! Run with: cargo run --example lambda_sequence

use psifix::LambdaTable;

fn main() -> psifix::Result<()> {
    let table = LambdaTable::<f64>::build(1_000_001)?;

    println!("first entries (lambda[k], moment m_k = 1/lambda[k+1]):");
    for k in 0..=6 {
        println!(
            "  k={k}  lambda={:<22} m={}",
            table.lambda(k),
            table.moment(k)?
        );
    }
    println!();
    println!("closed forms for comparison:");
    println!(
        "  lambda[2] = (1+sqrt 5)/2        = {}",
        (1.0 + 5.0f64.sqrt()) / 2.0
    );
    let l3 = ((22.0 + 2.0 * 5.0f64.sqrt()).sqrt() + 5.0f64.sqrt() + 1.0) / 4.0;
    println!("  lambda[3] = closed nested form  = {l3}");
    println!();

    println!("growth diagnostics (lambda[n]^2 ~ 2n):");
    for n in [10usize, 1_000, 100_000, 1_000_000] {
        let lam = table.lambda(n);
        println!(
            "  n={n:<9} lambda={lam:<20.12} lambda^2/n - 2 = {:+.3e}   sqrt(2n) - lambda = {:.3e}",
            lam * lam / n as f64 - 2.0,
            (2.0 * n as f64).sqrt() - lam
        );
    }
    println!();

    println!("derived quantities:");
    println!(
        "  log_step(1)       = {}   (= ln lambda[2])",
        table.log_step(1)?
    );
    println!(
        "  log_step(10^6)    = {:.6e} (~ 1/(2n))",
        table.log_step(1_000_000)?
    );
    println!(
        "  lambda_gap(100,5) = {}   (= lambda[100] - lambda[95], summed form)",
        table.lambda_gap(100, 5)?
    );
    Ok(())
}
