//! Sampling certificates for the disc chain that controls complex
//! evaluation: one application of psi maps the disc around lambda[n] of
//! radius c * gap(n, width) into the disc around lambda[n-1] of radius
//! c * gap(n-1, width).
//!
//! Run with: cargo run --example disc_certificates

use psifix::{check_disc_step, DiscCert, LambdaTable};

fn main() -> psifix::Result<()> {
    let table = LambdaTable::<f64>::build(300)?;
    let seed = 42;
    let samples = 20_000;

    println!("one-step disc containment, {samples} samples per certificate:");
    for &(n, width) in &[(10usize, 3usize), (50, 10), (200, 20), (6, 2)] {
        for &c in &[0.25, 0.5, 1.0] {
            let cert = DiscCert::new(n, width, c, &table)?;
            let ok = check_disc_step(&cert, &table, samples, seed)?;
            println!(
                "  n={n:<4} width={width:<3} c={c:<5} center={:<10.6} radius={:<12.6e} contained={ok}",
                cert.center(),
                cert.radius()
            );
            assert!(ok);
        }
    }

    println!();
    println!("a certificate request outside the valid range is rejected:");
    match DiscCert::new(3, 3, 0.5, &table) {
        Err(e) => println!("  n=3, width=3: {e}"),
        Ok(_) => unreachable!(),
    }
    match DiscCert::new(10, 2, 1.5, &table) {
        Err(e) => println!("  c=1.5:        {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
