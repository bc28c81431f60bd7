//! Orbits of the map psi(z) = z - 1/z: the table entries descend exactly to
//! the origin, the inverse branch phi climbs back up, and everything off
//! the real axis drifts to infinity (slowly, like sqrt(2n)).
//!
//! Run with: cargo run --example psi_orbits

use psifix::{phi_iter, psi_iter, ExtComplex, LambdaTable};

fn main() -> psifix::Result<()> {
    let table = LambdaTable::<f64>::build(60)?;

    println!("psi^n(lambda[n]) returns to the origin:");
    for n in [1usize, 5, 20, 50] {
        let end: ExtComplex<f64> = psi_iter(ExtComplex::from_f64(table.lambda(n), 0.0), n);
        let mag = end.finite().map(|w| w.norm()).unwrap_or(f64::INFINITY);
        println!("  n={n:<3} |psi^n(lambda[n])| = {mag:.3e}");
    }

    println!();
    println!("phi^k(0) climbs the table:");
    for k in [1usize, 2, 10, 50] {
        let lifted = phi_iter(0.0f64, k);
        println!(
            "  k={k:<3} phi^k(0) = {lifted:<22.15} lambda[{k}] = {}",
            table.lambda(k)
        );
    }

    println!();
    println!("escape off the real axis is parabolic (|orbit| ~ sqrt(2n)):");
    for &(re, im) in &[(0.0, 1.0), (3.0, -2.0), (-5.0, 4.0)] {
        print!("  from {re}{im:+}i:");
        for n in [100usize, 10_000, 1_000_000] {
            match psi_iter::<f64>(ExtComplex::from_f64(re, im), n) {
                ExtComplex::Finite(w) => print!("  |psi^{n}| = {:<10.4}", w.norm()),
                ExtComplex::Infinity => print!("  |psi^{n}| = infinity"),
            }
        }
        println!();
    }
    Ok(())
}
