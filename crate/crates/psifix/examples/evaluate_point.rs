//! Evaluate the Bernstein transform f and the Mellin transform F at a few
//! points: deep in the right half-plane, off the real axis, at the origin,
//! and next to the pole at z = -1, where diagnostics kick in.
//!
//! Run with: cargo run --example evaluate_point

use psifix::arith::Dd;
use psifix::{eval_bernstein, eval_mellin, Complex, EvalConfig, LambdaTable};

fn main() -> psifix::Result<()> {
    let cfg = EvalConfig::default();
    let table = LambdaTable::<f64>::build(cfg.n_max + 1)?;

    println!("f at assorted points (value, error proxy, depth, flags):");
    for &(re, im) in &[
        (1.0, 0.0),
        (2.0, 0.0),
        (0.5, 0.0),
        (0.0, 0.0),
        (0.3, 2.0),
        (-0.5, 3.0),
        (-1.0, 0.0),
    ] {
        let r = eval_bernstein(Complex::new(re, im), &cfg, &table)?;
        match r.finite_value() {
            Some(v) => println!(
                "  f({re}{im:+}i) = {:>22.15} {:+.15}i   err~{:.1e}  n={}  {:?}",
                v.re,
                v.im,
                r.error_estimate,
                r.n_used,
                r.flags.names()
            ),
            None => println!("  f({re}{im:+}i) = infinity   {:?}", r.flags.names()),
        }
    }

    println!();
    println!("F at integers reproduces the moment sequence:");
    for n in 0..=5 {
        let r = eval_mellin(Complex::from_real(n as f64), &cfg, &table)?;
        let m = table.moment(n)?;
        let v = r.finite_value().expect("finite at integers").re;
        println!(
            "  F({n}) = {v:<22.15} moment = {m:<22.15} diff = {:.1e}",
            (v - m).abs()
        );
    }

    println!();
    println!("extended backend sharpens the proxy:");
    let table_dd = LambdaTable::<Dd>::build(cfg.n_max + 1)?;
    let tight = EvalConfig { tol: 1e-13, ..cfg };
    let r = eval_bernstein(Complex::<Dd>::from_f64(0.5, 0.0), &tight, &table_dd)?;
    let v = r.finite_value().expect("finite");
    println!(
        "  f(0.5) = {}  err~{:.1e}  n={}",
        v.re.to_f64(),
        r.error_estimate.to_f64(),
        r.n_used
    );
    Ok(())
}
