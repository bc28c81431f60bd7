//! The moment transform (reciprocal partial sums) and its fixed point:
//! invariance of the fixed-point prefix, contraction from a far-away start,
//! and the complete-monotonicity test that separates genuine Hausdorff
//! moment prefixes from impostors.
//!
//! Run with: cargo run --example moment_fixed_point

use psifix::moments::fixed_point_residual;
use psifix::{LambdaTable, MomentSeq};

fn main() -> psifix::Result<()> {
    let table = LambdaTable::<f64>::build(1001)?;

    let m = MomentSeq::fixed_point_prefix(&table, 10)?;
    let back = m.transform()?;
    println!("fixed-point prefix vs its transform:");
    for (k, (a, b)) in m.values().iter().zip(back.values()).enumerate() {
        println!("  m[{k}] = {a:<22.15} T(m)[{k}] = {b:<22.15}");
    }
    println!(
        "worst identity residual over n <= 1000: {:.3e}",
        fixed_point_residual(&table, 1000)?
    );

    println!();
    println!("iterating the transform from the all-ones prefix:");
    let start = MomentSeq::from_values(vec![1.0; 12]);
    for k in [1usize, 2, 5, 10, 50] {
        let it = start.iterate(k)?;
        let sup = it
            .values()
            .iter()
            .zip(m.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        println!("  after {k:>2} rounds: sup distance to the fixed point = {sup:.3e}");
    }

    println!();
    println!("complete-monotonicity checks (signed difference tables):");
    let good = MomentSeq::fixed_point_prefix(&table, 25)?;
    let rep = good.completely_monotone(12, 1e-8)?;
    println!(
        "  fixed-point prefix, depth 12: pass={} worst={:.2e} at {:?}",
        rep.pass, rep.worst, rep.at
    );
    let uniform = MomentSeq::from_values(vec![1.0, 0.5, 1.0 / 3.0, 0.25]);
    let rep = uniform.completely_monotone(3, 1e-12)?;
    println!("  (1, 1/2, 1/3, 1/4), depth 3: pass={}", rep.pass);
    let broken = MomentSeq::from_values(vec![1.0, 0.1, 0.9]);
    let rep = broken.completely_monotone(2, 1e-12)?;
    println!(
        "  (1, 0.1, 0.9), depth 2:      pass={} worst={} at order/offset {:?}",
        rep.pass, rep.worst, rep.at
    );
    Ok(())
}
