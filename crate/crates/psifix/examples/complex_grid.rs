//! Sweep f over a rectangle in the complex plane and emit the CSV records
//! used for plotting; the row at the pole z = -1 carries its flag instead
//! of clean digits.
//!
//! Run with: cargo run --example complex_grid

use psifix::grid::CSV_HEADER;
use psifix::{sweep, EvalConfig, GridSpec, LambdaTable};

fn main() -> psifix::Result<()> {
    let cfg = EvalConfig {
        n_max: 1 << 16,
        ..EvalConfig::default()
    };
    let table = LambdaTable::<f64>::build(cfg.n_max + 1)?;
    let spec = GridSpec {
        re_min: -1.5,
        re_max: 2.5,
        im_min: -1.0,
        im_max: 1.0,
        re_steps: 9,
        im_steps: 5,
        tol: 1e-8,
    };
    let records = sweep(&spec, &cfg, &table)?;
    println!("{CSV_HEADER}");
    for r in &records {
        println!("{}", r.to_csv_row());
    }
    eprintln!(
        "{} records; flags other than ok: {}",
        records.len(),
        records
            .iter()
            .filter(|r| r.flag != psifix::GridFlag::Ok)
            .count()
    );
    Ok(())
}
