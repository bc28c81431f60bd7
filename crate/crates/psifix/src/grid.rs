//! Rectangular complex-plane sampling for plots and regression fixtures.

use crate::arith::{Complex, Scalar};
use crate::error::{Error, Result};
use crate::eval::{eval_bernstein, EvalConfig};
use crate::seq::LambdaTable;
use serde::Serialize;
use std::fmt;

/// A rectangular sampling request. `re_steps`/`im_steps` count grid points
/// per axis including both endpoints.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub re_steps: usize,
    pub im_steps: usize,
    pub tol: f64,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let ordered = |a: f64, b: f64| !a.is_nan() && !b.is_nan() && a < b;
        if !ordered(self.re_min, self.re_max) || !ordered(self.im_min, self.im_max) {
            return Err(Error::InvalidArgument(format!(
                "grid bounds must satisfy re_min < re_max and im_min < im_max \
                 (got [{}, {}] x [{}, {}])",
                self.re_min, self.re_max, self.im_min, self.im_max
            )));
        }
        if self.re_steps < 2 || self.im_steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 steps per axis (got {} x {})",
                self.re_steps, self.im_steps
            )));
        }
        Ok(())
    }
}

/// Dominant diagnostic for a grid point, in reporting priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridFlag {
    Ok,
    Pole,
    Overflow,
    Maxdepth,
}

impl fmt::Display for GridFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GridFlag::Ok => "ok",
            GridFlag::Pole => "pole",
            GridFlag::Overflow => "overflow",
            GridFlag::Maxdepth => "maxdepth",
        };
        f.write_str(s)
    }
}

/// One output row. Values at the point at infinity carry non-finite
/// `f_re`/`f_im` (rendered as `inf` in CSV and `null` in JSON).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridRecord {
    pub re: f64,
    pub im: f64,
    pub f_re: f64,
    pub f_im: f64,
    pub err: f64,
    pub n_used: usize,
    pub flag: GridFlag,
}

pub const CSV_HEADER: &str = "re,im,f_re,f_im,err,n_used,flag";

impl GridRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.re, self.im, self.f_re, self.f_im, self.err, self.n_used, self.flag
        )
    }
}

/// Evaluates `f` over the grid, iterating the imaginary axis in the outer
/// loop and the real axis in the inner loop (row-major over im then re).
/// Output is deterministic for a fixed spec, table, and backend.
pub fn sweep<S: Scalar>(
    spec: &GridSpec,
    cfg: &EvalConfig,
    table: &LambdaTable<S>,
) -> Result<Vec<GridRecord>> {
    spec.validate()?;
    let cfg = EvalConfig {
        tol: spec.tol,
        ..*cfg
    };
    let dre = (spec.re_max - spec.re_min) / (spec.re_steps - 1) as f64;
    let dim = (spec.im_max - spec.im_min) / (spec.im_steps - 1) as f64;
    let mut out = Vec::with_capacity(spec.re_steps * spec.im_steps);
    for iy in 0..spec.im_steps {
        let im = spec.im_min + dim * iy as f64;
        for ix in 0..spec.re_steps {
            let re = spec.re_min + dre * ix as f64;
            let r = eval_bernstein(Complex::<S>::from_f64(re, im), &cfg, table)?;
            let (f_re, f_im) = match r.value.finite() {
                Some(w) => w.to_f64_pair(),
                None => (f64::INFINITY, f64::INFINITY),
            };
            let flag = if r.flags.pole_proximity {
                GridFlag::Pole
            } else if r.flags.overflow {
                GridFlag::Overflow
            } else if r.flags.max_depth_reached {
                GridFlag::Maxdepth
            } else {
                GridFlag::Ok
            };
            out.push(GridRecord {
                re,
                im,
                f_re,
                f_im,
                err: r.error_estimate.to_f64(),
                n_used: r.n_used,
                flag,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn table() -> &'static LambdaTable<f64> {
        static T: OnceLock<LambdaTable<f64>> = OnceLock::new();
        T.get_or_init(|| LambdaTable::build((1 << 14) + 1).unwrap())
    }

    fn cfg() -> EvalConfig {
        EvalConfig {
            n_max: 1 << 14,
            ..EvalConfig::default()
        }
    }

    #[test]
    fn validation_rejects_degenerate_specs() {
        let mut s = GridSpec {
            re_min: 0.0,
            re_max: 2.0,
            im_min: -1.0,
            im_max: 1.0,
            re_steps: 3,
            im_steps: 3,
            tol: 1e-8,
        };
        assert!(s.validate().is_ok());
        s.re_steps = 1;
        assert!(s.validate().is_err());
        s.re_steps = 3;
        s.im_min = 2.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn three_by_three_grid_centers_on_one() {
        let spec = GridSpec {
            re_min: 0.0,
            re_max: 2.0,
            im_min: -1.0,
            im_max: 1.0,
            re_steps: 3,
            im_steps: 3,
            tol: 1e-8,
        };
        let rows = sweep(&spec, &cfg(), table()).unwrap();
        assert_eq!(rows.len(), 9);
        // row-major over im then re: center of the middle row is z = 1
        let center = &rows[4];
        assert_eq!((center.re, center.im), (1.0, 0.0));
        assert!((center.f_re - 1.0).abs() < 1e-8 && center.f_im.abs() < 1e-8);
        // ordering: first row sweeps re at im = -1
        assert_eq!((rows[0].re, rows[0].im), (0.0, -1.0));
        assert_eq!((rows[2].re, rows[2].im), (2.0, -1.0));
        assert_eq!((rows[3].re, rows[3].im), (0.0, 0.0));
    }

    #[test]
    fn pole_point_is_flagged() {
        let spec = GridSpec {
            re_min: -1.0,
            re_max: 1.0,
            im_min: -1.0,
            im_max: 1.0,
            re_steps: 3,
            im_steps: 3,
            tol: 1e-8,
        };
        let rows = sweep(&spec, &cfg(), table()).unwrap();
        let at_pole = rows
            .iter()
            .find(|r| r.re == -1.0 && r.im == 0.0)
            .expect("grid contains -1");
        assert_eq!(at_pole.flag, GridFlag::Pole);
    }

    #[test]
    fn minimal_grid_and_determinism() {
        let spec = GridSpec {
            re_min: 0.2,
            re_max: 1.2,
            im_min: -0.4,
            im_max: 0.6,
            re_steps: 2,
            im_steps: 2,
            tol: 1e-8,
        };
        let a = sweep(&spec, &cfg(), table()).unwrap();
        assert_eq!(a.len(), 4);
        let b = sweep(&spec, &cfg(), table()).unwrap();
        let lines_a: Vec<String> = a.iter().map(|r| r.to_csv_row()).collect();
        let lines_b: Vec<String> = b.iter().map(|r| r.to_csv_row()).collect();
        assert_eq!(lines_a, lines_b);
        for r in &a {
            if r.flag == GridFlag::Ok {
                assert!(r.err <= spec.tol);
            }
        }
    }

    #[test]
    fn csv_row_formats_infinity_as_inf() {
        let rec = GridRecord {
            re: -1.0,
            im: 0.0,
            f_re: f64::INFINITY,
            f_im: f64::INFINITY,
            err: f64::INFINITY,
            n_used: 64,
            flag: GridFlag::Overflow,
        };
        assert_eq!(rec.to_csv_row(), "-1,0,inf,inf,inf,64,overflow");
        // JSON renders non-finite floats as null
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"f_re\":null"));
        assert!(json.contains("\"flag\":\"overflow\""));
    }
}
