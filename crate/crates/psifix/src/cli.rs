//! Command-line front end: sequence dumps, point evaluation, grid sweeps,
//! certified brackets, and the verification suite runner.
//!
//! Exit codes: 0 success, 1 evaluation diagnostic (or failed verification),
//! 2 usage or capacity error. Mathematical singularities are reported
//! through flags, never as aborts. Identical invocations produce
//! byte-identical output for a fixed precision mode.

use crate::arith::{Complex, Dd, Scalar};
use crate::error::Error;
use crate::eval::{
    certified_bracket, eval_bernstein, eval_mellin, seed_gap_bound, EvalConfig, EvalResult,
};
use crate::grid::{sweep, GridSpec, CSV_HEADER};
use crate::seq::LambdaTable;
use crate::verify::{run_suite, Suite};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "psifix",
    version,
    about = "Fixed-point moment sequence and its Bernstein/Mellin transforms on the complex plane"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Target error proxy for evaluations.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Iteration depth ceiling; tables extend one entry past it.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    nmax: usize,
    /// Arithmetic backend.
    #[arg(long, global = true, value_enum, default_value_t = PrecisionArg::Standard)]
    precision: PrecisionArg,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (standard output when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampling-based checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Dump a sequence prefix as (index, value) rows
    Seq {
        #[arg(value_enum)]
        kind: SeqKind,
        /// Largest index to dump
        #[arg(long)]
        n: usize,
    },
    /// Evaluate f or F at one complex point (prints a JSON object)
    Eval {
        /// Point as re,im
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        z: (f64, f64),
        #[arg(long, value_enum)]
        which: WhichArg,
    },
    /// Evaluate f over a rectangle and write one record per grid point
    Grid {
        #[arg(long, allow_negative_numbers = true)]
        re_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        re_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        im_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        im_max: f64,
        #[arg(long)]
        re_steps: usize,
        #[arg(long)]
        im_steps: usize,
    },
    /// Certified bracket for f(s) on 0 < s <= 1 at a fixed depth
    Bracket {
        #[arg(long)]
        s: f64,
        /// Iteration depth
        #[arg(long)]
        n: usize,
    },
    /// Run verification suites and print one line per check
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeqKind {
    Lambda,
    Moment,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WhichArg {
    /// Bernstein transform f
    F,
    /// Mellin transform F = 1/f(z+1)
    #[value(name = "F", alias = "mellin")]
    CapF,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrecisionArg {
    Standard,
    Extended,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Sequences,
    Dynamics,
    Evaluator,
    Moments,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Sequences => Suite::Sequences,
            SuiteArg::Dynamics => Suite::Dynamics,
            SuiteArg::Evaluator => Suite::Evaluator,
            SuiteArg::Moments => Suite::Moments,
            SuiteArg::All => Suite::All,
        }
    }
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im (got {s:?})"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("bad re: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad im: {e}"))?;
    Ok((re, im))
}

enum RunError {
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Domain(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

/// Entry point used by the binary: real arguments, standard output.
pub fn run() -> i32 {
    let mut stdout = io::stdout();
    run_from(std::env::args(), &mut stdout)
}

/// Testable entry point: explicit arguments and output sink.
pub fn run_from<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not errors
            if e.use_stderr() {
                eprint!("{e}");
                return 2;
            }
            print!("{e}");
            return 0;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(RunError::Domain(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(RunError::Io(e)) => {
            eprintln!("io error: {e}");
            2
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, RunError> {
    let mut sink: Box<dyn Write + '_> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(out),
    };
    let code = match cli.cmd {
        Cmd::Seq { kind, n } => cmd_seq(kind, n, cli.format, &mut sink)?,
        Cmd::Eval { z, which } => {
            let cfg = config(&cli);
            match cli.precision {
                PrecisionArg::Standard => cmd_eval::<f64>(z, which, &cfg, &mut sink)?,
                PrecisionArg::Extended => cmd_eval::<Dd>(z, which, &cfg, &mut sink)?,
            }
        }
        Cmd::Grid {
            re_min,
            re_max,
            im_min,
            im_max,
            re_steps,
            im_steps,
        } => {
            let spec = GridSpec {
                re_min,
                re_max,
                im_min,
                im_max,
                re_steps,
                im_steps,
                tol: cli.tol,
            };
            let cfg = config(&cli);
            match cli.precision {
                PrecisionArg::Standard => cmd_grid::<f64>(&spec, &cfg, cli.format, &mut sink)?,
                PrecisionArg::Extended => cmd_grid::<Dd>(&spec, &cfg, cli.format, &mut sink)?,
            }
        }
        Cmd::Bracket { s, n } => match cli.precision {
            PrecisionArg::Standard => cmd_bracket::<f64>(s, n, cli.format, &mut sink)?,
            PrecisionArg::Extended => cmd_bracket::<Dd>(s, n, cli.format, &mut sink)?,
        },
        Cmd::Verify { suite } => {
            // verification always runs on the standard backend
            let table = LambdaTable::<f64>::build(cli.nmax + 1)?;
            let cfg = config(&cli);
            let checks = run_suite(suite.into(), &table, &cfg, cli.seed)?;
            let mut all_pass = true;
            for c in &checks {
                writeln!(sink, "{c}")?;
                all_pass &= c.passed;
            }
            if all_pass {
                0
            } else {
                1
            }
        }
    };
    sink.flush()?;
    Ok(code)
}

fn config(cli: &Cli) -> EvalConfig {
    EvalConfig {
        tol: cli.tol,
        n_max: cli.nmax,
        ..EvalConfig::default()
    }
}

// Sequence dumps are regression fixtures, so they always run on the
// extended backend and emit correctly rounded shortest f64 decimals; a pure
// f64 reciprocal can land one ulp off the nearest double.
fn cmd_seq(kind: SeqKind, n: usize, format: FormatArg, w: &mut dyn Write) -> Result<i32, RunError> {
    let table = LambdaTable::<Dd>::build(match kind {
        SeqKind::Lambda => n,
        SeqKind::Moment => n + 1,
    })?;
    for k in 0..=n {
        let v = match kind {
            SeqKind::Lambda => table.lambda(k),
            SeqKind::Moment => table.moment(k)?,
        }
        .to_f64();
        match format {
            FormatArg::Csv => writeln!(w, "{k},{v}")?,
            FormatArg::Json => writeln!(w, "{}", json!({ "n": k, "value": v }))?,
        }
    }
    Ok(0)
}

fn cmd_eval<S: Scalar>(
    (re, im): (f64, f64),
    which: WhichArg,
    cfg: &EvalConfig,
    w: &mut dyn Write,
) -> Result<i32, RunError> {
    let table = LambdaTable::<S>::build(cfg.n_max + 1)?;
    let z = Complex::<S>::from_f64(re, im);
    let r: EvalResult<S> = match which {
        WhichArg::F => eval_bernstein(z, cfg, &table)?,
        WhichArg::CapF => eval_mellin(z, cfg, &table)?,
    };
    let (value_re, value_im) = match r.value.finite() {
        Some(v) => v.to_f64_pair(),
        None => (f64::INFINITY, f64::INFINITY),
    };
    writeln!(
        w,
        "{}",
        json!({
            "re": re,
            "im": im,
            "value_re": value_re,
            "value_im": value_im,
            "err": r.error_estimate.to_f64(),
            "n_used": r.n_used,
            "flags": r.flags.names(),
        })
    )?;
    Ok(if r.flags.is_empty() { 0 } else { 1 })
}

fn cmd_grid<S: Scalar>(
    spec: &GridSpec,
    cfg: &EvalConfig,
    format: FormatArg,
    w: &mut dyn Write,
) -> Result<i32, RunError> {
    let table = LambdaTable::<S>::build(cfg.n_max + 1)?;
    let records = sweep(spec, cfg, &table)?;
    match format {
        FormatArg::Csv => {
            writeln!(w, "{CSV_HEADER}")?;
            for r in &records {
                writeln!(w, "{}", r.to_csv_row())?;
            }
        }
        FormatArg::Json => {
            for r in &records {
                writeln!(
                    w,
                    "{}",
                    serde_json::to_string(r).expect("record serializes")
                )?;
            }
        }
    }
    Ok(0)
}

fn cmd_bracket<S: Scalar>(
    s: f64,
    n: usize,
    format: FormatArg,
    w: &mut dyn Write,
) -> Result<i32, RunError> {
    let table = LambdaTable::<S>::build(n + 1)?;
    let (lo, hi) = certified_bracket(S::from_f64(s), n, &table)?;
    let bound = seed_gap_bound(S::from_f64(s), n, &table)?;
    let (lo, hi, bound) = (lo.to_f64(), hi.to_f64(), bound.to_f64());
    match format {
        FormatArg::Csv => {
            writeln!(w, "s,n,lo,hi,width,gap_bound")?;
            writeln!(w, "{s},{n},{lo},{hi},{},{bound}", hi - lo)?;
        }
        FormatArg::Json => {
            writeln!(
                w,
                "{}",
                json!({
                    "s": s,
                    "n": n,
                    "lo": lo,
                    "hi": hi,
                    "width": hi - lo,
                    "gap_bound": bound,
                })
            )?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run_from(args.iter().copied(), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn seq_lambda_golden_rows() {
        let (code, out) = run_capture(&["psifix", "seq", "lambda", "--n", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0,0\n1,1\n2,1.618033988749895\n");
    }

    #[test]
    fn seq_lambda_single_row() {
        let (code, out) = run_capture(&["psifix", "seq", "lambda", "--n", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0,0\n");
    }

    #[test]
    fn seq_moment_golden_rows() {
        // 0.6180339887498949 is the shortest representation of the double
        // nearest (sqrt(5) - 1)/2.
        let (code, out) = run_capture(&["psifix", "seq", "moment", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0,1\n1,0.6180339887498949\n");
    }

    #[test]
    fn seq_json_rows() {
        let (code, out) = run_capture(&["psifix", "seq", "lambda", "--n", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        let v: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(v["n"], 1);
        assert_eq!(v["value"], 1.0);
    }

    #[test]
    fn eval_at_one_is_clean() {
        let (code, out) = run_capture(&[
            "psifix", "eval", "--z", "1,0", "--which", "f", "--nmax", "32768",
        ]);
        assert_eq!(code, 0, "output: {out}");
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert!((v["value_re"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(v["flags"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn eval_at_pole_sets_exit_one() {
        let (code, out) = run_capture(&[
            "psifix", "eval", "--z", "-1,0", "--which", "f", "--nmax", "32768",
        ]);
        assert_eq!(code, 1, "output: {out}");
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert!(!v["flags"].as_array().unwrap().is_empty());
    }

    #[test]
    fn eval_mellin_at_three() {
        let (code, out) = run_capture(&[
            "psifix", "eval", "--z", "3,0", "--which", "F", "--nmax", "32768",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        // 1/lambda_4
        let t = LambdaTable::<f64>::build(4).unwrap();
        let want = 1.0 / t.lambda(4);
        assert!((v["value_re"].as_f64().unwrap() - want).abs() < 1e-9);
    }

    #[test]
    fn grid_csv_has_header_and_rows() {
        let (code, out) = run_capture(&[
            "psifix",
            "grid",
            "--re-min",
            "0",
            "--re-max",
            "2",
            "--im-min",
            "-1",
            "--im-max",
            "1",
            "--re-steps",
            "3",
            "--im-steps",
            "3",
            "--nmax",
            "16384",
            "--tol",
            "1e-8",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "re,im,f_re,f_im,err,n_used,flag");
        // center row, middle record is z = 1
        let center: Vec<&str> = lines[5].split(',').collect();
        assert_eq!(center[0], "1");
        assert_eq!(center[1], "0");
        let f_re: f64 = center[2].parse().unwrap();
        assert!((f_re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn grid_rejects_degenerate_bounds() {
        let (code, _) = run_capture(&[
            "psifix",
            "grid",
            "--re-min",
            "2",
            "--re-max",
            "0",
            "--im-min",
            "-1",
            "--im-max",
            "1",
            "--re-steps",
            "3",
            "--im-steps",
            "3",
            "--nmax",
            "4096",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn bracket_csv_output() {
        let (code, out) = run_capture(&["psifix", "bracket", "--s", "0.5", "--n", "256"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "s,n,lo,hi,width,gap_bound");
        let row: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
        let (lo, hi, width, bound) = (row[2], row[3], row[4], row[5]);
        assert!(lo <= hi && width <= bound);
    }

    #[test]
    fn bracket_rejects_out_of_domain_s() {
        let (code, _) = run_capture(&["psifix", "bracket", "--s", "1.5", "--n", "64"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn determinism_of_repeated_invocations() {
        let args = [
            "psifix",
            "grid",
            "--re-min",
            "0",
            "--re-max",
            "1",
            "--im-min",
            "0",
            "--im-max",
            "1",
            "--re-steps",
            "2",
            "--im-steps",
            "2",
            "--nmax",
            "8192",
            "--tol",
            "1e-8",
        ];
        let (c1, o1) = run_capture(&args);
        let (c2, o2) = run_capture(&args);
        assert_eq!((c1, o1.clone()), (c2, o2));
        assert!(!o1.is_empty());
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _) = run_capture(&["psifix", "eval", "--z", "nonsense", "--which", "f"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["psifix", "seq", "lambda"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn capacity_errors_exit_two() {
        let (code, _) = run_capture(&["psifix", "seq", "lambda", "--n", "99999999999"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn extended_precision_eval_runs() {
        let (code, out) = run_capture(&[
            "psifix",
            "eval",
            "--z",
            "0.5,0",
            "--which",
            "f",
            "--nmax",
            "16384",
            "--tol",
            "1e-12",
            "--precision",
            "extended",
        ]);
        assert_eq!(code, 0, "output: {out}");
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert!((v["value_re"].as_f64().unwrap() - 0.5840000607973659).abs() < 1e-11);
    }
}
