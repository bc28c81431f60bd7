//! The normalized moment transform on finite sequence prefixes, fixed-point
//! verification, and complete-monotonicity diagnostics.
//!
//! The transform sends `(a_0, a_1, ...)` to the sequence of reciprocal
//! partial sums `1 / (a_0 + ... + a_n)`. Its fixed point is the sequence
//! `m_n = 1/lambda[n+1]` served by [`LambdaTable::moment`]. All semantics
//! here are prefix-local: entry `n` of the output depends only on entries
//! `0..=n` of the input, so truncation is exact.

use crate::arith::{CompensatedSum, Scalar};
use crate::error::{Error, Result};
use crate::seq::LambdaTable;

/// A finite prefix of a real sequence treated as candidate moments.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSeq<S: Scalar> {
    values: Vec<S>,
}

impl<S: Scalar> MomentSeq<S> {
    pub fn from_values(values: Vec<S>) -> Self {
        MomentSeq { values }
    }

    /// The fixed-point prefix `(m_0, ..., m_n)` drawn from the table.
    pub fn fixed_point_prefix(table: &LambdaTable<S>, n: usize) -> Result<Self> {
        let mut values = Vec::with_capacity(n + 1);
        for k in 0..=n {
            values.push(table.moment(k)?);
        }
        Ok(MomentSeq { values })
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether the leading entry is exactly one.
    pub fn is_normalized(&self) -> bool {
        self.values.first().is_some_and(|v| *v == S::ONE)
    }

    /// Reciprocal partial sums, same length. Errors if a partial sum hits
    /// exactly zero (reporting the offending index).
    pub fn transform(&self) -> Result<MomentSeq<S>> {
        let mut acc = CompensatedSum::new();
        let mut out = Vec::with_capacity(self.values.len());
        for (n, a) in self.values.iter().enumerate() {
            acc.add(*a);
            let sum = acc.value();
            if sum == S::ZERO {
                return Err(Error::ZeroPartialSum { index: n });
            }
            out.push(sum.recip());
        }
        Ok(MomentSeq { values: out })
    }

    /// `k`-fold application of [`MomentSeq::transform`]. No convergence claim
    /// is made; see the regression pins in the tests for observed behavior.
    pub fn iterate(&self, k: usize) -> Result<MomentSeq<S>> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.transform()?;
        }
        Ok(cur)
    }

    /// Builds the signed difference table to `depth` and reports the most
    /// negative entry. Passes when no entry falls below `-tol`.
    pub fn completely_monotone(&self, depth: usize, tol: S) -> Result<MonotoneReport<S>> {
        let table = DiffTable::new(&self.values, depth)?;
        let mut worst = self.values[0];
        let mut at = (0usize, 0usize);
        for (k, row) in table.rows().iter().enumerate() {
            for (n, v) in row.iter().enumerate() {
                if *v < worst {
                    worst = *v;
                    at = (k, n);
                }
            }
        }
        Ok(MonotoneReport {
            pass: worst >= -tol,
            worst,
            at,
        })
    }
}

/// Result of a complete-monotonicity check.
#[derive(Clone, Copy, Debug)]
pub struct MonotoneReport<S: Scalar> {
    pub pass: bool,
    /// Most negative table entry encountered.
    pub worst: S,
    /// Its position as (difference order, offset).
    pub at: (usize, usize),
}

/// Triangular table of signed forward differences: row `k` holds
/// `(-1)^k diff^k a_n`, so row `k+1` is the entrywise difference
/// `row[k][n] - row[k][n+1]`.
///
/// Forward differencing loses roughly a digit per level, so depth limits are
/// a calibration matter: ~12 at standard precision, ~25 at extended.
#[derive(Clone, Debug)]
pub struct DiffTable<S: Scalar> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> DiffTable<S> {
    pub fn new(seq: &[S], depth: usize) -> Result<Self> {
        if depth + 1 > seq.len() {
            return Err(Error::InvalidArgument(format!(
                "difference depth {depth} needs at least {} entries (got {})",
                depth + 1,
                seq.len()
            )));
        }
        let mut rows = Vec::with_capacity(depth + 1);
        rows.push(seq.to_vec());
        for k in 0..depth {
            let prev = &rows[k];
            let next: Vec<S> = prev.windows(2).map(|w| w[0] - w[1]).collect();
            rows.push(next);
        }
        Ok(DiffTable { rows })
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Worst deviation of `m_n * (m_0 + ... + m_n)` from one over `n <= n_check`,
/// with the moments drawn from the table.
pub fn fixed_point_residual<S: Scalar>(table: &LambdaTable<S>, n_check: usize) -> Result<S> {
    let mut acc = CompensatedSum::new();
    let mut worst = S::ZERO;
    for n in 0..=n_check {
        let m = table.moment(n)?;
        acc.add(m);
        let resid = (m * acc.value() - S::ONE).abs();
        worst = worst.max(resid);
    }
    Ok(worst)
}
