//! The increasing sequence underlying every evaluation in this crate, with
//! numerically careful accessors for derived quantities.
//!
//! The table holds the prefix of the sequence defined by
//! `lambda[0] = 0`, `lambda[k+1] = (lambda[k] + sqrt(lambda[k]^2 + 4)) / 2`.
//! Its reciprocals `1/lambda[k+1]` form the fixed point of the normalized
//! moment transform (see [`crate::moments`]), and the map
//! `psi(z) = z - 1/z` steps the sequence down: `psi(lambda[k+1]) = lambda[k]`.

use crate::arith::{CompensatedSum, Scalar};
use crate::error::{Error, Result};

/// Hard cap on eagerly built table sizes; exceeding it is a capacity error,
/// never silent truncation.
pub const DEFAULT_NMAX_CAP: usize = 1 << 24;

/// Eagerly built prefix `lambda[0..=nmax]` with O(1) lookup.
///
/// Immutable after construction, so shared references can be used freely
/// across threads. Construction is a pure forward recursion with all
/// summands positive, so no cancellation occurs at any index.
#[derive(Clone, Debug)]
pub struct LambdaTable<S: Scalar> {
    values: Vec<S>,
}

impl<S: Scalar> LambdaTable<S> {
    /// Builds `lambda[0..=nmax]` under the default capacity cap.
    pub fn build(nmax: usize) -> Result<Self> {
        Self::build_with_cap(nmax, DEFAULT_NMAX_CAP)
    }

    pub fn build_with_cap(nmax: usize, cap: usize) -> Result<Self> {
        if nmax > cap {
            return Err(Error::Capacity {
                requested: nmax,
                cap,
            });
        }
        let four = S::from_f64(4.0);
        let half = S::from_f64(0.5);
        let mut values = Vec::with_capacity(nmax + 1);
        values.push(S::ZERO);
        let mut x = S::ZERO;
        for _ in 0..nmax {
            x = (x + (x * x + four).sqrt()) * half;
            values.push(x);
        }
        Ok(LambdaTable { values })
    }

    /// Largest valid index.
    pub fn nmax(&self) -> usize {
        self.values.len() - 1
    }

    /// Significant decimal digits of the arithmetic backend.
    pub fn precision_digits(&self) -> u32 {
        S::PRECISION_DIGITS
    }

    /// `lambda[k]`. Panics if `k` is out of range; use the checked operations
    /// for anything index-dependent on user input.
    #[inline]
    pub fn lambda(&self, k: usize) -> S {
        self.values[k]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index > self.nmax() {
            Err(Error::IndexOutOfRange {
                index,
                limit: self.nmax(),
            })
        } else {
            Ok(())
        }
    }

    /// `n`-th moment of the fixed point, `1/lambda[n+1]`.
    pub fn moment(&self, n: usize) -> Result<S> {
        self.check_index(n + 1)?;
        Ok(self.values[n + 1].recip())
    }

    /// `lambda[n] - lambda[n - width]`, evaluated as the cancellation-free
    /// sum `sum_{k=1..width} 1/lambda[n+1-k]`.
    ///
    /// The difference form loses digits when `width << n`; the sum form does
    /// not, because every summand is positive.
    pub fn lambda_gap(&self, n: usize, width: usize) -> Result<S> {
        if width == 0 || width > n {
            return Err(Error::InvalidArgument(format!(
                "lambda_gap requires 1 <= width <= n (got n={n}, width={width})"
            )));
        }
        self.check_index(n)?;
        let mut acc = CompensatedSum::new();
        for k in 1..=width {
            acc.add(self.values[n + 1 - k].recip());
        }
        Ok(acc.value())
    }

    /// `ln(lambda[n+1] / lambda[n])`, evaluated as `ln_1p` of the increment
    /// `1/(lambda[n] * lambda[n+1])`.
    ///
    /// The ratio is `1 + O(1/n)`, where a naive logarithm loses precision;
    /// the increment form follows from `lambda[n+1] - lambda[n] =
    /// 1/lambda[n+1]`.
    pub fn log_step(&self, n: usize) -> Result<S> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "log_step requires n >= 1".to_string(),
            ));
        }
        self.check_index(n + 1)?;
        Ok((self.values[n] * self.values[n + 1]).recip().ln_1p())
    }
}
