//! Numerics for the fixed point of the normalized moment transform and the
//! complex-plane continuation of its Bernstein and Mellin transforms.
//!
//! The moment transform sends a positive sequence to its reciprocal partial
//! sums; its unique normalized fixed point `(m_n)` satisfies
//! `m_n (m_0 + ... + m_n) = 1`. Writing `lambda[n+1] = 1/m_n` gives an
//! increasing sequence pinned down by `lambda[0] = 0` and
//! `lambda[n+1] = phi(lambda[n])` with `phi(x) = (x + sqrt(x^2 + 4))/2`.
//! The Bernstein transform `f` of the fixed-point measure interpolates that
//! sequence (`f(n) = lambda[n]`), satisfies `f(z) = psi(f(z+1))` for
//! `psi(z) = z - 1/z`, and extends meromorphically to the whole plane as an
//! iteration limit: `psi` applied `n` times to
//! `lambda[n] (lambda[n+1]/lambda[n])^z` converges to `f(z)`. The Mellin
//! transform is its reciprocal shift, `F(z) = 1/f(z+1)`, and `F(n) = m_n`.
//!
//! The crate provides:
//!
//! - [`seq`]: the cached `lambda` prefix with cancellation-free derived
//!   quantities ([`LambdaTable`]).
//! - [`dynamics`]: `psi` on the Riemann sphere, the inverse branch `phi`,
//!   iteration, and sampled disc-containment certificates.
//! - [`eval`]: adaptive evaluation of `f` and `F` anywhere in the plane with
//!   error proxies and diagnostic flags, certified two-sided brackets on the
//!   real axis, and the explicit gap bound behind them.
//! - [`moments`]: the moment transform on finite prefixes, fixed-point
//!   residuals, and complete-monotonicity diagnostics.
//! - [`grid`]: rectangular sweeps producing stable CSV/JSON records.
//! - [`verify`]: measured checks over all of the above.
//!
//! Everything is generic over the arithmetic backend ([`arith::Scalar`]):
//! plain `f64`, or the double-double [`Dd`] for ~31-digit oracle work.
//!
//! See the `examples/` directory for runnable tours of each capability; the
//! thin `psifix` binary wraps the same functionality as subcommands.

pub mod arith;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod eval;
pub mod grid;
pub mod moments;
pub mod seq;
pub mod verify;

pub use arith::{Complex, Dd, Scalar};
pub use dynamics::{check_disc_step, phi, phi_iter, psi, psi_iter, DiscCert, ExtComplex};
pub use error::{Error, Result};
pub use eval::{
    certified_bracket, eval_bernstein, eval_bernstein_real, eval_mellin,
    functional_equation_residual, seed_backward, seed_forward, seed_gap_bound, EvalConfig,
    EvalFlags, EvalResult,
};
pub use grid::{sweep, GridFlag, GridRecord, GridSpec};
pub use moments::{fixed_point_residual, DiffTable, MomentSeq, MonotoneReport};
pub use seq::{LambdaTable, DEFAULT_NMAX_CAP};
