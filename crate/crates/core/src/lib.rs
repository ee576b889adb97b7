//! Real branches of the Lambert W function by iterated quadratic correction.
//!
//! `W(x) = y` is recovered from `y·e^y = x` by rewriting the equation in a
//! logarithmic form, substituting `iterate + a` for the unknown, replacing
//! `ln(iterate + a)` with the rational increment `ln iterate + 2a/(a + 2·iterate)`,
//! and solving the resulting quadratic `a² − l·a − m = 0` for the correction.
//! Repeating the correction converges in a handful of steps from seeds far away
//! from the root.
//!
//! Modules:
//!
//! * [`iteration`] - the increment approximation, the quadratic step, the
//!   generic correction loop and its trace.
//! * [`lambertw`] - branch solvers for `W₀` and `W₋₁` with seed schedules.
//! * [`baselines`] - Newton, Halley and a bisection oracle for cross-checks.
//! * [`equations`] - transcendental equations that reduce to `W`.
//!
//! ```
//! use lwq_core::{lambert_w, Branch, SolveConfig};
//!
//! let r = lambert_w(1.0, Branch::Principal, &SolveConfig::default()).unwrap();
//! assert!((r.value - 0.567_143_290_409_783_8).abs() < 1e-14);
//! ```

pub mod baselines;
pub mod equations;
mod error;
pub mod iteration;
pub mod lambertw;

pub use error::{Error, Result};
pub use iteration::{
    error_estimate, iterate, ln_increment_approx, log_inverse_solve, quad_solve, FnModel,
    IterationStep, IterationTrace, QuadraticCoefficients, QuadraticModel, RootSign, SolveConfig,
    TraceStatus,
};
pub use lambertw::{
    lambert_w, lambert_w_using, seed_sweep, w0, w0_from_ln, w_negative, Branch, BranchResult,
    Method, SeedSchedule,
};

/// `1/e` rounded to double precision.
pub const INV_E: f64 = 0.367_879_441_171_442_33;

/// `e^(1/e)`, the upper end of the convergent power-tower range.
pub const E_POW_INV_E: f64 = 1.444_667_861_009_766;
