//! Branch solvers for the two real branches of `W`.
//!
//! Two transforms of `y·e^y = x` are iterated:
//!
//! * [`Method::M1`] substitutes `z = e^y`, giving `z·ln z = x` for `x ≥ 0` and
//!   `ln z / z = X` (with `X = −x`) on the negative axis; the answer is `ln z`.
//! * [`Method::M2`] takes logarithms, giving `y + ln y = ln x` and
//!   `ln y − y = ln X`; it never needs `x` itself, only `ln x`.
//!
//! On `[−1/e, 0)` both roots of the correction quadratic keep the iterate
//! positive: the plus root follows `W₋₁` and the minus root follows `W₀`.
//!
//! Each solver walks a [`SeedSchedule`] and returns the first trace that
//! converges onto the requested branch.

use std::f64::consts::E;

use crate::error::{Error, Result};
use crate::iteration::{
    error_estimate, iterate, quad_solve, IterationStep, IterationTrace, QuadraticModel, RootSign,
    SolveConfig, TraceStatus,
};
use crate::INV_E;

/// Below this magnitude `z = e^y ≈ 1 + x` cannot carry `y` to full relative
/// precision, so the dispatcher prefers the logarithmic transform.
const SMALL_ARG: f64 = 1.490_116_119_384_765_6e-8;

/// `ln X` below which `z = e^y` of the secondary branch overflows.
const LN_OVERFLOW_GUARD: f64 = -690.0;

/// Distance from `−1/e`, in units of `ε·(1/e)`, treated as the branch point.
const BRANCH_POINT_ULPS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `W₀`, defined on `[−1/e, ∞)` with values `≥ −1`.
    Principal,
    /// `W₋₁`, defined on `[−1/e, 0)` with values `≤ −1`.
    Secondary,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Principal => "w0",
            Branch::Secondary => "wm1",
        }
    }

    /// The quadratic root that tracks this branch on the negative axis.
    pub fn root_sign(self) -> RootSign {
        match self {
            Branch::Principal => RootSign::Minus,
            Branch::Secondary => RootSign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Iterate `z = e^y`.
    M1,
    /// Iterate `y` in the logarithmic form.
    M2,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::M1 => "m1",
            Method::M2 => "m2",
        }
    }
}

/// Initial iterates tried in order until one converges.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSchedule {
    candidates: Vec<f64>,
}

impl SeedSchedule {
    pub fn new(candidates: Vec<f64>) -> Result<Self> {
        if candidates.is_empty() {
            return Err(Error::Config("seed schedule is empty".into()));
        }
        if let Some(bad) = candidates.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(Error::Config(format!(
                "seed {bad} is not finite and positive"
            )));
        }
        Ok(Self { candidates })
    }

    pub fn candidates(&self) -> &[f64] {
        &self.candidates
    }

    /// Default schedule for a problem, led by the configured override.
    fn for_problem(problem: Problem, branch: Branch, method: Method, cfg: &SolveConfig) -> Self {
        let defaults: Vec<f64> = match (problem, method) {
            (Problem::Positive { x }, Method::M1) => {
                let top = x.max(1.0);
                vec![1.0, top, top.sqrt()]
            }
            (Problem::Positive { x }, Method::M2) => {
                vec![if x >= 1.0 { 1.0 } else { x }, 0.5, 2.0]
            }
            (Problem::Log { ln_x }, _) => {
                let first = if ln_x >= 0.0 {
                    1.0
                } else {
                    ln_x.exp().max(f64::MIN_POSITIVE)
                };
                vec![first, 0.5, 2.0]
            }
            (Problem::Negative { x, .. }, method) => {
                let y_near = branch_point_series(x, branch);
                match (branch, method) {
                    (Branch::Secondary, Method::M1) => vec![2.0, E, 10.0, 1e3, y_near.exp()],
                    (Branch::Secondary, Method::M2) => vec![1.0, 2.0, E, 10.0, 1e3, y_near],
                    (Branch::Principal, Method::M1) => {
                        vec![2.0, 0.3, 5.0, 1.0 + x, y_near.exp()]
                    }
                    (Branch::Principal, Method::M2) => vec![x, 2.0, 0.3, 5.0, 1.0 + x, y_near],
                }
            }
        };
        let mut candidates = Vec::with_capacity(defaults.len() + 1);
        for s in cfg.seed_override.into_iter().chain(defaults) {
            if s > 0.0 && s.is_finite() && !candidates.contains(&s) {
                candidates.push(s);
            }
        }
        Self { candidates }
    }
}

/// `−W` from the expansion about the branch point, `1 ∓ p + p²/3` with
/// `p = √(2(1 − eX))`.
fn branch_point_series(x: f64, branch: Branch) -> f64 {
    let p = (2.0 * (1.0 - E * x)).max(0.0).sqrt();
    match branch {
        Branch::Principal => 1.0 - p + p * p / 3.0,
        Branch::Secondary => 1.0 + p + p * p / 3.0,
    }
}

/// `(l, m)` for `z·ln z = x`.
///
/// `None` when `ln z + 2` vanishes to rounding (`z = e⁻²`).
pub fn coeffs_m1_pos(z: f64, x: f64) -> Option<(f64, f64)> {
    let lz = z.ln();
    let denom = lz + 2.0;
    if denom.abs() <= 4.0 * f64::EPSILON * lz.abs().max(1.0) {
        return None;
    }
    let zlz = z * lz;
    let l = -(3.0 * zlz + 2.0 * z - x) / denom;
    let m = 2.0 * z * (x - zlz) / denom;
    Some((l, m))
}

/// `(l, m)` for `y + ln y = ln x`, with `ln(x/y)` formed as `ln_x − ln y`.
pub fn coeffs_m2_pos(y: f64, ln_x: f64) -> (f64, f64) {
    let r = ln_x - y.ln();
    let l = -(3.0 * y + 2.0 - r);
    let m = -2.0 * y * (y - r);
    (l, m)
}

/// `(l, m)` for `ln z / z = X`, `X ∈ (0, 1/e]`.
///
/// `None` when `X` is zero.
pub fn coeffs_m1_neg(z: f64, x: f64) -> Option<(f64, f64)> {
    if x == 0.0 {
        return None;
    }
    let lz = z.ln();
    let l = -(3.0 * z * x - lz - 2.0) / x;
    let m = 2.0 * z * (lz - z * x) / x;
    Some((l, m))
}

/// `(l, m)` for `ln y − y = ln X`.
pub fn coeffs_m2_neg(y: f64, ln_x: f64) -> (f64, f64) {
    let r = ln_x - y.ln();
    let l = -(3.0 * y - 2.0 + r);
    let m = -2.0 * y * (y + r);
    (l, m)
}

/// `z·ln z = x`
#[derive(Debug, Clone, Copy)]
pub struct ZLogZ {
    pub x: f64,
}

impl QuadraticModel for ZLogZ {
    fn coefficients(&self, z: f64) -> Option<(f64, f64)> {
        coeffs_m1_pos(z, self.x)
    }

    fn residual(&self, z: f64) -> f64 {
        z * z.ln() - self.x
    }
}

/// `y + ln y = ln x`
#[derive(Debug, Clone, Copy)]
pub struct YPlusLogY {
    pub ln_x: f64,
}

impl QuadraticModel for YPlusLogY {
    fn coefficients(&self, y: f64) -> Option<(f64, f64)> {
        Some(coeffs_m2_pos(y, self.ln_x))
    }

    fn residual(&self, y: f64) -> f64 {
        y + y.ln() - self.ln_x
    }
}

/// `ln z / z = X`, written as `ln z − X·z = 0`
#[derive(Debug, Clone, Copy)]
pub struct LogZOverZ {
    pub x: f64,
}

impl QuadraticModel for LogZOverZ {
    fn coefficients(&self, z: f64) -> Option<(f64, f64)> {
        coeffs_m1_neg(z, self.x)
    }

    fn residual(&self, z: f64) -> f64 {
        z.ln() - self.x * z
    }
}

/// `ln y − y = ln X`
#[derive(Debug, Clone, Copy)]
pub struct LogYMinusY {
    pub ln_x: f64,
}

impl QuadraticModel for LogYMinusY {
    fn coefficients(&self, y: f64) -> Option<(f64, f64)> {
        Some(coeffs_m2_neg(y, self.ln_x))
    }

    fn residual(&self, y: f64) -> f64 {
        y.ln() - y - self.ln_x
    }
}

/// Outcome of one branch evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchResult {
    /// `W(x)` on the requested branch.
    pub value: f64,
    pub branch: Branch,
    /// The transform actually iterated.
    pub method: Method,
    /// Trace of the accepted run (or of the last run tried).
    pub trace: IterationTrace,
    /// `|y·e^y − x|`, or `|y + ln y − ln x|` for the log-domain entry.
    pub residual: f64,
    /// `100·|a_last| / |z_last|`.
    pub error_estimate_pct: f64,
    /// Number of seeds tried.
    pub attempts: usize,
}

impl BranchResult {
    pub fn status(&self) -> TraceStatus {
        self.trace.status
    }

    pub fn converged(&self) -> bool {
        self.trace.converged()
    }

    pub fn iterations(&self) -> usize {
        self.trace.iterations
    }
}

#[derive(Debug, Clone, Copy)]
enum Problem {
    /// `y·e^y = x`, `x > 0`.
    Positive { x: f64 },
    /// `y + ln y = ln_x`.
    Log { ln_x: f64 },
    /// `y·e^{−y} = x` with `x = −x_neg ∈ (0, 1/e)`.
    Negative { x: f64, x_neg: f64 },
}

impl Problem {
    fn run(self, branch: Branch, method: Method, seed: f64, cfg: &SolveConfig) -> IterationTrace {
        let sign = match self {
            Problem::Negative { .. } => branch.root_sign(),
            _ => RootSign::Plus,
        };
        match (self, method) {
            (Problem::Positive { x }, Method::M1) => iterate(ZLogZ { x }, sign, seed, cfg),
            (Problem::Positive { x }, Method::M2) => {
                iterate(YPlusLogY { ln_x: x.ln() }, sign, seed, cfg)
            }
            (Problem::Log { ln_x }, _) => iterate(YPlusLogY { ln_x }, sign, seed, cfg),
            (Problem::Negative { x, .. }, Method::M1) => iterate(LogZOverZ { x }, sign, seed, cfg),
            (Problem::Negative { x, .. }, Method::M2) => {
                iterate(LogYMinusY { ln_x: x.ln() }, sign, seed, cfg)
            }
        }
    }

    /// `W` from the final iterate.
    fn value(self, method: Method, iterate: f64) -> f64 {
        let y = match (self, method) {
            (Problem::Log { .. }, _) | (_, Method::M2) => iterate,
            (_, Method::M1) => iterate.ln(),
        };
        match self {
            Problem::Negative { .. } => -y,
            _ => y,
        }
    }

    fn residual(self, w: f64) -> f64 {
        match self {
            Problem::Positive { x } => (w * w.exp() - x).abs(),
            Problem::Log { ln_x } => (w + w.ln() - ln_x).abs(),
            Problem::Negative { x_neg, .. } => (w * w.exp() - x_neg).abs(),
        }
    }
}

fn on_branch(branch: Branch, w: f64) -> bool {
    let slack = (8.0 * f64::EPSILON).sqrt();
    match branch {
        Branch::Principal => w >= -1.0 - slack,
        Branch::Secondary => w <= -1.0 + slack,
    }
}

fn accepted(trace: &IterationTrace, cfg: &SolveConfig) -> bool {
    trace.converged() || (cfg.fixed_steps.is_some() && trace.status == TraceStatus::MaxIterReached)
}

fn run_schedule(
    problem: Problem,
    branch: Branch,
    method: Method,
    cfg: &SolveConfig,
) -> BranchResult {
    let schedule = SeedSchedule::for_problem(problem, branch, method, cfg);
    let mut last = None;
    for (i, &seed) in schedule.candidates().iter().enumerate() {
        let mut trace = problem.run(branch, method, seed, cfg);
        let mut value = problem.value(method, trace.final_iterate());
        if let Problem::Negative { .. } = problem {
            if accepted(&trace, cfg) && !on_branch(branch, value) {
                trace.status = TraceStatus::WrongBranch;
            }
            // hold the branch invariant against rounding at the branch point
            value = match branch {
                Branch::Principal => value.max(-1.0),
                Branch::Secondary => value.min(-1.0),
            };
        }
        let result = BranchResult {
            value,
            branch,
            method,
            residual: problem.residual(value),
            error_estimate_pct: error_estimate(&trace).unwrap_or(0.0),
            trace,
            attempts: i + 1,
        };
        if accepted(&result.trace, cfg) {
            return result;
        }
        last = Some(result);
    }
    last.expect("seed schedules are never empty")
}

fn finish(result: BranchResult, cfg: &SolveConfig) -> Result<BranchResult> {
    if accepted(&result.trace, cfg) {
        Ok(result)
    } else {
        Err(Error::NonConvergence {
            status: result.trace.status,
            attempts: result.attempts,
        })
    }
}

fn exact_result(value: f64, branch: Branch, method: Method, trace: IterationTrace) -> BranchResult {
    BranchResult {
        value,
        branch,
        method,
        residual: 0.0,
        error_estimate_pct: error_estimate(&trace).unwrap_or(0.0),
        trace,
        attempts: 1,
    }
}

fn zero_result(method: Method) -> BranchResult {
    let mut trace = IterationTrace::new(0.0);
    trace.status = TraceStatus::Converged;
    exact_result(0.0, Branch::Principal, method, trace)
}

/// At `X = 1/e` the two roots merge at `z = e` (`y = 1`), where both
/// coefficients vanish and the correction is zero. In double precision
/// `fl(1/e)` sits above the true branch point, so the recurrences would see
/// no real root at all; the fixed point is recorded directly.
fn branch_point_result(
    branch: Branch,
    method: Method,
    x_neg: f64,
    cfg: &SolveConfig,
) -> BranchResult {
    let (seed, residual) = match method {
        Method::M1 => (E, LogZOverZ { x: INV_E }.residual(E)),
        Method::M2 => (1.0, LogYMinusY { ln_x: -1.0 }.residual(1.0)),
    };
    let mut trace = IterationTrace::new(seed);
    trace.push(
        IterationStep {
            n: 1,
            iterate: seed,
            coeffs: Some(quad_solve(0.0, 0.0)),
            correction: 0.0,
            next_iterate: seed,
            residual,
        },
        cfg.record_trace,
    );
    trace.status = TraceStatus::Converged;
    let mut r = exact_result(-1.0, branch, method, trace);
    r.residual = (-(-1f64).exp() - x_neg).abs();
    r
}

fn check_negative(x_neg: f64) -> Result<f64> {
    if !x_neg.is_finite() {
        return Err(Error::Domain(format!("argument {x_neg} is not finite")));
    }
    if x_neg >= 0.0 {
        return Err(Error::Domain(format!(
            "expected a negative argument, got {x_neg}"
        )));
    }
    let x = -x_neg;
    if x > INV_E * (1.0 + BRANCH_POINT_ULPS * f64::EPSILON) {
        return Err(Error::NoRealSolution { x: x_neg });
    }
    Ok(x)
}

fn is_branch_point(x: f64) -> bool {
    (x - INV_E).abs() <= BRANCH_POINT_ULPS * f64::EPSILON * INV_E
}

fn solve_positive(x: f64, method: Method, cfg: &SolveConfig) -> BranchResult {
    if x == 0.0 {
        return zero_result(method);
    }
    run_schedule(Problem::Positive { x }, Branch::Principal, method, cfg)
}

fn solve_negative(x_neg: f64, branch: Branch, method: Method, cfg: &SolveConfig) -> BranchResult {
    let x = -x_neg;
    if is_branch_point(x) {
        return branch_point_result(branch, method, x_neg, cfg);
    }
    let method =
        if branch == Branch::Secondary && method == Method::M1 && x.ln() < LN_OVERFLOW_GUARD {
            Method::M2
        } else {
            method
        };
    run_schedule(Problem::Negative { x, x_neg }, branch, method, cfg)
}

/// Principal branch for `x ≥ 0`.
///
/// `W₀(0) = 0` exactly. M1 starts from `z = 1` and returns `ln z`; M2 starts
/// from `y = 1` for `x ≥ 1` and from `y = x` below.
pub fn w0(x: f64, method: Method, cfg: &SolveConfig) -> Result<BranchResult> {
    cfg.validate()?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("argument {x} is not finite")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!(
            "w0 expects x >= 0, got {x}; use w_negative"
        )));
    }
    finish(solve_positive(x, method, cfg), cfg)
}

/// Principal branch from `ln x`, for arguments beyond the double range.
pub fn w0_from_ln(ln_x: f64, cfg: &SolveConfig) -> Result<BranchResult> {
    cfg.validate()?;
    if !ln_x.is_finite() {
        return Err(Error::Domain(format!("ln x = {ln_x} is not finite")));
    }
    finish(
        run_schedule(Problem::Log { ln_x }, Branch::Principal, Method::M2, cfg),
        cfg,
    )
}

/// Either real branch for `x_neg ∈ [−1/e, 0)`.
///
/// Arguments up to four rounding units below `−1/e` are taken as the branch
/// point, where both branches return `−1`. For the secondary branch M1 falls
/// back to M2 when `e^{−W}` would overflow.
pub fn w_negative(
    x_neg: f64,
    branch: Branch,
    method: Method,
    cfg: &SolveConfig,
) -> Result<BranchResult> {
    cfg.validate()?;
    check_negative(x_neg)?;
    finish(solve_negative(x_neg, branch, method, cfg), cfg)
}

/// `W(x)` on `branch` with the default transform.
pub fn lambert_w(x: f64, branch: Branch, cfg: &SolveConfig) -> Result<BranchResult> {
    lambert_w_using(x, branch, None, cfg)
}

/// `W(x)` on `branch`; `method = None` picks M1, or M2 for `|x| < 2⁻²⁶` on
/// the principal branch where `e^y` rounds to 1.
pub fn lambert_w_using(
    x: f64,
    branch: Branch,
    method: Option<Method>,
    cfg: &SolveConfig,
) -> Result<BranchResult> {
    cfg.validate()?;
    let method = method.unwrap_or(default_method(x, branch));
    match (branch, x >= 0.0) {
        (Branch::Principal, true) => w0(x, method, cfg),
        (_, false) => w_negative(x, branch, method, cfg),
        (Branch::Secondary, true) => Err(Error::Domain(format!(
            "W-1 is defined only on [-1/e, 0), got {x}"
        ))),
    }
}

fn default_method(x: f64, branch: Branch) -> Method {
    if branch == Branch::Principal && x != 0.0 && x.abs() < SMALL_ARG {
        Method::M2
    } else {
        Method::M1
    }
}

/// Runs the solver once per seed.
///
/// Each seed leads the schedule; a seed that fails falls through to the
/// default schedule, so every run reports the seed it ended on in
/// `trace.seed` and how many it tried in `attempts`. Runs that never
/// converge are returned with their status instead of failing the sweep.
pub fn seed_sweep(
    x: f64,
    seeds: &[f64],
    method: Method,
    branch: Branch,
    cfg: &SolveConfig,
) -> Result<Vec<BranchResult>> {
    cfg.validate()?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("argument {x} is not finite")));
    }
    if let Some(bad) = seeds.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
        return Err(Error::Config(format!(
            "seed {bad} is not finite and positive"
        )));
    }
    if x >= 0.0 && branch == Branch::Secondary {
        return Err(Error::Domain(format!(
            "W-1 is defined only on [-1/e, 0), got {x}"
        )));
    }
    if x < 0.0 {
        check_negative(x)?;
    }
    Ok(seeds
        .iter()
        .map(|&seed| {
            let cfg = cfg.clone().with_seed(seed);
            if x >= 0.0 {
                solve_positive(x, method, &cfg)
            } else {
                solve_negative(x, branch, method, &cfg)
            }
        })
        .collect())
}
