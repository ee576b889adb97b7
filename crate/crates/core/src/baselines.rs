//! Newton, Halley and bisection solvers for `w·e^w = x`, used to cross-check
//! the quadratic correction.

use std::f64::consts::E;

use crate::error::{Error, Result};
use crate::iteration::{IterationStep, IterationTrace, SolveConfig, TraceStatus};
use crate::lambertw::{lambert_w, Branch};
use crate::INV_E;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Solver {
    Newton,
    Halley,
}

impl Solver {
    pub fn as_str(self) -> &'static str {
        match self {
            Solver::Newton => "newton",
            Solver::Halley => "halley",
        }
    }
}

/// Outcome of a Newton or Halley run. Iterates are `w` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineResult {
    pub value: f64,
    pub branch: Branch,
    pub solver: Solver,
    pub trace: IterationTrace,
    /// `|w·e^w − x|`
    pub residual: f64,
}

impl BaselineResult {
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

/// One row of the three-way comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub x: f64,
    pub branch: Branch,
    pub quad_iters: usize,
    pub newton_iters: usize,
    pub halley_iters: usize,
    pub quad_value: f64,
    pub newton_value: f64,
    pub halley_value: f64,
    pub quad_status: Option<TraceStatus>,
    pub newton_status: Option<TraceStatus>,
    pub halley_status: Option<TraceStatus>,
    /// Largest pairwise `|Δ|` among the converged values; NaN when fewer than
    /// two converged.
    pub agreement: f64,
    /// Set when `x` is outside the branch domain.
    pub error: Option<String>,
}

fn check_domain(x: f64, branch: Branch) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("argument {x} is not finite")));
    }
    if x < -INV_E * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::NoRealSolution { x });
    }
    if branch == Branch::Secondary && x >= 0.0 {
        return Err(Error::Domain(format!(
            "W-1 is defined only on [-1/e, 0), got {x}"
        )));
    }
    Ok(())
}

fn check_seed(seed: f64, branch: Branch) -> Result<()> {
    let ok = seed.is_finite()
        && match branch {
            Branch::Principal => seed > -1.0,
            Branch::Secondary => seed < -1.0,
        };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "seed {seed} is outside the {} range",
            branch.as_str()
        )))
    }
}

/// `w − x·e^{−w}`, which is `f(w)/e^w` for `f(w) = w·e^w − x`.
fn scaled_f(w: f64, x: f64) -> f64 {
    w - x * (-w).exp()
}

fn newton_step(w: f64, x: f64) -> Option<f64> {
    let d = 1.0 + w;
    if d == 0.0 {
        return None;
    }
    Some(-scaled_f(w, x) / d)
}

fn halley_step(w: f64, x: f64) -> Option<f64> {
    let g = scaled_f(w, x);
    let d1 = 1.0 + w;
    let denom = 2.0 * d1 * d1 - g * (2.0 + w);
    let scale = (2.0 * d1 * d1).abs().max((g * (2.0 + w)).abs());
    if denom.abs() <= 4.0 * f64::EPSILON * scale {
        return None;
    }
    Some(-2.0 * g * d1 / denom)
}

fn run(
    x: f64,
    seed: f64,
    branch: Branch,
    solver: Solver,
    cfg: &SolveConfig,
) -> Result<BaselineResult> {
    cfg.validate()?;
    check_domain(x, branch)?;
    check_seed(seed, branch)?;
    let step = match solver {
        Solver::Newton => newton_step,
        Solver::Halley => halley_step,
    };
    let budget = cfg.fixed_steps.unwrap_or(cfg.max_iter);
    let mut trace = IterationTrace::new(seed);
    trace.status = TraceStatus::MaxIterReached;
    let mut w = seed;
    for n in 1..=budget {
        let Some(dw) = step(w, x) else {
            trace.status = TraceStatus::DegenerateCoefficients;
            break;
        };
        let next = w + dw;
        if !next.is_finite() {
            trace.status = TraceStatus::DegenerateCoefficients;
            break;
        }
        trace.push(
            IterationStep {
                n,
                iterate: w,
                coeffs: None,
                correction: dw,
                next_iterate: next,
                residual: next * next.exp() - x,
            },
            cfg.record_trace,
        );
        w = next;
        let last = cfg.fixed_steps.is_none() || n == budget;
        if last && cfg.is_small(dw, next) {
            trace.status = TraceStatus::Converged;
            break;
        }
    }
    let slack = (8.0 * f64::EPSILON).sqrt();
    let off_branch = match branch {
        Branch::Principal => w < -1.0 - slack,
        Branch::Secondary => w > -1.0 + slack,
    };
    let residual = (w * w.exp() - x).abs();
    if trace.converged() && off_branch {
        trace.status = TraceStatus::WrongBranch;
    }
    // a step too small to move a huge iterate is not a root
    if trace.converged() && !residual.is_finite() {
        trace.status = TraceStatus::DegenerateCoefficients;
    }
    Ok(BaselineResult {
        value: w,
        branch,
        solver,
        residual,
        trace,
    })
}

/// Newton's method on `w·e^w − x`, step `(w − x·e^{−w}) / (1 + w)`.
///
/// Divergence or oscillation is reported through the trace status rather
/// than as an error.
pub fn newton_w(x: f64, seed: f64, branch: Branch, cfg: &SolveConfig) -> Result<BaselineResult> {
    run(x, seed, branch, Solver::Newton, cfg)
}

/// Halley's method on `w·e^w − x`.
///
/// A vanishing `2f′² − f·f″` ends the run with
/// [`TraceStatus::DegenerateCoefficients`].
pub fn halley_w(x: f64, seed: f64, branch: Branch, cfg: &SolveConfig) -> Result<BaselineResult> {
    run(x, seed, branch, Solver::Halley, cfg)
}

/// Starting point for Newton and Halley.
///
/// Principal: `max(0, ln(max(x, 1)))`. Secondary: `−2 − √(2(1 + e·x))`.
pub fn default_seed(x: f64, branch: Branch) -> f64 {
    match branch {
        Branch::Principal => x.max(1.0).ln().max(0.0),
        Branch::Secondary => -2.0 - (2.0 * (1.0 + E * x)).max(0.0).sqrt(),
    }
}

/// Root of `w·e^w = x` on `branch` by bisection to interval width `tol`.
pub fn bisection_oracle(x: f64, branch: Branch, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Config(format!("tolerance {tol} must be positive")));
    }
    check_domain(x, branch)?;
    if (x + INV_E).abs() <= 4.0 * f64::EPSILON * INV_E {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let g = |w: f64| {
        if x > 0.0 {
            scaled_f(w, x)
        } else {
            w * w.exp() - x
        }
    };
    let (mut lo, mut hi) = match (branch, x > 0.0) {
        (Branch::Principal, true) => (0.0, 1f64.max(x.max(1.0).ln() + 1.0)),
        (Branch::Principal, false) => (-1.0, 0.0),
        (Branch::Secondary, _) => {
            let l = (1.0 / x.abs()).ln();
            (-(l + (l + 2.0).ln() + 2.0), -1.0)
        }
    };
    let mut g_lo = g(lo);
    let g_hi = g(hi);
    if branch == Branch::Secondary {
        let mut widen = 0;
        while g_lo.signum() == g_hi.signum() && g_lo != 0.0 && widen < 64 {
            lo *= 2.0;
            g_lo = g(lo);
            widen += 1;
        }
    }
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        // only reachable when rounding hides the root next to w = −1
        return Ok(-1.0);
    }
    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

/// Quadratic correction, Newton and Halley from their default seeds.
pub fn compare(xs: &[f64], branch: Branch, cfg: &SolveConfig) -> Vec<ComparisonRow> {
    xs.iter().map(|&x| compare_one(x, branch, cfg)).collect()
}

fn compare_one(x: f64, branch: Branch, cfg: &SolveConfig) -> ComparisonRow {
    let mut row = ComparisonRow {
        x,
        branch,
        quad_iters: 0,
        newton_iters: 0,
        halley_iters: 0,
        quad_value: f64::NAN,
        newton_value: f64::NAN,
        halley_value: f64::NAN,
        quad_status: None,
        newton_status: None,
        halley_status: None,
        agreement: f64::NAN,
        error: None,
    };
    if let Err(e) = check_domain(x, branch) {
        row.error = Some(e.to_string());
        return row;
    }
    let mut converged = Vec::with_capacity(3);
    match lambert_w(x, branch, cfg) {
        Ok(r) => {
            row.quad_iters = r.iterations();
            row.quad_value = r.value;
            row.quad_status = Some(r.status());
            converged.push(r.value);
        }
        Err(Error::NonConvergence { status, .. }) => row.quad_status = Some(status),
        Err(e) => row.error = Some(e.to_string()),
    }
    let seed = default_seed(x, branch);
    for solver in [Solver::Newton, Solver::Halley] {
        let Ok(r) = run(x, seed, branch, solver, cfg) else {
            continue;
        };
        if r.converged() {
            converged.push(r.value);
        }
        match solver {
            Solver::Newton => {
                row.newton_iters = r.iterations();
                row.newton_value = r.value;
                row.newton_status = Some(r.status());
            }
            Solver::Halley => {
                row.halley_iters = r.iterations();
                row.halley_value = r.value;
                row.halley_status = Some(r.status());
            }
        }
    }
    if converged.len() >= 2 {
        let mut worst: f64 = 0.0;
        for (i, a) in converged.iter().enumerate() {
            for b in &converged[i + 1..] {
                worst = worst.max((a - b).abs());
            }
        }
        row.agreement = worst;
    }
    row
}
