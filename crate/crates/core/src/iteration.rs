//! The quadratic correction step and the loop that repeats it.
//!
//! Every solver in this crate rewrites its equation as `F(iterate + a) = 0`,
//! expands the logarithm of the shifted iterate with [`ln_increment_approx`]
//! and clears denominators, leaving `a² − l·a − m ≈ 0`. A [`QuadraticModel`]
//! supplies `(l, m)` for the current iterate; [`iterate`] picks the root of
//! the requested sign, adds it to the iterate and repeats until the
//! correction is negligible.

use crate::error::{Error, Result};

/// Tolerances and limits shared by every iterative solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    /// Relative step tolerance: stop once `|a| ≤ tol_abs + tol_rel·|next|`.
    pub tol_rel: f64,
    /// Absolute step tolerance.
    pub tol_abs: f64,
    /// Iteration cap for the adaptive stopping rule.
    pub max_iter: usize,
    /// Initial iterate tried before the solver's own seed schedule.
    pub seed_override: Option<f64>,
    /// Keep every step instead of only the last one.
    pub record_trace: bool,
    /// Apply exactly this many corrections, ignoring the tolerance.
    pub fixed_steps: Option<usize>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            tol_rel: 1e-14,
            tol_abs: 0.0,
            max_iter: 16,
            seed_override: None,
            record_trace: false,
            fixed_steps: None,
        }
    }
}

impl SolveConfig {
    pub fn with_tol_rel(mut self, tol_rel: f64) -> Self {
        self.tol_rel = tol_rel;
        self
    }

    pub fn with_seed(mut self, seed: f64) -> Self {
        self.seed_override = Some(seed);
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn with_fixed_steps(mut self, steps: usize) -> Self {
        self.fixed_steps = Some(steps);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol_rel > 0.0 && self.tol_rel.is_finite()) {
            return Err(Error::Config(format!(
                "tol_rel must be > 0, got {}",
                self.tol_rel
            )));
        }
        if !(self.tol_abs >= 0.0 && self.tol_abs.is_finite()) {
            return Err(Error::Config(format!(
                "tol_abs must be >= 0, got {}",
                self.tol_abs
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if self.fixed_steps == Some(0) {
            return Err(Error::Config("fixed step count must be at least 1".into()));
        }
        if let Some(seed) = self.seed_override {
            if !(seed > 0.0 && seed.is_finite()) {
                return Err(Error::Config(format!(
                    "seed must be finite and > 0, got {seed}"
                )));
            }
        }
        Ok(())
    }

    /// The stopping test applied to a correction `a` that produced `next`.
    pub fn is_small(&self, a: f64, next: f64) -> bool {
        a.abs() <= self.tol_abs + self.tol_rel * next.abs()
    }

    fn budget(&self) -> usize {
        self.fixed_steps.unwrap_or(self.max_iter)
    }
}

/// Which root of `a² − l·a − m = 0` is taken as the correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootSign {
    /// `(l + √(l² + 4m)) / 2`
    Plus,
    /// `(l − √(l² + 4m)) / 2`
    Minus,
}

/// `ln z + 2a/(a + 2z)`, the rational estimate of `ln(z + a)`.
pub fn ln_increment_approx(z: f64, a: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!(
            "logarithm of non-positive value {z}"
        )));
    }
    let denom = a + 2.0 * z;
    if denom == 0.0 {
        return Err(Error::Domain(
            "increment denominator a + 2z vanishes".into(),
        ));
    }
    Ok(z.ln() + 2.0 * a / denom)
}

/// Coefficients of one correction quadratic together with its real roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticCoefficients {
    pub l: f64,
    pub m: f64,
    /// `l² + 4m` as computed, before any clamping.
    pub discriminant: f64,
    /// `(root_plus, root_minus)`; `None` when the discriminant is negative.
    pub roots: Option<(f64, f64)>,
}

impl QuadraticCoefficients {
    pub fn root_plus(&self) -> Option<f64> {
        self.roots.map(|r| r.0)
    }

    pub fn root_minus(&self) -> Option<f64> {
        self.roots.map(|r| r.1)
    }

    pub fn root(&self, sign: RootSign) -> Option<f64> {
        match sign {
            RootSign::Plus => self.root_plus(),
            RootSign::Minus => self.root_minus(),
        }
    }

    pub fn has_real_roots(&self) -> bool {
        self.roots.is_some()
    }
}

/// Solves `a² − l·a − m = 0`.
///
/// The larger-magnitude root comes from the quadratic formula and the other
/// from the product `root_plus·root_minus = −m`, so a correction that is tiny
/// next to `l` keeps full relative precision. A discriminant that is negative
/// only by rounding (`|l² + 4m| ≤ 4ε·l²`) is treated as zero.
pub fn quad_solve(l: f64, m: f64) -> QuadraticCoefficients {
    let discriminant = l * l + 4.0 * m;
    let roots = sqrt_discriminant(l, m, discriminant).map(|s| {
        let big = 0.5 * l + 0.5 * l.signum() * s;
        if big == 0.0 {
            return (0.0, 0.0);
        }
        let small = -m / big;
        if big >= small {
            (big, small)
        } else {
            (small, big)
        }
    });
    QuadraticCoefficients {
        l,
        m,
        discriminant,
        roots,
    }
}

fn sqrt_discriminant(l: f64, m: f64, disc: f64) -> Option<f64> {
    if !(l.is_finite() && m.is_finite()) {
        return None;
    }
    if disc.is_finite() {
        if disc >= 0.0 {
            return Some(disc.sqrt());
        }
        return (-disc <= 4.0 * f64::EPSILON * l * l).then_some(0.0);
    }
    // l² or 4m overflowed; factor l out of the root.
    if l == 0.0 {
        return (m >= 0.0).then(|| 2.0 * m.sqrt());
    }
    let t = 4.0 * (m / l) / l;
    if 1.0 + t >= 0.0 {
        Some(l.abs() * (1.0 + t).sqrt())
    } else {
        (-(1.0 + t) <= 4.0 * f64::EPSILON).then_some(0.0)
    }
}

/// Supplies the correction quadratic for one equation.
pub trait QuadraticModel {
    /// `(l, m)` at `iterate`, or `None` where a denominator vanishes.
    fn coefficients(&self, iterate: f64) -> Option<(f64, f64)>;

    /// Left minus right side of the defining equation at `iterate`.
    fn residual(&self, iterate: f64) -> f64;
}

impl<M: QuadraticModel + ?Sized> QuadraticModel for &M {
    fn coefficients(&self, iterate: f64) -> Option<(f64, f64)> {
        (**self).coefficients(iterate)
    }

    fn residual(&self, iterate: f64) -> f64 {
        (**self).residual(iterate)
    }
}

/// A [`QuadraticModel`] built from two closures.
pub struct FnModel<C, R> {
    coeffs: C,
    residual: R,
}

impl<C, R> FnModel<C, R>
where
    C: Fn(f64) -> (f64, f64),
    R: Fn(f64) -> f64,
{
    pub fn new(coeffs: C, residual: R) -> Self {
        Self { coeffs, residual }
    }
}

impl<C, R> QuadraticModel for FnModel<C, R>
where
    C: Fn(f64) -> (f64, f64),
    R: Fn(f64) -> f64,
{
    fn coefficients(&self, iterate: f64) -> Option<(f64, f64)> {
        Some((self.coeffs)(iterate))
    }

    fn residual(&self, iterate: f64) -> f64 {
        (self.residual)(iterate)
    }
}

/// How a correction sequence ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceStatus {
    Converged,
    MaxIterReached,
    NegativeDiscriminant,
    NonPositiveIterate,
    /// A coefficient denominator vanished or a value left the finite range.
    DegenerateCoefficients,
    /// Converged, but onto the other real branch.
    WrongBranch,
}

impl TraceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceStatus::Converged => "converged",
            TraceStatus::MaxIterReached => "max_iter_reached",
            TraceStatus::NegativeDiscriminant => "negative_discriminant",
            TraceStatus::NonPositiveIterate => "non_positive_iterate",
            TraceStatus::DegenerateCoefficients => "degenerate_coefficients",
            TraceStatus::WrongBranch => "wrong_branch",
        }
    }
}

/// One accepted correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStep {
    /// 1-based step index.
    pub n: usize,
    pub iterate: f64,
    /// Absent for solvers whose step is not a quadratic root.
    pub coeffs: Option<QuadraticCoefficients>,
    pub correction: f64,
    pub next_iterate: f64,
    pub residual: f64,
}

/// The record of one run of the correction loop.
///
/// `steps` is filled only when [`SolveConfig::record_trace`] is set; `last`
/// and `iterations` are always kept.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub seed: f64,
    pub status: TraceStatus,
    pub steps: Vec<IterationStep>,
    pub last: Option<IterationStep>,
    pub iterations: usize,
}

impl IterationTrace {
    pub(crate) fn new(seed: f64) -> Self {
        Self {
            seed,
            status: TraceStatus::MaxIterReached,
            steps: Vec::new(),
            last: None,
            iterations: 0,
        }
    }

    pub(crate) fn push(&mut self, step: IterationStep, record: bool) {
        if record {
            self.steps.push(step);
        }
        self.last = Some(step);
        self.iterations = step.n;
    }

    /// The latest accepted iterate (the seed when no step was accepted).
    pub fn final_iterate(&self) -> f64 {
        self.last.map_or(self.seed, |s| s.next_iterate)
    }

    pub fn converged(&self) -> bool {
        self.status == TraceStatus::Converged
    }

    /// The sequence `seed, z₂, z₃, …` of a recorded trace.
    pub fn iterates(&self) -> Vec<f64> {
        std::iter::once(self.seed)
            .chain(self.steps.iter().map(|s| s.next_iterate))
            .collect()
    }
}

/// Runs the correction loop `z ← z + a(z)` from `seed`.
///
/// Stops when the correction satisfies [`SolveConfig::is_small`], after
/// `max_iter` steps, or on a degenerate step. With
/// [`SolveConfig::fixed_steps`] set exactly that many corrections are applied
/// and the status reports whether the last one met the tolerance.
pub fn iterate<M: QuadraticModel>(
    model: M,
    sign: RootSign,
    seed: f64,
    cfg: &SolveConfig,
) -> IterationTrace {
    let mut trace = IterationTrace::new(seed);
    if !(seed > 0.0 && seed.is_finite()) {
        trace.status = TraceStatus::NonPositiveIterate;
        return trace;
    }
    let budget = cfg.budget();
    let mut z = seed;
    for n in 1..=budget {
        let Some((l, m)) = model
            .coefficients(z)
            .filter(|(l, m)| l.is_finite() && m.is_finite())
        else {
            trace.status = TraceStatus::DegenerateCoefficients;
            return trace;
        };
        let coeffs = quad_solve(l, m);
        let Some(a) = coeffs.root(sign) else {
            trace.status = TraceStatus::NegativeDiscriminant;
            return trace;
        };
        let next = z + a;
        if next.is_nan() || next <= 0.0 {
            trace.status = TraceStatus::NonPositiveIterate;
            return trace;
        }
        if !next.is_finite() {
            trace.status = TraceStatus::DegenerateCoefficients;
            return trace;
        }
        let step = IterationStep {
            n,
            iterate: z,
            coeffs: Some(coeffs),
            correction: a,
            next_iterate: next,
            residual: model.residual(next),
        };
        trace.push(step, cfg.record_trace);
        z = next;

        let small = cfg.is_small(a, next);
        if cfg.fixed_steps.is_none() && small {
            trace.status = TraceStatus::Converged;
            return trace;
        }
        if n == budget {
            trace.status = if small {
                TraceStatus::Converged
            } else {
                TraceStatus::MaxIterReached
            };
        }
    }
    trace
}

/// Solves `ln z = y_target` with the closed-form correction
/// `a = 2z(y − ln z)/(2 − y + ln z)`, i.e. `z_{n+1}/z_n = −1 + 4/(2 − y + ln z_n)`.
///
/// The seed must satisfy `|ln seed − y_target| < 2`, otherwise the ratio is
/// not positive and the sequence leaves the real domain.
pub fn log_inverse_solve(y_target: f64, seed: f64, cfg: &SolveConfig) -> Result<IterationTrace> {
    cfg.validate()?;
    if !y_target.is_finite() {
        return Err(Error::Domain(format!("target {y_target} is not finite")));
    }
    if !(seed > 0.0 && seed.is_finite()) {
        return Err(Error::Domain(format!(
            "seed must be finite and > 0, got {seed}"
        )));
    }
    let gap = seed.ln() - y_target;
    if gap.abs() >= 2.0 {
        return Err(Error::Domain(format!(
            "seed {seed} is outside the convergence window: |ln seed - y| = {} >= 2",
            gap.abs()
        )));
    }

    let mut trace = IterationTrace::new(seed);
    let mut z = seed;
    for n in 1..=cfg.budget() {
        let ln_z = z.ln();
        let denom = 2.0 - y_target + ln_z;
        let a = 2.0 * z * (y_target - ln_z) / denom;
        let next = z + a;
        if next <= 0.0 || !next.is_finite() {
            trace.status = TraceStatus::NonPositiveIterate;
            return Ok(trace);
        }
        trace.push(
            IterationStep {
                n,
                iterate: z,
                coeffs: None,
                correction: a,
                next_iterate: next,
                residual: next.ln() - y_target,
            },
            cfg.record_trace,
        );
        z = next;
        let small = cfg.is_small(a, next);
        if (cfg.fixed_steps.is_none() || n == cfg.budget()) && small {
            trace.status = TraceStatus::Converged;
            return Ok(trace);
        }
    }
    trace.status = TraceStatus::MaxIterReached;
    Ok(trace)
}

/// Percentage error estimate `100·|a_last| / |z_last|` from the final step.
///
/// `None` for a trace without steps.
pub fn error_estimate(trace: &IterationTrace) -> Option<f64> {
    trace.last.map(|s| {
        if s.correction == 0.0 {
            0.0
        } else {
            100.0 * s.correction.abs() / s.next_iterate.abs()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn increment_zero_is_plain_log() {
        assert_eq!(ln_increment_approx(1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn increment_unit_step() {
        let v = ln_increment_approx(1.0, 1.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn increment_close_to_exact_for_large_z() {
        let v = ln_increment_approx(100.0, 1.0).unwrap();
        assert_eq!(v, 100f64.ln() + 2.0 / 201.0);
        assert!((v - 101f64.ln()).abs() < 2e-7);
    }

    #[test]
    fn increment_rejects_non_positive() {
        assert!(matches!(
            ln_increment_approx(0.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ln_increment_approx(-2.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(ln_increment_approx(1.0, -2.0).is_err());
    }

    #[test]
    fn quad_factorable() {
        let q = quad_solve(3.0, 4.0);
        assert_eq!(q.discriminant, 25.0);
        assert_eq!(q.roots, Some((4.0, -1.0)));
    }

    #[test]
    fn quad_first_step_of_large_argument() {
        let q = quad_solve(5e19, 1e20);
        let plus = q.root_plus().unwrap();
        assert!(rel(plus, 5e19) < 1e-15);
        assert!(rel(1.0 + plus, 5e19) < 1e-15);
        // the small root keeps its digits: -m / 5e19 = -2
        assert!(rel(q.root_minus().unwrap(), -2.0) < 1e-15);
    }

    #[test]
    fn quad_negative_discriminant() {
        let q = quad_solve(0.0, -1.0);
        assert_eq!(q.discriminant, -4.0);
        assert!(!q.has_real_roots());
        assert_eq!(q.root(RootSign::Plus), None);
    }

    #[test]
    fn quad_clamps_rounding_negative_discriminant() {
        let l = 3.0;
        let m = -2.25 * (1.0 + f64::EPSILON);
        let q = quad_solve(l, m);
        assert!(q.discriminant < 0.0);
        let (p, n) = q.roots.unwrap();
        assert!(rel(p, 1.5) < 1e-15 && rel(n, 1.5) < 1e-15);
    }

    #[test]
    fn quad_survives_overflowing_square() {
        let q = quad_solve(1e200, 1e200);
        assert!(q.discriminant.is_infinite());
        let (p, n) = q.roots.unwrap();
        assert!(rel(p, 1e200) < 1e-15);
        assert!(rel(n, -1.0) < 1e-15);
    }

    #[test]
    fn zero_coefficients_fix_the_seed() {
        let model = FnModel::new(|_| (0.0, 0.0), |_| 0.0);
        let t = iterate(
            model,
            RootSign::Plus,
            2.5,
            &SolveConfig::default().with_trace(),
        );
        assert_eq!(t.status, TraceStatus::Converged);
        assert_eq!(t.iterations, 1);
        assert_eq!(t.steps[0].correction, 0.0);
        assert_eq!(t.final_iterate(), 2.5);
        assert_eq!(error_estimate(&t), Some(0.0));
    }

    #[test]
    fn negative_discriminant_stops_the_loop() {
        let model = FnModel::new(|_| (0.0, -1.0), |_| 1.0);
        let t = iterate(model, RootSign::Plus, 1.0, &SolveConfig::default());
        assert_eq!(t.status, TraceStatus::NegativeDiscriminant);
        assert_eq!(t.iterations, 0);
        assert_eq!(t.final_iterate(), 1.0);
    }

    #[test]
    fn non_positive_next_iterate_stops_the_loop() {
        // a² + 3a + 2 = 0 has roots -1, -2: from z = 1 the minus root lands on -1.
        let model = FnModel::new(|_| (-3.0, -2.0), |_| 1.0);
        let t = iterate(model, RootSign::Minus, 1.0, &SolveConfig::default());
        assert_eq!(t.status, TraceStatus::NonPositiveIterate);
        assert!(t.last.is_none());
    }

    #[test]
    fn degenerate_coefficients_are_reported() {
        struct Singular;
        impl QuadraticModel for Singular {
            fn coefficients(&self, _: f64) -> Option<(f64, f64)> {
                None
            }
            fn residual(&self, _: f64) -> f64 {
                0.0
            }
        }
        let t = iterate(Singular, RootSign::Plus, 1.0, &SolveConfig::default());
        assert_eq!(t.status, TraceStatus::DegenerateCoefficients);
    }

    #[test]
    fn fixed_steps_apply_every_correction() {
        // z ln z = 1 from z = 1: converges well before 8 steps.
        let model = FnModel::new(
            |z: f64| {
                let lz = z.ln();
                (
                    -(3.0 * z * lz + 2.0 * z - 1.0) / (lz + 2.0),
                    2.0 * z * (1.0 - z * lz) / (lz + 2.0),
                )
            },
            |z: f64| z * z.ln() - 1.0,
        );
        let cfg = SolveConfig::default().with_trace().with_fixed_steps(8);
        let t = iterate(&model, RootSign::Plus, 1.0, &cfg);
        assert_eq!(t.iterations, 8);
        assert_eq!(t.status, TraceStatus::Converged);

        let cfg = SolveConfig::default().with_fixed_steps(1);
        let t = iterate(&model, RootSign::Plus, 1.0, &cfg);
        assert_eq!(t.iterations, 1);
        assert_eq!(t.status, TraceStatus::MaxIterReached);
    }

    #[test]
    fn trace_is_not_recorded_by_default() {
        let model = FnModel::new(|_| (0.0, 0.0), |_| 0.0);
        let t = iterate(model, RootSign::Plus, 1.0, &SolveConfig::default());
        assert!(t.steps.is_empty());
        assert!(t.last.is_some());
    }

    #[test]
    fn log_inverse_reproduces_worked_example() {
        let cfg = SolveConfig::default().with_trace();
        let t = log_inverse_solve(0.8, 3.0, &cfg).unwrap();
        assert!(t.converged());
        let zs = t.iterates();
        let printed = [3.0, 2.220541132, 2.225540931, 2.225540928];
        for (z, p) in zs.iter().zip(printed) {
            assert!((z - p).abs() < 1.5e-9, "{z} vs {p}");
        }
        assert!((t.final_iterate().ln() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn log_inverse_fixed_point() {
        let t = log_inverse_solve(0.0, 1.0, &SolveConfig::default()).unwrap();
        assert!(t.converged());
        assert_eq!(t.iterations, 1);
        assert_eq!(t.final_iterate(), 1.0);
    }

    #[test]
    fn log_inverse_matches_exponential() {
        let t = log_inverse_solve(2.0, 5.0, &SolveConfig::default()).unwrap();
        assert!(t.converged());
        assert!((t.final_iterate() - 2f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn log_inverse_window_is_enforced() {
        assert!(matches!(
            log_inverse_solve(3.0, 1.0, &SolveConfig::default()),
            Err(Error::Domain(_))
        ));
        assert!(log_inverse_solve(-2.0, 1.0, &SolveConfig::default()).is_err());
        assert!(log_inverse_solve(0.0, 0.0, &SolveConfig::default()).is_err());
    }

    #[test]
    fn error_estimate_of_single_step() {
        let mut t = IterationTrace::new(99.0);
        t.push(
            IterationStep {
                n: 1,
                iterate: 99.0,
                coeffs: None,
                correction: 1.0,
                next_iterate: 100.0,
                residual: 0.0,
            },
            true,
        );
        assert_eq!(error_estimate(&t), Some(1.0));
        assert_eq!(error_estimate(&IterationTrace::new(1.0)), None);
    }

    #[test]
    fn config_validation() {
        assert!(SolveConfig::default().validate().is_ok());
        assert!(SolveConfig::default().with_tol_rel(0.0).validate().is_err());
        assert!(SolveConfig::default().with_seed(-1.0).validate().is_err());
        assert!(SolveConfig::default()
            .with_seed(f64::INFINITY)
            .validate()
            .is_err());
        assert!(SolveConfig::default()
            .with_fixed_steps(0)
            .validate()
            .is_err());
        let cfg = SolveConfig {
            max_iter: 0,
            ..SolveConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
