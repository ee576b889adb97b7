//! Transcendental equations that reduce to a single `W` evaluation.
//!
//! Where the reduced argument falls in `(−1/e, 0)` both branches give a real
//! root; solutions list every real root in ascending order together with the
//! `W` call that produced it.

use crate::error::{Error, Result};
use crate::iteration::SolveConfig;
use crate::lambertw::{lambert_w, w0_from_ln, Branch};
use crate::{E_POW_INV_E, INV_E};

/// Relative slack for range checks at the branch point.
const EDGE: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EquationForm {
    /// `y^y = m`
    YPowY { m: f64 },
    /// `y^{1/y} = m`
    YPowInvY { m: f64 },
    /// `p·ln x + q/x = r`
    PLnXPlusQOverX { p: f64, q: f64, r: f64 },
    /// `p·ln x + q·x = r`
    PLnXPlusQX { p: f64, q: f64, r: f64 },
    /// `p·x + q·e^{r·x} = s`
    PXPlusQExpRX { p: f64, q: f64, r: f64, s: f64 },
    /// `x^{x^{x^…}}`
    PowerTower { x: f64 },
}

impl EquationForm {
    pub fn solve(&self) -> Result<EquationSolution> {
        match *self {
            EquationForm::YPowY { m } => solve_y_pow_y(m),
            EquationForm::YPowInvY { m } => solve_y_pow_inv_y(m),
            EquationForm::PLnXPlusQOverX { p, q, r } => solve_plnx_q_over_x(p, q, r),
            EquationForm::PLnXPlusQX { p, q, r } => solve_plnx_qx(p, q, r),
            EquationForm::PXPlusQExpRX { p, q, r, s } => solve_px_q_exp_rx(p, q, r, s),
            EquationForm::PowerTower { x } => {
                let y = power_tower(x)?;
                let principal = solve_y_pow_inv_y(x).ok().map(|s| s.reductions[0]);
                Ok(EquationSolution {
                    roots: vec![y],
                    reductions: principal.into_iter().collect(),
                    residual: (x.powf(y) - y).abs(),
                })
            }
        }
    }

    /// `LHS − RHS` at `root`.
    pub fn residual_at(&self, root: f64) -> f64 {
        match *self {
            EquationForm::YPowY { m } => root.powf(root) - m,
            EquationForm::YPowInvY { m } => root.powf(1.0 / root) - m,
            EquationForm::PLnXPlusQOverX { p, q, r } => p * root.ln() + q / root - r,
            EquationForm::PLnXPlusQX { p, q, r } => p * root.ln() + q * root - r,
            EquationForm::PXPlusQExpRX { p, q, r, s } => p * root + q * (r * root).exp() - s,
            EquationForm::PowerTower { x } => x.powf(root) - root,
        }
    }

    /// Right-hand side used to scale the residual bound.
    pub fn rhs(&self) -> f64 {
        match *self {
            EquationForm::YPowY { m } | EquationForm::YPowInvY { m } => m,
            EquationForm::PLnXPlusQOverX { r, .. } | EquationForm::PLnXPlusQX { r, .. } => r,
            EquationForm::PXPlusQExpRX { s, .. } => s,
            EquationForm::PowerTower { .. } => 0.0,
        }
    }
}

/// The `W` evaluation behind one root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    pub argument: f64,
    pub branch: Branch,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquationSolution {
    /// Ascending.
    pub roots: Vec<f64>,
    /// `reductions[i]` produced `roots[i]`.
    pub reductions: Vec<Reduction>,
    /// Largest `|LHS − RHS|` over the roots.
    pub residual: f64,
}

fn finite(params: &[(&str, f64)]) -> Result<()> {
    for (name, v) in params {
        if !v.is_finite() {
            return Err(Error::Domain(format!("{name} = {v} is not finite")));
        }
    }
    Ok(())
}

fn nonzero(name: &str, v: f64) -> Result<()> {
    if v == 0.0 {
        Err(Error::Domain(format!("{name} must be nonzero")))
    } else {
        Ok(())
    }
}

/// `W(arg)` on every branch with a real value; one entry at the branch point.
fn w_all(arg: f64) -> Result<Vec<Reduction>> {
    let cfg = SolveConfig::default();
    let p = lambert_w(arg, Branch::Principal, &cfg)?;
    let mut out = vec![Reduction {
        argument: arg,
        branch: Branch::Principal,
        w: p.value,
    }];
    if arg < 0.0 {
        let s = lambert_w(arg, Branch::Secondary, &cfg)?;
        if s.value != p.value {
            out.push(Reduction {
                argument: arg,
                branch: Branch::Secondary,
                w: s.value,
            });
        }
    }
    Ok(out)
}

fn assemble(form: EquationForm, mut pairs: Vec<(f64, Reduction)>) -> EquationSolution {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let residual = pairs
        .iter()
        .map(|(x, _)| form.residual_at(*x).abs())
        .fold(0.0, f64::max);
    let (roots, reductions) = pairs.into_iter().unzip();
    EquationSolution {
        roots,
        reductions,
        residual,
    }
}

/// `y^y = m`: `y·ln y = ln m`, so `y = e^{W(ln m)}`.
///
/// Two roots when `−1/e ≤ ln m < 0`.
pub fn solve_y_pow_y(m: f64) -> Result<EquationSolution> {
    finite(&[("m", m)])?;
    if m <= 0.0 {
        return Err(Error::Domain(format!("y^y = m needs m > 0, got {m}")));
    }
    let lm = m.ln();
    if lm < -INV_E * (1.0 + EDGE) {
        return Err(Error::Domain(format!(
            "y^y = {m}: ln m < -1/e has no real root"
        )));
    }
    let pairs = w_all(lm)?.into_iter().map(|r| (r.w.exp(), r)).collect();
    Ok(assemble(EquationForm::YPowY { m }, pairs))
}

/// `y^{1/y} = m` for `1 < m ≤ e^{1/e}`: with `z = ln y`, `−z = W(−ln m)`.
///
/// The principal branch gives the root in `(1, e]`, the secondary one the
/// root in `[e, ∞)`.
pub fn solve_y_pow_inv_y(m: f64) -> Result<EquationSolution> {
    finite(&[("m", m)])?;
    if m <= 1.0 {
        return Err(Error::Domain(format!(
            "y^(1/y) = m is solved for m > 1, got {m}"
        )));
    }
    if m > E_POW_INV_E * (1.0 + EDGE) {
        return Err(Error::Domain(format!(
            "y^(1/y) = {m}: m > e^(1/e) has no real root"
        )));
    }
    let arg = (-m.ln()).max(-INV_E);
    let pairs = w_all(arg)?.into_iter().map(|r| ((-r.w).exp(), r)).collect();
    Ok(assemble(EquationForm::YPowInvY { m }, pairs))
}

/// `p·ln x + q/x = r`: with `x = (q/p)/u`, `−u = W(−X)` where
/// `X = (q/p)·e^{−r/p}`.
pub fn solve_plnx_q_over_x(p: f64, q: f64, r: f64) -> Result<EquationSolution> {
    finite(&[("p", p), ("q", q), ("r", r)])?;
    nonzero("p", p)?;
    let k = q / p;
    if k.is_nan() || k <= 0.0 {
        return Err(Error::Domain(format!(
            "substitution x = y*(q/p) needs q/p > 0, got q/p = {k}"
        )));
    }
    let x_arg = k * (-r / p).exp();
    if x_arg <= 0.0 || !x_arg.is_finite() {
        return Err(Error::Domain(format!(
            "reduced argument (q/p)e^(-r/p) = {x_arg} is out of range"
        )));
    }
    if x_arg > INV_E * (1.0 + EDGE) {
        return Err(Error::Domain(format!(
            "reduced argument (q/p)e^(-r/p) = {x_arg} exceeds 1/e; no real root"
        )));
    }
    let arg = (-x_arg).max(-INV_E);
    let pairs = w_all(arg)?
        .into_iter()
        .map(|red| (k / -red.w, red))
        .collect();
    Ok(assemble(EquationForm::PLnXPlusQOverX { p, q, r }, pairs))
}

/// `p·ln x + q·x = r`: with `x = y·(p/q)`, `y = W(X)` where
/// `X = (q/p)·e^{r/p}`.
///
/// `p/q > 0` gives one root; `p/q < 0` gives two when `X ≥ −1/e`.
pub fn solve_plnx_qx(p: f64, q: f64, r: f64) -> Result<EquationSolution> {
    finite(&[("p", p), ("q", q), ("r", r)])?;
    nonzero("p", p)?;
    nonzero("q", q)?;
    let form = EquationForm::PLnXPlusQX { p, q, r };
    let k = p / q;
    let x_arg = (q / p) * (r / p).exp();
    if x_arg.is_infinite() && k > 0.0 {
        let ln_arg = (q / p).ln() + r / p;
        let w = w0_from_ln(ln_arg, &SolveConfig::default())?;
        let red = Reduction {
            argument: x_arg,
            branch: Branch::Principal,
            w: w.value,
        };
        return Ok(assemble(form, vec![(w.value * k, red)]));
    }
    if !x_arg.is_finite() {
        return Err(Error::Domain(format!(
            "reduced argument (q/p)e^(r/p) = {x_arg} is out of range"
        )));
    }
    if x_arg < -INV_E * (1.0 + EDGE) {
        return Err(Error::Domain(format!(
            "reduced argument (q/p)e^(r/p) = {x_arg} is below -1/e; no real root"
        )));
    }
    if x_arg == 0.0 {
        return Err(Error::Domain(
            "reduced argument (q/p)e^(r/p) underflows to 0".into(),
        ));
    }
    let pairs = w_all(x_arg.max(-INV_E))?
        .into_iter()
        .map(|red| (red.w * k, red))
        .collect();
    Ok(assemble(form, pairs))
}

/// `p·x + q·e^{r·x} = s`: with `z = e^{r·x}`, `(p/r)·ln z + q·z = s`.
pub fn solve_px_q_exp_rx(p: f64, q: f64, r: f64, s: f64) -> Result<EquationSolution> {
    finite(&[("p", p), ("q", q), ("r", r), ("s", s)])?;
    nonzero("r", r)?;
    let inner = solve_plnx_qx(p / r, q, s)?;
    let pairs = inner
        .roots
        .iter()
        .zip(inner.reductions)
        .map(|(z, red)| (z.ln() / r, red))
        .collect();
    Ok(assemble(EquationForm::PXPlusQExpRX { p, q, r, s }, pairs))
}

/// Limit of `x^{x^{x^…}}` for `1 ≤ x ≤ e^{1/e}`, the smaller root of
/// `y^{1/y} = x`.
pub fn power_tower(x: f64) -> Result<f64> {
    finite(&[("x", x)])?;
    if !(1.0..=E_POW_INV_E * (1.0 + EDGE)).contains(&x) {
        return Err(Error::Domain(format!(
            "power tower is solved for 1 <= x <= e^(1/e), got {x}"
        )));
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    Ok(solve_y_pow_inv_y(x)?.roots[0])
}
