use std::f64::consts::LN_10;

use lwq_core::baselines::compare;
use lwq_core::equations::{EquationForm, EquationSolution};
use lwq_core::{
    lambert_w_using, seed_sweep, w0, w0_from_ln, w_negative, Branch, BranchResult, Error,
    IterationTrace, Method,
};
use serde_json::{Map, Value};

use crate::args::{EquationParams, FormArg, GlobalOpts};
use crate::number::Num;
use crate::output::{json_num, render, to_json, Cell, Format, Table};
use crate::tables::{printed, rows, Input, RowSpec, TableId, FIG_DATA};

/// Relative distance from the reference value that still counts as a match.
pub const ROW_TOLERANCE: f64 = 5e-7;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const DOMAIN: u8 = 2;
    pub const NO_CONVERGENCE: u8 = 3;
    pub const USAGE: u8 = 64;
}

#[derive(Debug)]
pub struct Report {
    pub body: String,
    pub code: u8,
}

impl Report {
    fn ok(body: String) -> Self {
        Self {
            body,
            code: exit::OK,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
    NoConvergence(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => exit::USAGE,
            Failure::Domain(_) => exit::DOMAIN,
            Failure::NoConvergence(_) => exit::NO_CONVERGENCE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::NoConvergence(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoRealSolution { .. } | Error::Domain(_) => Failure::Domain(e.to_string()),
            Error::NonConvergence { .. } => Failure::NoConvergence(e.to_string()),
            Error::Config(_) => Failure::Usage(e.to_string()),
        }
    }
}

fn secondary_domain(x: impl std::fmt::Display) -> Failure {
    Failure::Domain(format!(
        "domain error: W-1 is defined only on [-1/e, 0), got {x}"
    ))
}

fn trace_table(trace: &IterationTrace) -> Table {
    let mut t = Table::new(vec![
        "n",
        "iterate",
        "l",
        "m",
        "a",
        "next_iterate",
        "residual",
    ]);
    for s in &trace.steps {
        t.push(vec![
            Cell::Int(s.n),
            Cell::Num(s.iterate),
            Cell::opt(s.coeffs.map(|c| c.l)),
            Cell::opt(s.coeffs.map(|c| c.m)),
            Cell::Num(s.correction),
            Cell::Num(s.next_iterate),
            Cell::Num(s.residual),
        ]);
    }
    t
}

pub fn eval(x: Num, opts: &GlobalOpts) -> Result<Report, Failure> {
    let cfg = opts.config();
    let branch = opts.branch();
    let r = match x {
        Num::Value(v) => lambert_w_using(v, branch, opts.method(), &cfg)?,
        Num::Ln(_) if branch == Branch::Secondary => return Err(secondary_domain(x)),
        Num::Ln(l) => w0_from_ln(l, &cfg)?,
    };
    let trace = trace_table(&r.trace);
    let x_cell = match x {
        Num::Value(v) => Cell::Num(v),
        Num::Ln(_) => Cell::Text(x.to_string()),
    };
    let mut summary = Table::new(vec![
        "x",
        "branch",
        "method",
        "value",
        "iterations",
        "status",
        "residual",
        "error_estimate_pct",
    ]);
    summary.push(vec![
        x_cell,
        r.branch.as_str().into(),
        r.method.as_str().into(),
        Cell::Num(r.value),
        Cell::Int(r.iterations()),
        r.status().as_str().into(),
        Cell::Num(r.residual),
        Cell::Num(r.error_estimate_pct),
    ]);
    let body = match opts.format {
        Format::Json => {
            let mut obj = match summary.json_rows() {
                Value::Array(mut rows) => match rows.remove(0) {
                    Value::Object(o) => o,
                    _ => unreachable!("rows are objects"),
                },
                _ => unreachable!("json_rows is an array"),
            };
            if let Num::Ln(l) = x {
                obj.insert("x".into(), Value::Null);
                obj.insert("ln_x".into(), json_num(l));
            }
            obj.insert("trace".into(), trace.json_rows());
            to_json(Value::Object(obj))
        }
        Format::Csv if opts.trace => trace.csv(),
        Format::Csv => summary.csv(),
        Format::Text => {
            let mut out = String::new();
            for (h, c) in summary.headers.iter().zip(&summary.rows[0]) {
                out += &format!("{h:<20}{}\n", c.text());
            }
            if opts.trace {
                out += "\n";
                out += &trace.text();
            }
            out
        }
    };
    Ok(Report::ok(body))
}

fn run_row(def: &RowSpec, opts: &GlobalOpts) -> Result<BranchResult, Error> {
    let cfg = opts.config().with_trace().with_seed(def.seed);
    match def.x {
        Input::Value(v) if def.negative => w_negative(-v, def.branch, def.method, &cfg),
        Input::Value(v) => w0(v, def.method, &cfg),
        Input::PowTen(k) => w0_from_ln(k * LN_10, &cfg),
    }
}

pub fn tables(id: TableId, opts: &GlobalOpts) -> Result<Report, Failure> {
    if id == TableId::FigData {
        return fig_data(opts);
    }
    let mut t = Table::new(vec![
        "row",
        "x",
        "seed",
        "branch",
        "method",
        "seed_used",
        "iter1",
        "iter1_printed",
        "iter2",
        "iter2_printed",
        "iter3",
        "iter3_printed",
        "iter4",
        "iter4_printed",
        "y",
        "y_printed",
        "y_reference",
        "abs_diff",
        "rel_diff",
        "iterations",
        "status",
        "pass",
    ]);
    let mut failed = false;
    for def in rows(id) {
        let x_cell = match def.x {
            Input::Value(v) => Cell::Num(v),
            Input::PowTen(k) => Cell::Text(format!("10^{k}")),
        };
        let mut row = vec![
            def.label.into(),
            x_cell,
            Cell::Num(def.seed),
            def.branch.as_str().into(),
            def.method.as_str().into(),
        ];
        let reference = printed(def.reference_y).expect("reference cell");
        match run_row(def, opts) {
            Ok(r) => {
                let its = r.trace.iterates();
                let y = if def.negative { -r.value } else { r.value };
                let diff = (y - reference).abs();
                row.push(Cell::Num(r.trace.seed));
                for k in 0..4 {
                    row.push(Cell::opt(its.get(k + 1).copied()));
                    row.push(Cell::opt(printed(def.printed[k])));
                }
                row.extend([
                    Cell::Num(y),
                    Cell::opt(printed(def.printed_y)),
                    Cell::Num(reference),
                    Cell::Num(diff),
                    Cell::Num(diff / reference.abs()),
                    Cell::Int(r.iterations()),
                    r.status().as_str().into(),
                    Cell::Bool(diff <= ROW_TOLERANCE * reference.abs()),
                ]);
            }
            Err(e) => {
                failed = true;
                let status = match e {
                    Error::NonConvergence { status, .. } => status.as_str().to_string(),
                    other => other.to_string(),
                };
                row.push(Cell::Empty);
                for k in 0..4 {
                    row.push(Cell::Empty);
                    row.push(Cell::opt(printed(def.printed[k])));
                }
                row.extend([
                    Cell::Empty,
                    Cell::opt(printed(def.printed_y)),
                    Cell::Num(reference),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Int(0),
                    status.into(),
                    Cell::Bool(false),
                ]);
            }
        }
        t.push(row);
    }
    let body = render(opts.format, &t, vec![("table", id.name().into())]);
    Ok(Report {
        body,
        code: if failed {
            exit::NO_CONVERGENCE
        } else {
            exit::OK
        },
    })
}

fn fig_data(opts: &GlobalOpts) -> Result<Report, Failure> {
    let steps = opts.iters.map_or(4, |n| n as usize);
    let cfg = opts
        .config()
        .with_trace()
        .with_seed(1.0)
        .with_fixed_steps(steps);
    let mut t = Table::new(vec!["x", "n", "z", "z_printed"]);
    let mut failed = false;
    for (x, cells) in FIG_DATA {
        match w0(*x, Method::M1, &cfg) {
            Ok(r) => {
                for (n, z) in r.trace.iterates().into_iter().enumerate() {
                    let p = cells.get(n).and_then(|c| printed(c));
                    t.push(vec![
                        Cell::Num(*x),
                        Cell::Int(n + 1),
                        Cell::Num(z),
                        Cell::opt(p),
                    ]);
                }
            }
            Err(_) => failed = true,
        }
    }
    let body = render(opts.format, &t, vec![("table", "figdata".into())]);
    Ok(Report {
        body,
        code: if failed {
            exit::NO_CONVERGENCE
        } else {
            exit::OK
        },
    })
}

pub fn sweep(x: f64, seeds: &[f64], opts: &GlobalOpts) -> Result<Report, Failure> {
    let method = opts.method().unwrap_or(Method::M1);
    let branch = opts.branch();
    let results = seed_sweep(x, seeds, method, branch, &opts.config())?;
    let mut t = Table::new(vec![
        "seed",
        "seed_used",
        "attempts",
        "status",
        "iterations",
        "value",
    ]);
    for (seed, r) in seeds.iter().zip(&results) {
        t.push(vec![
            Cell::Num(*seed),
            Cell::Num(r.trace.seed),
            Cell::Int(r.attempts),
            r.status().as_str().into(),
            Cell::Int(r.iterations()),
            Cell::Num(r.value),
        ]);
    }
    let meta = vec![
        ("command", "sweep".into()),
        ("x", json_num(x)),
        ("branch", branch.as_str().into()),
        ("method", method.as_str().into()),
    ];
    Ok(Report::ok(render(opts.format, &t, meta)))
}

pub fn compare_cmd(xs: &[f64], opts: &GlobalOpts) -> Result<Report, Failure> {
    let branch = opts.branch();
    let status = |s: Option<lwq_core::TraceStatus>| Cell::from(s.map_or("", |s| s.as_str()));
    let mut t = Table::new(vec![
        "x",
        "branch",
        "quad_iters",
        "newton_iters",
        "halley_iters",
        "quad_value",
        "newton_value",
        "halley_value",
        "quad_status",
        "newton_status",
        "halley_status",
        "agreement",
        "error",
    ]);
    for r in compare(xs, branch, &opts.config()) {
        t.push(vec![
            Cell::Num(r.x),
            r.branch.as_str().into(),
            Cell::Int(r.quad_iters),
            Cell::Int(r.newton_iters),
            Cell::Int(r.halley_iters),
            Cell::Num(r.quad_value),
            Cell::Num(r.newton_value),
            Cell::Num(r.halley_value),
            status(r.quad_status),
            status(r.newton_status),
            status(r.halley_status),
            Cell::Num(r.agreement),
            r.error.map_or(Cell::Empty, Cell::Text),
        ]);
    }
    let meta = vec![
        ("command", "compare".into()),
        ("branch", branch.as_str().into()),
    ];
    Ok(Report::ok(render(opts.format, &t, meta)))
}

fn need(v: Option<f64>, name: &str, form: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("equation {form} needs --{name}")))
}

fn build_form(form: FormArg, p: &EquationParams) -> Result<(EquationForm, &'static str), Failure> {
    Ok(match form {
        FormArg::Ypowy => (
            EquationForm::YPowY {
                m: need(p.m, "m", "ypowy")?,
            },
            "ypowy",
        ),
        FormArg::Ypowinvy => (
            EquationForm::YPowInvY {
                m: need(p.m, "m", "ypowinvy")?,
            },
            "ypowinvy",
        ),
        FormArg::Plnxqoverx => (
            EquationForm::PLnXPlusQOverX {
                p: need(p.p, "p", "plnxqoverx")?,
                q: need(p.q, "q", "plnxqoverx")?,
                r: need(p.r, "r", "plnxqoverx")?,
            },
            "plnxqoverx",
        ),
        FormArg::Plnxqx => (
            EquationForm::PLnXPlusQX {
                p: need(p.p, "p", "plnxqx")?,
                q: need(p.q, "q", "plnxqx")?,
                r: need(p.r, "r", "plnxqx")?,
            },
            "plnxqx",
        ),
        FormArg::Pxqexprx => (
            EquationForm::PXPlusQExpRX {
                p: need(p.p, "p", "pxqexprx")?,
                q: need(p.q, "q", "pxqexprx")?,
                r: need(p.r, "r", "pxqexprx")?,
                s: need(p.s, "s", "pxqexprx")?,
            },
            "pxqexprx",
        ),
        FormArg::Tower => (
            EquationForm::PowerTower {
                x: need(p.x, "x", "tower")?,
            },
            "tower",
        ),
    })
}

pub fn equation(
    form: FormArg,
    params: &EquationParams,
    opts: &GlobalOpts,
) -> Result<Report, Failure> {
    let (eq, name) = build_form(form, params)?;
    let sol: EquationSolution = eq.solve()?;
    let mut t = Table::new(vec![
        "root_index",
        "root",
        "w_argument",
        "branch",
        "w",
        "residual",
    ]);
    for (i, root) in sol.roots.iter().enumerate() {
        let red = sol.reductions.get(i);
        t.push(vec![
            Cell::Int(i + 1),
            Cell::Num(*root),
            Cell::opt(red.map(|r| r.argument)),
            red.map_or(Cell::Empty, |r| r.branch.as_str().into()),
            Cell::opt(red.map(|r| r.w)),
            Cell::Num(eq.residual_at(*root).abs()),
        ]);
    }
    let mut params_obj = Map::new();
    for (k, v) in [
        ("m", params.m),
        ("x", params.x),
        ("p", params.p),
        ("q", params.q),
        ("r", params.r),
        ("s", params.s),
    ] {
        if let Some(v) = v {
            params_obj.insert(k.into(), json_num(v));
        }
    }
    let meta = vec![("form", name.into()), ("params", Value::Object(params_obj))];
    Ok(Report::ok(render(opts.format, &t, meta)))
}
