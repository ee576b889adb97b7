use clap::{Args, Parser, Subcommand, ValueEnum};
use lwq_core::{Branch, Method, SolveConfig};

use crate::number::{parse_f64, parse_num, parse_positive, Num};
use crate::output::Format;
use crate::tables::TableId;

/// Real branches of the Lambert W function by iterated quadratic correction.
#[derive(Debug, Parser)]
#[command(name = "lwq", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Branch of W: w0 (principal) or wm1 (secondary, x in [-1/e, 0))
    #[arg(long, global = true, value_enum)]
    pub branch: Option<BranchArg>,

    /// m1 iterates z = e^W, m2 iterates W in logarithmic form
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,

    #[arg(
        long,
        global = true,
        value_enum,
        env = "LWQ_FORMAT",
        default_value = "text"
    )]
    pub format: Format,

    /// Print every correction step
    #[arg(long, global = true)]
    pub trace: bool,

    /// Initial iterate, tried before the default schedule
    #[arg(long, global = true, value_parser = parse_positive)]
    pub seed: Option<f64>,

    /// Apply exactly N corrections instead of stopping on the tolerance
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=10_000))]
    pub iters: Option<u32>,

    /// Relative step tolerance
    #[arg(long, global = true, value_parser = parse_positive)]
    pub tol: Option<f64>,
}

impl GlobalOpts {
    pub fn config(&self) -> SolveConfig {
        let mut cfg = SolveConfig::default();
        if let Some(t) = self.tol {
            cfg = cfg.with_tol_rel(t);
        }
        if let Some(s) = self.seed {
            cfg = cfg.with_seed(s);
        }
        if let Some(n) = self.iters {
            cfg = cfg.with_fixed_steps(n as usize);
        }
        if self.trace {
            cfg = cfg.with_trace();
        }
        cfg
    }

    pub fn branch(&self) -> Branch {
        self.branch.map_or(Branch::Principal, Into::into)
    }

    pub fn method(&self) -> Option<Method> {
        self.method.map(Into::into)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate W(x)
    Eval {
        /// Argument, e.g. 1e20, 10^500 or -0.25
        #[arg(allow_hyphen_values = true, value_parser = parse_num)]
        x: Num,
    },
    /// Recompute a reference table next to its printed digits
    Tables {
        #[arg(value_enum)]
        table: TableId,
    },
    /// Solve once per starting value
    Sweep {
        #[arg(allow_hyphen_values = true, value_parser = parse_f64)]
        x: f64,
        /// Comma-separated starting values
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_positive)]
        seeds: Vec<f64>,
    },
    /// Compare quadratic correction with Newton and Halley
    Compare {
        /// Comma-separated arguments
        #[arg(allow_hyphen_values = true, value_delimiter = ',', required = true, num_args = 1, action = clap::ArgAction::Set, value_parser = parse_f64)]
        xs: Vec<f64>,
    },
    /// Solve an equation that reduces to W
    Equation {
        #[arg(value_enum)]
        form: FormArg,
        #[command(flatten)]
        params: EquationParams,
    },
}

#[derive(Debug, Clone, Args)]
pub struct EquationParams {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_f64)]
    pub m: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_f64)]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_f64)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_f64)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_f64)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_f64)]
    pub s: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    W0,
    Wm1,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::W0 => Branch::Principal,
            BranchArg::Wm1 => Branch::Secondary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    M1,
    M2,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::M1 => Method::M1,
            MethodArg::M2 => Method::M2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    /// y^y = m
    Ypowy,
    /// y^(1/y) = m
    Ypowinvy,
    /// p ln x + q/x = r
    Plnxqoverx,
    /// p ln x + q x = r
    Plnxqx,
    /// p x + q e^(r x) = s
    Pxqexprx,
    /// x^x^x^... for 1 <= x <= e^(1/e)
    Tower,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_positional_and_trailing_globals() {
        let cli = Cli::try_parse_from(["lwq", "eval", "-0.25", "--branch", "wm1", "--iters", "4"])
            .unwrap();
        assert!(matches!(cli.command, Command::Eval { x: Num::Value(v) } if v == -0.25));
        assert_eq!(cli.opts.branch(), Branch::Secondary);
        assert_eq!(cli.opts.config().fixed_steps, Some(4));
    }

    #[test]
    fn lists_split_on_commas() {
        let cli = Cli::try_parse_from(["lwq", "compare", "1,100,1e20"]).unwrap();
        let Command::Compare { xs } = cli.command else {
            panic!()
        };
        assert_eq!(xs, vec![1.0, 100.0, 1e20]);
        assert!(Cli::try_parse_from(["lwq", "sweep", "1", "--seeds", "1,x"]).is_err());
        assert!(Cli::try_parse_from(["lwq", "sweep", "1", "--seeds", "0"]).is_err());
    }

    #[test]
    fn rejects_bad_flags() {
        assert!(Cli::try_parse_from(["lwq", "eval", "1", "--iters", "0"]).is_err());
        assert!(Cli::try_parse_from(["lwq", "eval", "1", "--branch", "w2"]).is_err());
        assert!(Cli::try_parse_from(["lwq", "tables", "t9.9"]).is_err());
    }
}
