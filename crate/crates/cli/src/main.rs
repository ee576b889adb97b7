mod args;
mod commands;
mod number;
mod output;
mod tables;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{exit, Failure, Report};

fn run(cli: &Cli) -> Result<Report, Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Eval { x } => commands::eval(*x, opts),
        Command::Tables { table } => commands::tables(*table, opts),
        Command::Sweep { x, seeds } => commands::sweep(*x, seeds, opts),
        Command::Compare { xs } => commands::compare_cmd(xs, opts),
        Command::Equation { form, params } => commands::equation(*form, params, opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            });
        }
    };
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.body.as_bytes());
            let _ = out.flush();
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
