//! `maxcurves`: runs the verification suites for one parameter set and
//! prints a report. Exit status is 0 when every check passes, 1 when a
//! check fails or a computation errors, 2 on usage errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use maximal_curves::curves::DEFAULT_BUDGET;
use maximal_curves::{CurveParams, Error};

use commands::Context;
use report::{Report, Section};

#[derive(Parser, Debug)]
#[command(name = "maxcurves", version, about = "Verify the maximal curves H_q, X_n, C_n at one parameter set")]
struct Cli {
    /// Characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    /// q = p^h.
    #[arg(long, global = true, default_value_t = 1)]
    h: u32,
    /// Odd n >= 3.
    #[arg(long, global = true, default_value_t = 3)]
    n: u32,
    /// Series precision N (terms below z^N); defaults to 2(q^n + 1).
    #[arg(long, global = true)]
    precision: Option<u64>,
    /// Cap on enumerated points and group elements.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, Subcommand)]
enum Command {
    /// Point counts, genera and maximality of H_q, X_n and C_n.
    Count,
    /// Structure of Q, Z, Sigma, M, N and Gamma.
    Group,
    /// Gamma-orbits on C_n and semiregularity of Q.
    Orbits,
    /// Ramification filtrations, valuations and the lifting obstruction.
    Ramification,
    /// Power series of y and x in z at P_0.
    Expand,
    /// Every suite above plus the field and group-theory corpora.
    VerifyAll,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Count => "count",
            Command::Group => "group",
            Command::Orbits => "orbits",
            Command::Ramification => "ramification",
            Command::Expand => "expand",
            Command::VerifyAll => "verify-all",
        }
    }
}

type Suite = fn(&mut Context) -> anyhow::Result<Section>;

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let params = CurveParams::new(cli.p, cli.h, cli.n)?;
    let mut ctx = Context::new(params, cli.budget, cli.precision);
    let sections = match cli.command {
        Command::Count => vec![commands::count(&mut ctx)?],
        Command::Group => vec![commands::group(&mut ctx)?],
        Command::Orbits => vec![commands::orbits(&mut ctx)?],
        Command::Ramification => vec![commands::ramification(&mut ctx)?],
        Command::Expand => vec![commands::expand(&mut ctx)?],
        Command::VerifyAll => {
            let suites: [Suite; 7] = [
                commands::field,
                commands::count,
                commands::group,
                commands::orbits,
                commands::ramification,
                commands::expand,
                commands::group_theory,
            ];
            let mut sections = Vec::new();
            for suite in suites {
                let start = Instant::now();
                let mut s = suite(&mut ctx)?;
                s.seconds = Some(start.elapsed().as_secs_f64());
                sections.push(s);
            }
            sections
        }
    };
    Ok(Report::new(cli.command.name(), (cli.p, cli.h, cli.n), sections))
}

fn is_usage_error(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(
            Error::NonPrime(_)
                | Error::EvenOrSmallN(_)
                | Error::ZeroH
                | Error::TowerTooLarge { .. }
                | Error::PrecisionTooLow { .. }
        )
    )
}

fn render(cli: &Cli, report: &Report) -> anyhow::Result<String> {
    Ok(match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
        Format::Text => report.to_text(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_usage_error(&e) { 2 } else { 1 });
        }
    };
    let written = render(&cli, &report).and_then(|text| match &cli.out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        for f in &report.failed {
            eprintln!("failed: {f}");
        }
        ExitCode::from(1)
    }
}
