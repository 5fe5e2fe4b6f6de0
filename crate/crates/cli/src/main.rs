//! `steinberg`: exact verification pipelines over affine Weyl groups,
//! Hecke algebras and Bruhat–Tits buildings.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! invalid arguments.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steinberg::coxeter::AffineTypeLabel;
use steinberg::exact::Rational;
use steinberg::Exec;

use report::Format;

#[derive(Debug, Parser)]
#[command(name = "steinberg", version, about = "Exact checks for affine Weyl groups, Hecke algebras and p-adic buildings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cayley-graph growth against the Poincaré series.
    Growth {
        #[arg(long = "type")]
        label: AffineTypeLabel,
        #[arg(long = "K", default_value_t = 10)]
        cutoff: usize,
    },
    /// Partial sums and closed form of the period.
    Period {
        #[arg(long = "type")]
        label: AffineTypeLabel,
        #[arg(long)]
        q: u64,
        #[arg(long = "K", default_value_t = 10)]
        cutoff: usize,
        /// Also sum over an enumerated building ball of this radius.
        #[arg(long = "R")]
        radius: Option<usize>,
    },
    /// Harmonicity, minimal chambers, decay and rigidity on a ball.
    Harmonic {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=3))]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long = "R", default_value_t = 3)]
        radius: usize,
    },
    /// Enumerate a building ball and compare shell counts.
    Ball {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=3))]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long = "R", default_value_t = 2)]
        radius: usize,
    },
    /// Hecke algebra relations and the special character.
    Hecke {
        #[arg(long = "type")]
        label: AffineTypeLabel,
        #[arg(long, value_parser = parse_rational)]
        q: Rational,
        /// Longest basis elements used in the character check.
        #[arg(long = "K", default_value_t = 2)]
        max_len: usize,
    },
    /// Boundary map on the tree of GL(2, Q_p).
    Boundary {
        #[arg(long)]
        p: u64,
        #[arg(long = "R", default_value_t = 2)]
        depth: usize,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| format!("`{s}` is not a rational number: {e}"))
}

fn run(cli: &Cli) -> anyhow::Result<report::Report> {
    let exec = if cli.output.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::Growth { label, cutoff } => commands::growth(*label, *cutoff, exec),
        Command::Period { label, q, cutoff, radius } => commands::period(*label, *q, *cutoff, *radius, exec),
        Command::Harmonic { n, p, radius } => commands::harmonic(*n as usize, *p, *radius, exec),
        Command::Ball { n, p, radius } => commands::ball(*n as usize, *p, *radius, exec),
        Command::Hecke { label, q, max_len } => commands::hecke(*label, q.clone(), *max_len),
        Command::Boundary { p, depth } => commands::boundary(*p, *depth),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emitted = run(&cli).and_then(|rep| {
        let text = rep.render(cli.output.format)?;
        match &cli.output.out {
            Some(path) => std::fs::write(path, &text)?,
            None => print!("{text}"),
        }
        Ok(rep.ok)
    });
    match emitted {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
