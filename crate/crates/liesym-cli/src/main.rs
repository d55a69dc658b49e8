//! `liesym`: symmetry classification, verification and flows from the command line.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "liesym",
    version,
    about = "Lie point symmetries of the two-factor Kolmogorov equation"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 24301)]
    pub seed: u64,
    /// Tolerance for numeric cross-checks of symbolic identities.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_sym: f64,
    /// Tolerance for finite-difference residuals.
    #[arg(long, global = true, default_value_t = 1e-5)]
    pub tol_fd: f64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameter class, algebra dimension and structure for (a, b, d, e).
    Classify(commands::ClassifyArgs),
    /// Dump the determining system.
    Determine(commands::DetermineArgs),
    /// Generator basis of a case.
    Basis(commands::CaseArgs),
    /// Commutator table of a case.
    BracketTable(commands::BracketArgs),
    /// Structure identification of a case, or the isomorphism grid.
    Structure(commands::StructureArgs),
    /// Check bases, closure and structure for one case or all.
    Verify(commands::VerifyArgs),
    /// Closed-form and integrated flow of one generator at a point.
    Flow(commands::FlowArgs),
    /// Transport a solution along a flow and sweep its residual.
    Transform(commands::TransformArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Classify(a) => commands::classify(a, g),
        Command::Determine(a) => commands::determine(a, g),
        Command::Basis(a) => commands::basis(a, g),
        Command::BracketTable(a) => commands::bracket_table(a, g),
        Command::Structure(a) => commands::structure(a, g),
        Command::Verify(a) => commands::verify(a, g),
        Command::Flow(a) => commands::flow(a, g),
        Command::Transform(a) => commands::transform(a, g),
    };
    match result {
        Ok(report) => {
            let body = report.render(g.format);
            if let Err(e) = emit(g.out.as_ref(), &body) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn emit(out: Option<&PathBuf>, body: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}
