mod commands;
mod input;
mod plot;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use neutrostat::inference::CriticalTable;

use report::{Fmt, Report};

pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub enum CliError {
    /// Well-formed request the library rejected.
    Domain(neutrostat::Error),
    /// Malformed or inconsistent flags.
    Usage(String),
}

impl From<neutrostat::Error> for CliError {
    fn from(e: neutrostat::Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Significant digits; `None` prints full precision.
#[derive(Debug, Clone, Copy)]
pub struct Precision(pub Option<usize>);

fn parse_precision(s: &str) -> Result<Precision, String> {
    if s == "full" {
        return Ok(Precision(None));
    }
    match s.parse::<usize>() {
        Ok(n) if (1..=17).contains(&n) => Ok(Precision(Some(n))),
        _ => Err(format!("expected 1..=17 or \"full\", got {s:?}")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "neutrostat",
    version,
    about = "Set-valued and indeterminacy-aware statistics"
)]
pub struct Cli {
    /// Report format (randgen prints bare symbols unless this is given).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Significant digits in reports, or `full`.
    #[arg(long, global = true, value_parser = parse_precision, default_value = "6")]
    pub precision: Precision,
    /// Write an SVG plot here (freq and fit).
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    #[command(subcommand)]
    pub command: commands::Command,
}

pub struct Ctx {
    pub fmt: Fmt,
    pub plot: Option<PathBuf>,
    tables: Option<CriticalTable>,
}

impl Ctx {
    pub fn table(&self) -> &CriticalTable {
        self.tables.as_ref().unwrap_or_else(|| CriticalTable::embedded())
    }
}

fn load_tables() -> Result<Option<CriticalTable>, CliError> {
    match std::env::var_os("NEUTROSTAT_TABLES") {
        Some(dir) if !dir.is_empty() => Ok(Some(CriticalTable::from_dir(&PathBuf::from(dir))?)),
        _ => Ok(None),
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", report.render_json()),
        Format::Table => println!("{}", report.render_table()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let name = cli.command.name();
    let format = cli.format.unwrap_or(Format::Json);
    let ctx = Ctx {
        fmt: Fmt { sig: cli.precision.0 },
        plot: cli.plot.clone(),
        tables: None,
    };
    let outcome = load_tables().and_then(|tables| {
        let ctx = Ctx { tables, ..ctx };
        commands::run(&cli.command, &ctx)
    });
    match outcome {
        Ok(commands::Output::Report(r)) => {
            emit(&r, format);
            ExitCode::SUCCESS
        }
        Ok(commands::Output::Lines { text, report }) => {
            match cli.format {
                None => {
                    for l in text {
                        println!("{l}");
                    }
                }
                Some(f) => emit(&report, f),
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Domain(e)) => {
            let r = Report {
                command: name.into(),
                inputs: serde_json::json!({ "argv": std::env::args().skip(1).collect::<Vec<_>>() }),
                results: serde_json::Value::Null,
                warnings: Vec::new(),
                error: Some((e.kind().into(), e.to_string())),
            };
            emit(&r, format);
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
