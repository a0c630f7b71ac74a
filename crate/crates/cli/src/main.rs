mod commands;
mod failure;
mod wizard;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use polyforge_core::codegen::Target;

use commands::{Context, Format};
use failure::{Exit, Failure};

/// Polystore deployment toolchain: models in, container orchestration files out.
#[derive(Debug, Parser)]
#[command(name = "polyforge", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// DBMS catalog replacing the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    /// Only print errors and requested artifacts.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum TargetArg {
    Compose,
    Kubernetes,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Compose => Target::Compose,
            TargetArg::Kubernetes => Target::Kubernetes,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a deployment model.
    Check { path: PathBuf },
    /// Turn a polystore model and its answers into a deployment model.
    Transform {
        ml: PathBuf,
        answers: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Render deployment files for every application of a model.
    Generate {
        path: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
        /// Render only this application.
        #[arg(long)]
        application: Option<String>,
    },
    /// Ask for the deployment choices of a polystore model and write an answers file.
    Init {
        ml: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Take the first choice for every question without asking.
        #[arg(long)]
        defaults: bool,
        /// Answers to start from; only missing ones are asked.
        #[arg(long, value_name = "FILE")]
        answers: Option<PathBuf>,
    },
    /// Rewrite deployment models in canonical layout.
    Fmt {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Fail instead of rewriting when a file is not canonical.
        #[arg(long)]
        check: bool,
    },
    /// Estimate the daily and yearly data volume of a vehicle fleet.
    Estimate {
        #[arg(long)]
        fleet: u64,
        /// One `source,daily_tb,yearly_pb` line per row.
        #[arg(long)]
        csv: bool,
    },
}

fn run(cli: Cli) -> Result<Exit, Failure> {
    let ctx = Context::load(cli.format, cli.quiet, cli.catalog.as_deref())?;
    match cli.command {
        Command::Check { path } => commands::check(&ctx, &path),
        Command::Transform { ml, answers, out } => {
            commands::transform(&ctx, &ml, &answers, out.as_deref())
        }
        Command::Generate {
            path,
            target,
            outdir,
            application,
        } => commands::generate(&ctx, &path, target.into(), &outdir, application.as_deref()),
        Command::Init {
            ml,
            out,
            defaults,
            answers,
        } => commands::init(&ctx, &ml, &out, defaults, answers.as_deref()),
        Command::Fmt { paths, check } => commands::fmt(&ctx, &paths, check),
        Command::Estimate { fleet, csv } => commands::estimate(&ctx, fleet, csv),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Exit::Io as u8),
            };
        }
    };
    let json = cli.format == Format::Json;
    match run(cli) {
        Ok(exit) => ExitCode::from(exit as u8),
        Err(failure) => {
            if json {
                eprintln!("{}", serde_json::to_string_pretty(&failure.json).unwrap());
            } else {
                eprintln!("{}", failure.text);
            }
            ExitCode::from(failure.exit as u8)
        }
    }
}
