//! `qip`: generate instances, compile reductions, evaluate them with the
//! brute-force oracles and export sentences.
//!
//! Exit codes: 0 pass, 1 fail, 2 skipped or over budget, 3 usage error.

mod commands;
mod schema;
mod smtlib;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
}

impl From<qip_core::Error> for CliError {
    fn from(e: qip_core::Error) -> Self {
        match e {
            qip_core::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

/// Result of a command that checks something.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Skip => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qip", version, about = "Quantified integer programming reductions with brute-force oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random instance from a seed.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Compile an instance into a sentence or counting instance.
    Reduce {
        input: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide an instance or sentence by enumeration.
    Decide {
        input: PathBuf,
        #[arg(long, default_value_t = qip_core::oracle::DEFAULT_ORACLE_BUDGET)]
        budget: u64,
    },
    /// Count solutions of a GSA instance or projected points of a counting
    /// instance.
    Count {
        input: PathBuf,
        #[arg(long, default_value_t = qip_core::geometry::DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Run a reduction and check it against the direct oracle. Pass
    /// `sweep` instead of a file to run over the built-in grid.
    Verify {
        input: String,
        #[arg(long, value_enum)]
        target: Option<Target>,
        #[arg(long, value_enum, default_value_t = Grid::Small)]
        grid: Grid,
        #[arg(long, default_value_t = qip_core::oracle::DEFAULT_ORACLE_BUDGET)]
        budget: u64,
    },
    /// Write a sentence in another format.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    Gsa {
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        n: u64,
        /// Largest denominator of the generated fractions.
        #[arg(long, default_value_t = 8)]
        den: i64,
        /// Fixed tolerance `p/q`; drawn below 1/2 when absent.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Q3sat {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Eae,
    Qsat,
    Proj,
    Simplices,
    TwoQuant,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Eae => "eae",
            Target::Qsat => "qsat",
            Target::Proj => "proj",
            Target::Simplices => "simplices",
            Target::TwoQuant => "two-quant",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Small,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    NativeJson,
    Smtlib2Lia,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Gen { kind } => match kind {
            GenKind::Gsa {
                d,
                n,
                den,
                eps,
                seed,
                output,
            } => commands::gen_gsa(d, n, den, eps.as_deref(), seed, output.as_deref()),
            GenKind::Q3sat {
                k,
                ell,
                clauses,
                seed,
                output,
            } => commands::gen_q3sat(k, ell, clauses, seed, output.as_deref()),
        },
        Command::Reduce {
            input,
            target,
            output,
        } => commands::reduce(&input, target, output.as_deref()),
        Command::Decide { input, budget } => commands::decide(&input, budget),
        Command::Count { input, budget } => commands::count(&input, budget),
        Command::Verify {
            input,
            target,
            grid,
            budget,
        } => {
            if input == "sweep" {
                commands::verify_sweep(grid, target, budget)
            } else {
                let target = target
                    .ok_or_else(|| CliError::Usage("verify needs --target for an instance file".into()))?;
                commands::verify_file(input.as_ref(), target, budget)
            }
        }
        Command::Export {
            input,
            format,
            output,
        } => commands::export(&input, format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(o) => ExitCode::from(o.code()),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(CliError::Budget(m)) => {
            eprintln!("skipped: {m}");
            ExitCode::from(2)
        }
    }
}
