mod gen;
mod instance;
mod report;
mod run;
mod stats;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "tightpart", version, about = "Tight cycles, dense matchings and rainbow absorption experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed; required by every randomized generator and pipeline.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Search node budget (cover, oracle-compare) or stage budget (rainbow-system).
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        spec: gen::GenSpec,
    },
    /// Run a pipeline on one or more instance files and emit a JSON report.
    Run(run::RunArgs),
    /// Aggregate run reports into CSV and plot data.
    Stats(stats::StatsArgs),
    /// Re-check a serialized report, witness or cycle system.
    Verify(verify::VerifyArgs),
}

pub struct Global {
    pub seed: Option<u64>,
    pub budget_nodes: Option<u64>,
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = Global { seed: cli.seed, budget_nodes: cli.budget_nodes, format: cli.format };
    let result = match &cli.command {
        Command::Gen { spec } => gen::cmd_gen(spec, &global),
        Command::Run(args) => run::cmd_run(args, &global),
        Command::Stats(args) => stats::cmd_stats(args, &global),
        Command::Verify(args) => verify::cmd_verify(args, &global),
    };
    match result {
        Ok(Output { text, code }) => {
            if let Err(e) = report::emit(cli.out.as_deref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
