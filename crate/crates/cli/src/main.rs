use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dcfactor_cli::{bench, run, RunConfig, EXIT_ERROR};

#[derive(Debug, Parser)]
#[command(name = "dcfactor", version, about = "Duality-computer factorization simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one algorithm or baseline on n
    Run(RunConfig),
    /// Compare primitive-operation counts with classical steps over a range
    Bench {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let result = match cli.command {
        Command::Run(config) => run(&config, &mut std::io::stdout().lock()).map(|s| s.exit_code()),
        Command::Bench { min, max, out } => bench::bench(min, max, &out).map(|rows| {
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            0
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
