use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use momdwa::harness::{self, Overrides, ProblemName};
use momdwa::Error;

#[derive(Parser)]
#[command(
    name = "momdwa",
    version,
    about = "Multi-objective damped-wave optimizer for quantum control"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one seeded optimization and write its files.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        /// q1 | q2 | q3 | schaffer | fonseca
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        objectives: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the selected solution of a finished run next to reference values.
    Report {
        #[arg(long)]
        run: PathBuf,
    },
    /// Run the benchmark checks and print pass/fail.
    Validate,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("momdwa: [{}] {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Run {
            config,
            problem,
            objectives,
            seed,
            out,
        } => {
            let overrides = Overrides {
                problem: problem.map(|p| p.parse::<ProblemName>()).transpose()?,
                objectives,
                seed,
                output_dir: out,
            };
            let config = harness::load_config(config.as_deref(), &overrides)?;
            let summary = harness::run(&config)?;
            let best = &summary.best;
            println!(
                "{} | seed {} | repository {} | selected #{} fidelity {} | {} = {:?} | {:.2}s",
                config.problem.name(),
                config.seed,
                summary.repository_size,
                best.repository_index,
                harness::sci(best.fidelity),
                summary.objective_names.join(","),
                best.objectives,
                summary.wall_clock_seconds
            );
            println!("wrote {}", config.output_dir.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { run } => {
            print!("{}", harness::report(&run)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate => {
            let outcomes = harness::validate()?;
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} passed, {failed} failed", outcomes.len() - failed);
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
