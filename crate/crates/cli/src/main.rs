use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use qgame::{emit, load_scenario, run, CliError, Format, Kind};

#[derive(Parser)]
#[command(name = "qgame", version, about = "Quantum game analysis runs from scenario files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its report.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Validate a scenario and print it with defaults filled in.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Print the scenario schema for a kind.
    Schema {
        #[arg(long)]
        kind: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run {
            scenario,
            out,
            format,
            seed,
        } => {
            let start = Instant::now();
            let s = load_scenario(&scenario)?;
            let report = run(&s, seed)?;
            for path in emit(&report, format, &out)? {
                println!("{}", path.display());
            }
            eprintln!("wall-clock: {:.3} s", start.elapsed().as_secs_f64());
        }
        Command::Validate { scenario } => {
            print!("{}", load_scenario(&scenario)?.to_json());
        }
        Command::Schema { kind } => {
            let k = Kind::from_name(&kind).ok_or_else(|| CliError::Schema {
                field: "kind".to_string(),
                constraint: format!(
                    "unknown kind `{kind}`; expected one of {}",
                    Kind::ALL.map(Kind::name).join(", ")
                ),
            })?;
            let mut s = serde_json::to_string_pretty(&qgame::schema::describe(k)).expect("schema serializes");
            s.push('\n');
            print!("{s}");
        }
    }
    Ok(())
}
