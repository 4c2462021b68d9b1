use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use phaselab::commands::{self, load_schedule};
use phaselab::{CliError, GridRange, Report, RunFormat, SweepConfig};
use phaselab_core::{Axis, DEFAULT_SAMPLES_PER_SEGMENT};

#[derive(Parser)]
#[command(
    name = "phaselab",
    version,
    about = "Phase decomposition of locally rotated two-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisName {
    X,
    Y,
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a schedule and write the phase time series.
    Run {
        schedule: PathBuf,
        /// Samples per segment, endpoints included.
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_SEGMENT)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print the total/dynamical/geometric/topological decomposition as JSON.
    Breakdown {
        schedule: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_SEGMENT)]
        steps: usize,
    },
    /// Full turns about a fixed axis over a grid of Schmidt states.
    Sweep {
        /// start:end:count
        #[arg(long)]
        lambda0: String,
        /// start:end:count
        #[arg(long)]
        theta: String,
        #[arg(long, value_enum, default_value_t = AxisName::Z)]
        axis: AxisName,
        #[arg(long, default_value_t = 1)]
        turns: u32,
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_SEGMENT)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Interferometer click probability for the schedule.
    Readout { schedule: PathBuf },
}

fn grid(s: &str) -> Result<GridRange, CliError> {
    s.parse().map_err(CliError::Range)
}

fn execute(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Run {
            schedule,
            steps,
            out,
            format,
        } => {
            let format = match format {
                Format::Csv => RunFormat::Csv,
                Format::Json => RunFormat::Json,
            };
            commands::run(&load_schedule(&schedule)?, steps, &out, format)
        }
        Command::Breakdown { schedule, steps } => commands::breakdown(&load_schedule(&schedule)?, steps),
        Command::Sweep {
            lambda0,
            theta,
            axis,
            turns,
            steps,
            out,
        } => {
            let cfg = SweepConfig {
                lambda0: grid(&lambda0)?,
                theta: grid(&theta)?,
                axis: match axis {
                    AxisName::X => Axis::X,
                    AxisName::Y => Axis::Y,
                    AxisName::Z => Axis::Z,
                },
                turns,
                steps,
            };
            commands::sweep(&cfg, &out)
        }
        Command::Readout { schedule } => commands::readout(&load_schedule(&schedule)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("{w}");
            }
            print!("{}", report.stdout);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
