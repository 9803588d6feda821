use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dissrange::harness::{self, RunConfig, ALL_MONITORS};
use dissrange::Grid;

#[derive(Parser)]
#[command(name = "dissrange", version, about = "Dissipation-range diagnostics for 3D Navier-Stokes on the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation from a config file and write CSV, JSON, and checkpoints.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Evaluate monitors on a set of checkpoint files.
    Analyze {
        #[arg(required = true)]
        checkpoints: Vec<PathBuf>,
        /// Comma-separated monitor names.
        #[arg(long, value_delimiter = ',', default_values_t = ALL_MONITORS.map(String::from))]
        monitors: Vec<String>,
        /// Config supplying c0, operator, exponents; viscosity and grid come from the checkpoints.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the radial filter profiles of an N³ grid as CSV.
    Filters {
        #[arg(long)]
        grid: usize,
    },
    /// Run the built-in invariant checks.
    Selftest,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> dissrange::Result<ExitCode> {
    match cli.command {
        Command::Run { config, output_dir } => {
            let mut cfg = RunConfig::load(&config)?;
            if let Some(dir) = output_dir {
                cfg.output_dir = dir;
            }
            let (out, files) = harness::run(&cfg)?;
            println!("samples: {}, steps: {}, t = {}", out.report.samples, out.report.steps, out.report.final_time);
            if let Some(reason) = &out.report.flags.truncated {
                println!("truncated: {reason}");
            }
            for (name, entry) in &out.report.monitors {
                if let Some(err) = &entry.error {
                    println!("{name}: error: {err}");
                }
            }
            println!("wrote {}", files.csv.display());
            println!("wrote {}", files.json.display());
            if !files.checkpoints.is_empty() {
                println!("wrote {} checkpoints", files.checkpoints.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { checkpoints, monitors, config, out } => {
            let base = match config {
                Some(path) => RunConfig::load(path)?,
                None => RunConfig::default(),
            };
            let cfg = RunConfig { monitors, ..base };
            cfg.validate()?;
            let (report, _) = harness::analyze(&checkpoints, &cfg)?;
            let json = report.to_json();
            match out {
                Some(path) => std::fs::write(path, json)?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Filters { grid } => {
            print!("{}", harness::filter_table(Grid::new(grid)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let checks = harness::selftest::run_all();
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
            }
            println!("{} checks, {failed} failed", checks.len());
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
