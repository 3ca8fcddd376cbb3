use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rollsim::config::{load_controller, load_grid, load_scenario, load_vehicle, Scenario};
use rollsim::report::Report;
use rollsim::sweep::{write_rows, Sweep};
use rollsim::{acceptance, trace, Error};
use rollsim_core::{run, ControllerConfig, SimResult, Termination, VehicleParams};

const EXIT_CONFIG: u8 = 1;
const EXIT_ACCEPTANCE: u8 = 2;
const EXIT_BLOWUP: u8 = 3;

#[derive(Parser)]
#[command(name = "rollsim", version, about = "Vehicle roll simulation with sliding-mode active suspension control")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Inputs {
    /// Scenario file (TOML).
    #[arg(long)]
    scenario: PathBuf,
    /// Vehicle parameter file (TOML); defaults to the built-in vehicle.
    #[arg(long)]
    vehicle: Option<PathBuf>,
    /// Controller file (TOML); defaults to the built-in controller.
    #[arg(long)]
    controller: Option<PathBuf>,
}

#[derive(clap::Args)]
struct Output {
    /// Output directory.
    #[arg(long, env = "ROLLSIM_OUT_DIR", default_value = "rollsim-out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one scenario and write its CSV trace.
    RunScenario {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        output: Output,
        /// Run with the controller disabled.
        #[arg(long)]
        passive: bool,
        /// Trace file name inside the output directory.
        #[arg(long, default_value = "run.csv")]
        name: String,
    },
    /// Simulate a scenario passive and active; write both traces and a report.
    RunPair {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// Run a Cartesian parameter sweep and write one metrics row per point.
    Sweep {
        /// Grid file (TOML).
        #[arg(long)]
        grid: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Compute the comparison report from two trace files.
    Report {
        #[arg(long)]
        passive: PathBuf,
        #[arg(long)]
        active: PathBuf,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Verify,
}

enum Failure {
    Config(Error),
    Blowup(String),
    Acceptance(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e)
    }
}

fn load_inputs(inputs: &Inputs) -> Result<(VehicleParams, ControllerConfig, Scenario), Error> {
    let params = inputs.vehicle.as_deref().map(load_vehicle).transpose()?.unwrap_or_default();
    let ctrl = inputs.controller.as_deref().map(load_controller).transpose()?.unwrap_or_default();
    let scenario = load_scenario(&inputs.scenario)?;
    Ok((params, ctrl, scenario))
}

fn create_dir(dir: &Path) -> Result<(), Error> {
    fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.into(), source: e })
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io { path: path.into(), source: e })
}

fn summarize(label: &str, res: &SimResult) -> Result<(), Failure> {
    let last = res.last();
    println!(
        "{label}: {} at t = {:.3} s, peak travel {:.4} m, peak force {:.1} N, saturated steps {}",
        res.termination.name(),
        last.t,
        res.max_travel,
        res.max_force,
        res.saturation_steps
    );
    match res.termination {
        Termination::Blowup => Err(Failure::Blowup(format!("{label}: non-finite state at t = {:.3} s", last.t))),
        Termination::Rollover => {
            eprintln!("warning: {label}: rollover at t = {:.3} s", last.t);
            Ok(())
        }
        Termination::TravelViolation => {
            eprintln!("warning: {label}: suspension travel exceeded on {} steps", res.travel_violation_steps);
            Ok(())
        }
        Termination::Completed => Ok(()),
    }
}

fn simulate(
    params: &VehicleParams,
    ctrl: &ControllerConfig,
    scenario: &Scenario,
) -> Result<SimResult, Error> {
    let profile = scenario.spec.build(params)?;
    Ok(run(params, &scenario.sim_config()?, ctrl, &profile)?)
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::RunScenario { inputs, output, passive, name } => {
            let (params, mut ctrl, scenario) = load_inputs(&inputs)?;
            ctrl.enabled &= !passive;
            let res = simulate(&params, &ctrl, &scenario)?;
            create_dir(&output.out)?;
            let path = output.out.join(name);
            trace::save(&path, &res.samples)?;
            println!("wrote {}", path.display());
            summarize(if ctrl.enabled { "active" } else { "passive" }, &res)
        }
        Command::RunPair { inputs, output } => {
            let (params, ctrl, scenario) = load_inputs(&inputs)?;
            let passive = simulate(&params, &ControllerConfig { enabled: false, ..ctrl }, &scenario)?;
            let active = simulate(&params, &ControllerConfig { enabled: true, ..ctrl }, &scenario)?;
            create_dir(&output.out)?;
            trace::save(&output.out.join("passive.csv"), &passive.samples)?;
            trace::save(&output.out.join("active.csv"), &active.samples)?;
            let report = Report::from_runs(&passive.samples, &active.samples).to_text();
            write_file(&output.out.join("report.txt"), &report)?;
            print!("{report}");
            println!("wrote passive.csv, active.csv, report.txt to {}", output.out.display());
            summarize("passive", &passive)?;
            summarize("active", &active)
        }
        Command::Sweep { grid, output } => {
            let sweep = Sweep::from_grid(&load_grid(&grid)?)?;
            let rows = sweep.run()?;
            create_dir(&output.out)?;
            let path = output.out.join("sweep.csv");
            let file = fs::File::create(&path).map_err(|e| Error::Io { path: path.clone(), source: e })?;
            write_rows(file, &rows).map_err(|e| Error::Trace { path: path.clone(), message: e.to_string() })?;
            println!("wrote {} rows to {}", rows.len(), path.display());
            match rows.iter().find(|r| r.passive == Termination::Blowup || r.active == Termination::Blowup) {
                Some(r) => Err(Failure::Blowup(format!("grid point {:?} blew up", r.point))),
                None => Ok(()),
            }
        }
        Command::Report { passive, active, out } => {
            let report = Report::from_runs(&trace::load(&passive)?, &trace::load(&active)?).to_text();
            if let Some(path) = out {
                write_file(&path, &report)?;
            }
            print!("{report}");
            Ok(())
        }
        Command::Verify => {
            let outcomes = acceptance::run_all();
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
            if failed > 0 {
                Err(Failure::Acceptance(failed))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Blowup(msg)) => {
            eprintln!("error: numerical blowup: {msg}");
            ExitCode::from(EXIT_BLOWUP)
        }
        Err(Failure::Acceptance(n)) => {
            eprintln!("error: {n} acceptance criteria failed");
            ExitCode::from(EXIT_ACCEPTANCE)
        }
    }
}
