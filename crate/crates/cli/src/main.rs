//! `sattrack`: simulate open-loop satellite tracking by an alt-azimuth
//! mount and analyze the resulting pointing error and THz pointing loss.
//!
//! Exit codes: 0 success, 2 usage error, 3 input validation failure,
//! 4 runtime failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sattrack_cli::commands::{
    self, AnalyzeArgs, GenPassArgs, ProfileArg, SimulateArgs,
};

#[derive(Parser)]
#[command(
    name = "sattrack",
    version,
    about = "Open-loop LEO pass tracking simulator for alt-azimuth mounts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic overhead pass and write it as a trajectory CSV.
    GenPass(GenPass),
    /// Simulate a pass with a velocity profile; write trace and summary.
    Simulate(Simulate),
    /// Post-process a trace CSV into ECDF / pointing-loss / ROC CSVs.
    Analyze(Analyze),
}

#[derive(Args)]
struct GenPass {
    /// Peak elevation of the pass, degrees (0, 90].
    #[arg(long, value_name = "DEG")]
    peak_el: f64,
    /// Orbit altitude, km.
    #[arg(long, value_name = "KM")]
    altitude_km: f64,
    /// Trajectory sample spacing, seconds.
    #[arg(long, value_name = "S", default_value_t = 1.0)]
    step_s: f64,
    /// Clip the pass below this elevation, degrees.
    #[arg(long, value_name = "DEG", default_value_t = 0.0)]
    min_el: f64,
    /// Output trajectory CSV path.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
}

#[derive(Args)]
struct Simulate {
    /// Input trajectory CSV (header time_s,az_deg,el_deg).
    #[arg(long, value_name = "PATH")]
    traj: PathBuf,
    /// Config file with [mount] (and optionally [antenna]) sections.
    /// Defaults to the mid-range mount when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Velocity profile: A, B, C, or custom `v_az,v_el` in deg/s.
    #[arg(long, value_name = "A|B|C|AZ,EL")]
    profile: ProfileArg,
    /// Output directory (falls back to $SATTRACK_OUT_DIR, then `.`).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(
    clap::ArgGroup::new("outputs").required(true).multiple(true)
        .args(["ecdf", "loss", "roc"])
))]
struct Analyze {
    /// Input trace CSV produced by `simulate`.
    #[arg(long, value_name = "PATH")]
    trace: PathBuf,
    /// Config file with an [antenna] section (required by --loss / --roc).
    #[arg(long, value_name = "PATH")]
    antenna: Option<PathBuf>,
    /// Write ecdf.csv of the pointing error.
    #[arg(long)]
    ecdf: bool,
    /// Write loss.csv: pointing loss per record, dB.
    #[arg(long, requires = "antenna")]
    loss: bool,
    /// Write roc.csv: sliding-window loss rate of change, dB/s.
    #[arg(long, requires = "antenna")]
    roc: bool,
    /// ROC sliding window length, seconds.
    #[arg(long, value_name = "S", default_value_t = 1.0)]
    window_s: f64,
    /// ROC window slide step, seconds.
    #[arg(long, value_name = "S", default_value_t = 0.005)]
    step_s: f64,
    /// Output directory (falls back to $SATTRACK_OUT_DIR, then `.`).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GenPass(args) => commands::gen_pass(&GenPassArgs {
            peak_el: args.peak_el,
            altitude_km: args.altitude_km,
            step_s: args.step_s,
            min_el: args.min_el,
            out: args.out,
        }),
        Command::Simulate(args) => commands::simulate_cmd(&SimulateArgs {
            traj: args.traj,
            config: args.config,
            profile: args.profile,
            out: args.out,
        }),
        Command::Analyze(args) => commands::analyze(&AnalyzeArgs {
            trace: args.trace,
            antenna: args.antenna,
            ecdf: args.ecdf,
            loss: args.loss,
            roc: args.roc,
            window_s: args.window_s,
            step_s: args.step_s,
            out: args.out,
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
