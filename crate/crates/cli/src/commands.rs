//! Subcommand implementations: pass generation, simulation, and analysis.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, Result};
use sattrack_core::analysis::{ecdf, summarize};
use sattrack_core::link::{pointing_loss_series_from_errors, roc};
use sattrack_core::optimizer::{aps_optimize, ApsConfig};
use sattrack_core::sim::{profile_a, profile_b, simulate, VelocityProfile};
use sattrack_core::trajectory::generate_synthetic_pass;
use sattrack_core::MountConfig;

use crate::config::{load_antenna, load_config, MountSection};
use crate::io;

/// Command failure with the exit code it maps to: 3 for input validation,
/// 4 for runtime failures.
#[derive(Debug)]
pub enum CmdError {
    Input(anyhow::Error),
    Runtime(anyhow::Error),
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Input(_) => 3,
            CmdError::Runtime(_) => 4,
        }
    }

    pub fn message(&self) -> &anyhow::Error {
        match self {
            CmdError::Input(e) | CmdError::Runtime(e) => e,
        }
    }
}

fn input<E: Into<anyhow::Error>>(e: E) -> CmdError {
    CmdError::Input(e.into())
}

fn runtime<E: Into<anyhow::Error>>(e: E) -> CmdError {
    CmdError::Runtime(e.into())
}

/// Velocity profile selector: `A`, `B`, `C`, or explicit `az,el` in deg/s.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileArg {
    A,
    B,
    C,
    Custom(f64, f64),
}

impl FromStr for ProfileArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(ProfileArg::A),
            "B" | "b" => Ok(ProfileArg::B),
            "C" | "c" => Ok(ProfileArg::C),
            other => {
                let parts: Vec<&str> = other.split(',').collect();
                if parts.len() != 2 {
                    return Err(format!(
                        "expected A, B, C, or `v_az,v_el` in deg/s, got {other:?}"
                    ));
                }
                let az = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
                let el = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
                Ok(ProfileArg::Custom(az, el))
            }
        }
    }
}

/// Resolves the output directory: explicit flag, then `SATTRACK_OUT_DIR`,
/// then the current directory. Creates it if needed.
pub fn resolve_out_dir(flag: Option<PathBuf>) -> Result<PathBuf, CmdError> {
    let dir = flag
        .or_else(|| std::env::var_os("SATTRACK_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| runtime(anyhow!("cannot create output dir {}: {e}", dir.display())))?;
    Ok(dir)
}

// ---------------------------------------------------------------------------
// gen-pass
// ---------------------------------------------------------------------------

pub struct GenPassArgs {
    pub peak_el: f64,
    pub altitude_km: f64,
    pub step_s: f64,
    pub min_el: f64,
    pub out: PathBuf,
}

pub fn gen_pass(args: &GenPassArgs) -> Result<(), CmdError> {
    let traj = generate_synthetic_pass(args.peak_el, args.altitude_km, args.step_s, args.min_el)
        .map_err(input)?;
    io::write_trajectory(&args.out, &traj).map_err(runtime)?;
    let (v_az, v_el) = traj.max_axis_rates();
    println!("wrote {}", args.out.display());
    println!("pass duration: {:.1} s ({} samples)", traj.span(), traj.samples().len());
    println!("max axis rates: azimuth {v_az:.3} deg/s, elevation {v_el:.3} deg/s");
    Ok(())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

pub struct SimulateArgs {
    pub traj: PathBuf,
    pub config: Option<PathBuf>,
    pub profile: ProfileArg,
    pub out: Option<PathBuf>,
}

pub fn simulate_cmd(args: &SimulateArgs) -> Result<(), CmdError> {
    let traj = io::load_trajectory(&args.traj).map_err(input)?;
    let mount_section = match &args.config {
        Some(path) => load_config(path).map_err(input)?.mount,
        None => MountSection::default(),
    };
    let cfg: MountConfig = mount_section.to_mount_config().map_err(input)?;
    let out_dir = resolve_out_dir(args.out.clone())?;

    let profile = match args.profile {
        ProfileArg::A => profile_a(&cfg),
        ProfileArg::B => profile_b(&traj).map_err(input)?,
        ProfileArg::Custom(v_az, v_el) => VelocityProfile::custom(v_az, v_el),
        ProfileArg::C => {
            let report =
                aps_optimize(&traj, &cfg, &ApsConfig::for_mount(&cfg)).map_err(runtime)?;
            io::atomic_write(
                &out_dir.join("optimizer_report.txt"),
                &io::optimizer_report_text(&report),
            )
            .map_err(runtime)?;
            io::write_optimizer_history(&out_dir.join("optimizer_history.csv"), &report)
                .map_err(runtime)?;
            println!(
                "profile C: ({:.3}, {:.3}) deg/s after {} iterations, {} evaluations",
                report.best_profile.v_az,
                report.best_profile.v_el,
                report.iterations,
                report.evaluations
            );
            report.best_profile
        }
    };

    let (clamped, was_clamped) = profile.clamped_to(&cfg);
    if was_clamped {
        eprintln!(
            "warning: profile velocities ({:.3}, {:.3}) clamped to mount limits ({:.3}, {:.3})",
            profile.v_az, profile.v_el, clamped.v_az, clamped.v_el
        );
    }

    let trace = simulate(&traj, &cfg, &clamped, None).map_err(input)?;
    let summary = summarize(&trace).map_err(runtime)?;

    let trace_path = out_dir.join("trace.csv");
    io::write_trace(&trace_path, &trace).map_err(runtime)?;
    io::atomic_write(&out_dir.join("summary.txt"), &format!("{summary}\n")).map_err(runtime)?;

    println!("wrote {}", trace_path.display());
    println!("wrote {}", out_dir.join("summary.txt").display());
    println!(
        "profile {} ({:.3}, {:.3}) deg/s: rmse {:.4} deg, max {:.4} deg",
        clamped.kind, clamped.v_az, clamped.v_el, summary.rmse_deg, summary.max_error_deg
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

pub struct AnalyzeArgs {
    pub trace: PathBuf,
    pub antenna: Option<PathBuf>,
    pub ecdf: bool,
    pub loss: bool,
    pub roc: bool,
    pub window_s: f64,
    pub step_s: f64,
    pub out: Option<PathBuf>,
}

pub fn analyze(args: &AnalyzeArgs) -> Result<(), CmdError> {
    let trace = io::read_trace(&args.trace).map_err(input)?;
    let out_dir = resolve_out_dir(args.out.clone())?;

    if args.ecdf {
        let series = ecdf(&trace.pointing_errors()).map_err(input)?;
        let path = out_dir.join("ecdf.csv");
        io::write_ecdf(&path, &series).map_err(runtime)?;
        println!("wrote {}", path.display());
    }

    if args.loss || args.roc {
        let antenna_path = args
            .antenna
            .as_ref()
            .ok_or_else(|| input(anyhow!("--loss and --roc require --antenna <path>")))?;
        let antenna = load_antenna(antenna_path).map_err(input)?;
        let series = pointing_loss_series_from_errors(
            trace.start_time,
            trace.step,
            trace.records.iter().map(|r| r.pointing_error),
            &antenna,
        );
        if !series.flagged.is_empty() {
            eprintln!(
                "warning: {} records have pointing error >= 90 deg where the loss model \
                 is undefined; their lp_db is written as inf",
                series.flagged.len()
            );
        }
        if args.loss {
            let path = out_dir.join("loss.csv");
            io::write_loss_series(&path, &series).map_err(runtime)?;
            println!("wrote {}", path.display());
        }
        if args.roc {
            let roc_series = roc(&series, args.window_s, args.step_s).map_err(input)?;
            let path = out_dir.join("roc.csv");
            io::write_roc(&path, &roc_series).map_err(runtime)?;
            println!("wrote {}", path.display());
        }
    }

    Ok(())
}
