//! CSV and text file formats.
//!
//! All numeric output uses fixed 9-decimal formatting so reruns produce
//! byte-identical files, and every writer goes through a temp-file-and-rename
//! so partially written outputs never land under the final name. Azimuths
//! are wrapped to [0, 360) on disk and unwrapped on load.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use sattrack_core::analysis::EcdfSeries;
use sattrack_core::link::LossSeries;
use sattrack_core::optimizer::OptimizationReport;
use sattrack_core::trajectory::wrap_360;
use sattrack_core::{AngularSample, PassTrajectory, PhaseLabel, SimulationTrace, TraceRecord};
use serde::Deserialize;

/// Writes `contents` to `path` atomically (temp file in the same directory,
/// then rename).
pub fn atomic_write(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
        .with_context(|| format!("cannot create temp file next to {}", path.display()))?;
    std::io::Write::write_all(&mut tmp, contents.as_bytes())
        .with_context(|| format!("cannot write {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("cannot move temp file into {}", path.display()))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Trajectory CSV: time_s,az_deg,el_deg
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct TrajectoryRow {
    time_s: f64,
    az_deg: f64,
    el_deg: f64,
}

/// Loads a trajectory CSV. Azimuth is stored wrapped on disk; unwrapping
/// happens here. Parse failures report the file, row, and cause.
pub fn load_trajectory(path: &Path) -> Result<PassTrajectory> {
    let mut reader = csv::Reader::from_path(path)
        .with_context(|| format!("cannot open trajectory {}", path.display()))?;
    let mut samples = Vec::new();
    for (i, row) in reader.deserialize::<TrajectoryRow>().enumerate() {
        let row = row.with_context(|| format!("{}: row {}", path.display(), i + 2))?;
        samples.push(AngularSample {
            t: row.time_s,
            az: row.az_deg,
            el: row.el_deg,
        });
    }
    PassTrajectory::from_wrapped(samples)
        .map_err(|e| anyhow!("{}: invalid trajectory: {e}", path.display()))
}

pub fn write_trajectory(path: &Path, traj: &PassTrajectory) -> Result<()> {
    let mut out = String::from("time_s,az_deg,el_deg\n");
    for s in traj.samples() {
        writeln!(out, "{:.9},{:.9},{:.9}", s.t, wrap_360(s.az), s.el).unwrap();
    }
    atomic_write(path, &out)
}

// ---------------------------------------------------------------------------
// Trace CSV:
// time_s,sat_az_deg,sat_el_deg,mount_az_deg,mount_el_deg,phase,pointing_error_deg
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct TraceRow {
    time_s: f64,
    sat_az_deg: f64,
    sat_el_deg: f64,
    mount_az_deg: f64,
    mount_el_deg: f64,
    phase: String,
    pointing_error_deg: f64,
}

/// A trace read back from disk: the records plus the uniform step they sit
/// on. Azimuths stay wrapped; analysis only consumes errors and phases.
#[derive(Debug, Clone)]
pub struct LoadedTrace {
    pub start_time: f64,
    pub step: f64,
    pub records: Vec<TraceRecord>,
}

impl LoadedTrace {
    pub fn pointing_errors(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.pointing_error).collect()
    }
}

pub fn read_trace(path: &Path) -> Result<LoadedTrace> {
    let mut reader = csv::Reader::from_path(path)
        .with_context(|| format!("cannot open trace {}", path.display()))?;
    let mut records = Vec::new();
    for (i, row) in reader.deserialize::<TraceRow>().enumerate() {
        let row = row.with_context(|| format!("{}: row {}", path.display(), i + 2))?;
        let phase = PhaseLabel::parse(&row.phase).ok_or_else(|| {
            anyhow!(
                "{}: row {}: unknown phase {:?}",
                path.display(),
                i + 2,
                row.phase
            )
        })?;
        records.push(TraceRecord {
            t: row.time_s,
            sat_az: row.sat_az_deg,
            sat_el: row.sat_el_deg,
            mount_az: row.mount_az_deg,
            mount_el: row.mount_el_deg,
            phase,
            pointing_error: row.pointing_error_deg,
        });
    }
    if records.len() < 2 {
        bail!("{}: trace needs at least 2 records", path.display());
    }
    let step = records[1].t - records[0].t;
    if step <= 0.0 {
        bail!("{}: trace times must increase", path.display());
    }
    for w in records.windows(2) {
        if ((w[1].t - w[0].t) - step).abs() > 1e-6 * step {
            bail!("{}: trace is not on a uniform time grid", path.display());
        }
    }
    Ok(LoadedTrace {
        start_time: records[0].t,
        step,
        records,
    })
}

pub fn write_trace(path: &Path, trace: &SimulationTrace) -> Result<()> {
    let mut out = String::with_capacity(trace.len() * 96 + 80);
    out.push_str(
        "time_s,sat_az_deg,sat_el_deg,mount_az_deg,mount_el_deg,phase,pointing_error_deg\n",
    );
    for r in &trace.records {
        writeln!(
            out,
            "{:.9},{:.9},{:.9},{:.9},{:.9},{},{:.9}",
            r.t,
            wrap_360(r.sat_az),
            r.sat_el,
            wrap_360(r.mount_az),
            r.mount_el,
            r.phase,
            r.pointing_error
        )
        .unwrap();
    }
    atomic_write(path, &out)
}

// ---------------------------------------------------------------------------
// Analysis outputs
// ---------------------------------------------------------------------------

/// Loss series CSV: `time_s,lp_db`.
pub fn write_loss_series(path: &Path, series: &LossSeries) -> Result<()> {
    let mut out = String::from("time_s,lp_db\n");
    for (i, lp) in series.lp_db.iter().enumerate() {
        writeln!(out, "{:.9},{:.9}", series.time_at(i), lp).unwrap();
    }
    atomic_write(path, &out)
}

/// ROC CSV: `time_s,roc_db_per_s`.
pub fn write_roc(path: &Path, roc: &[(f64, f64)]) -> Result<()> {
    let mut out = String::from("time_s,roc_db_per_s\n");
    for (t, r) in roc {
        writeln!(out, "{t:.9},{r:.9}").unwrap();
    }
    atomic_write(path, &out)
}

/// ECDF CSV: `x,F`.
pub fn write_ecdf(path: &Path, ecdf: &EcdfSeries) -> Result<()> {
    let mut out = String::from("x,F\n");
    for (x, f) in ecdf.points() {
        writeln!(out, "{x:.9},{f:.9}").unwrap();
    }
    atomic_write(path, &out)
}

/// Optimizer report as structured text plus its history CSV
/// (`iter,v_az,v_el,rmse_deg,accepted`).
pub fn optimizer_report_text(report: &OptimizationReport) -> String {
    let mut out = String::new();
    writeln!(out, "v_az = {:.9}", report.best_profile.v_az).unwrap();
    writeln!(out, "v_el = {:.9}", report.best_profile.v_el).unwrap();
    writeln!(out, "rmse_deg = {:.9}", report.best_rmse).unwrap();
    writeln!(out, "iterations = {}", report.iterations).unwrap();
    writeln!(out, "evaluations = {}", report.evaluations).unwrap();
    out
}

pub fn write_optimizer_history(path: &Path, report: &OptimizationReport) -> Result<()> {
    let mut out = String::from("iter,v_az,v_el,rmse_deg,accepted\n");
    for e in &report.history {
        writeln!(
            out,
            "{},{:.9},{:.9},{:.9},{}",
            e.iteration, e.v_az, e.v_el, e.rmse, e.accepted
        )
        .unwrap();
    }
    atomic_write(path, &out)
}
