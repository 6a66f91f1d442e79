//! Discrete-time simulation of open-loop pass tracking.
//!
//! The controller issues position commands at a fixed interval with a
//! one-interval look-ahead: each command targets where the satellite will be
//! one command interval after the command is issued, so the mount arrives
//! before the satellite does. A command cycle runs LATENCY (the mount sits
//! still while the command takes effect), MOVE on the azimuth axis, MOVE on
//! the elevation axis (the axes cannot move together), then WAIT until the
//! next command time. Commands cannot be queued: if a move overruns the
//! command interval, the next command is issued the moment the move ends.
//!
//! All phase boundaries are rounded up to the simulation-step grid, so the
//! trace is a uniform time series and two runs with the same inputs are
//! bit-identical.

use alloc::vec::Vec;
use core::fmt;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::mount::{plan_move, MountConfig};
use crate::trajectory::PassTrajectory;

/// Which velocity-selection strategy produced a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// Mount maximum velocity on both axes.
    A,
    /// Maximum satellite velocity per axis over the pass.
    B,
    /// Pattern-search optimized velocities.
    C,
    Custom,
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileKind::A => write!(f, "A"),
            ProfileKind::B => write!(f, "B"),
            ProfileKind::C => write!(f, "C"),
            ProfileKind::Custom => write!(f, "custom"),
        }
    }
}

/// Per-axis target velocities for the trapezoidal moves, deg/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityProfile {
    pub kind: ProfileKind,
    pub v_az: f64,
    pub v_el: f64,
}

impl VelocityProfile {
    pub fn custom(v_az: f64, v_el: f64) -> Self {
        Self {
            kind: ProfileKind::Custom,
            v_az,
            v_el,
        }
    }

    /// Clamps both axes to the mount's velocity limits. The flag reports
    /// whether anything was clamped so callers can surface a diagnostic.
    pub fn clamped_to(&self, cfg: &MountConfig) -> (VelocityProfile, bool) {
        let clamped = VelocityProfile {
            kind: self.kind,
            v_az: self.v_az.min(cfg.v_max_az),
            v_el: self.v_el.min(cfg.v_max_el),
        };
        let changed = clamped.v_az != self.v_az || clamped.v_el != self.v_el;
        (clamped, changed)
    }
}

/// Profile A: the maximum velocity the mount allows on each axis.
pub fn profile_a(cfg: &MountConfig) -> VelocityProfile {
    VelocityProfile {
        kind: ProfileKind::A,
        v_az: cfg.v_max_az,
        v_el: cfg.v_max_el,
    }
}

/// Profile B: the maximum velocity of the satellite on each axis over the
/// pass. Rejects passes that leave an axis stationary, since a zero target
/// velocity cannot drive a trapezoidal move.
pub fn profile_b(traj: &PassTrajectory) -> Result<VelocityProfile> {
    let (v_az, v_el) = traj.max_axis_rates();
    if v_az <= 0.0 || v_el <= 0.0 {
        return Err(Error::DegenerateProfile { v_az, v_el });
    }
    Ok(VelocityProfile {
        kind: ProfileKind::B,
        v_az,
        v_el,
    })
}

/// Which axis moves first within a command cycle. The axes cannot move
/// together, so one of them has to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AxisOrder {
    #[default]
    AzimuthFirst,
    ElevationFirst,
}

/// Controller/mount phase active during a simulation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseLabel {
    Wait,
    Latency,
    MoveAz,
    MoveEl,
}

impl PhaseLabel {
    pub const ALL: [PhaseLabel; 4] = [
        PhaseLabel::Wait,
        PhaseLabel::Latency,
        PhaseLabel::MoveAz,
        PhaseLabel::MoveEl,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PhaseLabel::Wait => "WAIT",
            PhaseLabel::Latency => "LATENCY",
            PhaseLabel::MoveAz => "MOVE_AZ",
            PhaseLabel::MoveEl => "MOVE_EL",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "WAIT" => Some(PhaseLabel::Wait),
            "LATENCY" => Some(PhaseLabel::Latency),
            "MOVE_AZ" => Some(PhaseLabel::MoveAz),
            "MOVE_EL" => Some(PhaseLabel::MoveEl),
            _ => None,
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One simulation step: satellite and mount state plus the pointing error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub t: f64,
    pub sat_az: f64,
    pub sat_el: f64,
    pub mount_az: f64,
    pub mount_el: f64,
    pub phase: PhaseLabel,
    /// Great-circle angle between mount boresight and satellite, degrees.
    pub pointing_error: f64,
}

/// Uniform-grid output of one simulated pass.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace {
    pub records: Vec<TraceRecord>,
    /// Configuration echo.
    pub mount: MountConfig,
    /// Effective (clamped) velocity profile that drove the moves.
    pub profile: VelocityProfile,
    pub start_time: f64,
    pub step: f64,
}

impl SimulationTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn pointing_errors(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.pointing_error)
    }
}

/// Great-circle pointing error between mount and satellite directions,
/// degrees.
///
/// Haversine central angle with elevation as latitude and azimuth as
/// longitude: `2 asin(sqrt(sin^2(d_el/2) + cos(el_m) cos(el_s)
/// sin^2(d_az/2)))`. Numerically stable at both small and near-antipodal
/// separations, and periodic in the azimuth difference, so unwrapped
/// azimuths need no reduction. Result in [0, 180].
pub fn pointing_error(mount_az: f64, mount_el: f64, sat_az: f64, sat_el: f64) -> f64 {
    let half_del = 0.5 * (sat_el - mount_el).to_radians();
    let half_daz = 0.5 * (sat_az - mount_az).to_radians();
    let h = half_del.sin() * half_del.sin()
        + mount_el.to_radians().cos()
            * sat_el.to_radians().cos()
            * half_daz.sin()
            * half_daz.sin();
    (2.0 * h.max(0.0).sqrt().min(1.0).asin()).to_degrees()
}

/// Number of whole simulation steps covering `duration`, rounded up, with a
/// relative guard so durations that are exact grid multiples do not gain a
/// spurious extra step from floating-point division.
fn steps_ceil(duration: f64, step: f64) -> u64 {
    if duration <= 0.0 {
        return 0;
    }
    (duration / step - 1e-9).ceil().max(0.0) as u64
}

/// Simulates a full pass and returns the per-step trace.
///
/// The mount starts at the satellite position at pass start unless
/// `initial_mount` overrides it. Command `i` is issued at `t_i` and targets
/// the satellite position at `t_i + command_interval` (clamped to the end of
/// the pass); the next command is issued at `max(t_i + command_interval,
/// move completion)`.
pub fn simulate(
    traj: &PassTrajectory,
    cfg: &MountConfig,
    profile: &VelocityProfile,
    initial_mount: Option<(f64, f64)>,
) -> Result<SimulationTrace> {
    simulate_with_order(traj, cfg, profile, initial_mount, AxisOrder::default())
}

/// [`simulate`] with an explicit per-cycle axis order.
pub fn simulate_with_order(
    traj: &PassTrajectory,
    cfg: &MountConfig,
    profile: &VelocityProfile,
    initial_mount: Option<(f64, f64)>,
    order: AxisOrder,
) -> Result<SimulationTrace> {
    cfg.validate()?;
    if profile.v_az <= 0.0 || profile.v_el <= 0.0 {
        return Err(Error::DegenerateProfile {
            v_az: profile.v_az,
            v_el: profile.v_el,
        });
    }
    let required = 2.0 * cfg.command_interval;
    if traj.span() < required {
        return Err(Error::TrajectoryTooShort {
            span_s: traj.span(),
            required_s: required,
        });
    }
    let (profile, _) = profile.clamped_to(cfg);

    let t0 = traj.start_time();
    let t_end = traj.end_time();
    let step = cfg.sim_step;
    let total_steps = ((t_end - t0) / step + 1e-9).floor() as u64;
    let latency_steps = steps_ceil(cfg.latency, step);
    let interval_steps = steps_ceil(cfg.command_interval, step);

    let (mut mount_az, mut mount_el) = match initial_mount {
        Some(pos) => pos,
        None => traj.sample_at(t0)?,
    };
    if !(mount_az.is_finite() && mount_el.is_finite()) {
        return Err(Error::NonFinite {
            what: "initial mount position",
        });
    }

    let mut records = Vec::with_capacity(total_steps as usize + 1);
    let mut k: u64 = 0; // next record index
    let mut cmd_k: u64 = 0; // step at which the current command is issued

    while k <= total_steps {
        let t_issue = t0 + cmd_k as f64 * step;
        let target_t = (t_issue + cfg.command_interval).min(t_end);
        let (target_az, target_el) = traj.sample_at(target_t)?;

        let plan_az = plan_move(mount_az, target_az, profile.v_az, cfg.accel_az)?;
        let plan_el = plan_move(mount_el, target_el, profile.v_el, cfg.accel_el)?;
        let (first_plan, second_plan) = match order {
            AxisOrder::AzimuthFirst => (&plan_az, &plan_el),
            AxisOrder::ElevationFirst => (&plan_el, &plan_az),
        };

        let latency_end = cmd_k + latency_steps;
        let first_end = latency_end + steps_ceil(first_plan.total_time(), step);
        let second_end = first_end + steps_ceil(second_plan.total_time(), step);
        let next_cmd = second_end.max(cmd_k + interval_steps);

        while k < next_cmd && k <= total_steps {
            let t = t0 + k as f64 * step;
            let (phase, m_az, m_el) = if k < latency_end {
                (PhaseLabel::Latency, mount_az, mount_el)
            } else if k < first_end {
                let move_t = (k - latency_end) as f64 * step;
                match order {
                    AxisOrder::AzimuthFirst => {
                        (PhaseLabel::MoveAz, plan_az.position_at(move_t), mount_el)
                    }
                    AxisOrder::ElevationFirst => {
                        (PhaseLabel::MoveEl, mount_az, plan_el.position_at(move_t))
                    }
                }
            } else if k < second_end {
                let move_t = (k - first_end) as f64 * step;
                match order {
                    AxisOrder::AzimuthFirst => {
                        (PhaseLabel::MoveEl, target_az, plan_el.position_at(move_t))
                    }
                    AxisOrder::ElevationFirst => {
                        (PhaseLabel::MoveAz, plan_az.position_at(move_t), target_el)
                    }
                }
            } else {
                (PhaseLabel::Wait, target_az, target_el)
            };
            let (sat_az, sat_el) = traj.sample_at(t.min(t_end))?;
            records.push(TraceRecord {
                t,
                sat_az,
                sat_el,
                mount_az: m_az,
                mount_el: m_el,
                phase,
                pointing_error: pointing_error(m_az, m_el, sat_az, sat_el),
            });
            k += 1;
        }

        mount_az = target_az;
        mount_el = target_el;
        cmd_k = next_cmd;
    }

    Ok(SimulationTrace {
        records,
        mount: *cfg,
        profile,
        start_time: t0,
        step,
    })
}
