//! Adaptive pattern search over per-axis target velocities.
//!
//! A derivative-free coordinate search: each iteration probes the four
//! points one step away along each axis, moves to the best strictly
//! improving one, and halves the step when none improves. The objective for
//! pass tracking is the RMSE of the pointing error over a full simulated
//! pass, which is cheap enough to evaluate exactly and non-smooth because of
//! the phase machine, so pattern search fits where gradient methods do not.
//! The search is fully deterministic: fixed probe order, no randomness.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::mount::MountConfig;
use crate::sim::{simulate, ProfileKind, SimulationTrace, VelocityProfile};
use crate::trajectory::PassTrajectory;

/// Improvements smaller than this do not count; keeps the search from
/// cycling on floating-point noise.
const IMPROVEMENT_TOLERANCE: f64 = 1e-12;

/// Pattern-search configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApsConfig {
    /// Starting probe step, deg/s.
    pub initial_step: f64,
    /// The search stops once the step falls below this, deg/s.
    pub min_step: f64,
    pub max_iterations: usize,
    /// Inclusive azimuth velocity bounds (lo, hi), deg/s.
    pub az_bounds: (f64, f64),
    /// Inclusive elevation velocity bounds (lo, hi), deg/s.
    pub el_bounds: (f64, f64),
    /// Starting point; defaults to the per-axis satellite maximum rates
    /// clamped into bounds.
    pub initial_point: Option<(f64, f64)>,
}

impl ApsConfig {
    /// Standard search for a given mount: probe step 2 deg/s, stop below
    /// 0.1 deg/s or after 20 iterations, velocities bounded by
    /// (0.1, v_max) per axis.
    pub fn for_mount(cfg: &MountConfig) -> Self {
        Self {
            initial_step: 2.0,
            min_step: 0.1,
            max_iterations: 20,
            az_bounds: (0.1, cfg.v_max_az),
            el_bounds: (0.1, cfg.v_max_el),
            initial_point: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min_step > 0.0 && self.min_step < self.initial_step) {
            return Err(Error::InvalidApsConfig(
                "need 0 < min_step < initial_step",
            ));
        }
        for (lo, hi) in [self.az_bounds, self.el_bounds] {
            if !(lo > 0.0 && lo <= hi && lo.is_finite() && hi.is_finite()) {
                return Err(Error::InvalidApsConfig("bounds must satisfy 0 < lo <= hi"));
            }
        }
        if let Some((az, el)) = self.initial_point {
            if !(self.az_bounds.0..=self.az_bounds.1).contains(&az)
                || !(self.el_bounds.0..=self.el_bounds.1).contains(&el)
            {
                return Err(Error::InvalidApsConfig("initial point outside bounds"));
            }
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidApsConfig("max_iterations must be positive"));
        }
        Ok(())
    }
}

/// One objective evaluation in the search history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// Iteration the candidate was probed in; 0 is the starting point.
    pub iteration: usize,
    pub v_az: f64,
    pub v_el: f64,
    pub rmse: f64,
    /// Whether the search moved to this candidate.
    pub accepted: bool,
}

/// Outcome of a velocity optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationReport {
    /// Best velocities found, labeled as profile C.
    pub best_profile: VelocityProfile,
    pub best_rmse: f64,
    pub iterations: usize,
    /// Unique objective evaluations (cache hits excluded).
    pub evaluations: usize,
    /// Step size when the search stopped.
    pub final_step: f64,
    pub history: Vec<Evaluation>,
}

/// Root-mean-square pointing error over a trace, degrees.
pub fn rmse(trace: &SimulationTrace) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum_sq: f64 = trace.pointing_errors().map(|e| e * e).sum();
    Ok((sum_sq / trace.len() as f64).sqrt())
}

/// Runs the pattern search over an arbitrary objective.
///
/// Probe order is fixed (+az, -az, +el, -el); candidates are clamped to
/// bounds; objective values are cached by exact candidate coordinates, so
/// re-probing a point (e.g. after clamping) costs nothing.
pub fn pattern_search<F>(mut objective: F, aps: &ApsConfig) -> Result<OptimizationReport>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    aps.validate()?;
    let clamp = |az: f64, el: f64| {
        (
            az.clamp(aps.az_bounds.0, aps.az_bounds.1),
            el.clamp(aps.el_bounds.0, aps.el_bounds.1),
        )
    };
    let start = aps
        .initial_point
        .unwrap_or((aps.az_bounds.1, aps.el_bounds.1));
    let (mut best_az, mut best_el) = clamp(start.0, start.1);

    let mut cache: BTreeMap<(u64, u64), f64> = BTreeMap::new();
    let mut evaluations = 0usize;
    let mut eval = |az: f64, el: f64, evaluations: &mut usize| -> Result<f64> {
        let key = (az.to_bits(), el.to_bits());
        if let Some(&v) = cache.get(&key) {
            return Ok(v);
        }
        let v = objective(az, el).map_err(|e| Error::ObjectiveEvaluation {
            v_az: az,
            v_el: el,
            source: Box::new(e),
        })?;
        *evaluations += 1;
        cache.insert(key, v);
        Ok(v)
    };

    let mut best_rmse = eval(best_az, best_el, &mut evaluations)?;
    let mut history = Vec::new();
    history.push(Evaluation {
        iteration: 0,
        v_az: best_az,
        v_el: best_el,
        rmse: best_rmse,
        accepted: true,
    });

    let mut step = aps.initial_step;
    let mut iterations = 0usize;
    while iterations < aps.max_iterations && step >= aps.min_step {
        iterations += 1;
        let candidates = [
            clamp(best_az + step, best_el),
            clamp(best_az - step, best_el),
            clamp(best_az, best_el + step),
            clamp(best_az, best_el - step),
        ];
        let mut probed = [Evaluation {
            iteration: iterations,
            v_az: 0.0,
            v_el: 0.0,
            rmse: 0.0,
            accepted: false,
        }; 4];
        let mut winner: Option<usize> = None;
        for (i, &(az, el)) in candidates.iter().enumerate() {
            let value = eval(az, el, &mut evaluations)?;
            probed[i] = Evaluation {
                iteration: iterations,
                v_az: az,
                v_el: el,
                rmse: value,
                accepted: false,
            };
            let improves = value < best_rmse - IMPROVEMENT_TOLERANCE;
            // Strictly-better-than-current-winner keeps ties on the
            // earlier probe direction.
            if improves && winner.is_none_or(|w| value < probed[w].rmse) {
                winner = Some(i);
            }
        }
        match winner {
            Some(i) => {
                probed[i].accepted = true;
                best_az = probed[i].v_az;
                best_el = probed[i].v_el;
                best_rmse = probed[i].rmse;
            }
            None => step *= 0.5,
        }
        history.extend_from_slice(&probed);
    }

    Ok(OptimizationReport {
        best_profile: VelocityProfile {
            kind: ProfileKind::C,
            v_az: best_az,
            v_el: best_el,
        },
        best_rmse,
        iterations,
        evaluations,
        final_step: step,
        history,
    })
}

/// Optimizes per-axis target velocities for a pass: minimizes the pointing
/// RMSE of the simulated trace. The default starting point is the satellite
/// maximum per-axis rate (the profile-B velocities), clamped into bounds.
pub fn aps_optimize(
    traj: &PassTrajectory,
    cfg: &MountConfig,
    aps: &ApsConfig,
) -> Result<OptimizationReport> {
    let mut aps = *aps;
    if aps.initial_point.is_none() {
        let (v_az, v_el) = traj.max_axis_rates();
        aps.initial_point = Some((
            v_az.clamp(aps.az_bounds.0, aps.az_bounds.1),
            v_el.clamp(aps.el_bounds.0, aps.el_bounds.1),
        ));
    }
    pattern_search(
        |v_az, v_el| rmse(&simulate(traj, cfg, &VelocityProfile::custom(v_az, v_el), None)?),
        &aps,
    )
}
