//! Single-axis motion planning under a trapezoidal velocity law.
//!
//! Every move is rest-to-rest: a constant-acceleration ramp, an optional
//! constant-velocity cruise, and a mirror-image deceleration ramp. Moves too
//! short to reach the commanded velocity degenerate to a triangular profile.
//! Transitions carry infinite jerk; that is the modeled behavior.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// Per-axis hardware limits and controller timing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MountConfig {
    /// Maximum azimuth velocity, deg/s.
    pub v_max_az: f64,
    /// Maximum elevation velocity, deg/s.
    pub v_max_el: f64,
    /// Azimuth acceleration, deg/s^2.
    pub accel_az: f64,
    /// Elevation acceleration, deg/s^2.
    pub accel_el: f64,
    /// Command execution latency, seconds.
    pub latency: f64,
    /// Interval between controller commands, seconds.
    pub command_interval: f64,
    /// Simulation step, seconds.
    pub sim_step: f64,
}

impl MountConfig {
    /// Validated constructor: all parameters strictly positive and the
    /// simulation step no coarser than the latency or command interval.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        v_max_az: f64,
        v_max_el: f64,
        accel_az: f64,
        accel_el: f64,
        latency: f64,
        command_interval: f64,
        sim_step: f64,
    ) -> Result<Self> {
        let cfg = Self {
            v_max_az,
            v_max_el,
            accel_az,
            accel_el,
            latency,
            command_interval,
            sim_step,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.v_max_az,
            self.v_max_el,
            self.accel_az,
            self.accel_el,
            self.latency,
            self.command_interval,
            self.sim_step,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMountConfig("parameters must be finite"));
        }
        if all.iter().any(|&v| v <= 0.0) {
            return Err(Error::InvalidMountConfig(
                "parameters must be strictly positive",
            ));
        }
        if self.sim_step > self.latency || self.sim_step > self.command_interval {
            return Err(Error::InvalidMountConfig(
                "sim_step must not exceed latency or command interval",
            ));
        }
        Ok(())
    }
}

impl Default for MountConfig {
    /// Mid-range alt-azimuth mount: 10 deg/s, 20 deg/s^2, 100 ms latency,
    /// 1 s command interval, 5 ms simulation step.
    fn default() -> Self {
        Self {
            v_max_az: 10.0,
            v_max_el: 10.0,
            accel_az: 20.0,
            accel_el: 20.0,
            latency: 0.1,
            command_interval: 1.0,
            sim_step: 0.005,
        }
    }
}

/// A planned rest-to-rest move on one axis.
///
/// Phase durations: `t_accel` for the ramp up (and down, symmetric) and
/// `t_cruise` at `v_peak`. `t_cruise == 0` means a triangular profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionPlan {
    pub start_pos: f64,
    pub target_pos: f64,
    /// +1.0 toward increasing angle, -1.0 toward decreasing.
    pub direction: f64,
    /// Peak velocity actually reached, deg/s (<= commanded velocity).
    pub v_peak: f64,
    /// Acceleration magnitude, deg/s^2.
    pub accel: f64,
    /// Ramp duration, seconds (phases I and III each).
    pub t_accel: f64,
    /// Constant-velocity duration, seconds (phase II).
    pub t_cruise: f64,
}

impl MotionPlan {
    /// Total move duration, seconds.
    pub fn total_time(&self) -> f64 {
        2.0 * self.t_accel + self.t_cruise
    }

    /// Position at `t` seconds after the move starts, degrees.
    ///
    /// Piecewise-quadratic integral of the velocity law; returns the start
    /// position for `t <= 0` and the target exactly for `t >= total_time()`.
    pub fn position_at(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.start_pos;
        }
        if t >= self.total_time() {
            return self.target_pos;
        }
        let offset = if t < self.t_accel {
            0.5 * self.accel * t * t
        } else if t < self.t_accel + self.t_cruise {
            let cruise = t - self.t_accel;
            0.5 * self.accel * self.t_accel * self.t_accel + self.v_peak * cruise
        } else {
            let decel = t - self.t_accel - self.t_cruise;
            0.5 * self.accel * self.t_accel * self.t_accel
                + self.v_peak * self.t_cruise
                + self.v_peak * decel
                - 0.5 * self.accel * decel * decel
        };
        self.start_pos + self.direction * offset
    }

    /// Signed velocity at `t` seconds after the move starts, deg/s.
    pub fn velocity_at(&self, t: f64) -> f64 {
        if t <= 0.0 || t >= self.total_time() {
            return 0.0;
        }
        let v = if t < self.t_accel {
            self.accel * t
        } else if t < self.t_accel + self.t_cruise {
            self.v_peak
        } else {
            self.v_peak - self.accel * (t - self.t_accel - self.t_cruise)
        };
        self.direction * v
    }
}

/// Plans a rest-to-rest move from `start` to `target` degrees with target
/// velocity `v` deg/s and acceleration `a` deg/s^2.
///
/// Trapezoidal when the distance reaches `v^2/a`, triangular otherwise
/// (peak velocity `sqrt(a * d)`). A zero-distance move yields a
/// zero-duration plan.
pub fn plan_move(start: f64, target: f64, v: f64, a: f64) -> Result<MotionPlan> {
    if !(v > 0.0 && a > 0.0 && v.is_finite() && a.is_finite()) {
        return Err(Error::InvalidPlanParameters {
            velocity: v,
            acceleration: a,
        });
    }
    if !(start.is_finite() && target.is_finite()) {
        return Err(Error::NonFinite {
            what: "move endpoint",
        });
    }
    let distance = (target - start).abs();
    let direction = if target >= start { 1.0 } else { -1.0 };
    let (v_peak, t_accel, t_cruise) = if distance == 0.0 {
        (0.0, 0.0, 0.0)
    } else if distance >= v * v / a {
        (v, v / a, (distance - v * v / a) / v)
    } else {
        ((a * distance).sqrt(), (distance / a).sqrt(), 0.0)
    };
    Ok(MotionPlan {
        start_pos: start,
        target_pos: target,
        direction,
        v_peak,
        accel: a,
        t_accel,
        t_cruise,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Independent oracle: integrate `velocity_at` with the trapezoidal rule
    /// at a fine step and compare against the closed-form position.
    fn integrate_position(plan: &MotionPlan, t: f64, n: usize) -> f64 {
        let h = t / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let a = plan.velocity_at(i as f64 * h);
            let b = plan.velocity_at((i + 1) as f64 * h);
            acc += 0.5 * (a + b) * h;
        }
        plan.start_pos + acc
    }

    #[test]
    fn trapezoidal_plan_durations() {
        let plan = plan_move(0.0, 10.0, 10.0, 20.0).unwrap();
        assert_abs_diff_eq!(plan.t_accel, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(plan.t_cruise, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(plan.total_time(), 1.5, epsilon = 1e-12);
        assert_eq!(plan.v_peak, 10.0);
    }

    #[test]
    fn zero_distance_plan_is_instant() {
        let plan = plan_move(5.0, 5.0, 10.0, 20.0).unwrap();
        assert_eq!(plan.total_time(), 0.0);
        assert_eq!(plan.position_at(0.0), 5.0);
        assert_eq!(plan.position_at(3.0), 5.0);
        assert_eq!(plan.velocity_at(1.0), 0.0);
    }

    #[test]
    fn short_move_goes_triangular() {
        let plan = plan_move(0.0, 1.0, 10.0, 20.0).unwrap();
        assert_eq!(plan.t_cruise, 0.0);
        assert_abs_diff_eq!(plan.v_peak, 20.0f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(plan.total_time(), 2.0 * (1.0f64 / 20.0).sqrt(), epsilon = 1e-12);
        // Closure against the integration oracle.
        let end = integrate_position(&plan, plan.total_time(), 20_000);
        assert_abs_diff_eq!(end, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn position_matches_integration_oracle() {
        let plan = plan_move(0.0, 10.0, 10.0, 20.0).unwrap();
        for frac in [0.1, 0.25, 1.0 / 3.0, 0.5, 0.75, 0.9] {
            let t = frac * plan.total_time();
            let expected = integrate_position(&plan, t, 50_000);
            assert_abs_diff_eq!(plan.position_at(t), expected, epsilon = 1e-7);
        }
        assert_abs_diff_eq!(plan.position_at(0.5), 2.5, epsilon = 1e-12);
    }

    #[test]
    fn arrival_is_exact() {
        let plan = plan_move(0.0, 10.0, 10.0, 20.0).unwrap();
        assert_eq!(plan.position_at(1.5), 10.0);
        assert_eq!(plan.position_at(99.0), 10.0);
        assert_eq!(plan.position_at(0.0), 0.0);
    }

    #[test]
    fn velocity_profile_shape() {
        let plan = plan_move(0.0, 10.0, 10.0, 20.0).unwrap();
        assert_eq!(plan.velocity_at(0.0), 0.0);
        assert_eq!(plan.velocity_at(plan.total_time()), 0.0);
        // Mid-cruise.
        assert_eq!(plan.velocity_at(0.75), 10.0);
        // Mid-ramp: a * t.
        assert_abs_diff_eq!(plan.velocity_at(0.25), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn negative_direction_mirrors() {
        let plan = plan_move(10.0, 0.0, 10.0, 20.0).unwrap();
        assert_eq!(plan.direction, -1.0);
        assert_abs_diff_eq!(plan.position_at(0.5), 7.5, epsilon = 1e-12);
        assert!(plan.velocity_at(0.75) < 0.0);
        assert_eq!(plan.position_at(plan.total_time()), 0.0);
    }

    #[test]
    fn rejects_non_positive_parameters() {
        assert!(plan_move(0.0, 1.0, 0.0, 20.0).is_err());
        assert!(plan_move(0.0, 1.0, 10.0, -1.0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(MountConfig::default().validate().is_ok());
        assert!(MountConfig::new(10.0, 10.0, 20.0, 20.0, 0.1, 1.0, 0.2).is_err());
        assert!(MountConfig::new(0.0, 10.0, 20.0, 20.0, 0.1, 1.0, 0.005).is_err());
    }

    proptest! {
        #[test]
        fn derivative_of_position_is_velocity(
            start in -180.0..180.0f64,
            dist in -40.0..40.0f64,
            v in 0.5..12.0f64,
            a in 1.0..40.0f64,
            frac in 0.001..0.999f64,
        ) {
            let plan = plan_move(start, start + dist, v, a).unwrap();
            let total = plan.total_time();
            prop_assume!(total > 1e-3);
            let t = frac * total;
            let h = 1e-5;
            prop_assume!(t > h && t < total - h);
            let num = (plan.position_at(t + h) - plan.position_at(t - h)) / (2.0 * h);
            // Central differences straddling a phase boundary stay within
            // a*h of the true one-sided values.
            prop_assert!((num - plan.velocity_at(t)).abs() < a * h + 1e-6);
        }

        #[test]
        fn continuity_at_phase_boundaries(
            dist in 0.01..60.0f64,
            v in 0.5..12.0f64,
            a in 1.0..40.0f64,
        ) {
            let plan = plan_move(0.0, dist, v, a).unwrap();
            // Window small enough that genuine motion (~v * 2eps) stays far
            // below the jump threshold.
            let eps = 1e-12;
            for boundary in [plan.t_accel, plan.t_accel + plan.t_cruise] {
                let before = plan.position_at(boundary - eps);
                let after = plan.position_at(boundary + eps);
                prop_assert!((after - before).abs() < 1e-9);
                let dv = plan.velocity_at(boundary + eps) - plan.velocity_at(boundary - eps);
                prop_assert!(dv.abs() < a * 3.0 * eps + 1e-9);
            }
        }

        #[test]
        fn monotone_and_bounded(
            start in -180.0..180.0f64,
            dist in -60.0..60.0f64,
            v in 0.5..12.0f64,
            a in 1.0..40.0f64,
        ) {
            let plan = plan_move(start, start + dist, v, a).unwrap();
            prop_assert!(plan.v_peak <= v + 1e-12);
            let total = plan.total_time();
            let mut prev = plan.position_at(0.0);
            for i in 1..=100 {
                let t = total * i as f64 / 100.0;
                let p = plan.position_at(t);
                if dist >= 0.0 {
                    prop_assert!(p >= prev - 1e-9);
                } else {
                    prop_assert!(p <= prev + 1e-9);
                }
                prop_assert!(plan.velocity_at(t).abs() <= plan.v_peak + 1e-12);
                prev = p;
            }
        }

        #[test]
        fn time_reversal_symmetry(
            start in -180.0..180.0f64,
            dist in -60.0..60.0f64,
            v in 0.5..12.0f64,
            a in 1.0..40.0f64,
            frac in 0.0..1.0f64,
        ) {
            let plan = plan_move(start, start + dist, v, a).unwrap();
            let total = plan.total_time();
            let t = frac * total;
            let sum = plan.position_at(t) + plan.position_at(total - t);
            prop_assert!((sum - (2.0 * start + dist)).abs() < 1e-9);
        }

        #[test]
        fn distance_closure(
            dist in 0.0..60.0f64,
            v in 0.5..12.0f64,
            a in 1.0..40.0f64,
        ) {
            let plan = plan_move(0.0, dist, v, a).unwrap();
            let covered = plan.accel * plan.t_accel * plan.t_accel + plan.v_peak * plan.t_cruise;
            prop_assert!((covered - dist).abs() < 1e-9);
        }
    }
}
