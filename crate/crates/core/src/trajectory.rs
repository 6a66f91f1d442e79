//! Satellite pass trajectories in mount-frame spherical coordinates.
//!
//! A pass is a time-ordered series of (azimuth, elevation) samples. Azimuth
//! is kept *unwrapped* (a continuous, unbounded real) so that the mount and
//! controller never see an artificial 360-degree slew mid-pass; angular
//! distances reduce mod 360 where needed. The synthetic generator produces
//! circular-orbit overhead passes with known geometry for verification at
//! desk scale.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// Mean Earth radius in km.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// Earth gravitational parameter in km^3/s^2.
pub const MU_EARTH_KM3_S2: f64 = 398600.4418;

/// One satellite position sample, angles in degrees.
///
/// `az` is unwrapped: consecutive samples of a trajectory differ by less
/// than 180 degrees but the absolute value is unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSample {
    /// Time offset from pass start, seconds.
    pub t: f64,
    /// Azimuth, degrees (unwrapped).
    pub az: f64,
    /// Elevation, degrees, in [0, 90].
    pub el: f64,
}

/// A time-ordered satellite pass with a nominal sample spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct PassTrajectory {
    samples: Vec<AngularSample>,
    step: f64,
}

impl PassTrajectory {
    /// Builds a trajectory from samples whose azimuth is already unwrapped.
    ///
    /// Validates: at least 2 samples, finite values, strictly increasing
    /// non-negative times, elevation in [0, 90], consecutive azimuth
    /// difference below 180 degrees. The nominal step is the median
    /// inter-sample spacing.
    pub fn new(samples: Vec<AngularSample>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::TooFewSamples {
                found: samples.len(),
            });
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.t.is_finite() && s.az.is_finite() && s.el.is_finite()) {
                return Err(Error::NonFinite {
                    what: "trajectory sample",
                });
            }
            if s.t < 0.0 {
                return Err(Error::NonMonotoneTime { index: i });
            }
            if !(0.0..=90.0).contains(&s.el) {
                return Err(Error::ElevationOutOfRange {
                    index: i,
                    value_deg: s.el,
                });
            }
            if i > 0 {
                if s.t <= samples[i - 1].t {
                    return Err(Error::NonMonotoneTime { index: i });
                }
                if (s.az - samples[i - 1].az).abs() >= 180.0 {
                    return Err(Error::AzimuthJump { index: i });
                }
            }
        }
        let step = median_spacing(&samples);
        Ok(Self { samples, step })
    }

    /// Builds a trajectory from samples with wrapped azimuth in [0, 360),
    /// unwrapping before validation.
    pub fn from_wrapped(mut samples: Vec<AngularSample>) -> Result<Self> {
        let raw: Vec<f64> = samples.iter().map(|s| s.az).collect();
        if raw.is_empty() {
            return Err(Error::TooFewSamples { found: 0 });
        }
        for (s, az) in samples.iter_mut().zip(unwrap_azimuth(&raw)) {
            s.az = az;
        }
        Self::new(samples)
    }

    pub fn samples(&self) -> &[AngularSample] {
        &self.samples
    }

    /// Nominal (median) inter-sample spacing, seconds.
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn start_time(&self) -> f64 {
        self.samples[0].t
    }

    pub fn end_time(&self) -> f64 {
        self.samples[self.samples.len() - 1].t
    }

    /// Pass duration, seconds.
    pub fn span(&self) -> f64 {
        self.end_time() - self.start_time()
    }

    /// Linearly interpolated (azimuth, elevation) at time `t`.
    ///
    /// Interpolation runs on the unwrapped azimuth, so a pass stored as
    /// 359 -> 361 interpolates through 360 rather than jumping back to 1.
    /// Exact at sample points; `t` outside the span is an error.
    pub fn sample_at(&self, t: f64) -> Result<(f64, f64)> {
        let (start, end) = (self.start_time(), self.end_time());
        if !t.is_finite() || t < start || t > end {
            return Err(Error::TimeOutOfRange { t, start, end });
        }
        // Index of the first sample with time > t; bracketing pair is (hi-1, hi).
        let hi = self
            .samples
            .partition_point(|s| s.t <= t)
            .min(self.samples.len() - 1);
        let (a, b) = (&self.samples[hi - 1], &self.samples[hi]);
        if t == a.t {
            return Ok((a.az, a.el));
        }
        if t == b.t {
            return Ok((b.az, b.el));
        }
        let f = (t - a.t) / (b.t - a.t);
        Ok((a.az + f * (b.az - a.az), a.el + f * (b.el - a.el)))
    }

    /// Per-axis maximum |rate| over consecutive samples, deg/s.
    ///
    /// Azimuth rates are taken on the unwrapped coordinate. This is the
    /// velocity-profile-B estimator: the fastest the satellite moves on
    /// each axis anywhere in the pass.
    pub fn max_axis_rates(&self) -> (f64, f64) {
        let mut v_az: f64 = 0.0;
        let mut v_el: f64 = 0.0;
        for w in self.samples.windows(2) {
            let dt = w[1].t - w[0].t;
            v_az = v_az.max(((w[1].az - w[0].az) / dt).abs());
            v_el = v_el.max(((w[1].el - w[0].el) / dt).abs());
        }
        (v_az, v_el)
    }
}

fn median_spacing(samples: &[AngularSample]) -> f64 {
    let mut gaps: Vec<f64> = samples.windows(2).map(|w| w[1].t - w[0].t).collect();
    gaps.sort_unstable_by(|a, b| a.partial_cmp(b).expect("gaps are finite"));
    let n = gaps.len();
    if n % 2 == 1 {
        gaps[n / 2]
    } else {
        0.5 * (gaps[n / 2 - 1] + gaps[n / 2])
    }
}

/// Reduces an angle in degrees to [0, 360).
pub fn wrap_360(deg: f64) -> f64 {
    let w = deg - 360.0 * (deg / 360.0).floor();
    // floor rounding can land exactly on 360 for tiny negative inputs
    if w >= 360.0 {
        w - 360.0
    } else {
        w
    }
}

/// Unwraps a wrapped azimuth sequence into a continuous coordinate.
///
/// The first element is kept as-is; every successive difference is reduced
/// into [-180, 180) so the output is congruent to the input mod 360 with no
/// jump of 180 degrees or more (antipodal steps map to -180).
pub fn unwrap_azimuth(raw_az: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(raw_az.len());
    let mut prev_raw = f64::NAN;
    let mut prev_out = 0.0;
    for (i, &az) in raw_az.iter().enumerate() {
        let v = if i == 0 {
            az
        } else {
            prev_out + wrap_180(az - prev_raw)
        };
        out.push(v);
        prev_raw = az;
        prev_out = v;
    }
    out
}

/// Reduces a difference in degrees to [-180, 180).
fn wrap_180(delta_deg: f64) -> f64 {
    wrap_360(delta_deg + 180.0) - 180.0
}

/// Synthetic overhead pass on a circular orbit around a non-rotating
/// spherical Earth.
///
/// The satellite flies a circular orbit of radius `R_E + altitude_km` at
/// angular rate `sqrt(mu / r^3)`. The ground station sits at a cross-track
/// offset from the ground track, solved by bisection so that the elevation
/// at culmination equals `peak_el_deg` within 0.01 degrees. Elevation
/// follows from the central angle psi via `atan2(cos psi - R_E/r, sin psi)`;
/// azimuth from the spherical triangle between the station zenith and the
/// sub-satellite point (the pass culminates due south at azimuth 180). The
/// output is clipped to `el >= min_el_deg`, time-symmetric about
/// culmination, and starts at t = 0.
pub fn generate_synthetic_pass(
    peak_el_deg: f64,
    altitude_km: f64,
    sample_step_s: f64,
    min_el_deg: f64,
) -> Result<PassTrajectory> {
    if !(peak_el_deg.is_finite() && altitude_km.is_finite() && sample_step_s.is_finite()) {
        return Err(Error::NonFinite {
            what: "pass geometry parameter",
        });
    }
    if !(peak_el_deg > 0.0 && peak_el_deg <= 90.0) || altitude_km <= 0.0 {
        return Err(Error::UnreachablePeakElevation {
            peak_el_deg,
            altitude_km,
        });
    }
    if !(0.0..peak_el_deg).contains(&min_el_deg) {
        return Err(Error::InvalidPassGeometry(
            "min elevation must lie in [0, peak elevation)",
        ));
    }
    if sample_step_s <= 0.0 {
        return Err(Error::InvalidPassGeometry("sample step must be positive"));
    }

    let r = EARTH_RADIUS_KM + altitude_km;
    let rho = EARTH_RADIUS_KM / r;
    let omega = (MU_EARTH_KM3_S2 / (r * r * r)).sqrt(); // rad/s

    // Elevation (rad) of the satellite at central angle psi (rad).
    let el_of_psi = |psi: f64| (psi.cos() - rho).atan2(psi.sin());

    // Cross-track offset beta: elevation at culmination (psi = beta) equals
    // the requested peak. el_of_psi is monotone decreasing on [0, acos(rho)].
    let target = peak_el_deg.to_radians();
    let mut lo = 0.0;
    let mut hi = rho.acos();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if el_of_psi(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Floor keeps the exact-zenith azimuth well defined; the elevation cost
    // of the floor is far below the 0.01-degree solve tolerance.
    let beta = (0.5 * (lo + hi)).max(1e-9);
    if (el_of_psi(beta).to_degrees() - peak_el_deg).abs() > 0.01 {
        return Err(Error::UnreachablePeakElevation {
            peak_el_deg,
            altitude_km,
        });
    }

    // Edge of the visible arc: psi at which elevation equals min_el.
    // atan2(cos psi - rho, sin psi) = e  <=>  psi = acos(rho cos e) - e.
    let e_min = min_el_deg.to_radians();
    let psi_edge = (rho * e_min.cos()).acos() - e_min;
    // cos psi = cos beta cos(omega t) along the pass.
    let cos_arg = (psi_edge.cos() / beta.cos()).clamp(-1.0, 1.0);
    let t_edge = cos_arg.acos() / omega;

    let half_steps = (t_edge / sample_step_s + 1e-12).floor() as i64;
    if half_steps < 1 {
        return Err(Error::PassTooShort);
    }

    let mut samples = Vec::with_capacity(2 * half_steps as usize + 1);
    for k in -half_steps..=half_steps {
        let t_rel = k as f64 * sample_step_s;
        let (s, c) = (omega * t_rel).sin_cos();
        let psi = (beta.cos() * c).clamp(-1.0, 1.0).acos();
        let el = el_of_psi(psi).to_degrees();
        let az = wrap_360(s.atan2(-beta.sin() * c).to_degrees());
        samples.push(AngularSample {
            t: (k + half_steps) as f64 * sample_step_s,
            az,
            el: el.clamp(0.0, 90.0),
        });
    }
    PassTrajectory::from_wrapped(samples)
}
