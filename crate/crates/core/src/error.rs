//! Crate-wide error type.

use alloc::boxed::Box;
use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by trajectory handling, motion planning, simulation,
/// link-budget evaluation, and optimization.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An operation that requires at least one value received none.
    EmptyInput,
    /// A trajectory needs at least two samples.
    TooFewSamples { found: usize },
    /// Sample times must be strictly increasing.
    NonMonotoneTime { index: usize },
    /// Elevation outside the [0, 90] degree range.
    ElevationOutOfRange { index: usize, value_deg: f64 },
    /// A value that must be finite was NaN or infinite.
    NonFinite { what: &'static str },
    /// Consecutive unwrapped azimuth samples differ by 180 degrees or more.
    AzimuthJump { index: usize },
    /// Interpolation time outside the trajectory span.
    TimeOutOfRange { t: f64, start: f64, end: f64 },
    /// The requested peak elevation cannot be produced for this geometry.
    UnreachablePeakElevation { peak_el_deg: f64, altitude_km: f64 },
    /// A generated pass would contain fewer than two samples.
    PassTooShort,
    /// Pass-generation parameter outside its valid range.
    InvalidPassGeometry(&'static str),
    /// A mount configuration parameter violates its constraints.
    InvalidMountConfig(&'static str),
    /// Motion planning requires strictly positive velocity and acceleration.
    InvalidPlanParameters { velocity: f64, acceleration: f64 },
    /// The trajectory does not span enough command intervals to simulate.
    TrajectoryTooShort { span_s: f64, required_s: f64 },
    /// A velocity profile with a non-positive axis velocity.
    DegenerateProfile { v_az: f64, v_el: f64 },
    /// An antenna configuration parameter violates its constraints.
    InvalidAntenna(&'static str),
    /// Pointing loss is undefined at or beyond 90 degrees of error.
    PointingErrorDomain { alpha_deg: f64 },
    /// A link-loss term was negative or non-finite.
    InvalidLoss(&'static str),
    /// Sliding-window parameters incompatible with the series.
    InvalidWindow(&'static str),
    /// The sliding window is longer than the series span.
    WindowTooLong { window_s: f64, span_s: f64 },
    /// An optimizer configuration parameter violates its constraints.
    InvalidApsConfig(&'static str),
    /// The optimizer objective failed at a candidate point.
    ObjectiveEvaluation {
        v_az: f64,
        v_el: f64,
        source: Box<Error>,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput => write!(f, "input is empty"),
            Error::TooFewSamples { found } => {
                write!(f, "trajectory needs at least 2 samples, found {found}")
            }
            Error::NonMonotoneTime { index } => {
                write!(f, "sample times not strictly increasing at row {index}")
            }
            Error::ElevationOutOfRange { index, value_deg } => write!(
                f,
                "elevation {value_deg} deg at row {index} outside [0, 90]"
            ),
            Error::NonFinite { what } => write!(f, "{what} must be finite"),
            Error::AzimuthJump { index } => write!(
                f,
                "azimuth jump of 180 deg or more between rows {} and {index}",
                index - 1
            ),
            Error::TimeOutOfRange { t, start, end } => {
                write!(f, "time {t} s outside trajectory span [{start}, {end}] s")
            }
            Error::UnreachablePeakElevation {
                peak_el_deg,
                altitude_km,
            } => write!(
                f,
                "peak elevation {peak_el_deg} deg unreachable at altitude {altitude_km} km"
            ),
            Error::PassTooShort => write!(f, "generated pass has fewer than 2 samples"),
            Error::InvalidPassGeometry(why) => write!(f, "invalid pass geometry: {why}"),
            Error::InvalidMountConfig(why) => write!(f, "invalid mount config: {why}"),
            Error::InvalidPlanParameters {
                velocity,
                acceleration,
            } => write!(
                f,
                "motion plan needs positive velocity and acceleration, got v={velocity}, a={acceleration}"
            ),
            Error::TrajectoryTooShort { span_s, required_s } => write!(
                f,
                "trajectory spans {span_s} s, need at least {required_s} s"
            ),
            Error::DegenerateProfile { v_az, v_el } => write!(
                f,
                "velocity profile must be positive on both axes, got ({v_az}, {v_el}) deg/s"
            ),
            Error::InvalidAntenna(why) => write!(f, "invalid antenna config: {why}"),
            Error::PointingErrorDomain { alpha_deg } => write!(
                f,
                "pointing loss undefined for error {alpha_deg} deg (must be < 90)"
            ),
            Error::InvalidLoss(why) => write!(f, "invalid link loss: {why}"),
            Error::InvalidWindow(why) => write!(f, "invalid sliding window: {why}"),
            Error::WindowTooLong { window_s, span_s } => write!(
                f,
                "window of {window_s} s longer than series span {span_s} s"
            ),
            Error::InvalidApsConfig(why) => write!(f, "invalid optimizer config: {why}"),
            Error::ObjectiveEvaluation { v_az, v_el, source } => write!(
                f,
                "objective failed at candidate ({v_az}, {v_el}) deg/s: {source}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
