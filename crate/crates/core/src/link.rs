//! Antenna model, pointing loss, received power, and loss-fading metrics.
//!
//! Pointing loss for a directional aperture grows as
//! `exp(pi * eta * A / lambda^2 * tan^2(alpha))`. With the aperture derived
//! from gain (`A = G lambda^2 / (4 pi eta)`) the exponent collapses to
//! `G/4 * tan^2(alpha)`, so for a fixed gain the loss is independent of
//! carrier frequency and aperture efficiency. The loss rate-of-change metric
//! measures pointing-induced fading: the max-min spread of the loss over a
//! sliding window, divided by the window length.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::sim::SimulationTrace;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Default interpretation of "far field": ratio of at least 100.
pub const DEFAULT_FAR_FIELD_MARGIN: f64 = 100.0;

const TEN_LOG10_E: f64 = 4.342944819032518;

/// Transmit antenna description with derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaConfig {
    pub gain_dbi: f64,
    /// Aperture efficiency, in (0, 1].
    pub efficiency: f64,
    pub frequency_hz: f64,
    /// Half-power beamwidth label, degrees. Descriptive only.
    pub hpbw_deg: Option<f64>,
    gain_linear: f64,
    wavelength_m: f64,
    aperture_m2: f64,
}

impl AntennaConfig {
    pub fn new(gain_dbi: f64, efficiency: f64, frequency_hz: f64) -> Result<Self> {
        if !(gain_dbi.is_finite() && efficiency.is_finite() && frequency_hz.is_finite()) {
            return Err(Error::InvalidAntenna("parameters must be finite"));
        }
        if !(efficiency > 0.0 && efficiency <= 1.0) {
            return Err(Error::InvalidAntenna("efficiency must be in (0, 1]"));
        }
        if frequency_hz <= 0.0 {
            return Err(Error::InvalidAntenna("frequency must be positive"));
        }
        let gain_linear = 10.0f64.powf(gain_dbi / 10.0);
        let wavelength_m = SPEED_OF_LIGHT_M_S / frequency_hz;
        Ok(Self {
            gain_dbi,
            efficiency,
            frequency_hz,
            hpbw_deg: None,
            gain_linear,
            wavelength_m,
            aperture_m2: aperture_from_gain(gain_dbi, efficiency, frequency_hz)?,
        })
    }

    pub fn with_hpbw(mut self, hpbw_deg: f64) -> Self {
        self.hpbw_deg = Some(hpbw_deg);
        self
    }

    pub fn gain_linear(&self) -> f64 {
        self.gain_linear
    }

    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_m
    }

    /// Physical aperture implied by gain, efficiency, and frequency, m^2.
    pub fn aperture_m2(&self) -> f64 {
        self.aperture_m2
    }

    /// `pi * eta * A / lambda^2` for a gain-derived aperture. Computed as
    /// `G/4` so the frequency/efficiency cancellation is exact rather than
    /// accurate to rounding.
    fn normalized_aperture(&self) -> f64 {
        self.gain_linear / 4.0
    }
}

/// Physical aperture area in m^2 for a given gain, efficiency, and
/// frequency: `G_linear * lambda^2 / (4 pi * eta)`.
pub fn aperture_from_gain(gain_dbi: f64, eta: f64, frequency_hz: f64) -> Result<f64> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::InvalidAntenna("efficiency must be in (0, 1]"));
    }
    if !frequency_hz.is_finite() || frequency_hz <= 0.0 {
        return Err(Error::InvalidAntenna("frequency must be positive"));
    }
    let gain_linear = 10.0f64.powf(gain_dbi / 10.0);
    let wavelength = SPEED_OF_LIGHT_M_S / frequency_hz;
    Ok(gain_linear * wavelength * wavelength / (4.0 * core::f64::consts::PI * eta))
}

/// Pointing loss as a linear power ratio (>= 1) at `alpha_e_deg` of error.
///
/// Undefined at 90 degrees and beyond (tangent singularity); even in the
/// error angle. May overflow to infinity for near-90 errors with high gain.
pub fn pointing_loss(alpha_e_deg: f64, antenna: &AntennaConfig) -> Result<f64> {
    Ok(pointing_loss_exponent(alpha_e_deg, antenna)?.exp())
}

/// Pointing loss in dB; finite even where the linear ratio overflows.
pub fn pointing_loss_db(alpha_e_deg: f64, antenna: &AntennaConfig) -> Result<f64> {
    Ok(TEN_LOG10_E * pointing_loss_exponent(alpha_e_deg, antenna)?)
}

fn pointing_loss_exponent(alpha_e_deg: f64, antenna: &AntennaConfig) -> Result<f64> {
    if !alpha_e_deg.is_finite() || alpha_e_deg.abs() >= 90.0 {
        return Err(Error::PointingErrorDomain {
            alpha_deg: alpha_e_deg,
        });
    }
    let tan = alpha_e_deg.to_radians().tan();
    Ok(antenna.normalized_aperture() * tan * tan)
}

/// Far-field validity ratio `8 sqrt(pi) d / (sqrt(G_t G_r) lambda)` and
/// whether it meets the margin (inclusive).
pub fn far_field_ok(
    distance_m: f64,
    gain_tx_linear: f64,
    gain_rx_linear: f64,
    wavelength_m: f64,
    margin: f64,
) -> Result<(bool, f64)> {
    if distance_m <= 0.0 || gain_tx_linear <= 0.0 || gain_rx_linear <= 0.0 || wavelength_m <= 0.0 {
        return Err(Error::InvalidAntenna(
            "far-field check needs positive distance, gains, and wavelength",
        ));
    }
    let ratio = 8.0 * core::f64::consts::PI.sqrt() * distance_m
        / ((gain_tx_linear * gain_rx_linear).sqrt() * wavelength_m);
    Ok((ratio >= margin, ratio))
}

/// The three link-loss terms of the received-power budget, in dB.
/// Spreading and absorption are caller-supplied scalars; pointing loss
/// comes from the pointing-loss model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkLosses {
    pub spreading_db: f64,
    pub absorption_db: f64,
    pub pointing_db: f64,
}

impl LinkLosses {
    pub fn new(spreading_db: f64, absorption_db: f64, pointing_db: f64) -> Result<Self> {
        for (v, what) in [
            (spreading_db, "spreading loss"),
            (absorption_db, "absorption loss"),
            (pointing_db, "pointing loss"),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidLoss(what));
            }
        }
        Ok(Self {
            spreading_db,
            absorption_db,
            pointing_db,
        })
    }

    pub fn total_db(&self) -> f64 {
        self.spreading_db + self.absorption_db + self.pointing_db
    }
}

/// Received power in watts: `P_t / (L_s * L_a * L_p)` in linear units.
pub fn received_power(p_t_w: f64, losses: &LinkLosses) -> Result<f64> {
    if !p_t_w.is_finite() || p_t_w <= 0.0 {
        return Err(Error::InvalidLoss("transmit power must be positive"));
    }
    let lin = |db: f64| 10.0f64.powf(db / 10.0);
    Ok(p_t_w / (lin(losses.spreading_db) * lin(losses.absorption_db) * lin(losses.pointing_db)))
}

/// Received power in dBW from transmit power in dBW: subtract the losses.
pub fn received_power_dbw(p_t_dbw: f64, losses: &LinkLosses) -> f64 {
    p_t_dbw - losses.total_db()
}

/// Uniform time series of pointing loss in dB.
#[derive(Debug, Clone, PartialEq)]
pub struct LossSeries {
    pub start_time: f64,
    pub step: f64,
    pub lp_db: Vec<f64>,
    /// Indices of records whose pointing error was at or beyond 90 degrees,
    /// where the loss model is undefined. Their `lp_db` entries are set to
    /// infinity rather than silently clipped.
    pub flagged: Vec<usize>,
}

impl LossSeries {
    pub fn from_values(start_time: f64, step: f64, lp_db: Vec<f64>) -> Self {
        Self {
            start_time,
            step,
            lp_db,
            flagged: Vec::new(),
        }
    }

    pub fn time_at(&self, index: usize) -> f64 {
        self.start_time + index as f64 * self.step
    }

    pub fn span(&self) -> f64 {
        if self.lp_db.len() < 2 {
            0.0
        } else {
            (self.lp_db.len() - 1) as f64 * self.step
        }
    }
}

/// Applies the pointing-loss model to every record of a trace.
pub fn pointing_loss_series(trace: &SimulationTrace, antenna: &AntennaConfig) -> LossSeries {
    pointing_loss_series_from_errors(
        trace.start_time,
        trace.step,
        trace.records.iter().map(|r| r.pointing_error),
        antenna,
    )
}

/// Same as [`pointing_loss_series`] but over a bare uniform error series,
/// for callers that hold a trace in deserialized form.
pub fn pointing_loss_series_from_errors<I>(
    start_time: f64,
    step: f64,
    errors_deg: I,
    antenna: &AntennaConfig,
) -> LossSeries
where
    I: IntoIterator<Item = f64>,
{
    let mut lp_db = Vec::new();
    let mut flagged = Vec::new();
    for (i, err) in errors_deg.into_iter().enumerate() {
        match pointing_loss_db(err, antenna) {
            Ok(db) => lp_db.push(db),
            Err(_) => {
                flagged.push(i);
                lp_db.push(f64::INFINITY);
            }
        }
    }
    LossSeries {
        start_time,
        step,
        lp_db,
        flagged,
    }
}

/// Pointing-loss rate of change over a sliding window: `(max - min) / W`
/// in dB/s, windows advanced by `step_s`, timestamps at window starts.
///
/// The window covers `W` seconds of samples inclusive of both endpoints;
/// partial trailing windows are dropped. `step_s` must be a multiple of the
/// series step and `W` at least one series step.
pub fn roc(series: &LossSeries, window_s: f64, step_s: f64) -> Result<Vec<(f64, f64)>> {
    let dt = series.step;
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidWindow("series step must be positive"));
    }
    if window_s < dt {
        return Err(Error::InvalidWindow("window shorter than the series step"));
    }
    let stride = step_s / dt;
    if step_s <= 0.0 || (stride - stride.round()).abs() > 1e-6 * stride.max(1.0) {
        return Err(Error::InvalidWindow(
            "slide step must be a positive multiple of the series step",
        ));
    }
    let stride = stride.round() as usize;
    let width = (window_s / dt).round() as usize;
    let n = series.lp_db.len();
    if n == 0 || width > n - 1 {
        return Err(Error::WindowTooLong {
            window_s,
            span_s: series.span(),
        });
    }

    // Monotonic deques for O(n) sliding max and min; values equal to the
    // incoming one are evicted so indices stay unique.
    let values = &series.lp_db;
    let mut max_idx: VecDeque<usize> = VecDeque::new();
    let mut min_idx: VecDeque<usize> = VecDeque::new();
    let mut out = Vec::with_capacity((n - 1 - width) / stride + 1);
    let mut next_output = 0usize;
    for i in 0..n {
        while max_idx.back().is_some_and(|&j| values[j] <= values[i]) {
            max_idx.pop_back();
        }
        max_idx.push_back(i);
        while min_idx.back().is_some_and(|&j| values[j] >= values[i]) {
            min_idx.pop_back();
        }
        min_idx.push_back(i);
        if i >= width {
            let start = i - width;
            while *max_idx.front().unwrap() < start {
                max_idx.pop_front();
            }
            while *min_idx.front().unwrap() < start {
                min_idx.pop_front();
            }
            if start == next_output {
                let spread = values[*max_idx.front().unwrap()] - values[*min_idx.front().unwrap()];
                out.push((series.time_at(start), spread / window_s));
                next_output += stride;
            }
        }
    }
    Ok(out)
}
