//! Statistical post-processing of simulation traces: ECDFs, threshold
//! fractions, and summary statistics.

use alloc::vec::Vec;
use core::fmt;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::sim::{PhaseLabel, SimulationTrace};

/// An empirical cumulative distribution: sorted unique values with their
/// cumulative probabilities. Right-continuous step convention.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfSeries {
    points: Vec<(f64, f64)>,
}

impl EcdfSeries {
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// F(x): fraction of samples less than or equal to `x`.
    pub fn value_at(&self, x: f64) -> f64 {
        let idx = self.points.partition_point(|&(v, _)| v <= x);
        if idx == 0 {
            0.0
        } else {
            self.points[idx - 1].1
        }
    }
}

/// Standard empirical CDF over the values: for each unique value `x_i`,
/// `F(x_i) = count(v <= x_i) / n`. Ties collapse to one point; the final
/// probability is exactly 1.
pub fn ecdf(values: &[f64]) -> Result<EcdfSeries> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "ecdf input",
        });
    }
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("values are finite"));
    let n = sorted.len();
    let mut points: Vec<(f64, f64)> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        let f = (i + 1) as f64 / n as f64;
        match points.last_mut() {
            Some(last) if last.0 == x => last.1 = f,
            _ => points.push((x, f)),
        }
    }
    Ok(EcdfSeries { points })
}

/// Fraction of values at or below the threshold.
pub fn fraction_within(values: &[f64], threshold: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let count = values.iter().filter(|&&v| v <= threshold).count();
    Ok(count as f64 / values.len() as f64)
}

/// Fraction of simulation steps spent in each phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseBudget {
    pub wait: f64,
    pub latency: f64,
    pub move_az: f64,
    pub move_el: f64,
}

impl PhaseBudget {
    pub fn fraction(&self, phase: PhaseLabel) -> f64 {
        match phase {
            PhaseLabel::Wait => self.wait,
            PhaseLabel::Latency => self.latency,
            PhaseLabel::MoveAz => self.move_az,
            PhaseLabel::MoveEl => self.move_el,
        }
    }
}

/// Pointing-error statistics and phase budget for one trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSummary {
    pub samples: usize,
    pub max_error_deg: f64,
    pub mean_error_deg: f64,
    pub rmse_deg: f64,
    /// Nearest-rank percentiles of the pointing error.
    pub p50_error_deg: f64,
    pub p90_error_deg: f64,
    pub p99_error_deg: f64,
    pub phases: PhaseBudget,
}

/// Summarizes a trace: max/mean/RMSE and nearest-rank p50/p90/p99 of the
/// pointing error, plus the fraction of steps spent in each phase.
pub fn summarize(trace: &SimulationTrace) -> Result<TraceSummary> {
    if trace.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = trace.len();
    let mut errors: Vec<f64> = trace.pointing_errors().collect();
    errors.sort_unstable_by(|a, b| a.partial_cmp(b).expect("errors are finite"));

    let sum: f64 = errors.iter().sum();
    let sum_sq: f64 = errors.iter().map(|e| e * e).sum();
    let percentile = |p: f64| {
        let rank = (p / 100.0 * n as f64).ceil().max(1.0) as usize;
        errors[rank - 1]
    };

    let mut counts = [0usize; 4];
    for r in &trace.records {
        let slot = match r.phase {
            PhaseLabel::Wait => 0,
            PhaseLabel::Latency => 1,
            PhaseLabel::MoveAz => 2,
            PhaseLabel::MoveEl => 3,
        };
        counts[slot] += 1;
    }
    let frac = |c: usize| c as f64 / n as f64;

    Ok(TraceSummary {
        samples: n,
        max_error_deg: errors[n - 1],
        mean_error_deg: sum / n as f64,
        rmse_deg: (sum_sq / n as f64).sqrt(),
        p50_error_deg: percentile(50.0),
        p90_error_deg: percentile(90.0),
        p99_error_deg: percentile(99.0),
        phases: PhaseBudget {
            wait: frac(counts[0]),
            latency: frac(counts[1]),
            move_az: frac(counts[2]),
            move_el: frac(counts[3]),
        },
    })
}

impl fmt::Display for TraceSummary {
    /// Structured text with a fixed key order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples = {}", self.samples)?;
        writeln!(f, "max_error_deg = {:.9}", self.max_error_deg)?;
        writeln!(f, "mean_error_deg = {:.9}", self.mean_error_deg)?;
        writeln!(f, "rmse_deg = {:.9}", self.rmse_deg)?;
        writeln!(f, "p50_error_deg = {:.9}", self.p50_error_deg)?;
        writeln!(f, "p90_error_deg = {:.9}", self.p90_error_deg)?;
        writeln!(f, "p99_error_deg = {:.9}", self.p99_error_deg)?;
        writeln!(f, "wait_fraction = {:.9}", self.phases.wait)?;
        writeln!(f, "latency_fraction = {:.9}", self.phases.latency)?;
        writeln!(f, "move_az_fraction = {:.9}", self.phases.move_az)?;
        write!(f, "move_el_fraction = {:.9}", self.phases.move_el)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mount::MountConfig;
    use crate::sim::{profile_a, simulate, TraceRecord, VelocityProfile};
    use crate::trajectory::{AngularSample, PassTrajectory};
    use alloc::vec;
    use alloc::vec::Vec;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn trace_with_errors(errors: &[f64]) -> SimulationTrace {
        SimulationTrace {
            records: errors
                .iter()
                .enumerate()
                .map(|(i, &e)| TraceRecord {
                    t: i as f64 * 0.005,
                    sat_az: 0.0,
                    sat_el: 0.0,
                    mount_az: 0.0,
                    mount_el: 0.0,
                    phase: PhaseLabel::Wait,
                    pointing_error: e,
                })
                .collect(),
            mount: MountConfig::default(),
            profile: VelocityProfile::custom(1.0, 1.0),
            start_time: 0.0,
            step: 0.005,
        }
    }

    #[test]
    fn ecdf_uniform_ranks() {
        let e = ecdf(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(
            e.points(),
            &[(1.0, 1.0 / 3.0), (2.0, 2.0 / 3.0), (3.0, 1.0)]
        );
    }

    #[test]
    fn ecdf_collapses_ties() {
        let e = ecdf(&[5.0, 5.0, 5.0]).unwrap();
        assert_eq!(e.points(), &[(5.0, 1.0)]);
    }

    #[test]
    fn ecdf_rejects_empty_and_nan() {
        assert!(matches!(ecdf(&[]), Err(Error::EmptyInput)));
        assert!(ecdf(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn ecdf_uniform_draws_pass_ks_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let values: Vec<f64> = (0..10_000).map(|_| rng.gen::<f64>()).collect();
        let e = ecdf(&values).unwrap();
        let sup = e
            .points()
            .iter()
            .map(|&(x, f)| (f - x).abs())
            .fold(0.0, f64::max);
        assert!(sup < 0.05, "KS statistic {sup} too large for uniform draws");
    }

    #[test]
    fn fraction_within_basics() {
        assert_eq!(fraction_within(&[0.5, 1.5], 1.0).unwrap(), 0.5);
        assert_eq!(fraction_within(&[0.1, 0.2], 1.0).unwrap(), 1.0);
        assert!(fraction_within(&[], 1.0).is_err());
    }

    #[test]
    fn summarize_zero_and_constant_error() {
        let zero = summarize(&trace_with_errors(&[0.0; 50])).unwrap();
        assert_eq!(zero.max_error_deg, 0.0);
        assert_eq!(zero.rmse_deg, 0.0);
        assert_eq!(zero.p99_error_deg, 0.0);

        let c = summarize(&trace_with_errors(&[0.25; 50])).unwrap();
        assert_eq!(c.max_error_deg, 0.25);
        assert_eq!(c.mean_error_deg, 0.25);
        assert_abs_diff_eq!(c.rmse_deg, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn summarize_latency_budget_on_trackable_pass() {
        let cfg = MountConfig::default();
        let samples: Vec<AngularSample> = (0..=60)
            .map(|k| AngularSample {
                t: k as f64,
                az: k as f64,
                el: 45.0 + 0.1 * k as f64,
            })
            .collect();
        let traj = PassTrajectory::new(samples).unwrap();
        let trace = simulate(&traj, &cfg, &profile_a(&cfg), None).unwrap();
        let summary = summarize(&trace).unwrap();
        assert_abs_diff_eq!(
            summary.phases.latency,
            cfg.latency / cfg.command_interval,
            epsilon = 0.02
        );
        let total = summary.phases.wait
            + summary.phases.latency
            + summary.phases.move_az
            + summary.phases.move_el;
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn summary_display_fixed_key_order() {
        let s = summarize(&trace_with_errors(&[0.5; 4])).unwrap();
        let text = alloc::format!("{s}");
        let keys: Vec<&str> = text
            .lines()
            .map(|l| l.split(" = ").next().unwrap())
            .collect();
        assert_eq!(
            keys,
            vec![
                "samples",
                "max_error_deg",
                "mean_error_deg",
                "rmse_deg",
                "p50_error_deg",
                "p90_error_deg",
                "p99_error_deg",
                "wait_fraction",
                "latency_fraction",
                "move_az_fraction",
                "move_el_fraction",
            ]
        );
    }

    proptest! {
        #[test]
        fn ecdf_invariant_under_permutation(
            mut values in proptest::collection::vec(-50.0..50.0f64, 1..60),
            seed in 0u64..1000,
        ) {
            let base = ecdf(&values).unwrap();
            // Deterministic shuffle.
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for i in (1..values.len()).rev() {
                values.swap(i, rng.gen_range(0..=i));
            }
            prop_assert_eq!(base, ecdf(&values).unwrap());
        }

        #[test]
        fn fraction_within_matches_ecdf_step(
            values in proptest::collection::vec(0.0..10.0f64, 1..50),
            threshold in -1.0..11.0f64,
        ) {
            let e = ecdf(&values).unwrap();
            let f = fraction_within(&values, threshold).unwrap();
            prop_assert_eq!(f, e.value_at(threshold));
        }

        #[test]
        fn percentiles_nondecreasing(values in proptest::collection::vec(0.0..20.0f64, 1..80)) {
            let s = summarize(&trace_with_errors(&values)).unwrap();
            prop_assert!(s.p50_error_deg <= s.p90_error_deg);
            prop_assert!(s.p90_error_deg <= s.p99_error_deg);
            prop_assert!(s.p99_error_deg <= s.max_error_deg);
            let last = ecdf(&values).unwrap().points().last().unwrap().1;
            prop_assert_eq!(last, 1.0);
        }
    }
}
