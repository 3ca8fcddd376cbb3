//! Passive-versus-active comparison metrics.

use crate::sim::Sample;

/// Samples before this time are excluded from peaks (entry transient), s.
pub const TRANSIENT_WINDOW: f64 = 0.5;
/// Default threshold of [`response_delay`], as a fraction of each run's peak.
pub const RESPONSE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionReport {
    pub peak_roll_passive: f64,
    pub peak_roll_active: f64,
    pub peak_rollrate_passive: f64,
    pub peak_rollrate_active: f64,
    pub pk2pk_rollrate_passive: f64,
    pub pk2pk_rollrate_active: f64,
    /// `1 − active/passive`; `None` when the passive value is zero.
    pub reduction_roll: Option<f64>,
    pub reduction_rollrate: Option<f64>,
    pub reduction_pk2pk: Option<f64>,
    pub oscillation_index_passive: f64,
    pub oscillation_index_active: f64,
}

fn after_transient(samples: &[Sample]) -> impl Iterator<Item = &Sample> {
    let t0 = samples.first().map_or(0.0, |s| s.t);
    samples.iter().filter(move |s| s.t - t0 >= TRANSIENT_WINDOW)
}

pub fn peak_roll(samples: &[Sample]) -> f64 {
    after_transient(samples).fold(0.0, |m, s| f64::max(m, s.state.phi.abs()))
}

pub fn peak_roll_rate(samples: &[Sample]) -> f64 {
    after_transient(samples).fold(0.0, |m, s| f64::max(m, s.state.phi_dot.abs()))
}

pub fn peak_to_peak_roll_rate(samples: &[Sample]) -> f64 {
    let (lo, hi) = after_transient(samples)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s.state.phi_dot), hi.max(s.state.phi_dot)));
    if hi >= lo {
        hi - lo
    } else {
        0.0
    }
}

pub fn reduction(passive: f64, active: f64) -> Option<f64> {
    if passive > 0.0 {
        Some(1.0 - active / passive)
    } else {
        None
    }
}

pub fn reduction_metrics(passive: &[Sample], active: &[Sample]) -> ReductionReport {
    let peak_roll_passive = peak_roll(passive);
    let peak_roll_active = peak_roll(active);
    let peak_rollrate_passive = peak_roll_rate(passive);
    let peak_rollrate_active = peak_roll_rate(active);
    let pk2pk_rollrate_passive = peak_to_peak_roll_rate(passive);
    let pk2pk_rollrate_active = peak_to_peak_roll_rate(active);
    ReductionReport {
        peak_roll_passive,
        peak_roll_active,
        peak_rollrate_passive,
        peak_rollrate_active,
        pk2pk_rollrate_passive,
        pk2pk_rollrate_active,
        reduction_roll: reduction(peak_roll_passive, peak_roll_active),
        reduction_rollrate: reduction(peak_rollrate_passive, peak_rollrate_active),
        reduction_pk2pk: reduction(pk2pk_rollrate_passive, pk2pk_rollrate_active),
        oscillation_index_passive: oscillation_index(passive),
        oscillation_index_active: oscillation_index(active),
    }
}

/// First time (after the entry transient) at which |φ| reaches
/// `threshold` times the run's own peak.
pub fn time_to_fraction_of_peak(samples: &[Sample], threshold: f64) -> Option<f64> {
    let peak = peak_roll(samples);
    if peak <= 0.0 {
        return None;
    }
    after_transient(samples).find(|s| s.state.phi.abs() >= threshold * peak).map(|s| s.t)
}

/// `t_passive − t_active` for reaching `threshold` of each run's peak roll
/// angle. Positive means the active vehicle responds first.
pub fn response_delay(passive: &[Sample], active: &[Sample], threshold: f64) -> Option<f64> {
    Some(time_to_fraction_of_peak(passive, threshold)? - time_to_fraction_of_peak(active, threshold)?)
}

/// Amplitude-weighted count of roll-rate zero crossings over the second
/// half of the run. Each crossing contributes the largest |φ̇| of the
/// half-cycle it closes, rad/s.
pub fn oscillation_index(samples: &[Sample]) -> f64 {
    let (Some(first), Some(last)) = (samples.first(), samples.last()) else {
        return 0.0;
    };
    let start = first.t + 0.5 * (last.t - first.t);
    let mut index = 0.0;
    let mut sign = 0.0;
    let mut amplitude = 0.0_f64;
    for s in samples.iter().filter(|s| s.t >= start) {
        let v = s.state.phi_dot;
        if v != 0.0 {
            let current = v.signum();
            if sign != 0.0 && current != sign {
                index += amplitude;
                amplitude = 0.0;
            }
            sign = current;
        }
        amplitude = amplitude.max(v.abs());
    }
    index
}
