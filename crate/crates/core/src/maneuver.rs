//! Time-parameterized steering, bank and road inputs for the test maneuvers.
//!
//! Every profile is a deterministic function of time. The slalom driver is
//! simulated once when the profile is built and stored as a steering table.

use alloc::vec::Vec;

use crate::controller::{lateral_accel_from_steering, steering_for_lateral_accel};
use crate::error::ConfigError;
use crate::params::VehicleParams;
use crate::state::RoadInput;

/// Road-wheel steering bound, rad.
pub const MAX_STEER: f64 = 0.6;
/// Road-wheel steering rate limit of the slalom driver, rad/s.
pub const STEER_RATE_LIMIT: f64 = 8.0;
/// Cone spacing of the slalom course, m.
pub const SLALOM_CONE_SPACING: f64 = 15.24;
/// J-turn calibration: 0.3 g steady state at 50 mph.
pub const JTURN_CALIBRATION_G: f64 = 0.3;
pub const JTURN_CALIBRATION_MPH: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ManeuverKind {
    Slalom,
    JTurn,
    Custom,
}

impl ManeuverKind {
    pub const fn name(self) -> &'static str {
        match self {
            ManeuverKind::Slalom => "slalom",
            ManeuverKind::JTurn => "j-turn",
            ManeuverKind::Custom => "custom",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "slalom" => Some(ManeuverKind::Slalom),
            "j-turn" | "jturn" => Some(ManeuverKind::JTurn),
            "custom" => Some(ManeuverKind::Custom),
            _ => None,
        }
    }
}

/// Road-wheel steering angle as a function of time.
#[derive(Debug, Clone, PartialEq)]
pub enum Steering {
    Zero,
    /// Linear ramp from 0 to `target` over `[start, start + duration]`, then hold.
    Ramp { start: f64, duration: f64, target: f64 },
    /// `amplitude·sin(2π(t − start)/period)` for `t ≥ start`.
    Sine { amplitude: f64, period: f64, start: f64 },
    /// Samples at a fixed spacing, linearly interpolated and held past the end.
    Table { dt: f64, samples: Vec<f64> },
}

impl Steering {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            Steering::Zero => 0.0,
            Steering::Ramp { start, duration, target } => {
                if t < *start {
                    0.0
                } else if t >= start + duration {
                    *target
                } else {
                    target * (t - start) / duration
                }
            }
            Steering::Sine { amplitude, period, start } => {
                if t < *start {
                    0.0
                } else {
                    amplitude * libm::sin(2.0 * core::f64::consts::PI * (t - start) / period)
                }
            }
            Steering::Table { dt, samples } => {
                let Some(&last) = samples.last() else {
                    return 0.0;
                };
                if t <= 0.0 {
                    return samples[0];
                }
                let pos = t / dt;
                let i = libm::floor(pos) as usize;
                if i + 1 >= samples.len() {
                    return last;
                }
                let frac = pos - i as f64;
                samples[i] + (samples[i + 1] - samples[i]) * frac
            }
        }
    }

    /// Largest steering magnitude the signal can reach.
    pub fn max_abs(&self) -> f64 {
        match self {
            Steering::Zero => 0.0,
            Steering::Ramp { target, .. } => target.abs(),
            Steering::Sine { amplitude, .. } => amplitude.abs(),
            Steering::Table { samples, .. } => samples.iter().fold(0.0, |m, v| f64::max(m, v.abs())),
        }
    }
}

/// Linear bank-angle ramp from 0 to `target` over `[start, start + duration]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BankRamp {
    pub start: f64,
    pub duration: f64,
    pub target: f64,
}

impl BankRamp {
    /// `(φ_road, φ̇_road)` at time `t`.
    pub fn at(&self, t: f64) -> (f64, f64) {
        if t < self.start {
            (0.0, 0.0)
        } else if t >= self.start + self.duration {
            (self.target, 0.0)
        } else {
            let rate = self.target / self.duration;
            (rate * (t - self.start), rate)
        }
    }
}

/// Road height under each corner.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RoadProfile {
    #[default]
    Flat,
    /// Heights switch from zero to `heights` at time `at`.
    Step { at: f64, heights: [f64; 4] },
}

impl RoadProfile {
    pub fn at(&self, t: f64) -> [f64; 4] {
        match self {
            RoadProfile::Flat => [0.0; 4],
            RoadProfile::Step { at, heights } => {
                if t >= *at {
                    *heights
                } else {
                    [0.0; 4]
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManeuverProfile {
    pub kind: ManeuverKind,
    /// Constant longitudinal speed, m/s.
    pub x_dot: f64,
    /// Maneuver length, s.
    pub duration: f64,
    pub steering: Steering,
    pub bank: Option<BankRamp>,
    pub road: RoadProfile,
}

impl ManeuverProfile {
    pub fn straight(x_dot: f64, duration: f64) -> Self {
        Self {
            kind: ManeuverKind::Custom,
            x_dot,
            duration,
            steering: Steering::Zero,
            bank: None,
            road: RoadProfile::Flat,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.x_dot.is_finite() && self.x_dot > 0.0) {
            return Err(ConfigError::new("speed_kph", "must be positive"));
        }
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return Err(ConfigError::new("duration", "must be positive"));
        }
        if self.steering.max_abs().is_nan() || self.steering.max_abs() > MAX_STEER {
            return Err(ConfigError::new("steering", "road-wheel angle exceeds 0.6 rad"));
        }
        if let Some(bank) = &self.bank {
            if !(bank.duration > 0.0 && bank.target.is_finite()) {
                return Err(ConfigError::new("bank_ramp_s", "bank ramp must have positive duration"));
            }
        }
        Ok(())
    }

    pub fn delta(&self, t: f64) -> f64 {
        self.steering.at(t)
    }

    /// `(φ_road, φ̇_road)`.
    pub fn bank_at(&self, t: f64) -> (f64, f64) {
        self.bank.map_or((0.0, 0.0), |b| b.at(t))
    }

    /// Plant-side lateral acceleration from the kinematic steering relation.
    pub fn lateral_accel(&self, p: &VehicleParams, t: f64) -> f64 {
        lateral_accel_from_steering(p, self.delta(t), self.x_dot)
    }

    pub fn road_input(&self, p: &VehicleParams, t: f64) -> RoadInput {
        let (phi_road, phi_road_dot) = self.bank_at(t);
        RoadInput { z_road: self.road.at(t), phi_road, phi_road_dot, a_y_true: self.lateral_accel(p, t) }
    }
}

/// Single-point preview driver for the slalom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreviewDriver {
    /// Look-ahead time, s.
    pub preview_time: f64,
    /// Longitudinal gate spacing, m.
    pub cone_spacing: f64,
    /// Lateral offset of alternating gates, m.
    pub lateral_offset: f64,
    /// Road-wheel angle per meter of previewed lateral error, rad/m.
    pub gain: f64,
    /// Straight run before the first gate, m.
    pub lead_in: f64,
    /// Internal simulation step of the driver, s.
    pub table_dt: f64,
}

impl Default for PreviewDriver {
    fn default() -> Self {
        Self {
            preview_time: 0.6,
            cone_spacing: SLALOM_CONE_SPACING,
            lateral_offset: 1.1,
            gain: 0.2,
            lead_in: SLALOM_CONE_SPACING,
            table_dt: 1e-3,
        }
    }
}

impl PreviewDriver {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.preview_time > 0.0 && self.preview_time.is_finite()) {
            return Err(ConfigError::new("preview_time", "must be positive"));
        }
        if !(self.cone_spacing > 0.0 && self.cone_spacing.is_finite()) {
            return Err(ConfigError::new("cone_spacing", "must be positive"));
        }
        if !self.lateral_offset.is_finite() {
            return Err(ConfigError::new("gate_offset", "must be finite"));
        }
        if !(self.gain >= 0.0 && self.gain.is_finite()) {
            return Err(ConfigError::new("driver_gain", "must be non-negative"));
        }
        if self.lead_in.is_nan() || self.lead_in < 0.0 {
            return Err(ConfigError::new("lead_in", "must be non-negative"));
        }
        if !(self.table_dt > 0.0 && self.table_dt <= 0.01) {
            return Err(ConfigError::new("driver_dt", "must be in (0, 0.01]"));
        }
        Ok(())
    }

    /// Lateral position of the gate line at longitudinal distance `x`:
    /// zero up to the lead-in, then straight segments through gates of
    /// alternating sign, the first one at `+lateral_offset`.
    pub fn reference_lateral(&self, x: f64) -> f64 {
        if x <= self.lead_in {
            return 0.0;
        }
        let rel = (x - self.lead_in) / self.cone_spacing;
        let k = libm::floor(rel);
        let frac = rel - k;
        let gate = |n: f64| {
            if n < 0.5 {
                0.0
            } else if libm::fmod(n, 2.0) < 0.5 {
                -self.lateral_offset
            } else {
                self.lateral_offset
            }
        };
        let from = gate(k);
        let to = gate(k + 1.0);
        from + (to - from) * frac
    }
}

/// Slalom through alternating gates at constant speed.
///
/// The driver steers on the error between the gate line `preview_time`
/// ahead and its own lateral position projected over the same horizon,
/// `δ = gain·[y_ref(x + ẋ·T_p) − (y + ẏ·T_p)]`. Its lateral motion is
/// integrated from the same steering/lateral-acceleration relation the
/// controller uses. Steering is clamped to ±0.6 rad and rate-limited to
/// 8 rad/s.
pub fn slalom_profile(
    p: &VehicleParams,
    x_dot: f64,
    driver: &PreviewDriver,
    duration: f64,
) -> Result<ManeuverProfile, ConfigError> {
    if !(x_dot > 0.0 && x_dot.is_finite()) {
        return Err(ConfigError::new("speed_kph", "slalom needs a positive speed"));
    }
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(ConfigError::new("duration", "must be positive"));
    }
    driver.validate()?;
    let dt = driver.table_dt;
    let n = libm::ceil(duration / dt) as usize + 2;
    let accel_per_rad = lateral_accel_from_steering(p, 1.0, x_dot);
    let max_change = STEER_RATE_LIMIT * dt;
    let mut samples = Vec::with_capacity(n);
    let (mut y, mut y_dot, mut delta) = (0.0_f64, 0.0_f64, 0.0_f64);
    for i in 0..n {
        let x = x_dot * i as f64 * dt;
        let previewed = driver.reference_lateral(x + x_dot * driver.preview_time);
        let projected = y + y_dot * driver.preview_time;
        let demand = (driver.gain * (previewed - projected)).clamp(-MAX_STEER, MAX_STEER);
        delta += (demand - delta).clamp(-max_change, max_change);
        samples.push(delta);
        y_dot += accel_per_rad * delta * dt;
        y += y_dot * dt;
    }
    Ok(ManeuverProfile {
        kind: ManeuverKind::Slalom,
        x_dot,
        duration,
        steering: Steering::Table { dt, samples },
        bank: None,
        road: RoadProfile::Flat,
    })
}

/// Road-wheel angle producing the J-turn calibration acceleration.
pub fn jturn_target_steer(p: &VehicleParams) -> f64 {
    let v = crate::mph_to_mps(JTURN_CALIBRATION_MPH);
    steering_for_lateral_accel(p, JTURN_CALIBRATION_G * p.g, v)
}

/// Ramp-steer J-turn: straight until 1 s, a 0.25 s ramp to the calibrated
/// angle, then hold for the remainder of a 14 s run.
pub fn jturn_profile(p: &VehicleParams, x_dot: f64) -> Result<ManeuverProfile, ConfigError> {
    jturn_profile_with(p, x_dot, 1.0, 0.25, 14.0)
}

pub fn jturn_profile_with(
    p: &VehicleParams,
    x_dot: f64,
    ramp_start: f64,
    ramp_duration: f64,
    duration: f64,
) -> Result<ManeuverProfile, ConfigError> {
    if !(ramp_duration > 0.0 && ramp_start >= 0.0) {
        return Err(ConfigError::new("ramp_s", "ramp must start at t ≥ 0 and have positive duration"));
    }
    let profile = ManeuverProfile {
        kind: ManeuverKind::JTurn,
        x_dot,
        duration,
        steering: Steering::Ramp { start: ramp_start, duration: ramp_duration, target: jturn_target_steer(p) },
        bank: None,
        road: RoadProfile::Flat,
    };
    profile.validate()?;
    Ok(profile)
}

/// Adds a bank ramp from 0 to `bank_deg` over the first `ramp_s` seconds.
pub fn banked_profile(base: &ManeuverProfile, bank_deg: f64, ramp_s: f64) -> Result<ManeuverProfile, ConfigError> {
    if bank_deg == 0.0 {
        return Ok(base.clone());
    }
    if !(ramp_s > 0.0 && bank_deg.is_finite()) {
        return Err(ConfigError::new("bank_ramp_s", "bank ramp must have positive duration"));
    }
    let mut out = base.clone();
    out.bank = Some(BankRamp { start: 0.0, duration: ramp_s, target: bank_deg.to_radians() });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jturn_target_with_neutral_steer() {
        let p = VehicleParams { k_u: 0.0, ..VehicleParams::default() };
        let expected = 0.3 * 9.81 * 2.3 / (22.352 * 22.352);
        assert!((jturn_target_steer(&p) - expected).abs() < 1e-15);
        assert!((expected - 0.01355).abs() < 1e-5);
    }

    #[test]
    fn jturn_phases() {
        let p = VehicleParams::default();
        let prof = jturn_profile(&p, 60.0 / 3.6).unwrap();
        let target = jturn_target_steer(&p);
        assert_eq!(prof.delta(0.0), 0.0);
        assert_eq!(prof.delta(0.999), 0.0);
        assert_eq!(prof.delta(1.25), target);
        assert_eq!(prof.delta(9.0), target);
        assert!((prof.delta(1.125) - 0.5 * target).abs() < 1e-15);
        assert_eq!(prof.duration, 14.0);
    }

    #[test]
    fn straight_slalom_without_offsets() {
        let p = VehicleParams::default();
        let driver = PreviewDriver { lateral_offset: 0.0, ..Default::default() };
        let prof = slalom_profile(&p, 30.0 / 3.6, &driver, 13.0).unwrap();
        assert_eq!(prof.steering.max_abs(), 0.0);
    }

    #[test]
    fn reference_line_passes_through_gates() {
        let d = PreviewDriver::default();
        assert_eq!(d.reference_lateral(0.0), 0.0);
        assert_eq!(d.reference_lateral(d.lead_in), 0.0);
        assert!((d.reference_lateral(d.lead_in + d.cone_spacing) - 1.1).abs() < 1e-12);
        assert!((d.reference_lateral(d.lead_in + 2.0 * d.cone_spacing) + 1.1).abs() < 1e-12);
        assert!((d.reference_lateral(d.lead_in + 3.0 * d.cone_spacing) - 1.1).abs() < 1e-12);
        assert!(d.reference_lateral(d.lead_in + 2.5 * d.cone_spacing).abs() < 1e-12);
    }

    #[test]
    fn bank_ramp_rate() {
        let base = ManeuverProfile::straight(10.0, 5.0);
        let b = banked_profile(&base, 5.0, 2.0).unwrap();
        let (phi, rate) = b.bank_at(1.0);
        assert!((rate - 5.0_f64.to_radians() / 2.0).abs() < 1e-15);
        assert!((rate - 0.0436).abs() < 1e-4);
        assert!((phi - 2.5_f64.to_radians()).abs() < 1e-15);
        assert_eq!(b.bank_at(3.0), (5.0_f64.to_radians(), 0.0));
        assert_eq!(banked_profile(&base, 0.0, 2.0).unwrap(), base);
    }

    #[test]
    fn table_interpolates_and_holds() {
        let s = Steering::Table { dt: 0.1, samples: alloc::vec![0.0, 1.0, 3.0] };
        assert_eq!(s.at(-1.0), 0.0);
        assert!((s.at(0.05) - 0.5).abs() < 1e-12);
        assert!((s.at(0.15) - 2.0).abs() < 1e-12);
        assert_eq!(s.at(5.0), 3.0);
    }

    #[test]
    fn validation() {
        let mut prof = ManeuverProfile::straight(10.0, 5.0);
        prof.steering = Steering::Ramp { start: 0.0, duration: 1.0, target: 0.7 };
        assert_eq!(prof.validate().unwrap_err().key, "steering");
        let prof = ManeuverProfile::straight(0.0, 5.0);
        assert_eq!(prof.validate().unwrap_err().key, "speed_kph");
        let p = VehicleParams::default();
        assert!(slalom_profile(&p, 0.0, &PreviewDriver::default(), 13.0).is_err());
        let bad = PreviewDriver { preview_time: 0.0, ..Default::default() };
        assert_eq!(slalom_profile(&p, 8.0, &bad, 13.0).unwrap_err().key, "preview_time");
    }
}
