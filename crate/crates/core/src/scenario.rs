use crate::error::ConfigError;
use crate::maneuver::{
    banked_profile, jturn_profile_with, slalom_profile, ManeuverKind, ManeuverProfile, PreviewDriver,
    RoadProfile, Steering,
};
use crate::params::VehicleParams;

/// Declarative description of a maneuver, as read from a scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub kind: ManeuverKind,
    pub speed_kph: f64,
    /// Defaults to 13 s for the slalom and 14 s for the J-turn.
    pub duration: Option<f64>,
    pub driver: PreviewDriver,
    pub ramp_start: f64,
    pub ramp_s: f64,
    /// Steering of a custom maneuver.
    pub steering: Steering,
    pub bank_deg: f64,
    pub bank_ramp_s: f64,
    pub road: RoadProfile,
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        Self {
            kind: ManeuverKind::Slalom,
            speed_kph: 30.0,
            duration: None,
            driver: PreviewDriver::default(),
            ramp_start: 1.0,
            ramp_s: 0.25,
            steering: Steering::Zero,
            bank_deg: 0.0,
            bank_ramp_s: 2.0,
            road: RoadProfile::Flat,
        }
    }
}

impl ScenarioSpec {
    pub fn slalom(speed_kph: f64, preview_time: f64) -> Self {
        Self {
            kind: ManeuverKind::Slalom,
            speed_kph,
            driver: PreviewDriver { preview_time, ..PreviewDriver::default() },
            ..Self::default()
        }
    }

    pub fn jturn(speed_kph: f64) -> Self {
        Self { kind: ManeuverKind::JTurn, speed_kph, ..Self::default() }
    }

    pub fn duration_or_default(&self) -> f64 {
        self.duration.unwrap_or(match self.kind {
            ManeuverKind::Slalom => 13.0,
            ManeuverKind::JTurn => 14.0,
            ManeuverKind::Custom => 10.0,
        })
    }

    pub fn build(&self, p: &VehicleParams) -> Result<ManeuverProfile, ConfigError> {
        if !(self.speed_kph > 0.0 && self.speed_kph.is_finite()) {
            return Err(ConfigError::new("speed_kph", "must be positive"));
        }
        let x_dot = crate::kph_to_mps(self.speed_kph);
        let duration = self.duration_or_default();
        let mut profile = match self.kind {
            ManeuverKind::Slalom => slalom_profile(p, x_dot, &self.driver, duration)?,
            ManeuverKind::JTurn => jturn_profile_with(p, x_dot, self.ramp_start, self.ramp_s, duration)?,
            ManeuverKind::Custom => ManeuverProfile {
                kind: ManeuverKind::Custom,
                x_dot,
                duration,
                steering: self.steering.clone(),
                bank: None,
                road: RoadProfile::Flat,
            },
        };
        profile.road = self.road;
        let profile = banked_profile(&profile, self.bank_deg, self.bank_ramp_s)?;
        profile.validate()?;
        Ok(profile)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_each_kind() {
        let p = VehicleParams::default();
        assert_eq!(ScenarioSpec::slalom(30.0, 0.4).build(&p).unwrap().kind, ManeuverKind::Slalom);
        let j = ScenarioSpec::jturn(72.0).build(&p).unwrap();
        assert_eq!(j.duration, 14.0);
        assert!((j.x_dot - 20.0).abs() < 1e-12);
        let c = ScenarioSpec {
            kind: ManeuverKind::Custom,
            steering: Steering::Sine { amplitude: 0.02, period: 3.0, start: 0.0 },
            bank_deg: 3.0,
            ..ScenarioSpec::default()
        }
        .build(&p)
        .unwrap();
        assert!(c.bank.is_some());
        assert_eq!(c.duration, 10.0);
    }

    #[test]
    fn rejects_zero_speed() {
        let p = VehicleParams::default();
        assert_eq!(ScenarioSpec::jturn(0.0).build(&p).unwrap_err().key, "speed_kph");
    }
}
