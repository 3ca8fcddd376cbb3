//! Fixed-step closed-loop simulation of plant, controller and maneuver.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::controller::{ControlOutput, ControllerConfig, ControllerInputs, RollController};
use crate::error::{ConfigError, ModelError};
use crate::integrator::{euler_step, rk4_step};
use crate::maneuver::ManeuverProfile;
use crate::model::{state_derivative, suspension_travel};
use crate::params::VehicleParams;
use crate::state::{CornerForces, RoadInput, RollState, STATE_DIM};

/// Suspension travel bound, m. Exceeding it is recorded, not enforced.
pub const TRAVEL_LIMIT: f64 = 0.1;

pub const FLAG_SATURATED: u8 = 1;
pub const FLAG_TRAVEL: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Integrator {
    #[default]
    Rk4,
    Euler,
}

impl Integrator {
    pub const fn name(self) -> &'static str {
        match self {
            Integrator::Rk4 => "rk4",
            Integrator::Euler => "euler",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "rk4" => Some(Integrator::Rk4),
            "euler" => Some(Integrator::Euler),
            _ => None,
        }
    }
}

/// How the controller sees the roll angle.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MeasurementMode {
    /// True roll angle and rate.
    #[default]
    Perfect,
    /// Roll angle from the complementary filter, fed by the roll rate plus a
    /// constant gyro bias and by the true angle as the tilt reference.
    Filtered { gyro_bias: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub t_end: f64,
    pub integrator: Integrator,
    pub measurement: MeasurementMode,
    /// Record every n-th step (the final step is always recorded).
    pub record_decimation: usize,
    pub initial_state: RollState,
}

impl SimConfig {
    pub fn new(t_end: f64) -> Self {
        Self {
            dt: 1e-3,
            t_end,
            integrator: Integrator::Rk4,
            measurement: MeasurementMode::Perfect,
            record_decimation: 1,
            initial_state: RollState::default(),
        }
    }

    pub fn for_profile(profile: &ManeuverProfile) -> Self {
        Self::new(profile.duration)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.dt > 0.0 && self.dt <= 0.01) {
            return Err(ConfigError::new("dt", "must be in (0, 0.01]"));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(ConfigError::new("t_end", "must be positive"));
        }
        if self.record_decimation == 0 {
            return Err(ConfigError::new("record_decimation", "must be at least 1"));
        }
        if !self.initial_state.is_finite() {
            return Err(ConfigError::new("initial_state", "must be finite"));
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        libm::round(self.t_end / self.dt) as usize
    }
}

/// Everything recorded at one instant. Control quantities are the ones held
/// over the step that starts at `t`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Sample {
    pub t: f64,
    pub state: RollState,
    pub u_phi: f64,
    pub surface: f64,
    pub forces: CornerForces,
    /// Plant lateral acceleration, m/s².
    pub a_y: f64,
    pub delta: f64,
    pub flags: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Completed,
    /// Ran to the end but exceeded the suspension travel bound at least once.
    TravelViolation,
    Rollover,
    Blowup,
}

impl Termination {
    pub const fn name(self) -> &'static str {
        match self {
            Termination::Completed => "completed",
            Termination::TravelViolation => "travel-violation",
            Termination::Rollover => "rollover",
            Termination::Blowup => "blowup",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub samples: Vec<Sample>,
    pub termination: Termination,
    pub dt: f64,
    pub record_decimation: usize,
    /// Steps on which at least one actuator saturated.
    pub saturation_steps: usize,
    pub travel_violation_steps: usize,
    pub max_travel: f64,
    pub max_force: f64,
}

impl SimResult {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("a simulation records at least one sample")
    }
}

/// Context handed to a control law each step.
#[derive(Debug, Clone, Copy)]
pub struct ControlContext<'a> {
    pub t: f64,
    /// True plant state, for laws that need more than the measurements.
    pub state: &'a RollState,
    pub road: &'a RoadInput,
    pub inputs: ControllerInputs,
}

/// Anything that turns the measurements into corner forces once per step.
pub trait RollControlLaw {
    fn evaluate(&mut self, ctx: &ControlContext<'_>) -> Result<ControlOutput, ConfigError>;

    /// Roll-angle estimator hook for [`MeasurementMode::Filtered`].
    fn estimate_roll(&mut self, phi_dot_measured: f64, dt: f64, tilt_ref: f64) -> f64 {
        let _ = (phi_dot_measured, dt);
        tilt_ref
    }
}

impl RollControlLaw for RollController {
    fn evaluate(&mut self, ctx: &ControlContext<'_>) -> Result<ControlOutput, ConfigError> {
        self.command(&ctx.inputs)
    }

    fn estimate_roll(&mut self, phi_dot_measured: f64, dt: f64, tilt_ref: f64) -> f64 {
        self.filter_mut().update(phi_dot_measured, dt, tilt_ref)
    }
}

/// Runs the shipped controller (or the passive vehicle when
/// `ctrl.enabled == false`) through `profile`.
pub fn run(
    params: &VehicleParams,
    sim: &SimConfig,
    ctrl: &ControllerConfig,
    profile: &ManeuverProfile,
) -> Result<SimResult, ConfigError> {
    let mut controller = RollController::new(*params, *ctrl)?;
    run_with(params, sim, &mut controller, profile)
}

/// Same scenario with the controller disabled and enabled.
pub fn run_pair(
    params: &VehicleParams,
    sim: &SimConfig,
    ctrl: &ControllerConfig,
    profile: &ManeuverProfile,
) -> Result<(SimResult, SimResult), ConfigError> {
    let passive = run(params, sim, &ControllerConfig { enabled: false, ..*ctrl }, profile)?;
    let active = run(params, sim, &ControllerConfig { enabled: true, ..*ctrl }, profile)?;
    Ok((passive, active))
}

/// Closed-loop run with an arbitrary control law. The law is evaluated at
/// the start of every step and its forces are held over the step.
pub fn run_with<L: RollControlLaw + ?Sized>(
    params: &VehicleParams,
    sim: &SimConfig,
    law: &mut L,
    profile: &ManeuverProfile,
) -> Result<SimResult, ConfigError> {
    params.validate()?;
    sim.validate()?;
    profile.validate()?;

    let steps = sim.steps();
    let dt = sim.dt;
    let mut state = sim.initial_state;
    let mut samples = Vec::with_capacity(steps / sim.record_decimation + 2);
    let mut termination = Termination::Completed;
    let (mut saturation_steps, mut travel_violation_steps) = (0, 0);
    let (mut max_travel, mut max_force) = (0.0_f64, 0.0_f64);

    for k in 0..=steps {
        let t = k as f64 * dt;
        if !state.is_finite() {
            termination = Termination::Blowup;
            break;
        }
        if state.phi.abs() >= FRAC_PI_2 {
            termination = Termination::Rollover;
            break;
        }

        let road = profile.road_input(params, t);
        let phi_measured = match sim.measurement {
            MeasurementMode::Perfect => state.phi,
            MeasurementMode::Filtered { gyro_bias } => {
                if k == 0 {
                    law.estimate_roll(0.0, 0.0, state.phi)
                } else {
                    law.estimate_roll(state.phi_dot + gyro_bias, dt, state.phi)
                }
            }
        };
        let inputs = ControllerInputs {
            phi: phi_measured,
            phi_dot: state.phi_dot,
            delta_front: profile.delta(t),
            x_dot: profile.x_dot,
            phi_road: road.phi_road,
            phi_road_dot: road.phi_road_dot,
            a_y_meas: road.a_y_true,
        };
        let out = law.evaluate(&ControlContext { t, state: &state, road: &road, inputs })?;
        let forces = out.allocation.forces;

        let mut flags = 0;
        if out.allocation.saturated {
            flags |= FLAG_SATURATED;
            saturation_steps += 1;
        }
        let travel = suspension_travel(params, &state).iter().fold(0.0, |m: f64, v| m.max(v.abs()));
        max_travel = max_travel.max(travel);
        max_force = max_force.max(forces.max_abs());
        if travel > TRAVEL_LIMIT {
            flags |= FLAG_TRAVEL;
            travel_violation_steps += 1;
        }

        if k % sim.record_decimation == 0 || k == steps {
            samples.push(Sample {
                t,
                state,
                u_phi: out.u_phi,
                surface: out.surface,
                forces,
                a_y: road.a_y_true,
                delta: inputs.delta_front,
                flags,
            });
        }
        if k == steps {
            break;
        }

        match step(params, sim.integrator, profile, &state, &forces, t, dt) {
            Ok(next) => state = next,
            Err(_) => {
                termination = Termination::Blowup;
                break;
            }
        }
    }

    if termination == Termination::Completed && travel_violation_steps > 0 {
        termination = Termination::TravelViolation;
    }
    if samples.is_empty() {
        samples.push(Sample { state, ..Sample::default() });
    }
    Ok(SimResult {
        samples,
        termination,
        dt,
        record_decimation: sim.record_decimation,
        saturation_steps,
        travel_violation_steps,
        max_travel,
        max_force,
    })
}

fn step(
    params: &VehicleParams,
    integrator: Integrator,
    profile: &ManeuverProfile,
    state: &RollState,
    forces: &CornerForces,
    t: f64,
    dt: f64,
) -> Result<RollState, ModelError> {
    let f = |tt: f64, x: &[f64; STATE_DIM]| -> Result<[f64; STATE_DIM], ModelError> {
        let road = profile.road_input(params, tt);
        Ok(state_derivative(params, &RollState::from_array(x), &road, forces)?.to_array())
    };
    let x = state.to_array();
    let next = match integrator {
        Integrator::Rk4 => rk4_step(t, &x, dt, f)?,
        Integrator::Euler => euler_step(t, &x, dt, f)?,
    };
    Ok(RollState::from_array(&next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maneuver::ManeuverProfile;

    #[test]
    fn zero_input_stays_at_rest() {
        let p = VehicleParams::default();
        let profile = ManeuverProfile::straight(20.0, 2.0);
        let (passive, active) = run_pair(&p, &SimConfig::for_profile(&profile), &ControllerConfig::default(), &profile).unwrap();
        for r in [&passive, &active] {
            assert_eq!(r.termination, Termination::Completed);
            assert!(r.samples.iter().all(|s| s.state == RollState::default()));
        }
        assert_eq!(passive.samples.len(), 2001);
    }

    #[test]
    fn decimation_keeps_endpoints() {
        let p = VehicleParams::default();
        let profile = ManeuverProfile::straight(20.0, 1.0);
        let sim = SimConfig { record_decimation: 300, ..SimConfig::for_profile(&profile) };
        let r = run(&p, &sim, &ControllerConfig::default(), &profile).unwrap();
        let times: Vec<f64> = r.times().collect();
        assert_eq!(times.len(), 5);
        assert_eq!(times[0], 0.0);
        assert!((times[4] - 1.0).abs() < 1e-12);
        assert!(times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_step() {
        let p = VehicleParams::default();
        let profile = ManeuverProfile::straight(20.0, 1.0);
        let sim = SimConfig { dt: 0.02, ..SimConfig::for_profile(&profile) };
        assert_eq!(run(&p, &sim, &ControllerConfig::default(), &profile).unwrap_err().key, "dt");
    }

    #[test]
    fn rollover_terminates() {
        let p = VehicleParams::default();
        let profile = ManeuverProfile::straight(20.0, 1.0);
        let initial = RollState { phi: 1.6, ..Default::default() };
        let sim = SimConfig { initial_state: initial, ..SimConfig::for_profile(&profile) };
        let r = run(&p, &sim, &ControllerConfig::passive(), &profile).unwrap();
        assert_eq!(r.termination, Termination::Rollover);
        assert_eq!(r.samples.len(), 1);
    }
}
