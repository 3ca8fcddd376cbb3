//! Sliding-mode roll control.
//!
//! The sliding surface `s = (φ − φ_road) + ψ·φ̇` is driven by the reaching law
//! `ṡ = −η·s`. The resulting roll moment cancels the modeled lateral,
//! gravity and suspension moments and replaces them with the sliding
//! dynamics; the small unsprung coupling terms are left uncompensated.

use libm::{cos, sin};

use crate::allocation::{Allocation, AllocationMatrix};
use crate::error::ConfigError;
use crate::estimator::ComplementaryFilter;
use crate::params::VehicleParams;
use crate::state::CornerForces;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ControlVariant {
    /// Sliding law fed by a measured lateral acceleration.
    MeasuredAccel,
    /// Lateral acceleration replaced by its steering-angle estimate.
    #[default]
    SteeringEstimate,
    /// Surface and law shifted by the road bank angle.
    Banked,
    /// Steering-based law with `sin φ → φ`, `cos φ → 1`.
    SmallAngle,
}

impl ControlVariant {
    pub const ALL: [ControlVariant; 4] = [
        ControlVariant::MeasuredAccel,
        ControlVariant::SteeringEstimate,
        ControlVariant::Banked,
        ControlVariant::SmallAngle,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            ControlVariant::MeasuredAccel => "measured-accel",
            ControlVariant::SteeringEstimate => "steering-estimate",
            ControlVariant::Banked => "banked",
            ControlVariant::SmallAngle => "small-angle",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerConfig {
    /// Sliding gain η, 1/s.
    pub eta: f64,
    /// Comfort weight ψ, s.
    pub psi: f64,
    pub variant: ControlVariant,
    /// Per-corner actuator saturation, N.
    pub force_limit: f64,
    /// `false` runs the vehicle on its passive suspension.
    pub enabled: bool,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        Self { eta: 15.0, psi: 0.5, variant: ControlVariant::SteeringEstimate, force_limit: 4000.0, enabled: true }
    }
}

impl ControllerConfig {
    pub fn passive() -> Self {
        Self { enabled: false, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(ConfigError::new("eta", "sliding gain must be positive"));
        }
        if !(self.psi.is_finite() && self.psi > 0.0) {
            return Err(ConfigError::new("psi", "comfort weight must be positive"));
        }
        if self.force_limit.is_nan() || self.force_limit <= 0.0 {
            return Err(ConfigError::new("force_limit", "must be positive"));
        }
        Ok(())
    }
}

/// Measurements and references available to the controller at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControllerInputs {
    pub phi: f64,
    pub phi_dot: f64,
    /// Road-wheel steering angle, rad.
    pub delta_front: f64,
    /// Longitudinal speed, m/s.
    pub x_dot: f64,
    pub phi_road: f64,
    pub phi_road_dot: f64,
    /// Measured lateral acceleration; only read by [`ControlVariant::MeasuredAccel`].
    pub a_y_meas: f64,
}

impl ControllerInputs {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fields = [
            ("phi", self.phi),
            ("phi_dot", self.phi_dot),
            ("delta_front", self.delta_front),
            ("x_dot", self.x_dot),
            ("phi_road", self.phi_road),
            ("phi_road_dot", self.phi_road_dot),
            ("a_y_meas", self.a_y_meas),
        ];
        for (key, v) in fields {
            if !v.is_finite() {
                return Err(ConfigError::new(key, "must be finite"));
            }
        }
        if self.x_dot < 0.0 {
            return Err(ConfigError::new("x_dot", "must be non-negative"));
        }
        Ok(())
    }
}

/// Steady-state lateral acceleration for a road-wheel angle at speed `x_dot`,
/// `δ·ẋ² / (l_w + K_u·m_s·ẋ²)`.
pub fn lateral_accel_from_steering(p: &VehicleParams, delta_front: f64, x_dot: f64) -> f64 {
    let v2 = x_dot * x_dot;
    delta_front * v2 / (p.l_w + p.k_u * p.m_s * v2)
}

/// Inverse of [`lateral_accel_from_steering`].
pub fn steering_for_lateral_accel(p: &VehicleParams, a_y: f64, x_dot: f64) -> f64 {
    let v2 = x_dot * x_dot;
    a_y * (p.l_w + p.k_u * p.m_s * v2) / v2
}

pub fn sliding_surface(phi: f64, phi_dot: f64, psi: f64, phi_road: f64) -> f64 {
    (phi - phi_road) + psi * phi_dot
}

fn check(cfg: &ControllerConfig, inputs: &ControllerInputs) -> Result<(), ConfigError> {
    cfg.validate()?;
    inputs.validate()
}

/// Sliding law, with `a_y` given explicitly.
pub(crate) fn sliding_law(p: &VehicleParams, eta: f64, psi: f64, phi: f64, phi_dot: f64, a_y: f64) -> f64 {
    let inertia = p.effective_roll_inertia();
    let (s, c) = (sin(phi), cos(phi));
    let ls2 = p.l_s * p.l_s;
    -inertia * (eta / psi) * phi - inertia * (eta + 1.0 / psi) * phi_dot
        - p.m_s * a_y * p.h_phi * c
        - p.m_s * p.g * p.h_phi * s
        + 0.5 * p.k_f * ls2 * s
        + 0.5 * p.b_f * ls2 * phi_dot * c
        + 0.5 * p.k_r * ls2 * s
        + 0.5 * p.b_r * ls2 * phi_dot * c
}

/// Roll moment from the sliding law using the measured lateral acceleration.
pub fn control_law_full(p: &VehicleParams, cfg: &ControllerConfig, inputs: &ControllerInputs) -> Result<f64, ConfigError> {
    check(cfg, inputs)?;
    Ok(sliding_law(p, cfg.eta, cfg.psi, inputs.phi, inputs.phi_dot, inputs.a_y_meas))
}

/// Sliding law with the lateral acceleration estimated from steering and speed.
pub fn control_law_implemented(
    p: &VehicleParams,
    cfg: &ControllerConfig,
    inputs: &ControllerInputs,
) -> Result<f64, ConfigError> {
    check(cfg, inputs)?;
    let a_y = lateral_accel_from_steering(p, inputs.delta_front, inputs.x_dot);
    Ok(sliding_law(p, cfg.eta, cfg.psi, inputs.phi, inputs.phi_dot, a_y))
}

/// Bank-angle law, transcribed term by term. The suspension terms keep the
/// absolute `sin φ`; only the surface, the gravity term and the lateral
/// acceleration (`ã_y = a_y − g·sin φ_road`) are shifted by the bank.
pub fn control_law_banked(p: &VehicleParams, cfg: &ControllerConfig, inputs: &ControllerInputs) -> Result<f64, ConfigError> {
    check(cfg, inputs)?;
    let inertia = p.effective_roll_inertia();
    let (eta, psi) = (cfg.eta, cfg.psi);
    let ControllerInputs { phi, phi_dot, phi_road, phi_road_dot, .. } = *inputs;
    let a_y = lateral_accel_from_steering(p, inputs.delta_front, inputs.x_dot) - p.g * sin(phi_road);
    let (s, c) = (sin(phi), cos(phi));
    let ls2 = p.l_s * p.l_s;
    Ok(-inertia * (eta / psi) * (phi - phi_road) - inertia * (eta + 1.0 / psi) * phi_dot
        - inertia * (1.0 / psi) * phi_road_dot
        - p.m_s * a_y * p.h_phi * c
        - p.m_s * p.g * p.h_phi * sin(phi - phi_road)
        + 0.5 * p.k_f * ls2 * s
        + 0.5 * p.b_f * ls2 * phi_dot * c
        + 0.5 * p.k_r * ls2 * s
        + 0.5 * p.b_r * ls2 * phi_dot * c)
}

/// Steering-based law linearized in the roll angle.
pub fn control_law_small_angle(
    p: &VehicleParams,
    cfg: &ControllerConfig,
    inputs: &ControllerInputs,
) -> Result<f64, ConfigError> {
    check(cfg, inputs)?;
    let inertia = p.effective_roll_inertia();
    let (eta, psi) = (cfg.eta, cfg.psi);
    let (phi, phi_dot) = (inputs.phi, inputs.phi_dot);
    let a_y = lateral_accel_from_steering(p, inputs.delta_front, inputs.x_dot);
    let ls2 = p.l_s * p.l_s;
    Ok(-inertia * (eta / psi) * phi - inertia * (eta + 1.0 / psi) * phi_dot
        - p.m_s * a_y * p.h_phi
        - p.m_s * p.g * p.h_phi * phi
        + 0.5 * (p.k_f + p.k_r) * ls2 * phi
        + 0.5 * (p.b_f + p.b_r) * ls2 * phi_dot)
}

/// Dispatches on `cfg.variant`.
pub fn control_law(p: &VehicleParams, cfg: &ControllerConfig, inputs: &ControllerInputs) -> Result<f64, ConfigError> {
    match cfg.variant {
        ControlVariant::MeasuredAccel => control_law_full(p, cfg, inputs),
        ControlVariant::SteeringEstimate => control_law_implemented(p, cfg, inputs),
        ControlVariant::Banked => control_law_banked(p, cfg, inputs),
        ControlVariant::SmallAngle => control_law_small_angle(p, cfg, inputs),
    }
}

/// One controller evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlOutput {
    pub u_phi: f64,
    pub surface: f64,
    /// Lateral acceleration the law used (measured or steering-derived).
    pub a_y_estimate: f64,
    pub allocation: Allocation,
}

/// Controller instance: configuration, the allocation map, and (when the
/// roll angle is not measured directly) the estimator state.
#[derive(Debug, Clone, PartialEq)]
pub struct RollController {
    params: VehicleParams,
    cfg: ControllerConfig,
    allocation: AllocationMatrix,
    filter: ComplementaryFilter,
}

impl RollController {
    pub fn new(params: VehicleParams, cfg: ControllerConfig) -> Result<Self, ConfigError> {
        params.validate()?;
        cfg.validate()?;
        let allocation = AllocationMatrix::new(&params)?;
        Ok(Self { params, cfg, allocation, filter: ComplementaryFilter::default() })
    }

    pub fn config(&self) -> &ControllerConfig {
        &self.cfg
    }

    pub fn params(&self) -> &VehicleParams {
        &self.params
    }

    pub fn allocation(&self) -> &AllocationMatrix {
        &self.allocation
    }

    pub fn filter_mut(&mut self) -> &mut ComplementaryFilter {
        &mut self.filter
    }

    /// Lateral acceleration the configured variant feeds into its law.
    pub fn a_y_estimate(&self, inputs: &ControllerInputs) -> f64 {
        match self.cfg.variant {
            ControlVariant::MeasuredAccel => inputs.a_y_meas,
            ControlVariant::Banked => {
                lateral_accel_from_steering(&self.params, inputs.delta_front, inputs.x_dot)
                    - self.params.g * sin(inputs.phi_road)
            }
            _ => lateral_accel_from_steering(&self.params, inputs.delta_front, inputs.x_dot),
        }
    }

    /// Evaluates the law and allocates it with `u_z = u_θ = 0`. A disabled
    /// controller reports its surface but commands zero force.
    pub fn command(&self, inputs: &ControllerInputs) -> Result<ControlOutput, ConfigError> {
        let phi_road = if self.cfg.variant == ControlVariant::Banked { inputs.phi_road } else { 0.0 };
        let surface = sliding_surface(inputs.phi, inputs.phi_dot, self.cfg.psi, phi_road);
        let a_y_estimate = self.a_y_estimate(inputs);
        if !self.cfg.enabled {
            inputs.validate()?;
            let zero = Allocation { forces: CornerForces::ZERO, unsaturated: CornerForces::ZERO, saturated: false };
            return Ok(ControlOutput { u_phi: 0.0, surface, a_y_estimate, allocation: zero });
        }
        let u_phi = control_law(&self.params, &self.cfg, inputs)?;
        let allocation = self.allocation.allocate(0.0, 0.0, u_phi, self.cfg.force_limit);
        Ok(ControlOutput { u_phi, surface, a_y_estimate, allocation })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> VehicleParams {
        VehicleParams::default()
    }

    #[test]
    fn surface_examples() {
        assert_eq!(sliding_surface(0.0, 0.0, 0.7, 0.0), 0.0);
        assert!((sliding_surface(0.1, 0.2, 0.5, 0.0) - 0.2).abs() < 1e-15);
        assert_eq!(sliding_surface(0.1, 0.0, 0.5, 0.1), 0.0);
    }

    #[test]
    fn full_law_at_rest() {
        let cfg = ControllerConfig::default();
        assert_eq!(control_law_full(&p(), &cfg, &ControllerInputs::default()).unwrap(), 0.0);
    }

    #[test]
    fn full_law_lateral_term() {
        let cfg = ControllerConfig::default();
        let inputs = ControllerInputs { a_y_meas: 2.0, ..Default::default() };
        let u = control_law_full(&p(), &cfg, &inputs).unwrap();
        assert!((u - (-787.2)).abs() < 1e-9, "{u}");
    }

    #[test]
    fn implemented_law_at_rest_and_estimate() {
        let cfg = ControllerConfig::default();
        assert_eq!(control_law_implemented(&p(), &cfg, &ControllerInputs::default()).unwrap(), 0.0);
        let params = VehicleParams { k_u: 0.0, ..p() };
        let a_y = lateral_accel_from_steering(&params, 0.05, 10.0);
        assert!((a_y - 0.05 * 100.0 / 2.3).abs() < 1e-15);
        assert!((a_y - 2.1739).abs() < 1e-4);
        let back = steering_for_lateral_accel(&params, a_y, 10.0);
        assert!((back - 0.05).abs() < 1e-15);
    }

    #[test]
    fn implemented_equals_full_with_matching_measurement() {
        let cfg = ControllerConfig::default();
        let mut inputs =
            ControllerInputs { phi: 0.04, phi_dot: -0.3, delta_front: 0.02, x_dot: 18.0, ..Default::default() };
        inputs.a_y_meas = lateral_accel_from_steering(&p(), inputs.delta_front, inputs.x_dot);
        let a = control_law_implemented(&p(), &cfg, &inputs).unwrap();
        let b = control_law_full(&p(), &cfg, &inputs).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn banked_reduces_to_implemented_on_flat_road() {
        let cfg = ControllerConfig::default();
        let inputs = ControllerInputs { phi: 0.03, phi_dot: 0.1, delta_front: 0.015, x_dot: 20.0, ..Default::default() };
        let a = control_law_banked(&p(), &cfg, &inputs).unwrap();
        let b = control_law_implemented(&p(), &cfg, &inputs).unwrap();
        assert!((a - b).abs() <= 1e-12 * b.abs());
    }

    #[test]
    fn banked_at_bank_angle_leaves_only_suspension_terms() {
        // With φ = φ_road, no rates and ã_y = 0, every term of the transcribed
        // law vanishes except the suspension stiffness compensation, which
        // is written in the absolute angle.
        let params = p();
        let cfg = ControllerConfig::default();
        let phi_road = 0.05;
        let x_dot = 15.0;
        let delta = steering_for_lateral_accel(&params, params.g * libm::sin(phi_road), x_dot);
        let inputs = ControllerInputs { phi: phi_road, phi_road, delta_front: delta, x_dot, ..Default::default() };
        let u = control_law_banked(&params, &cfg, &inputs).unwrap();
        let suspension = 0.5 * (params.k_f + params.k_r) * params.l_s * params.l_s * libm::sin(phi_road);
        assert!((u - suspension).abs() < 1e-9 * suspension, "{u} vs {suspension}");
    }

    #[test]
    fn small_angle_matches_at_zero_roll() {
        let cfg = ControllerConfig::default();
        let inputs = ControllerInputs { phi_dot: 0.2, delta_front: 0.01, x_dot: 12.0, ..Default::default() };
        let a = control_law_small_angle(&p(), &cfg, &inputs).unwrap();
        let b = control_law_implemented(&p(), &cfg, &inputs).unwrap();
        assert!((a - b).abs() < 1e-9 * b.abs());
    }

    #[test]
    fn rejects_bad_config_and_inputs() {
        let cfg = ControllerConfig { eta: 0.0, ..Default::default() };
        assert_eq!(control_law_full(&p(), &cfg, &ControllerInputs::default()).unwrap_err().key, "eta");
        let cfg = ControllerConfig { psi: -1.0, ..Default::default() };
        assert_eq!(control_law_full(&p(), &cfg, &ControllerInputs::default()).unwrap_err().key, "psi");
        let cfg = ControllerConfig::default();
        let inputs = ControllerInputs { phi: f64::NAN, ..Default::default() };
        assert_eq!(control_law_full(&p(), &cfg, &inputs).unwrap_err().key, "phi");
        let inputs = ControllerInputs { x_dot: -1.0, ..Default::default() };
        assert_eq!(control_law_implemented(&p(), &cfg, &inputs).unwrap_err().key, "x_dot");
    }

    #[test]
    fn passive_controller_commands_nothing() {
        let c = RollController::new(p(), ControllerConfig::passive()).unwrap();
        let inputs = ControllerInputs { phi: 0.1, phi_dot: 0.5, delta_front: 0.05, x_dot: 20.0, ..Default::default() };
        let out = c.command(&inputs).unwrap();
        assert_eq!(out.allocation.forces, CornerForces::ZERO);
        assert_eq!(out.u_phi, 0.0);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in ControlVariant::ALL {
            assert_eq!(ControlVariant::from_name(v.name()), Some(v));
        }
        assert_eq!(ControlVariant::from_name("bogus"), None);
    }
}
