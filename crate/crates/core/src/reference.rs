//! Analysis-only control law and sliding-mode diagnostics.
//!
//! [`CouplingCompensatedLaw`] keeps the unsprung coupling terms that the
//! shipped law drops. It needs the full plant state and the true lateral
//! acceleration, so it is not implementable on a vehicle; it exists to check
//! that the closed loop realizes `ṡ = −η·s` exactly, and to bound what the
//! shipped law gives up by dropping those terms.

use crate::allocation::AllocationMatrix;
use crate::controller::{sliding_surface, sliding_law, ControlOutput, ControllerConfig};
use crate::error::ConfigError;
use crate::model::{coupling_moment, coupling_terms, roll_acceleration};
use crate::params::VehicleParams;
use crate::sim::{ControlContext, RollControlLaw};
use crate::state::{RoadInput, RollState};

/// Sliding law plus the unsprung coupling moment, fed with the plant's true
/// state and lateral acceleration.
pub fn coupling_compensated_law(p: &VehicleParams, cfg: &ControllerConfig, state: &RollState, a_y: f64) -> f64 {
    sliding_law(p, cfg.eta, cfg.psi, state.phi, state.phi_dot, a_y) + coupling_moment(p, state)
}

/// Sliding-dynamics residual `ṡ + η·s` of the flat-road surface when the
/// plant at `state` receives roll moment `u_phi`.
pub fn sliding_residual(
    p: &VehicleParams,
    cfg: &ControllerConfig,
    state: &RollState,
    road: &RoadInput,
    u_phi: f64,
) -> Result<f64, crate::ModelError> {
    let phi_ddot = roll_acceleration(p, state, road, u_phi)?;
    let s = sliding_surface(state.phi, state.phi_dot, cfg.psi, 0.0);
    let s_dot = state.phi_dot + cfg.psi * phi_ddot;
    Ok(s_dot + cfg.eta * s)
}

/// Bound on `|ṡ + η·s|` under the shipped law: the dropped coupling terms
/// reach the surface scaled by `ψ/Ĩ_xx`.
pub fn dropped_terms_bound(p: &VehicleParams, psi: f64, state: &RollState) -> f64 {
    let t = coupling_terms(p, state);
    psi / p.effective_roll_inertia() * (t[0].abs() + t[1].abs() + t[2].abs() + t[3].abs())
}

/// [`coupling_compensated_law`] packaged for [`crate::sim::run_with`].
#[derive(Debug, Clone)]
pub struct CouplingCompensatedLaw {
    params: VehicleParams,
    cfg: ControllerConfig,
    allocation: AllocationMatrix,
}

impl CouplingCompensatedLaw {
    pub fn new(params: VehicleParams, cfg: ControllerConfig) -> Result<Self, ConfigError> {
        params.validate()?;
        cfg.validate()?;
        let allocation = AllocationMatrix::new(&params)?;
        Ok(Self { params, cfg, allocation })
    }
}

impl RollControlLaw for CouplingCompensatedLaw {
    fn evaluate(&mut self, ctx: &ControlContext<'_>) -> Result<ControlOutput, ConfigError> {
        let u_phi = coupling_compensated_law(&self.params, &self.cfg, ctx.state, ctx.road.a_y_true);
        Ok(ControlOutput {
            u_phi,
            surface: sliding_surface(ctx.state.phi, ctx.state.phi_dot, self.cfg.psi, 0.0),
            a_y_estimate: ctx.road.a_y_true,
            allocation: self.allocation.allocate(0.0, 0.0, u_phi, self.cfg.force_limit),
        })
    }
}
