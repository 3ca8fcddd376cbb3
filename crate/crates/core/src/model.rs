//! Six-degree-of-freedom roll model: sprung roll and heave plus four
//! quarter-car unsprung masses, written as pure acceleration functions.

use libm::{cos, sin};

use crate::error::ModelError;
use crate::params::{Axle, Corner, VehicleParams};
use crate::state::{CornerForces, RoadInput, RollState};

/// Lateral-transfer, gravity and suspension moments on the sprung mass,
/// excluding the unsprung coupling terms and the control moment, N·m.
pub fn body_roll_moment(p: &VehicleParams, phi: f64, phi_dot: f64, a_y: f64) -> f64 {
    let (s, c) = (sin(phi), cos(phi));
    let ls2 = p.l_s * p.l_s;
    p.m_s * a_y * p.h_phi * c + p.m_s * p.g * p.h_phi * s
        - 0.5 * p.k_f * ls2 * s
        - 0.5 * p.b_f * ls2 * phi_dot * c
        - 0.5 * p.k_r * ls2 * s
        - 0.5 * p.b_r * ls2 * phi_dot * c
}

/// The four unsprung-coupling terms of the roll equation, in the order
/// front stiffness, front damping, rear stiffness, rear damping. Each enters
/// the roll balance with a negative sign.
pub fn coupling_terms(p: &VehicleParams, state: &RollState) -> [f64; 4] {
    let z = &state.z_u;
    let zd = &state.z_u_dot;
    [
        0.5 * p.k_f * p.l_s * (z[0] - z[1]),
        0.5 * p.b_f * p.l_s * (zd[0] - zd[1]),
        0.5 * p.k_r * p.l_s * (z[2] - z[3]),
        0.5 * p.b_r * p.l_s * (zd[2] - zd[3]),
    ]
}

/// Sum of [`coupling_terms`].
pub fn coupling_moment(p: &VehicleParams, state: &RollState) -> f64 {
    let t = coupling_terms(p, state);
    t[0] + t[1] + t[2] + t[3]
}

/// Roll acceleration φ̈ under control moment `u_phi`, using `road.a_y_true`.
pub fn roll_acceleration(
    p: &VehicleParams,
    state: &RollState,
    road: &RoadInput,
    u_phi: f64,
) -> Result<f64, ModelError> {
    let moment = body_roll_moment(p, state.phi, state.phi_dot, road.a_y_true)
        - coupling_moment(p, state)
        + u_phi;
    finite(moment / p.effective_roll_inertia(), "roll acceleration", state)
}

/// Force of the spring-damper at `corner` acting up on the unsprung mass
/// (and down on the sprung corner).
fn suspension_force(p: &VehicleParams, state: &RollState, corner: Corner) -> f64 {
    let i = corner.index();
    let sigma = corner.side_sign();
    let axle = corner.axle();
    let half = 0.5 * p.l_s;
    p.stiffness(axle) * (state.z_s - state.z_u[i] + sigma * half * sin(state.phi))
        + p.damping(axle)
            * (state.z_s_dot - state.z_u_dot[i] + sigma * half * state.phi_dot * cos(state.phi))
}

/// Vertical acceleration of one unsprung mass; `f_corner` is that corner's
/// actuator force (positive lifts the unsprung mass).
pub fn unsprung_acceleration(
    p: &VehicleParams,
    state: &RollState,
    road: &RoadInput,
    corner: Corner,
    f_corner: f64,
) -> Result<f64, ModelError> {
    let i = corner.index();
    let tire = p.k_t * (state.z_u[i] - road.z_road[i]);
    let acc = (suspension_force(p, state, corner) - tire + f_corner) / p.m_u;
    finite(acc, "unsprung acceleration", state)
}

/// Heave acceleration of the sprung mass. `f_total` is the summed corner
/// actuator force, which pushes the body down.
pub fn heave_acceleration(p: &VehicleParams, state: &RollState, f_total: f64) -> Result<f64, ModelError> {
    let suspension: f64 = Corner::ALL.iter().map(|&c| suspension_force(p, state, c)).sum();
    finite((-suspension - f_total) / p.m_s, "heave acceleration", state)
}

/// Full 12-dimensional derivative. The returned value reuses [`RollState`]
/// as a container: `phi` holds φ̇, `phi_dot` holds φ̈ and so on.
pub fn state_derivative(
    p: &VehicleParams,
    state: &RollState,
    road: &RoadInput,
    forces: &CornerForces,
) -> Result<RollState, ModelError> {
    let u_phi = forces.roll_moment(p.l_s);
    let phi_ddot = roll_acceleration(p, state, road, u_phi)?;
    let z_s_ddot = heave_acceleration(p, state, forces.sum())?;
    let mut z_u_ddot = [0.0; 4];
    for corner in Corner::ALL {
        z_u_ddot[corner.index()] = unsprung_acceleration(p, state, road, corner, forces.get(corner))?;
    }
    Ok(RollState {
        phi: state.phi_dot,
        phi_dot: phi_ddot,
        z_s: state.z_s_dot,
        z_s_dot: z_s_ddot,
        z_u: state.z_u_dot,
        z_u_dot: z_u_ddot,
    })
}

/// Relative displacement between each sprung corner and its unsprung mass, m.
pub fn suspension_travel(p: &VehicleParams, state: &RollState) -> [f64; 4] {
    let mut travel = [0.0; 4];
    for corner in Corner::ALL {
        let i = corner.index();
        travel[i] = state.z_s + corner.side_sign() * 0.5 * p.l_s * sin(state.phi) - state.z_u[i];
    }
    travel
}

/// Quadratic (small-angle) mechanical energy about static equilibrium, J.
/// The destabilizing gravity moment about the roll center enters as a
/// negative roll stiffness.
pub fn mechanical_energy(p: &VehicleParams, state: &RollState, road: &RoadInput) -> f64 {
    let inertia = p.effective_roll_inertia();
    let mut e = 0.5 * inertia * state.phi_dot * state.phi_dot
        + 0.5 * p.m_s * state.z_s_dot * state.z_s_dot
        - 0.5 * p.m_s * p.g * p.h_phi * state.phi * state.phi;
    for corner in Corner::ALL {
        let i = corner.index();
        let k = p.stiffness(corner.axle());
        let stretch = state.z_s + corner.side_sign() * 0.5 * p.l_s * state.phi - state.z_u[i];
        let tire = state.z_u[i] - road.z_road[i];
        e += 0.5 * p.m_u * state.z_u_dot[i] * state.z_u_dot[i]
            + 0.5 * k * stretch * stretch
            + 0.5 * p.k_t * tire * tire;
    }
    e
}

/// Roll stiffness of the passive suspension net of the gravity moment,
/// N·m/rad, for small angles.
pub fn net_roll_stiffness(p: &VehicleParams) -> f64 {
    0.5 * (p.stiffness(Axle::Front) + p.stiffness(Axle::Rear)) * p.l_s * p.l_s - p.m_s * p.g * p.h_phi
}

fn finite(value: f64, quantity: &'static str, state: &RollState) -> Result<f64, ModelError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ModelError::Blowup { quantity, state: *state })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> VehicleParams {
        VehicleParams::default()
    }

    #[test]
    fn symmetric_equilibrium_has_zero_roll_acceleration() {
        let p = params();
        let state = RollState { z_u: [0.01, 0.01, -0.02, -0.02], z_s: 0.003, ..Default::default() };
        assert_eq!(roll_acceleration(&p, &state, &RoadInput::default(), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn control_enters_linearly() {
        let p = params();
        let state = RollState { phi: 0.03, phi_dot: -0.2, z_u: [0.01, -0.01, 0.0, 0.002], ..Default::default() };
        let road = RoadInput::flat(1.5);
        let u = 750.0;
        let plus = roll_acceleration(&p, &state, &road, u).unwrap();
        let minus = roll_acceleration(&p, &state, &road, -u).unwrap();
        let expected = 2.0 * u / p.effective_roll_inertia();
        assert!(((plus - minus) - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn unsprung_equilibrium_and_tire_term() {
        let p = params();
        let zero = RollState::default();
        for c in Corner::ALL {
            assert_eq!(unsprung_acceleration(&p, &zero, &RoadInput::default(), c, 0.0).unwrap(), 0.0);
        }
        let mut road = RoadInput::default();
        road.z_road[0] = 0.01;
        let acc = unsprung_acceleration(&p, &zero, &road, Corner::FrontLeft, 0.0).unwrap();
        assert!((acc - p.k_t * 0.01 / p.m_u).abs() < 1e-9);
    }

    #[test]
    fn heave_pure_spring_return() {
        let p = params();
        assert_eq!(heave_acceleration(&p, &RollState::default(), 0.0).unwrap(), 0.0);
        let state = RollState { z_s: 0.01, ..Default::default() };
        let expected = -(2.0 * p.k_f + 2.0 * p.k_r) * 0.01 / p.m_s;
        assert!((heave_acceleration(&p, &state, 0.0).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn zero_state_is_fixed_point() {
        let p = params();
        let d = state_derivative(&p, &RollState::default(), &RoadInput::default(), &CornerForces::ZERO).unwrap();
        assert_eq!(d, RollState::default());
    }

    #[test]
    fn blowup_is_reported() {
        let p = params();
        let state = RollState { phi_dot: f64::INFINITY, ..Default::default() };
        let err = roll_acceleration(&p, &state, &RoadInput::default(), 0.0).unwrap_err();
        assert!(matches!(err, ModelError::Blowup { .. }));
    }

    #[test]
    fn travel_uses_side_sign() {
        let p = params();
        let state = RollState { phi: 0.1, ..Default::default() };
        let t = suspension_travel(&p, &state);
        assert!(t[0] < 0.0 && t[1] > 0.0);
        assert_eq!(t[0], -t[1]);
    }
}
