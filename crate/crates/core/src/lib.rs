//! Roll dynamics and sliding-mode roll control for active-suspension vehicles.
//!
//! The crate is `no_std` and only needs `alloc` for trajectory storage and
//! tabulated steering. Everything in it is a pure function of its inputs or a
//! small value-semantic state machine, so independent simulations can run on
//! separate threads without coordination.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod allocation;
pub mod controller;
pub mod error;
pub mod estimator;
pub mod integrator;
pub mod maneuver;
pub mod metrics;
pub mod model;
pub mod params;
pub mod reference;
pub mod scenario;
pub mod sim;
pub mod state;

pub use allocation::{allocate_forces, AllocationMatrix, Allocation};
pub use controller::{
    control_law, control_law_banked, control_law_full, control_law_implemented,
    control_law_small_angle, lateral_accel_from_steering, sliding_surface, ControlVariant,
    ControllerConfig, ControllerInputs, RollController,
};
pub use error::{ConfigError, ModelError};
pub use estimator::{estimate_roll_angle, ComplementaryFilter};
pub use maneuver::{
    banked_profile, jturn_profile, slalom_profile, BankRamp, ManeuverKind, ManeuverProfile,
    PreviewDriver, RoadProfile, Steering,
};
pub use metrics::{oscillation_index, reduction_metrics, response_delay, ReductionReport};
pub use model::{
    heave_acceleration, mechanical_energy, net_roll_stiffness, roll_acceleration, state_derivative,
    suspension_travel, unsprung_acceleration,
};
pub use params::{Axle, Corner, VehicleParams};
pub use sim::{run, run_pair, run_with, Integrator, MeasurementMode, Sample, SimConfig, SimResult, Termination};
pub use scenario::ScenarioSpec;
pub use state::{CornerForces, RoadInput, RollState};

/// Converts km/h to m/s.
pub fn kph_to_mps(kph: f64) -> f64 {
    kph / 3.6
}

/// Converts mph to m/s.
pub fn mph_to_mps(mph: f64) -> f64 {
    mph * 0.44704
}
