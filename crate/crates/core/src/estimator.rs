//! Roll-angle estimation from a rate gyro and a slow tilt reference.

/// Default blending weight of the tilt reference per step.
pub const DEFAULT_BLEND: f64 = 0.02;

/// One step of a first-order complementary filter:
/// `φ_k = (1 − λ)(φ_{k−1} + φ̇·dt) + λ·tilt_ref`.
pub fn estimate_roll_angle(phi_dot_measured: f64, phi_prev: f64, dt: f64, tilt_ref: f64, blend: f64) -> f64 {
    (1.0 - blend) * (phi_prev + phi_dot_measured * dt) + blend * tilt_ref
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementaryFilter {
    pub blend: f64,
    estimate: f64,
}

impl Default for ComplementaryFilter {
    fn default() -> Self {
        Self::new(DEFAULT_BLEND, 0.0)
    }
}

impl ComplementaryFilter {
    pub fn new(blend: f64, initial: f64) -> Self {
        Self { blend, estimate: initial }
    }

    pub fn estimate(&self) -> f64 {
        self.estimate
    }

    pub fn update(&mut self, phi_dot_measured: f64, dt: f64, tilt_ref: f64) -> f64 {
        self.estimate = estimate_roll_angle(phi_dot_measured, self.estimate, dt, tilt_ref, self.blend);
        self.estimate
    }

    pub fn reset(&mut self, value: f64) {
        self.estimate = value;
    }
}
