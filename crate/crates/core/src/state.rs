use crate::params::Corner;

pub const STATE_DIM: usize = 12;

/// Dynamic state of the 6-DoF roll model. Displacements are measured from
/// static equilibrium; corner arrays use the `fl, fr, rl, rr` order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RollState {
    pub phi: f64,
    pub phi_dot: f64,
    pub z_s: f64,
    pub z_s_dot: f64,
    pub z_u: [f64; 4],
    pub z_u_dot: [f64; 4],
}

impl RollState {
    pub fn to_array(&self) -> [f64; STATE_DIM] {
        let z = &self.z_u;
        let zd = &self.z_u_dot;
        [
            self.phi, self.phi_dot, self.z_s, self.z_s_dot, z[0], z[1], z[2], z[3], zd[0], zd[1],
            zd[2], zd[3],
        ]
    }

    pub fn from_array(x: &[f64; STATE_DIM]) -> Self {
        Self {
            phi: x[0],
            phi_dot: x[1],
            z_s: x[2],
            z_s_dot: x[3],
            z_u: [x[4], x[5], x[6], x[7]],
            z_u_dot: [x[8], x[9], x[10], x[11]],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Left-right mirror image: roll quantities negate, corner quantities swap sides.
    pub fn mirrored(&self) -> Self {
        Self {
            phi: -self.phi,
            phi_dot: -self.phi_dot,
            z_s: self.z_s,
            z_s_dot: self.z_s_dot,
            z_u: mirror_corners(&self.z_u),
            z_u_dot: mirror_corners(&self.z_u_dot),
        }
    }
}

/// Road excitation and plant-side lateral acceleration at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RoadInput {
    pub z_road: [f64; 4],
    pub phi_road: f64,
    pub phi_road_dot: f64,
    pub a_y_true: f64,
}

impl RoadInput {
    pub fn flat(a_y_true: f64) -> Self {
        Self { a_y_true, ..Self::default() }
    }

    pub fn mirrored(&self) -> Self {
        Self {
            z_road: mirror_corners(&self.z_road),
            phi_road: -self.phi_road,
            phi_road_dot: -self.phi_road_dot,
            a_y_true: -self.a_y_true,
        }
    }
}

/// Vertical actuator force at each corner, N. Positive pushes the sprung
/// corner down and the unsprung mass up, which is the orientation in which
/// the allocation rows read `u_z = −ΣF` and `u_φ = (l_s/2)(F_fl − F_fr + F_rl − F_rr)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CornerForces(pub [f64; 4]);

impl CornerForces {
    pub const ZERO: CornerForces = CornerForces([0.0; 4]);

    pub fn get(&self, corner: Corner) -> f64 {
        self.0[corner.index()]
    }

    pub fn fl(&self) -> f64 {
        self.0[0]
    }

    pub fn fr(&self) -> f64 {
        self.0[1]
    }

    pub fn rl(&self) -> f64 {
        self.0[2]
    }

    pub fn rr(&self) -> f64 {
        self.0[3]
    }

    /// Roll moment delivered to the sprung mass.
    pub fn roll_moment(&self, l_s: f64) -> f64 {
        let f = &self.0;
        0.5 * l_s * (f[0] - f[1] + f[2] - f[3])
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, f| f64::max(m, f.abs()))
    }

    pub fn mirrored(&self) -> Self {
        CornerForces(mirror_corners(&self.0))
    }
}

fn mirror_corners(v: &[f64; 4]) -> [f64; 4] {
    [v[1], v[0], v[3], v[2]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn array_layout() {
        let s = RollState {
            phi: 1.0,
            phi_dot: 2.0,
            z_s: 3.0,
            z_s_dot: 4.0,
            z_u: [5.0, 6.0, 7.0, 8.0],
            z_u_dot: [9.0, 10.0, 11.0, 12.0],
        };
        let a = s.to_array();
        assert_eq!(a, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0]);
        assert_eq!(RollState::from_array(&a), s);
        assert_eq!(s.mirrored().mirrored(), s);
    }

    #[test]
    fn roll_moment_follows_allocation_row() {
        let f = CornerForces([1.0, -1.0, 1.0, -1.0]);
        assert_eq!(f.roll_moment(1.3), 2.6);
        assert_eq!(f.sum(), 0.0);
        assert_eq!(f.mirrored().roll_moment(1.3), -2.6);
    }
}
