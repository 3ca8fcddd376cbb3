use crate::error::ConfigError;

/// Physical constants of the sprung body, the four unsprung corners, the
/// suspension and the tires. SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleParams {
    /// Sprung mass, kg.
    pub m_s: f64,
    /// Unsprung mass per corner (wheel, tire, actuator), kg.
    pub m_u: f64,
    /// Sprung roll inertia about the center of gravity, kg·m².
    pub i_xx: f64,
    /// Roll-center height above ground, m.
    pub h_phi: f64,
    /// Left-right suspension spacing, m.
    pub l_s: f64,
    /// Wheelbase, m.
    pub l_w: f64,
    /// Front axle to center of gravity, m.
    pub a: f64,
    /// Full vehicle length used by the pitch allocation row, m.
    pub l: f64,
    pub k_f: f64,
    pub k_r: f64,
    pub b_f: f64,
    pub b_r: f64,
    /// Tire vertical stiffness, N/m.
    pub k_t: f64,
    /// Understeer gradient per unit sprung mass, rad·s²/(kg·m).
    pub k_u: f64,
    pub g: f64,
}

impl Default for VehicleParams {
    /// The small electric passenger car used throughout the experiments.
    /// `a`, `l`, `k_t` and `k_u` are not part of the published parameter set.
    fn default() -> Self {
        Self {
            m_s: 820.0,
            m_u: 60.0,
            i_xx: 120.0,
            h_phi: 0.48,
            l_s: 1.3,
            l_w: 2.3,
            a: 1.15,
            l: 2.3,
            k_f: 12_000.0,
            k_r: 35_000.0,
            b_f: 530.0,
            b_r: 850.0,
            k_t: 200_000.0,
            k_u: 0.002 / 820.0,
            g: 9.81,
        }
    }
}

impl VehicleParams {
    /// Roll inertia about the roll center, `I_xx + m_s·h_phi²`.
    pub fn effective_roll_inertia(&self) -> f64 {
        self.i_xx + self.m_s * self.h_phi * self.h_phi
    }

    pub fn stiffness(&self, axle: Axle) -> f64 {
        match axle {
            Axle::Front => self.k_f,
            Axle::Rear => self.k_r,
        }
    }

    pub fn damping(&self, axle: Axle) -> f64 {
        match axle {
            Axle::Front => self.b_f,
            Axle::Rear => self.b_r,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive: [(&'static str, f64); 14] = [
            ("m_s", self.m_s),
            ("m_u", self.m_u),
            ("I_xx", self.i_xx),
            ("h_phi", self.h_phi),
            ("l_s", self.l_s),
            ("l_w", self.l_w),
            ("a", self.a),
            ("l", self.l),
            ("k_f", self.k_f),
            ("k_r", self.k_r),
            ("b_f", self.b_f),
            ("b_r", self.b_r),
            ("k_t", self.k_t),
            ("g", self.g),
        ];
        for (key, value) in positive {
            if !value.is_finite() {
                return Err(ConfigError::new(key, "must be finite"));
            }
            if value <= 0.0 {
                return Err(ConfigError::new(key, "must be strictly positive"));
            }
        }
        if !self.k_u.is_finite() || self.k_u < 0.0 {
            return Err(ConfigError::new("K_u", "must be finite and non-negative"));
        }
        if self.a >= self.l {
            return Err(ConfigError::new("a", "must be less than l"));
        }
        if self.h_phi >= self.l_s {
            return Err(ConfigError::new("h_phi", "must be less than l_s"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axle {
    Front,
    Rear,
}

/// Wheel corner, in the fixed `fl, fr, rl, rr` order used by every array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    FrontLeft,
    FrontRight,
    RearLeft,
    RearRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::FrontLeft,
        Corner::FrontRight,
        Corner::RearLeft,
        Corner::RearRight,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Corner> {
        Self::ALL.get(index).copied()
    }

    pub const fn axle(self) -> Axle {
        match self {
            Corner::FrontLeft | Corner::FrontRight => Axle::Front,
            Corner::RearLeft | Corner::RearRight => Axle::Rear,
        }
    }

    /// Lateral side sign: a positive roll angle lowers the left side of the
    /// body (−1) and raises the right side (+1). With this convention the
    /// suspension coupling terms of the roll equation and the unsprung
    /// equations form a reciprocal (energy-consistent) pair.
    pub const fn side_sign(self) -> f64 {
        match self {
            Corner::FrontLeft | Corner::RearLeft => -1.0,
            Corner::FrontRight | Corner::RearRight => 1.0,
        }
    }

    pub const fn mirrored(self) -> Corner {
        match self {
            Corner::FrontLeft => Corner::FrontRight,
            Corner::FrontRight => Corner::FrontLeft,
            Corner::RearLeft => Corner::RearRight,
            Corner::RearRight => Corner::RearLeft,
        }
    }

    pub const fn label(self) -> &'static str {
        match self {
            Corner::FrontLeft => "fl",
            Corner::FrontRight => "fr",
            Corner::RearLeft => "rl",
            Corner::RearRight => "rr",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effective_inertia_is_derived() {
        let p = VehicleParams::default();
        assert!((p.effective_roll_inertia() - (120.0 + 820.0 * 0.48 * 0.48)).abs() < 1e-12);
    }

    #[test]
    fn default_params_are_valid() {
        VehicleParams::default().validate().unwrap();
    }

    #[test]
    fn validation_names_the_key() {
        let p = VehicleParams { k_r: 0.0, ..Default::default() };
        assert_eq!(p.validate().unwrap_err().key, "k_r");
        let p = VehicleParams { a: 2.5, ..Default::default() };
        assert_eq!(p.validate().unwrap_err().key, "a");
        let p = VehicleParams { h_phi: 1.4, ..Default::default() };
        assert_eq!(p.validate().unwrap_err().key, "h_phi");
        let p = VehicleParams { m_s: f64::NAN, ..Default::default() };
        assert_eq!(p.validate().unwrap_err().key, "m_s");
    }

    #[test]
    fn corner_indexing() {
        for (i, c) in Corner::ALL.iter().enumerate() {
            assert_eq!(c.index(), i);
            assert_eq!(Corner::from_index(i), Some(*c));
            assert_eq!(c.mirrored().mirrored(), *c);
            assert_eq!(c.mirrored().side_sign(), -c.side_sign());
        }
        assert_eq!(Corner::from_index(4), None);
    }
}
