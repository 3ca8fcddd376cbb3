//! Minimum-norm distribution of heave, pitch and roll commands to the four
//! corner actuators.

use crate::error::ConfigError;
use crate::params::VehicleParams;
use crate::state::CornerForces;

/// The 3×4 map from corner forces to `[u_z, u_θ, u_φ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationMatrix {
    rows: [[f64; 4]; 3],
    /// Lower Cholesky factor of `A·Aᵀ`.
    gram_chol: [[f64; 3]; 3],
}

/// Result of an allocation: the (possibly saturated) forces and whether any
/// corner hit its limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Allocation {
    pub forces: CornerForces,
    pub unsaturated: CornerForces,
    pub saturated: bool,
}

impl AllocationMatrix {
    pub fn new(p: &VehicleParams) -> Result<Self, ConfigError> {
        let half = 0.5 * p.l_s;
        let rows = [
            [-1.0, -1.0, -1.0, -1.0],
            [p.a, p.a, p.a - p.l, p.a - p.l],
            [half, -half, half, -half],
        ];
        let mut gram = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                gram[i][j] = dot(&rows[i], &rows[j]);
            }
        }
        let gram_chol = cholesky3(&gram).map_err(|pivot| {
            let key = if pivot == 2 { "l_s" } else { "l" };
            ConfigError::new(key, "allocation matrix is rank deficient for this geometry")
        })?;
        Ok(Self { rows, gram_chol })
    }

    pub fn rows(&self) -> &[[f64; 4]; 3] {
        &self.rows
    }

    /// `A·F`.
    pub fn apply(&self, forces: &CornerForces) -> [f64; 3] {
        [
            dot(&self.rows[0], &forces.0),
            dot(&self.rows[1], &forces.0),
            dot(&self.rows[2], &forces.0),
        ]
    }

    /// Minimum-norm solution of `A·F = u` through the right pseudo-inverse
    /// `Aᵀ(A·Aᵀ)⁻¹`.
    pub fn solve_min_norm(&self, u: [f64; 3]) -> CornerForces {
        let y = cholesky_solve(&self.gram_chol, u);
        let mut f = [0.0; 4];
        for (k, fk) in f.iter_mut().enumerate() {
            *fk = self.rows[0][k] * y[0] + self.rows[1][k] * y[1] + self.rows[2][k] * y[2];
        }
        CornerForces(f)
    }

    /// Solves for the forces and clamps each corner to `±force_limit`.
    pub fn allocate(&self, u_z: f64, u_theta: f64, u_phi: f64, force_limit: f64) -> Allocation {
        let unsaturated = self.solve_min_norm([u_z, u_theta, u_phi]);
        let mut forces = unsaturated;
        let mut saturated = false;
        for f in forces.0.iter_mut() {
            if f.abs() > force_limit {
                *f = f.signum() * force_limit;
                saturated = true;
            }
        }
        Allocation { forces, unsaturated, saturated }
    }
}

/// One-shot convenience around [`AllocationMatrix`].
pub fn allocate_forces(
    p: &VehicleParams,
    u_z: f64,
    u_theta: f64,
    u_phi: f64,
    force_limit: f64,
) -> Result<Allocation, ConfigError> {
    Ok(AllocationMatrix::new(p)?.allocate(u_z, u_theta, u_phi, force_limit))
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Fails with the index of the first non-positive pivot.
fn cholesky3(m: &[[f64; 3]; 3]) -> Result<[[f64; 3]; 3], usize> {
    let scale = m[0][0].max(m[1][1]).max(m[2][2]);
    let mut l = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let sum = m[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                // relative pivot threshold
                if sum.is_nan() || sum <= 1e-12 * scale {
                    return Err(i);
                }
                l[i][i] = libm::sqrt(sum);
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Ok(l)
}

fn cholesky_solve(l: &[[f64; 3]; 3], b: [f64; 3]) -> [f64; 3] {
    let mut y = [0.0; 3];
    for i in 0..3 {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[i][k] * y[k];
        }
        y[i] = sum / l[i][i];
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let mut sum = y[i];
        for k in i + 1..3 {
            sum -= l[k][i] * x[k];
        }
        x[i] = sum / l[i][i];
    }
    x
}
