//! Fixed-step explicit integrators over fixed-size state arrays.

/// One classical fourth-order Runge-Kutta step of `ẋ = f(t, x)`.
pub fn rk4_step<const N: usize, E>(
    t: f64,
    x: &[f64; N],
    dt: f64,
    mut f: impl FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
) -> Result<[f64; N], E> {
    let half = 0.5 * dt;
    let k1 = f(t, x)?;
    let k2 = f(t + half, &axpy(x, half, &k1))?;
    let k3 = f(t + half, &axpy(x, half, &k2))?;
    let k4 = f(t + dt, &axpy(x, dt, &k3))?;
    let mut out = *x;
    for i in 0..N {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

/// One forward-Euler step.
pub fn euler_step<const N: usize, E>(
    t: f64,
    x: &[f64; N],
    dt: f64,
    mut f: impl FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
) -> Result<[f64; N], E> {
    let k = f(t, x)?;
    Ok(axpy(x, dt, &k))
}

fn axpy<const N: usize>(x: &[f64; N], a: f64, y: &[f64; N]) -> [f64; N] {
    let mut out = *x;
    for i in 0..N {
        out[i] += a * y[i];
    }
    out
}
