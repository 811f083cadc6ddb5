//! Adaptive Dormand-Prince 5(4) integration for real state vectors.

use crate::error::{Error, Result};

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// embedded 4th-order weights
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub initial_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            initial_step: None,
            max_steps: 50_000_000,
        }
    }
}

/// Integrate dy/dt = f(t, y) from `t0` to `t1` (t1 > t0). The state is
/// advanced in place; the `observer`, when present, is called after every
/// accepted step with (t, y).
pub fn integrate<F>(
    mut f: F,
    t0: f64,
    t1: f64,
    y: &mut [f64],
    opts: &OdeOptions,
    mut observer: Option<&mut dyn FnMut(f64, &[f64])>,
) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if t1 <= t0 {
        return Ok(());
    }
    let n = y.len();
    let mut t = t0;
    let mut h = opts
        .initial_step
        .unwrap_or((t1 - t0) * 1e-4)
        .min(t1 - t0);
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut k5 = vec![0.0; n];
    let mut k6 = vec![0.0; n];
    let mut k7 = vec![0.0; n];
    let mut ytmp = vec![0.0; n];
    let mut y5 = vec![0.0; n];
    f(t, y, &mut k1);
    let mut steps = 0usize;

    while t < t1 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::Numeric(format!(
                "ODE integration exceeded {} steps at t = {t:.6e}",
                opts.max_steps
            )));
        }
        if h < 1e-14 * (t.abs() + 1.0) {
            return Err(Error::Numeric(format!(
                "ODE step size collapsed at t = {t:.6e}"
            )));
        }
        let h_eff = h.min(t1 - t);

        for i in 0..n {
            ytmp[i] = y[i] + h_eff * A21 * k1[i];
        }
        f(t + C2 * h_eff, &ytmp, &mut k2);
        for i in 0..n {
            ytmp[i] = y[i] + h_eff * (A31 * k1[i] + A32 * k2[i]);
        }
        f(t + C3 * h_eff, &ytmp, &mut k3);
        for i in 0..n {
            ytmp[i] = y[i] + h_eff * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        f(t + C4 * h_eff, &ytmp, &mut k4);
        for i in 0..n {
            ytmp[i] = y[i] + h_eff * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        f(t + C5 * h_eff, &ytmp, &mut k5);
        for i in 0..n {
            ytmp[i] = y[i]
                + h_eff * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        f(t + h_eff, &ytmp, &mut k6);
        for i in 0..n {
            y5[i] = y[i]
                + h_eff * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        f(t + h_eff, &y5, &mut k7);

        let mut err: f64 = 0.0;
        for i in 0..n {
            let y4 = y[i]
                + h_eff
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i]);
            let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            err += ((y5[i] - y4) / sc).powi(2);
        }
        err = (err / n as f64).sqrt();

        if err <= 1.0 {
            t += h_eff;
            y.copy_from_slice(&y5);
            k1.copy_from_slice(&k7);
            if let Some(obs) = observer.as_deref_mut() {
                obs(t, y);
            }
        } else {
            f(t, y, &mut k1); // k1 corresponds to the current state again
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = h_eff * factor;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn harmonic_oscillator_energy_conserved() {
        let mut y = vec![1.0, 0.0];
        integrate(
            |_t, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            0.0,
            100.0,
            &mut y,
            &OdeOptions::default(),
            None,
        )
        .unwrap();
        assert_relative_eq!(y[0], 100.0f64.cos(), epsilon = 1e-7);
        assert_relative_eq!(y[1], -(100.0f64.sin()), epsilon = 1e-7);
    }

    #[test]
    fn exponential_growth() {
        let mut y = vec![1.0];
        integrate(
            |_t, y, dy| dy[0] = y[0],
            0.0,
            5.0,
            &mut y,
            &OdeOptions::default(),
            None,
        )
        .unwrap();
        assert_relative_eq!(y[0], 5.0f64.exp(), max_relative = 1e-9);
    }
}
