//! Vacuum radiation and dissipation for a single moving mirror.
//!
//! Covers the dynamical susceptibility of the vacuum, the dissipative
//! force on a non-relativistic mirror in one and three dimensions, the
//! radiated energy and photon rate for a damped harmonic motion, and the
//! damping, diffusion and decoherence scales of a mirror bound in a
//! harmonic trap. Everything is in natural units (hbar = c = 1).

use crate::error::{Error, Result};
use crate::numerics::{diff, quad};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Non-relativistic bound on the peak mirror speed (in units of c).
pub const MAX_SPEED: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MirrorTrajectory {
    /// q(t) = q0 Im[e^{st}] with s = i Omega - 1/T; reduces to
    /// q0 sin(Omega t) without damping.
    Harmonic {
        q0: f64,
        omega: f64,
        damping_time: Option<f64>,
    },
    /// Uniformly sampled displacement q(t0 + i dt).
    Tabulated { t0: f64, dt: f64, q: Vec<f64> },
}

impl MirrorTrajectory {
    pub fn harmonic(q0: f64, omega: f64, damping_time: Option<f64>) -> Result<Self> {
        if q0 < 0.0 || omega < 0.0 {
            return Err(Error::Validation(
                "amplitude and frequency must be non-negative".into(),
            ));
        }
        let v_max = q0 * omega;
        if v_max >= MAX_SPEED {
            return Err(Error::Validation(format!(
                "peak speed v/c = {v_max:.3e} violates the non-relativistic bound {MAX_SPEED}"
            )));
        }
        if let Some(t) = damping_time {
            if t <= 0.0 {
                return Err(Error::Validation("damping time must be positive".into()));
            }
        }
        Ok(MirrorTrajectory::Harmonic {
            q0,
            omega,
            damping_time,
        })
    }

    pub fn tabulated(t0: f64, dt: f64, q: Vec<f64>) -> Result<Self> {
        if dt <= 0.0 {
            return Err(Error::Validation("sample step must be positive".into()));
        }
        if q.len() < 11 {
            return Err(Error::Validation(
                "tabulated trajectory needs at least 11 samples".into(),
            ));
        }
        // Speed check on first differences.
        for w in q.windows(2) {
            if ((w[1] - w[0]) / dt).abs() >= MAX_SPEED {
                return Err(Error::Validation(format!(
                    "sampled speed exceeds the non-relativistic bound {MAX_SPEED}"
                )));
            }
        }
        Ok(MirrorTrajectory::Tabulated { t0, dt, q })
    }

    /// n-th time derivative of the displacement, n = 0..=5.
    pub fn derivative(&self, n: u32, t: f64) -> Result<f64> {
        if n > 5 {
            return Err(Error::Domain(format!(
                "derivative order {n} not supported (max 5)"
            )));
        }
        match self {
            MirrorTrajectory::Harmonic {
                q0,
                omega,
                damping_time,
            } => {
                let s = Complex64::new(damping_time.map_or(0.0, |tau| -1.0 / tau), *omega);
                Ok(q0 * (s.powu(n) * (s * t).exp()).im)
            }
            MirrorTrajectory::Tabulated { t0, dt, q } => {
                if n == 0 {
                    // Linear interpolation suffices when no derivative is taken.
                    let x = (t - t0) / dt;
                    let i = (x.floor() as isize).clamp(0, q.len() as isize - 2) as usize;
                    let frac = x - i as f64;
                    return Ok(q[i] + frac * (q[i + 1] - q[i]));
                }
                let idx = ((t - t0) / dt).round();
                if (t - (t0 + idx * dt)).abs() > 1e-6 * dt {
                    return Err(Error::Domain(format!(
                        "derivative of a tabulated trajectory is only available on \
                         grid points; t = {t:.6e} is off-grid"
                    )));
                }
                let idx = idx as isize;
                // Richardson uses steps 2dt and dt, so the widest stencil
                // reaches 2 * halfwidth grid points on each side.
                let hw = 2 * diff::stencil_halfwidth(n) as isize;
                if idx - hw < 0 || idx + hw >= q.len() as isize {
                    return Err(Error::Numeric(format!(
                        "not enough samples around t = {t:.6e} for a {n}-th derivative \
                         (need {hw} points on each side)"
                    )));
                }
                let sample = |x: f64| {
                    let j = ((x - t0) / dt).round() as usize;
                    q[j]
                };
                diff::derivative(sample, t, n, 2.0 * dt)
            }
        }
    }
}

/// Trapped-mirror parameters for the damping and decoherence estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MirrorOscillatorParams {
    /// Mirror mass in natural units (inverse length).
    pub mass: f64,
    /// Trap angular frequency.
    pub omega: f64,
    /// Momentum scale of the superposition probed for decoherence.
    pub p0: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl MirrorOscillatorParams {
    pub fn new(mass: f64, omega: f64, p0: f64) -> Result<Self> {
        if mass <= 0.0 || omega <= 0.0 {
            return Err(Error::Validation("mass and frequency must be positive".into()));
        }
        if p0 < 0.0 {
            return Err(Error::Validation("momentum scale must be >= 0".into()));
        }
        let mut warnings = Vec::new();
        let ratio = omega / mass; // hbar Omega / (M c^2) in natural units
        if ratio > 1e-2 {
            warnings.push(format!(
                "trap quantum energy is not small against the rest mass \
                 (ratio {ratio:.3e}); the weak-coupling formulas degrade"
            ));
        }
        Ok(MirrorOscillatorParams {
            mass,
            omega,
            p0,
            warnings,
        })
    }
}

/// Vacuum force response chi(Omega) = i Omega^3 / (6 pi) for a perfect
/// mirror in 1D.
pub fn susceptibility_1d(omega: f64) -> Complex64 {
    Complex64::new(0.0, omega.powi(3) / (6.0 * PI))
}

/// Same response evaluated from the frequency integral over the band
/// [-Omega, 0] that survives regularization. Kept as an independent
/// route for cross-checking the closed form.
pub fn susceptibility_1d_quadrature(omega: f64) -> Result<Complex64> {
    if omega == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sign = omega.signum();
    let omega = omega.abs();
    let integral = quad::adaptive(
        |w| (omega + w) * w.abs(),
        -omega,
        0.0,
        1e-12,
        1e-300,
        &[],
    )?;
    Ok(Complex64::new(0.0, sign * integral.value / PI))
}

/// Dissipative vacuum force on a perfect mirror in 1D,
/// f = q'''(t) / (6 pi).
pub fn force_1d(traj: &MirrorTrajectory, t: f64) -> Result<f64> {
    Ok(traj.derivative(3, t)? / (6.0 * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldType {
    Scalar,
    Em,
}

/// Dissipative vacuum force on a plane mirror of area `area` in 3D,
/// f = -A q''''' / (360 pi^2) for a scalar field and -A q''''' / (30 pi^2)
/// for the electromagnetic field (TM modes contribute 11 times the TE part).
pub fn force_3d(traj: &MirrorTrajectory, area: f64, field: FieldType, t: f64) -> Result<f64> {
    if area <= 0.0 {
        return Err(Error::Validation("mirror area must be positive".into()));
    }
    let q5 = traj.derivative(5, t)?;
    let denom = match field {
        FieldType::Scalar => 360.0,
        FieldType::Em => 30.0,
    };
    Ok(-area * q5 / (denom * PI * PI))
}

/// Total radiated energy and photon production rate for a harmonically
/// oscillating plane mirror (EM field) damped over a time T.
///
/// E = T A q0^2 Omega^6 / (120 pi^2) and N/T = (1/15)(A/lambda0^2)
/// (v_max)^2 Omega with lambda0 = 2 pi / Omega; the two satisfy
/// E = N Omega / 2.
pub fn radiated_energy_and_rate(
    q0: f64,
    omega: f64,
    damping_time: f64,
    area: f64,
) -> Result<(f64, f64)> {
    if area <= 0.0 || damping_time <= 0.0 {
        return Err(Error::Validation(
            "area and damping time must be positive".into(),
        ));
    }
    if omega * damping_time <= 10.0 {
        return Err(Error::Precondition(format!(
            "the rate estimate needs Omega T >> 1; got Omega T = {:.3e}",
            omega * damping_time
        )));
    }
    // validate the amplitude against the speed bound
    MirrorTrajectory::harmonic(q0, omega, Some(damping_time))?;
    let energy = damping_time * area * q0 * q0 * omega.powi(6) / (120.0 * PI * PI);
    let lambda0 = 2.0 * PI / omega;
    let v_max = q0 * omega;
    let rate = (area / (lambda0 * lambda0)) * v_max * v_max * omega / 15.0;
    Ok((energy, rate))
}

/// Vacuum damping rate of a trapped mirror,
/// Gamma = (1/12 pi) (Omega / M) Omega.
pub fn damping_rate(p: &MirrorOscillatorParams) -> f64 {
    p.omega * p.omega / (12.0 * PI * p.mass)
}

/// Momentum diffusion coefficient D1 = Gamma / (M Omega).
pub fn momentum_diffusion(p: &MirrorOscillatorParams) -> f64 {
    damping_rate(p) / (p.mass * p.omega)
}

/// Decoherence time of a momentum superposition of scale 2 P0,
/// t_d = 1 / (2 P0^2 D1). An equivalent route through the ground-state
/// momentum spread delta_p = sqrt(M Omega / 2),
/// t_d = 4 (delta_p / 2 P0)^2 / Gamma, is evaluated as a consistency check.
pub fn decoherence_time(p: &MirrorOscillatorParams) -> Result<f64> {
    if p.p0 == 0.0 {
        return Err(Error::Domain(
            "a zero-momentum superposition never decoheres; t_d is infinite".into(),
        ));
    }
    let d1 = momentum_diffusion(p);
    let td = 1.0 / (2.0 * p.p0 * p.p0 * d1);
    let delta_p = (p.mass * p.omega / 2.0).sqrt();
    let td_alt = 4.0 * (delta_p / (2.0 * p.p0)).powi(2) / damping_rate(p);
    if (td - td_alt).abs() > 1e-12 * td.abs() {
        return Err(Error::Numeric(
            "decoherence-time routes disagree beyond 1e-12".into(),
        ));
    }
    if p.omega * td < 10.0 {
        return Err(Error::Precondition(format!(
            "decoherence estimate assumes Omega t_d >> 1; got {:.3e}",
            p.omega * td
        )));
    }
    Ok(td)
}
