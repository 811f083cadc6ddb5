//! One-dimensional cavity with an oscillating mirror: Moore's equation,
//! its renormalization-group improved closed form, the energy density
//! profile and the force on the moving mirror.
//!
//! The field in the cavity is encoded in a phase function R satisfying
//! Moore's equation R(t + L(t)) - R(t - L(t)) = 2. Two solvers are
//! provided: a closed form for harmonic motion L(t) = L0 [1 + eps
//! sin(q pi t / L0)], uniformly valid in eps t, and a characteristic
//! solver that propagates the static seed R(t) = t/L0 backwards for an
//! arbitrary continuous L(t).

use crate::domain::motion::{MotionForm, MotionProfile};
use crate::error::{Error, Result};
use crate::numerics::{fit, quad, roots};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub enum MooreSolution {
    /// RG-improved closed form for L(t) = L0 [1 + eps sin(q pi t / L0)].
    Rg { q: u32, eps: f64, l0: f64 },
    /// Characteristic recursion from the static seed.
    Numeric { profile: MotionProfile, t_max: f64 },
}

/// R and its first three derivatives at one point.
#[derive(Debug, Clone, Copy)]
pub struct RDerivatives {
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

/// Closed-form solution for harmonic wall motion at the q-th cavity
/// harmonic, Omega = q pi / L0.
pub fn moore_rg(q: u32, eps: f64, l0: f64) -> Result<MooreSolution> {
    if q == 0 {
        return Err(Error::Validation("harmonic order q must be >= 1".into()));
    }
    if !(0.0..=0.1).contains(&eps) {
        return Err(Error::Validation(
            "modulation amplitude must lie in [0, 0.1]".into(),
        ));
    }
    if l0 <= 0.0 {
        return Err(Error::Validation("cavity length must be positive".into()));
    }
    Ok(MooreSolution::Rg { q, eps, l0 })
}

/// Characteristic solver for a general motion profile. The wall must be
/// at rest at L0 for t < 0, L must be continuous, and the wall speed must
/// stay below c.
pub fn moore_numeric(profile: MotionProfile, t_max: f64) -> Result<MooreSolution> {
    if t_max <= 0.0 {
        return Err(Error::Validation("tMax must be positive".into()));
    }
    if profile.t_start < 0.0 {
        return Err(Error::Precondition(
            "the seed solution requires the wall at rest for t < 0".into(),
        ));
    }
    // Sampled speed check; harmonic profiles also have the closed form
    // bound eps * Omega * L0.
    let n = 4096;
    for i in 0..=n {
        let t = t_max * i as f64 / n as f64;
        if profile.velocity(t).abs() >= 1.0 {
            return Err(Error::Precondition(format!(
                "wall speed reaches c at t = {t:.6e}; characteristics cross"
            )));
        }
    }
    // Continuity at the switch-off, if any.
    if let Some(te) = profile.t_end {
        if matches!(profile.form, MotionForm::HarmonicLength)
            && (profile.length(te) - profile.l0).abs() > 1e-9 * profile.l0
        {
            return Err(Error::Precondition(
                "L(t) must return to L0 continuously when the drive stops".into(),
            ));
        }
    }
    Ok(MooreSolution::Numeric { profile, t_max })
}

impl MooreSolution {
    pub fn l0(&self) -> f64 {
        match self {
            MooreSolution::Rg { l0, .. } => *l0,
            MooreSolution::Numeric { profile, .. } => profile.l0,
        }
    }

    /// Wall position at time t.
    pub fn length(&self, t: f64) -> f64 {
        match self {
            MooreSolution::Rg { q, eps, l0 } => {
                l0 * (1.0 + eps * (*q as f64 * PI * t / l0).sin())
            }
            MooreSolution::Numeric { profile, .. } => profile.length(t),
        }
    }

    /// Drive frequency Omega.
    pub fn omega(&self) -> f64 {
        match self {
            MooreSolution::Rg { q, l0, .. } => *q as f64 * PI / l0,
            MooreSolution::Numeric { profile, .. } => profile.omega,
        }
    }

    /// True once the closed form has left its validity horizon
    /// eps^2 Omega t < 0.3.
    pub fn rg_horizon_exceeded(&self, t: f64) -> bool {
        match self {
            MooreSolution::Rg { eps, .. } => eps * eps * self.omega() * t > 0.3,
            MooreSolution::Numeric { .. } => false,
        }
    }

    pub fn r(&self, t: f64) -> Result<f64> {
        match self {
            MooreSolution::Rg { .. } => Ok(self.derivatives(t)?.r),
            MooreSolution::Numeric { profile, t_max } => numeric_r(profile, *t_max, t),
        }
    }

    /// R, R', R'', R''' at time t.
    pub fn derivatives(&self, t: f64) -> Result<RDerivatives> {
        match self {
            MooreSolution::Rg { q, eps, l0 } => Ok(rg_derivatives(*q, *eps, *l0, t)),
            MooreSolution::Numeric { profile, t_max } => {
                // 5-point central differences with Richardson on the
                // characteristic solution.
                let l0 = profile.l0;
                let h = 1e-4 * l0;
                if t - 3.0 * h < -l0 {
                    return Err(Error::Domain(format!(
                        "derivative stencil leaves the solved domain at t = {t:.6e}"
                    )));
                }
                let r = numeric_r(profile, *t_max, t)?;
                let mut failed = false;
                let f = |x: f64| match numeric_r(profile, *t_max, x) {
                    Ok(v) => v,
                    Err(_) => {
                        // flagged below; the stencil bound above makes
                        // this unreachable in practice
                        f64::NAN
                    }
                };
                let r1 = crate::numerics::diff::derivative(f, t, 1, h)?;
                let r2 = crate::numerics::diff::derivative(f, t, 2, h)?;
                let r3 = crate::numerics::diff::derivative(f, t, 3, h)?;
                failed |= !(r1.is_finite() && r2.is_finite() && r3.is_finite());
                if failed {
                    return Err(Error::Numeric(format!(
                        "derivative evaluation failed near t = {t:.6e}"
                    )));
                }
                Ok(RDerivatives { r, r1, r2, r3 })
            }
        }
    }

    /// Moore-equation residual R(t + L) - R(t - L) - 2 at time t.
    pub fn residual(&self, t: f64) -> Result<f64> {
        let l = self.length(t);
        Ok(self.r(t + l)? - self.r(t - l)? - 2.0)
    }
}

fn rg_derivatives(q: u32, eps: f64, l0: f64, t: f64) -> RDerivatives {
    let qf = q as f64;
    let theta_p = qf * PI / l0;
    let theta = theta_p * t;
    let sign = if q % 2 == 1 { 1.0 } else { -1.0 };
    let a = sign * PI * qf * eps / l0;
    let xi = (a * t).exp();
    let e = Complex64::from_polar(1.0, theta);
    let i = Complex64::new(0.0, 1.0);

    let z = 1.0 + xi + (1.0 - xi) * e;
    let z1 = a * xi * (1.0 - e) + (1.0 - xi) * i * theta_p * e;
    let z2 = a * a * xi * (1.0 - e)
        - 2.0 * i * theta_p * a * xi * e
        - theta_p * theta_p * (1.0 - xi) * e;
    let z3 = a.powi(3) * xi * (1.0 - e)
        - 3.0 * i * theta_p * a * a * xi * e
        + 3.0 * theta_p * theta_p * a * xi * e
        - i * theta_p.powi(3) * (1.0 - xi) * e;

    let w1 = z1 / z;
    let w2 = z2 / z - w1 * w1;
    let w3 = z3 / z - 3.0 * (z2 / z) * w1 + 2.0 * w1 * w1 * w1;

    let c = 2.0 / (PI * qf);
    RDerivatives {
        r: t / l0 - c * z.arg(),
        r1: 1.0 / l0 - c * w1.im,
        r2: -c * w2.im,
        r3: -c * w3.im,
    }
}

fn numeric_r(profile: &MotionProfile, t_max: f64, tau: f64) -> Result<f64> {
    let l0 = profile.l0;
    if tau > t_max + profile.length(t_max) {
        return Err(Error::Domain(format!(
            "R requested at {tau:.6e}, beyond the solved horizon"
        )));
    }
    let mut tau = tau;
    let mut offset = 0.0;
    while tau > l0 {
        // invert t + L(t) = tau; the left side is strictly increasing
        let t = roots::solve_monotone(
            |t| t + profile.length(t) - tau,
            tau - l0,
            1e-13 * l0,
        )?;
        tau = t - profile.length(t);
        offset += 2.0;
    }
    if tau < -l0 {
        return Err(Error::Domain(format!(
            "R requested at {tau:.6e}, before the seed interval"
        )));
    }
    Ok(tau / l0 + offset)
}

/// The traveling-wave component f(u) of the energy density,
/// f = (1/24 pi) [R'''/R' - (3/2)(R''/R')^2 + (pi^2/2)(R')^2].
fn wave_component(sol: &MooreSolution, u: f64) -> Result<f64> {
    let d = sol.derivatives(u)?;
    if d.r1 <= 0.0 {
        return Err(Error::Numeric(format!(
            "R' is not positive at u = {u:.6e}; solution left its domain"
        )));
    }
    Ok((d.r3 / d.r1 - 1.5 * (d.r2 / d.r1).powi(2) + 0.5 * PI * PI * d.r1 * d.r1)
        / (24.0 * PI))
}

/// Energy density <T00(x, t)> = -f(t + x) - f(t - x).
pub fn energy_density(sol: &MooreSolution, x: f64, t: f64) -> Result<f64> {
    let l = sol.length(t);
    if !(0.0..=l).contains(&x) {
        return Err(Error::Domain(format!(
            "x = {x:.6e} lies outside the cavity [0, {l:.6e}]"
        )));
    }
    Ok(-wave_component(sol, t + x)? - wave_component(sol, t - x)?)
}

/// Sampled energy density profile at fixed time.
#[derive(Debug, Clone)]
pub struct EnergyDensityProfile {
    pub t: f64,
    pub x: Vec<f64>,
    pub t00: Vec<f64>,
}

impl EnergyDensityProfile {
    pub fn sample(sol: &MooreSolution, t: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation("profile needs at least 2 points".into()));
        }
        let l = sol.length(t);
        let mut x = Vec::with_capacity(n);
        let mut t00 = Vec::with_capacity(n);
        for i in 0..n {
            let xi = l * i as f64 / (n - 1) as f64;
            x.push(xi);
            t00.push(energy_density(sol, xi, t)?);
        }
        Ok(EnergyDensityProfile { t, x, t00 })
    }

    /// Count distinct maxima, prominence at least 10% of the peak value.
    pub fn peak_count(&self) -> usize {
        let max = self.t00.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if max <= 0.0 {
            return 0;
        }
        fit::find_peaks(&self.t00, 0.1 * max).len()
    }

    /// Largest energy density in the profile.
    pub fn peak_value(&self) -> f64 {
        self.t00.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Total intracavity energy above the static Casimir value,
/// integral of <T00> over [0, L(t)] plus pi / (24 L0).
pub fn intracavity_energy(sol: &MooreSolution, t: f64) -> Result<f64> {
    let l = sol.length(t);
    let l0 = sol.l0();
    // For the closed form the wave packets ride on the staircase jumps,
    // whose positions are known; feed them to the quadrature as panel
    // boundaries.
    let mut breakpoints = Vec::new();
    if let MooreSolution::Rg { q, .. } = sol {
        for u in rg_jump_times(*q, l0, t - l, t + l) {
            let x_plus = u - t;
            if x_plus > 0.0 && x_plus < l {
                breakpoints.push(x_plus);
            }
            let x_minus = t - u;
            if x_minus > 0.0 && x_minus < l {
                breakpoints.push(x_minus);
            }
        }
    }
    let mut inner_err = None;
    let result = quad::adaptive(
        |x| match energy_density(sol, x.clamp(0.0, l), t) {
            Ok(v) => v,
            Err(e) => {
                inner_err = Some(e);
                f64::NAN
            }
        },
        0.0,
        l,
        1e-6,
        1e-12 / l0,
        &breakpoints,
    )?;
    if let Some(e) = inner_err {
        return Err(e);
    }
    Ok(result.value + PI / (24.0 * l0))
}

/// Times in [a, b] where the RG staircase jumps: cos(q pi t / L0) = -1
/// for even q and +1 for odd q.
pub fn rg_jump_times(q: u32, l0: f64, a: f64, b: f64) -> Vec<f64> {
    let qf = q as f64;
    let step = 2.0 * l0 / qf;
    // even q: t = (2k+1) L0 / q; odd q: t = 2k L0 / q
    let phase = if q % 2 == 0 { l0 / qf } else { 0.0 };
    let k_min = ((a - phase) / step).ceil() as i64;
    let k_max = ((b - phase) / step).floor() as i64;
    (k_min..=k_max)
        .map(|k| phase + k as f64 * step)
        .collect()
}

/// Locate the staircase jumps of a solution in [a, b] as maxima of R',
/// refined by parabolic interpolation. Resolution is 1e-4 L0.
pub fn detect_jumps(sol: &MooreSolution, a: f64, b: f64) -> Result<Vec<f64>> {
    let l0 = sol.l0();
    let h = 1e-4 * l0;
    let n = ((b - a) / h).ceil() as usize;
    let mut r1 = Vec::with_capacity(n + 1);
    for i in 0..=n {
        r1.push(sol.derivatives(a + i as f64 * h)?.r1);
    }
    let max = r1.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = r1.iter().sum::<f64>() / r1.len() as f64;
    let peaks = fit::find_peaks(&r1, 0.5 * (max - mean));
    Ok(peaks
        .into_iter()
        .map(|i| {
            let (y0, y1, y2) = (r1[i - 1], r1[i], r1[i + 1]);
            let denom = y0 - 2.0 * y1 + y2;
            let delta = if denom.abs() > 0.0 {
                0.5 * (y0 - y2) / denom
            } else {
                0.0
            };
            a + (i as f64 + delta) * h
        })
        .collect())
}

/// Mean force on the moving mirror, <T00(L(t), t)>; the static Casimir
/// attraction -pi/(24 L0^2) for t < 0.
pub fn mirror_force(sol: &MooreSolution, t: f64) -> Result<f64> {
    let l0 = sol.l0();
    if t < 0.0 {
        return Ok(-PI / (24.0 * l0 * l0));
    }
    energy_density(sol, sol.length(t), t)
}
