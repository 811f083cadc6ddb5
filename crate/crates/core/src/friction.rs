//! Quantum friction between two identical dielectric half-spaces in
//! uniform shear motion at gap d, in the non-retarded, zero-temperature
//! limit. The surfaces talk through evanescent fields; the dissipative
//! channel is the surface response Im[(eps - 1)/(eps + 1)].
//!
//! Natural units: lengths in meters, frequencies in inverse meters, the
//! shear speed v in units of c. The force is per unit area.

use crate::error::{Error, Result};
use crate::numerics::quad;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DielectricModel {
    /// eps(w) = 1 - wp^2 / (w (w + i gamma))
    Drude { omega_p: f64, gamma: f64 },
    /// eps(w) = 1 + wp^2 / (w0^2 - w^2 - i gamma w)
    Lorentz { omega0: f64, omega_p: f64, gamma: f64 },
    /// Sampled permittivity on a strictly increasing frequency grid,
    /// linearly interpolated.
    Tabulated { grid: Vec<(f64, Complex64)> },
}

impl DielectricModel {
    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        if omega_p <= 0.0 || gamma < 0.0 {
            return Err(Error::Validation(
                "Drude model needs omega_p > 0 and gamma >= 0".into(),
            ));
        }
        Ok(DielectricModel::Drude { omega_p, gamma })
    }

    pub fn lorentz(omega0: f64, omega_p: f64, gamma: f64) -> Result<Self> {
        if omega0 <= 0.0 || omega_p <= 0.0 || gamma < 0.0 {
            return Err(Error::Validation(
                "Lorentz model needs omega0, omega_p > 0 and gamma >= 0".into(),
            ));
        }
        Ok(DielectricModel::Lorentz {
            omega0,
            omega_p,
            gamma,
        })
    }

    pub fn tabulated(grid: Vec<(f64, Complex64)>) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::Validation(
                "tabulated permittivity needs at least 2 samples".into(),
            ));
        }
        if grid.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::Validation(
                "tabulated permittivity grid must be strictly increasing".into(),
            ));
        }
        if let Some((w, e)) = grid.iter().find(|(w, e)| *w > 0.0 && e.im < 0.0) {
            return Err(Error::Validation(format!(
                "passivity violated at omega = {w:.6e} (Im eps = {:.3e})",
                e.im
            )));
        }
        Ok(DielectricModel::Tabulated { grid })
    }

    /// Complex permittivity at omega > 0.
    pub fn epsilon(&self, omega: f64) -> Result<Complex64> {
        if omega <= 0.0 {
            return Err(Error::Domain(
                "the permittivity evaluator requires omega > 0".into(),
            ));
        }
        Ok(match self {
            DielectricModel::Drude { omega_p, gamma } => {
                Complex64::new(1.0, 0.0)
                    - omega_p * omega_p / (omega * Complex64::new(omega, *gamma))
            }
            DielectricModel::Lorentz {
                omega0,
                omega_p,
                gamma,
            } => {
                Complex64::new(1.0, 0.0)
                    + omega_p * omega_p
                        / Complex64::new(omega0 * omega0 - omega * omega, -gamma * omega)
            }
            DielectricModel::Tabulated { grid } => {
                if omega <= grid[0].0 {
                    grid[0].1
                } else if omega >= grid[grid.len() - 1].0 {
                    grid[grid.len() - 1].1
                } else {
                    let i = grid.partition_point(|g| g.0 <= omega) - 1;
                    let (w0, e0) = grid[i];
                    let (w1, e1) = grid[i + 1];
                    e0 + (e1 - e0) * ((omega - w0) / (w1 - w0))
                }
            }
        })
    }
}

/// Dissipative surface response Im[(eps - 1)/(eps + 1)] at omega >= 0.
pub fn surface_response(model: &DielectricModel, omega: f64) -> Result<f64> {
    if omega < 0.0 {
        return Err(Error::Domain("surface response requires omega >= 0".into()));
    }
    if omega == 0.0 {
        // every model here has S -> 0 with omega
        return Ok(0.0);
    }
    let eps = model.epsilon(omega)?;
    let denom = eps + 1.0;
    if denom.norm() < 1e-12 * (eps.norm() + 1.0) {
        return Err(Error::Numeric(format!(
            "surface-mode pole (eps = -1) at omega = {omega:.6e}"
        )));
    }
    Ok(((eps - 1.0) / denom).im)
}

#[derive(Debug, Clone)]
pub struct FrictionScenario {
    pub model: DielectricModel,
    /// Gap between the surfaces.
    pub d: f64,
    /// Shear speed in units of c.
    pub v: f64,
    pub warnings: Vec<String>,
}

impl FrictionScenario {
    pub fn new(model: DielectricModel, d: f64, v: f64) -> Result<Self> {
        if d <= 0.0 {
            return Err(Error::Validation("gap must be positive".into()));
        }
        if v < 0.0 {
            return Err(Error::Validation("shear speed must be >= 0".into()));
        }
        let mut warnings = Vec::new();
        // non-retarded validity: Doppler shift v k (k ~ 1/d) well below
        // the plasma scale
        let omega_scale = match &model {
            DielectricModel::Drude { omega_p, .. }
            | DielectricModel::Lorentz { omega_p, .. } => Some(*omega_p),
            DielectricModel::Tabulated { .. } => None,
        };
        if let Some(wp) = omega_scale {
            if v / d > 0.1 * wp {
                warnings.push(format!(
                    "Doppler scale v/d = {:.3e} approaches the plasma frequency; \
                     the non-retarded treatment degrades",
                    v / d
                ));
            }
        }
        Ok(FrictionScenario {
            model,
            d,
            v,
            warnings,
        })
    }
}

/// First-order transition probability into the two-excitation state with
/// surface-mode frequencies (omega_u, omega_l) at transverse wavevector
/// (k, k_x). Oscillator mode densities are normalized to one; they
/// cancel in the force integral.
pub fn transition_probability(
    scenario: &FrictionScenario,
    k: f64,
    k_x: f64,
    omega_u: f64,
    omega_l: f64,
    t: f64,
) -> Result<f64> {
    if k <= 0.0 || k_x.abs() > k {
        return Err(Error::Domain("need 0 < |k_x| <= k".into()));
    }
    let su = surface_response(&scenario.model, omega_u)?;
    let sl = surface_response(&scenario.model, omega_l)?;
    let delta = omega_u + omega_l - k_x * scenario.v;
    let kernel = if delta.abs() < 1e-14 {
        t * t
    } else {
        4.0 * ((delta * t / 2.0).sin() / delta).powi(2)
    };
    let p = su * sl / (PI * PI) * (-2.0 * scenario.d * k).exp() * kernel;
    if p > 0.1 {
        return Err(Error::Precondition(format!(
            "first-order perturbation theory invalid: P = {p:.3e}"
        )));
    }
    Ok(p)
}

/// Linear-in-time secular coefficient at exact resonance
/// omega_u + omega_l = k_x v: P(t) -> rate * t with
/// rate = S(omega_u) S(omega_l) e^{-2kd} / pi per unit delta(Delta).
pub fn secular_rate(
    scenario: &FrictionScenario,
    k: f64,
    omega_u: f64,
    omega_l: f64,
) -> Result<f64> {
    let su = surface_response(&scenario.model, omega_u)?;
    let sl = surface_response(&scenario.model, omega_l)?;
    Ok(su * sl / PI * (-2.0 * scenario.d * k).exp())
}

#[derive(Debug, Clone, Copy)]
pub struct FrictionResult {
    /// Force per unit area along the shear direction.
    pub force: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Frictional force per unit area,
/// F_x = (1/pi) int d^2k/(2 pi)^2 k_x e^{-2|k|d}
///       int_0^{k_x v} dw S(w) S(k_x v - w),
/// evaluated in polar k-space with Gauss-Legendre in the angle and
/// adaptive quadrature in k and w. Only k_x > 0 contributes.
pub fn friction_force(scenario: &FrictionScenario) -> Result<FrictionResult> {
    let d = scenario.d;
    let v = scenario.v;
    if v == 0.0 {
        return Ok(FrictionResult {
            force: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let model = &scenario.model;
    // outer cutoff: k^2 e^{-2kd} falls 12 decades below its peak at x =
    // kd ~ 17.4; use 20
    let k_cut = 20.0 / d;
    let theta_rule = quad::GaussRule::new(32);
    let evaluations = std::cell::Cell::new(0usize);
    let inner_error: std::cell::RefCell<Option<Error>> = std::cell::RefCell::new(None);
    let error_estimate = std::cell::Cell::new(0.0f64);

    let omega_integral = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        match quad::adaptive(
            |w| {
                let a = surface_response(model, w.clamp(0.0, u)).unwrap_or(f64::NAN);
                let b = surface_response(model, (u - w).clamp(0.0, u)).unwrap_or(f64::NAN);
                a * b
            },
            0.0,
            u,
            1e-8,
            1e-300,
            &[0.5 * u],
        ) {
            Ok(r) => {
                evaluations.set(evaluations.get() + r.evaluations);
                r.value
            }
            Err(e) => {
                *inner_error.borrow_mut() = Some(e);
                f64::NAN
            }
        }
    };

    // 2 x the upper half-plane theta in (0, pi/2)
    let angular = theta_rule.integrate(0.0, PI / 2.0, |theta: f64| {
        let ct = theta.cos();
        let radial = quad::adaptive(
            |k| k * k * (-2.0 * k * d).exp() * omega_integral(k * ct * v),
            0.0,
            k_cut,
            1e-7,
            1e-300,
            &[1.0 / d, 5.0 / d],
        );
        match radial {
            Ok(r) => {
                error_estimate.set(error_estimate.get() + r.error_estimate);
                ct * r.value
            }
            Err(e) => {
                *inner_error.borrow_mut() = Some(e);
                f64::NAN
            }
        }
    });
    if let Some(e) = inner_error.into_inner() {
        return Err(e);
    }
    let force = 2.0 * angular / (4.0 * PI.powi(3));
    Ok(FrictionResult {
        force,
        error_estimate: 2.0 * error_estimate.get() / (4.0 * PI.powi(3)),
        evaluations: evaluations.get(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn drude_surface_response() {
        let m = DielectricModel::drude(1.0, 0.1).unwrap();
        // independent complex arithmetic
        let w = 0.5;
        let eps = Complex64::new(1.0, 0.0)
            - Complex64::new(1.0, 0.0) / (w * Complex64::new(w, 0.1));
        let expect = ((eps - 1.0) / (eps + 1.0)).im;
        assert_relative_eq!(
            surface_response(&m, w).unwrap(),
            expect,
            max_relative = 1e-14
        );
        assert!(expect > 0.0);
        // low-frequency law S ~ 2 gamma w / wp^2
        let s = surface_response(&m, 1e-6).unwrap();
        assert_relative_eq!(s, 2.0 * 0.1 * 1e-6, max_relative = 1e-3);
    }

    #[test]
    fn lossless_and_conductor_limits() {
        let lossless = DielectricModel::tabulated(vec![
            (0.0, Complex64::new(4.0, 0.0)),
            (10.0, Complex64::new(4.0, 0.0)),
        ])
        .unwrap();
        assert_eq!(surface_response(&lossless, 1.0).unwrap(), 0.0);
        // huge |eps| mimics a perfect conductor: response ratio -> 1,
        // imaginary part -> 0
        let conductor = DielectricModel::tabulated(vec![
            (0.0, Complex64::new(1e12, 1.0)),
            (10.0, Complex64::new(1e12, 1.0)),
        ])
        .unwrap();
        assert!(surface_response(&conductor, 1.0).unwrap().abs() < 1e-11);
    }

    #[test]
    fn transition_probability_behaviour() {
        let m = DielectricModel::drude(1.0, 0.1).unwrap();
        let sc = FrictionScenario::new(m, 1.0, 1e-3).unwrap();
        // doubling d scales by exp(-2 k d)
        let p1 = transition_probability(&sc, 2.0, 1.0, 1e-4, 1e-4, 5.0).unwrap();
        let sc2 = FrictionScenario::new(sc.model.clone(), 2.0, 1e-3).unwrap();
        let p2 = transition_probability(&sc2, 2.0, 1.0, 1e-4, 1e-4, 5.0).unwrap();
        assert_relative_eq!(p2 / p1, (-4.0f64).exp(), max_relative = 1e-10);
        // on resonance the probability grows as t^2 before saturation
        let k_x = 1.0;
        let res = transition_probability(&sc, 2.0, k_x, 4e-4, k_x * sc.v - 4e-4, 7.0).unwrap();
        let res2 =
            transition_probability(&sc, 2.0, k_x, 4e-4, k_x * sc.v - 4e-4, 14.0).unwrap();
        assert_relative_eq!(res2 / res, 4.0, max_relative = 1e-8);
    }

    #[test]
    fn friction_force_basic_properties() {
        let m = DielectricModel::drude(1e9, 3e6).unwrap();
        let still = FrictionScenario::new(m.clone(), 1e-8, 0.0).unwrap();
        assert_eq!(friction_force(&still).unwrap().force, 0.0);

        let moving = FrictionScenario::new(m.clone(), 1e-8, 1e-8).unwrap();
        let f = friction_force(&moving).unwrap().force;
        assert!(f > 0.0);

        // monotone decrease with the gap
        let mut last = f64::INFINITY;
        for i in 0..5 {
            let d = 1e-8 * (1.0 + 0.5 * i as f64);
            let sc = FrictionScenario::new(m.clone(), d, 1e-8).unwrap();
            let fi = friction_force(&sc).unwrap().force;
            assert!(fi < last);
            last = fi;
        }

        // lossless response gives exactly zero
        let lossless = DielectricModel::tabulated(vec![
            (0.0, Complex64::new(2.0, 0.0)),
            (1e12, Complex64::new(2.0, 0.0)),
        ])
        .unwrap();
        let sc = FrictionScenario::new(lossless, 1e-8, 1e-6).unwrap();
        assert_eq!(friction_force(&sc).unwrap().force, 0.0);
    }

    #[test]
    fn force_vanishes_with_speed() {
        let m = DielectricModel::drude(1e9, 3e6).unwrap();
        let f0 = friction_force(&FrictionScenario::new(m.clone(), 1e-8, 1e-7).unwrap())
            .unwrap()
            .force;
        let mut prev = f0;
        for k in 1..=3 {
            let v = 1e-7 / 10f64.powi(k);
            let f = friction_force(&FrictionScenario::new(m.clone(), 1e-8, v).unwrap())
                .unwrap()
                .force;
            assert!(f < 0.1 * prev);
            prev = f;
        }
    }

    #[test]
    fn omega_integrand_mirror_symmetry() {
        let m = DielectricModel::drude(1e9, 3e6).unwrap();
        let u = 1e-2;
        let left = quad::adaptive(
            |w| {
                surface_response(&m, w).unwrap() * surface_response(&m, u - w).unwrap()
            },
            0.0,
            0.5 * u,
            1e-11,
            1e-300,
            &[],
        )
        .unwrap()
        .value;
        let right = quad::adaptive(
            |w| {
                surface_response(&m, w).unwrap() * surface_response(&m, u - w).unwrap()
            },
            0.5 * u,
            u,
            1e-11,
            1e-300,
            &[],
        )
        .unwrap()
        .value;
        assert_relative_eq!(left, right, max_relative = 1e-10);
    }
}
