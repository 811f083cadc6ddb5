//! Experimental-scale estimates: maximum photon number reachable in a
//! cavity of finite quality factor, and the effective modulation depth
//! of an optical parametric oscillator.

use crate::domain::units::{from_natural, Dimensions, C_SI, HBAR_SI};
use crate::error::{Error, Result};

/// Parameters of the exponential-growth estimate <N> = sinh^2(eta w eps t).
#[derive(Debug, Clone, Copy)]
pub struct EstimateInput {
    /// Cavity quality factor.
    pub q_factor: f64,
    /// Relative modulation amplitude.
    pub eps: f64,
    /// Resonant angular frequency, natural units.
    pub omega: f64,
    /// Geometry factor of order one.
    pub eta: f64,
}

impl EstimateInput {
    pub fn new(q_factor: f64, eps: f64, omega: f64, eta: f64) -> Result<Self> {
        if q_factor <= 0.0 {
            return Err(Error::Validation("quality factor must be positive".into()));
        }
        if eps < 0.0 {
            return Err(Error::Validation("eps must be non-negative".into()));
        }
        if omega <= 0.0 {
            return Err(Error::Validation("frequency must be positive".into()));
        }
        Ok(EstimateInput {
            q_factor,
            eps,
            omega,
            eta,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EstimateResult {
    /// Photon number at the cavity storage time.
    pub n_max: f64,
    /// Storage time t_max = Q / omega, natural units.
    pub t_max: f64,
    /// Storage time in seconds.
    pub t_max_si: f64,
    /// Emitted power N_max hbar omega / t_max, watts.
    pub p_max_si: f64,
    /// Growth beats the cavity loss only if 2 Q eps > 1.
    pub feasible: bool,
}

/// Photon growth capped at the storage time t_max = Q / omega.
pub fn estimate_max_photons(input: &EstimateInput) -> EstimateResult {
    let t_max = input.q_factor / input.omega;
    let n_max = (input.eta * input.q_factor * input.eps).sinh().powi(2);
    let t_max_si = t_max / C_SI;
    let omega_si = from_natural(input.omega, Dimensions::FREQUENCY);
    let p_max_si = n_max * HBAR_SI * omega_si / t_max_si;
    EstimateResult {
        n_max,
        t_max,
        t_max_si,
        p_max_si,
        feasible: 2.0 * input.q_factor * input.eps > 1.0,
    }
}

/// Relative permittivity modulation of a pumped chi2 medium,
/// delta eps / eps = (chi2 E_pump / 2) / (1 + chi1). Pumping the
/// nonlinear index is formally equivalent to modulating the cavity
/// length with this amplitude.
pub fn opo_modulation_depth(chi1: f64, chi2: f64, e_pump: f64) -> Result<f64> {
    let denom = 1.0 + chi1;
    if denom <= 0.0 {
        return Err(Error::Domain(
            "total linear permittivity 1 + chi1 must be positive".into(),
        ));
    }
    Ok(0.5 * chi2 * e_pump / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::units::Unit;
    use approx::assert_relative_eq;

    #[test]
    fn microwave_cavity_power_scale() {
        // Q eps of order one at 3 GHz puts the emitted power near 1e-22 W
        let omega = Unit::Hertz.to_natural(3.0e9);
        let input = EstimateInput::new(6.0e7, 1e-8, omega, 1.0).unwrap();
        let out = estimate_max_photons(&input);
        assert!(out.feasible);
        assert!(out.p_max_si > 1e-22 / 3.0 && out.p_max_si < 3.0 * 1e-22);
        assert_relative_eq!(
            out.t_max_si,
            6.0e7 / (2.0 * std::f64::consts::PI * 3.0e9),
            max_relative = 1e-12
        );
    }

    #[test]
    fn feasibility_threshold() {
        let omega = 1.0;
        let below = estimate_max_photons(&EstimateInput::new(1e3, 0.25e-3, omega, 1.0).unwrap());
        assert!(!below.feasible);
        assert!(below.n_max > 0.0);
        let above = estimate_max_photons(&EstimateInput::new(1e3, 0.75e-3, omega, 1.0).unwrap());
        assert!(above.feasible);
        let zero = estimate_max_photons(&EstimateInput::new(1e3, 0.0, omega, 1.0).unwrap());
        assert_eq!(zero.n_max, 0.0);
        assert!(!zero.feasible);
    }

    #[test]
    fn opo_mapping() {
        assert_eq!(opo_modulation_depth(1.25, 0.0, 1.0).unwrap(), 0.0);
        let once = opo_modulation_depth(1.25, 4.5e-3, 1.0).unwrap();
        assert_relative_eq!(once, 1.0e-3, max_relative = 1e-12);
        let twice = opo_modulation_depth(1.25, 4.5e-3, 2.0).unwrap();
        assert_relative_eq!(twice, 2.0 * once, max_relative = 1e-14);
        assert!(opo_modulation_depth(-1.0, 1.0, 1.0).is_err());
    }
}
