//! Wall motion and parameter modulation profiles.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum MotionForm {
    /// L(t) = L0 [1 + eps sin(Omega t)] while the drive is on.
    HarmonicLength,
    /// Generic harmonic modulation of a parameter, eps sin(Omega t);
    /// the wall itself stays at L0.
    HarmonicParameter,
    /// Sampled L(t) on a sorted grid, linearly interpolated.
    Tabulated { samples: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionProfile {
    pub eps: f64,
    pub omega: f64,
    pub t_start: f64,
    /// None means the drive never stops.
    pub t_end: Option<f64>,
    /// Rest length of the cavity along the moving-wall axis.
    pub l0: f64,
    pub form: MotionForm,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl MotionProfile {
    pub fn new(
        form: MotionForm,
        l0: f64,
        eps: f64,
        omega: f64,
        t_start: f64,
        t_end: Option<f64>,
    ) -> Result<Self> {
        if l0 <= 0.0 {
            return Err(Error::Validation("rest length must be positive".into()));
        }
        if eps < 0.0 {
            return Err(Error::Validation("modulation amplitude must be >= 0".into()));
        }
        if eps > 0.1 {
            return Err(Error::Validation(format!(
                "modulation amplitude {eps} exceeds the perturbative bound 0.1"
            )));
        }
        if omega < 0.0 {
            return Err(Error::Validation("drive frequency must be >= 0".into()));
        }
        if let Some(te) = t_end {
            if te < t_start {
                return Err(Error::Validation("tEnd precedes tStart".into()));
            }
        }
        if let MotionForm::Tabulated { samples } = &form {
            if samples.len() < 7 {
                return Err(Error::Validation(
                    "tabulated motion needs at least 7 samples".into(),
                ));
            }
            if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
                return Err(Error::Validation(
                    "tabulated motion samples must be strictly increasing in t".into(),
                ));
            }
        }
        let mut warnings = Vec::new();
        if eps > 0.01 {
            warnings.push(format!(
                "modulation amplitude {eps} is above 0.01; first-order results degrade"
            ));
        }
        Ok(MotionProfile {
            eps,
            omega,
            t_start,
            t_end,
            l0,
            form,
            warnings,
        })
    }

    pub fn harmonic_length(
        l0: f64,
        eps: f64,
        omega: f64,
        t_start: f64,
        t_end: Option<f64>,
    ) -> Result<Self> {
        MotionProfile::new(MotionForm::HarmonicLength, l0, eps, omega, t_start, t_end)
    }

    pub fn harmonic_parameter(
        l0: f64,
        eps: f64,
        omega: f64,
        t_start: f64,
        t_end: Option<f64>,
    ) -> Result<Self> {
        MotionProfile::new(MotionForm::HarmonicParameter, l0, eps, omega, t_start, t_end)
    }

    pub fn drive_active(&self, t: f64) -> bool {
        t >= self.t_start && self.t_end.map_or(true, |te| t <= te)
    }

    /// Modulation factor sin(Omega t) inside the drive window, 0 outside.
    pub fn modulation(&self, t: f64) -> f64 {
        if self.drive_active(t) {
            (self.omega * t).sin()
        } else {
            0.0
        }
    }

    /// Wall position at time t.
    pub fn length(&self, t: f64) -> f64 {
        match &self.form {
            MotionForm::HarmonicLength => self.l0 * (1.0 + self.eps * self.modulation(t)),
            MotionForm::HarmonicParameter => self.l0,
            MotionForm::Tabulated { samples } => {
                if t <= samples[0].0 {
                    samples[0].1
                } else if t >= samples[samples.len() - 1].0 {
                    samples[samples.len() - 1].1
                } else {
                    let i = samples.partition_point(|s| s.0 <= t) - 1;
                    let (t0, l0) = samples[i];
                    let (t1, l1) = samples[i + 1];
                    l0 + (l1 - l0) * (t - t0) / (t1 - t0)
                }
            }
        }
    }

    /// Wall velocity at time t.
    pub fn velocity(&self, t: f64) -> f64 {
        match &self.form {
            MotionForm::HarmonicLength => {
                if self.drive_active(t) {
                    self.l0 * self.eps * self.omega * (self.omega * t).cos()
                } else {
                    0.0
                }
            }
            MotionForm::HarmonicParameter => 0.0,
            MotionForm::Tabulated { samples } => {
                if t <= samples[0].0 || t >= samples[samples.len() - 1].0 {
                    0.0
                } else {
                    let i = samples.partition_point(|s| s.0 <= t) - 1;
                    let (t0, l0) = samples[i];
                    let (t1, l1) = samples[i + 1];
                    (l1 - l0) / (t1 - t0)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn harmonic_length_and_velocity() {
        let p = MotionProfile::harmonic_length(1.0, 0.01, 4.0, 0.0, None).unwrap();
        let t = 0.37;
        assert_relative_eq!(p.length(t), 1.0 + 0.01 * (4.0 * t).sin(), epsilon = 1e-15);
        assert_relative_eq!(p.velocity(t), 0.01 * 4.0 * (4.0 * t).cos(), epsilon = 1e-15);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn amplitude_bounds() {
        assert!(MotionProfile::harmonic_length(1.0, 0.2, 1.0, 0.0, None).is_err());
        let warned = MotionProfile::harmonic_length(1.0, 0.05, 1.0, 0.0, None).unwrap();
        assert_eq!(warned.warnings.len(), 1);
    }

    #[test]
    fn drive_window() {
        let p = MotionProfile::harmonic_length(1.0, 0.01, 2.0, 0.0, Some(3.0)).unwrap();
        assert!(p.drive_active(1.0));
        assert!(!p.drive_active(3.5));
        assert_relative_eq!(p.length(10.0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(p.velocity(10.0), 0.0, epsilon = 1e-15);
    }
}
