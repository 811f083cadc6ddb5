//! Cavity geometries, mode labelling and spectra.
//!
//! Rectangular cavities use integer indices (nx, ny, nz) with the moving
//! wall along z. Cylindrical cavities reuse the same index triple as
//! (n, m, nz): azimuthal order, radial root number and axial index.

use crate::domain::bessel::{bessel_root, BesselKind};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    Scalar,
    Te,
    Tm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub pol: Polarization,
    pub nx: u32,
    pub ny: u32,
    pub nz: u32,
}

impl Polarization {
    pub fn tag(self) -> &'static str {
        match self {
            Polarization::Scalar => "scalar",
            Polarization::Te => "te",
            Polarization::Tm => "tm",
        }
    }
}

impl ModeIndex {
    pub fn new(pol: Polarization, nx: u32, ny: u32, nz: u32) -> Self {
        ModeIndex { pol, nx, ny, nz }
    }

    pub fn scalar(nx: u32, ny: u32, nz: u32) -> Self {
        ModeIndex::new(Polarization::Scalar, nx, ny, nz)
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.pol {
            Polarization::Scalar => "S",
            Polarization::Te => "TE",
            Polarization::Tm => "TM",
        };
        write!(f, "{tag}({},{},{})", self.nx, self.ny, self.nz)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum CavityGeometry {
    Rect { lx: f64, ly: f64, lz: f64 },
    Circ { radius: f64, lz: f64 },
}

impl CavityGeometry {
    pub fn lz(&self) -> f64 {
        match self {
            CavityGeometry::Rect { lz, .. } | CavityGeometry::Circ { lz, .. } => *lz,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            CavityGeometry::Rect { lx, ly, lz } => *lx > 0.0 && *ly > 0.0 && *lz > 0.0,
            CavityGeometry::Circ { radius, lz } => *radius > 0.0 && *lz > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Validation("cavity dimensions must be positive".into()))
        }
    }

    /// Check that a mode index is admissible for this geometry.
    pub fn check_mode(&self, m: ModeIndex) -> Result<()> {
        let valid = match self {
            CavityGeometry::Rect { .. } => match m.pol {
                Polarization::Scalar => m.nx >= 1 && m.ny >= 1 && m.nz >= 1,
                Polarization::Te => (m.nx >= 1 || m.ny >= 1) && m.nz >= 1,
                Polarization::Tm => m.nx >= 1 && m.ny >= 1,
            },
            // cylindrical: (n, m, nz) with m >= 1
            CavityGeometry::Circ { .. } => match m.pol {
                Polarization::Scalar => {
                    return Err(Error::Domain(
                        "scalar modes are not enumerated for cylindrical cavities".into(),
                    ))
                }
                Polarization::Te => m.ny >= 1 && m.nz >= 1,
                Polarization::Tm => m.ny >= 1,
            },
        };
        if valid {
            Ok(())
        } else {
            Err(Error::Domain(format!("mode {m} is not supported by the geometry")))
        }
    }

    /// Transverse wavenumber squared (everything except the z part).
    pub fn k_perp_sq(&self, m: ModeIndex) -> Result<f64> {
        self.check_mode(m)?;
        Ok(match self {
            CavityGeometry::Rect { lx, ly, .. } => {
                (m.nx as f64 * PI / lx).powi(2) + (m.ny as f64 * PI / ly).powi(2)
            }
            CavityGeometry::Circ { radius, .. } => {
                let kind = match m.pol {
                    Polarization::Te => BesselKind::JPrime,
                    _ => BesselKind::J,
                };
                let root = bessel_root(kind, m.nx, m.ny)?;
                (root / radius).powi(2)
            }
        })
    }

    /// Axial wavenumber nz pi / Lz.
    pub fn k_z(&self, m: ModeIndex) -> f64 {
        m.nz as f64 * PI / self.lz()
    }

    /// Angular eigenfrequency of a mode.
    pub fn omega(&self, m: ModeIndex) -> Result<f64> {
        Ok((self.k_perp_sq(m)? + self.k_z(m).powi(2)).sqrt())
    }
}

/// All modes of the given polarizations with frequency at most
/// `omega_max`, sorted by frequency and then by index.
pub fn spectrum(
    geom: &CavityGeometry,
    pols: &[Polarization],
    omega_max: f64,
) -> Result<Vec<(ModeIndex, f64)>> {
    geom.validate()?;
    if omega_max <= 0.0 {
        return Err(Error::Domain("spectrum cutoff must be positive".into()));
    }
    let mut out = Vec::new();
    for &pol in pols {
        match geom {
            CavityGeometry::Rect { lx, ly, lz } => {
                let nx_max = (omega_max * lx / PI).ceil() as u32;
                let ny_max = (omega_max * ly / PI).ceil() as u32;
                let nz_max = (omega_max * lz / PI).ceil() as u32;
                for nx in 0..=nx_max {
                    for ny in 0..=ny_max {
                        for nz in 0..=nz_max {
                            let m = ModeIndex::new(pol, nx, ny, nz);
                            if geom.check_mode(m).is_err() {
                                continue;
                            }
                            let w = geom.omega(m)?;
                            if w <= omega_max {
                                out.push((m, w));
                            }
                        }
                    }
                }
            }
            CavityGeometry::Circ { radius, lz } => {
                if pol == Polarization::Scalar {
                    return Err(Error::Domain(
                        "scalar modes are not enumerated for cylindrical cavities".into(),
                    ));
                }
                let nz_max = (omega_max * lz / PI).ceil() as u32;
                // Roots grow roughly like pi per step, so n and m are
                // bounded by omega_max R / pi plus a small margin.
                let nm_max = (omega_max * radius / PI).ceil() as u32 + 2;
                for n in 0..=nm_max {
                    for mr in 1..=nm_max {
                        let nz_lo = if pol == Polarization::Te { 1 } else { 0 };
                        let m0 = ModeIndex::new(pol, n, mr, nz_lo);
                        if geom.check_mode(m0).is_err() {
                            continue;
                        }
                        if geom.k_perp_sq(m0)?.sqrt() > omega_max {
                            // radial roots increase in both n and m
                            break;
                        }
                        for nz in nz_lo..=nz_max {
                            let m = ModeIndex::new(pol, n, mr, nz);
                            let w = geom.omega(m)?;
                            if w <= omega_max {
                                out.push((m, w));
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    out.dedup_by(|a, b| a.0 == b.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cube_fundamental() {
        let g = CavityGeometry::Rect {
            lx: 1.0,
            ly: 1.0,
            lz: 1.0,
        };
        let w = g.omega(ModeIndex::scalar(1, 1, 1)).unwrap();
        assert_relative_eq!(w, PI * 3.0f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn te_requires_axial_index() {
        let g = CavityGeometry::Rect {
            lx: 1.0,
            ly: 1.0,
            lz: 1.0,
        };
        assert!(g.check_mode(ModeIndex::new(Polarization::Te, 1, 0, 0)).is_err());
        assert!(g.check_mode(ModeIndex::new(Polarization::Te, 1, 0, 1)).is_ok());
        assert!(g.check_mode(ModeIndex::new(Polarization::Tm, 1, 1, 0)).is_ok());
        assert!(g.check_mode(ModeIndex::new(Polarization::Tm, 0, 1, 1)).is_err());
    }

    #[test]
    fn rect_spectrum_is_sorted_and_complete() {
        let g = CavityGeometry::Rect {
            lx: 1.0,
            ly: 1.0,
            lz: 1.0,
        };
        let modes = spectrum(&g, &[Polarization::Scalar], 3.0 * PI).unwrap();
        assert!(modes.windows(2).all(|w| w[0].1 <= w[1].1));
        // (1,1,1) through the cutoff sqrt(nx^2+ny^2+nz^2) <= 3
        let count = modes.len();
        assert_eq!(count, 7); // 111, 112/121/211, 122/212/221
    }

    #[test]
    fn cylinder_fundamental_te_and_tm() {
        let g = CavityGeometry::Circ {
            radius: 1.0,
            lz: 2.0,
        };
        let te = g
            .omega(ModeIndex::new(Polarization::Te, 1, 1, 1))
            .unwrap();
        let expected_te = ((1.841183781340659f64).powi(2) + (PI / 2.0).powi(2)).sqrt();
        assert_relative_eq!(te, expected_te, max_relative = 1e-11);
        let tm = g
            .omega(ModeIndex::new(Polarization::Tm, 0, 1, 0))
            .unwrap();
        assert_relative_eq!(tm, 2.404825557695773, max_relative = 1e-12);
    }
}
