//! Python bindings for the dce-lab core library.
//!
//! The module exposes the main operations as plain functions and a few
//! thin wrapper classes. All quantities are in natural units
//! (hbar = c = 1, lengths in meters) unless a name says otherwise.

use dce_lab::cavity3d;
use dce_lab::domain::bessel::{self, BesselKind};
use dce_lab::domain::modes::{CavityGeometry, ModeIndex, Polarization};
use dce_lab::domain::motion::MotionProfile;
use dce_lab::domain::units::Unit;
use dce_lab::friction::{self, DielectricModel, FrictionScenario};
use dce_lab::mirror_vacuum::{self, FieldType, MirrorOscillatorParams, MirrorTrajectory};
use dce_lab::moore1d;
use dce_lab::plasma_sheet::{self, PulseShape, SheetModel, SheetSpectrum};
use dce_lab::scenario;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: dce_lab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_pol(pol: &str) -> PyResult<Polarization> {
    match pol {
        "scalar" => Ok(Polarization::Scalar),
        "te" => Ok(Polarization::Te),
        "tm" => Ok(Polarization::Tm),
        other => Err(PyValueError::new_err(format!(
            "unknown polarization '{other}'; expected scalar, te or tm"
        ))),
    }
}

fn parse_mode(pol: &str, mode: (u32, u32, u32)) -> PyResult<ModeIndex> {
    Ok(ModeIndex::new(parse_pol(pol)?, mode.0, mode.1, mode.2))
}

// ---------------------------------------------------------------- units

/// Convert an SI value with the given unit label to natural units.
#[pyfunction]
fn to_natural(value: f64, unit: &str) -> PyResult<f64> {
    Ok(Unit::parse(unit).map_err(err)?.to_natural(value))
}

// --------------------------------------------------------- mirror_vacuum

/// Vacuum susceptibility chi(Omega) of a perfect 1D mirror.
#[pyfunction]
fn susceptibility_1d(omega: f64) -> Complex64 {
    mirror_vacuum::susceptibility_1d(omega)
}

/// Dissipative vacuum force on a harmonically moving 1D mirror at time t.
#[pyfunction]
#[pyo3(signature = (q0, omega, t, damping_time=None))]
fn mirror_force_1d(q0: f64, omega: f64, t: f64, damping_time: Option<f64>) -> PyResult<f64> {
    let traj = MirrorTrajectory::harmonic(q0, omega, damping_time).map_err(err)?;
    mirror_vacuum::force_1d(&traj, t).map_err(err)
}

/// Dissipative vacuum force on a plane mirror of the given area in 3D.
/// `field` is "scalar" or "em".
#[pyfunction]
#[pyo3(signature = (q0, omega, area, field, t, damping_time=None))]
fn mirror_force_3d(
    q0: f64,
    omega: f64,
    area: f64,
    field: &str,
    t: f64,
    damping_time: Option<f64>,
) -> PyResult<f64> {
    let field = match field {
        "scalar" => FieldType::Scalar,
        "em" => FieldType::Em,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown field type '{other}'; expected scalar or em"
            )))
        }
    };
    let traj = MirrorTrajectory::harmonic(q0, omega, damping_time).map_err(err)?;
    mirror_vacuum::force_3d(&traj, area, field, t).map_err(err)
}

/// Radiated energy and photon rate (per natural time) of a damped
/// harmonic plane mirror; returns (energy, rate).
#[pyfunction]
fn radiated_energy_and_rate(
    q0: f64,
    omega: f64,
    damping_time: f64,
    area: f64,
) -> PyResult<(f64, f64)> {
    mirror_vacuum::radiated_energy_and_rate(q0, omega, damping_time, area).map_err(err)
}

/// Vacuum damping rate Gamma of a mirror of mass M in a trap of
/// frequency Omega.
#[pyfunction]
fn mirror_damping_rate(mass: f64, omega: f64) -> PyResult<f64> {
    let p = MirrorOscillatorParams::new(mass, omega, 0.0).map_err(err)?;
    Ok(mirror_vacuum::damping_rate(&p))
}

/// Decoherence time of a momentum superposition of scale 2 p0.
#[pyfunction]
fn mirror_decoherence_time(mass: f64, omega: f64, p0: f64) -> PyResult<f64> {
    let p = MirrorOscillatorParams::new(mass, omega, p0).map_err(err)?;
    mirror_vacuum::decoherence_time(&p).map_err(err)
}

// ---------------------------------------------------------------- moore1d

/// Solution R(t) of the Moore equation for an oscillating cavity wall.
#[pyclass(name = "MooreSolution")]
struct PyMooreSolution {
    inner: moore1d::MooreSolution,
}

#[pymethods]
impl PyMooreSolution {
    /// Renormalization-group solution for L(t) = L0 (1 + eps sin(q pi t / L0)).
    #[staticmethod]
    fn rg(q: u32, eps: f64, l0: f64) -> PyResult<Self> {
        Ok(Self {
            inner: moore1d::moore_rg(q, eps, l0).map_err(err)?,
        })
    }

    /// Exact characteristics solution for the same wall motion, valid
    /// up to t_max.
    #[staticmethod]
    fn numeric(q: u32, eps: f64, l0: f64, t_max: f64) -> PyResult<Self> {
        let omega = q as f64 * std::f64::consts::PI / l0;
        let profile = MotionProfile::harmonic_length(l0, eps, omega, 0.0, None).map_err(err)?;
        Ok(Self {
            inner: moore1d::moore_numeric(profile, t_max).map_err(err)?,
        })
    }

    fn r(&self, t: f64) -> PyResult<f64> {
        self.inner.r(t).map_err(err)
    }

    /// First three derivatives of R at t, as a tuple.
    fn derivatives(&self, t: f64) -> PyResult<(f64, f64, f64)> {
        let d = self.inner.derivatives(t).map_err(err)?;
        Ok((d.r1, d.r2, d.r3))
    }

    /// Defect of the functional equation R(t + L(t)) - R(t - L(t)) - 2.
    fn residual(&self, t: f64) -> PyResult<f64> {
        self.inner.residual(t).map_err(err)
    }

    /// Energy density of the field at position x and time t.
    fn energy_density(&self, x: f64, t: f64) -> PyResult<f64> {
        moore1d::energy_density(&self.inner, x, t).map_err(err)
    }

    /// Total field energy in the cavity at time t.
    fn intracavity_energy(&self, t: f64) -> PyResult<f64> {
        moore1d::intracavity_energy(&self.inner, t).map_err(err)
    }

    /// Radiation force on the moving wall at time t.
    fn mirror_force(&self, t: f64) -> PyResult<f64> {
        moore1d::mirror_force(&self.inner, t).map_err(err)
    }

    /// Times in (a, b) where R' jumps between plateaus.
    fn detect_jumps(&self, a: f64, b: f64) -> PyResult<Vec<f64>> {
        moore1d::detect_jumps(&self.inner, a, b).map_err(err)
    }
}

// --------------------------------------------------------------- cavity3d

/// Rectangular or cylindrical cavity with an oscillating end wall.
#[pyclass(name = "Cavity")]
struct PyCavity {
    geom: CavityGeometry,
}

impl PyCavity {
    fn profile(&self, eps: f64, omega_drive: f64) -> PyResult<MotionProfile> {
        MotionProfile::harmonic_length(self.geom.lz(), eps, omega_drive, 0.0, None).map_err(err)
    }
}

#[pymethods]
impl PyCavity {
    #[staticmethod]
    fn rect(lx: f64, ly: f64, lz: f64) -> PyResult<Self> {
        let geom = CavityGeometry::Rect { lx, ly, lz };
        geom.validate().map_err(err)?;
        Ok(Self { geom })
    }

    #[staticmethod]
    fn circ(radius: f64, lz: f64) -> PyResult<Self> {
        let geom = CavityGeometry::Circ { radius, lz };
        geom.validate().map_err(err)?;
        Ok(Self { geom })
    }

    /// Eigenfrequency of the mode (nx, ny, nz) with the given polarization.
    fn omega(&self, pol: &str, mode: (u32, u32, u32)) -> PyResult<f64> {
        self.geom.omega(parse_mode(pol, mode)?).map_err(err)
    }

    /// Sorted (pol, nx, ny, nz, omega) spectrum up to omega_max.
    fn spectrum(&self, pol: &str, omega_max: f64) -> PyResult<Vec<(String, u32, u32, u32, f64)>> {
        let modes = dce_lab::domain::modes::spectrum(&self.geom, &[parse_pol(pol)?], omega_max)
            .map_err(err)?;
        Ok(modes
            .into_iter()
            .map(|(m, w)| (m.pol.tag().to_string(), m.nx, m.ny, m.nz, w))
            .collect())
    }

    /// Modes of the given polarization that are parametrically resonant
    /// at the drive, and the resonantly coupled pairs among them.
    #[allow(clippy::type_complexity)]
    fn find_resonances(
        &self,
        omega_drive: f64,
        pol: &str,
        search_bound: u32,
    ) -> PyResult<(
        Vec<(u32, u32, u32)>,
        Vec<((u32, u32, u32), (u32, u32, u32))>,
    )> {
        let report = cavity3d::find_resonances(&self.geom, omega_drive, parse_pol(pol)?, search_bound)
            .map_err(err)?;
        let idx = |m: ModeIndex| (m.nx, m.ny, m.nz);
        Ok((
            report.resonant.into_iter().map(idx).collect(),
            report
                .coupled_pairs
                .into_iter()
                .map(|(a, b)| (idx(a), idx(b)))
                .collect(),
        ))
    }

    /// Photon number of an uncoupled resonant mode from the closed-form
    /// sinh^2 law; the wall oscillates as Lz (1 + eps sin(omega_drive t)).
    fn photon_number(
        &self,
        pol: &str,
        mode: (u32, u32, u32),
        eps: f64,
        t: f64,
        omega_drive: f64,
    ) -> PyResult<f64> {
        cavity3d::photon_number_closed_form(&self.geom, parse_mode(pol, mode)?, eps, t, omega_drive)
            .map_err(err)
    }

    /// Photon numbers of a resonantly coupled mode set evolved with the
    /// slow-amplitude equations; returns one number per input mode.
    fn msa_photon_numbers(
        &self,
        pol: &str,
        modes: Vec<(u32, u32, u32)>,
        eps: f64,
        omega_drive: f64,
        t: f64,
    ) -> PyResult<Vec<f64>> {
        let set: Vec<ModeIndex> = modes
            .into_iter()
            .map(|m| parse_mode(pol, m))
            .collect::<PyResult<_>>()?;
        let profile = self.profile(eps, omega_drive)?;
        let state = cavity3d::msa_evolve(&self.geom, &profile, &set, t).map_err(err)?;
        Ok(state.photon_numbers())
    }
}

/// Intermode coupling coefficient g_{m j} of the scalar field.
#[pyfunction]
fn coupling_g(m: u32, j: u32) -> PyResult<f64> {
    cavity3d::coupling_g(m, j).map_err(err)
}

/// m-th positive root of J_n (kind "j") or J_n' (kind "jprime").
#[pyfunction]
fn bessel_root(kind: &str, n: u32, m: u32) -> PyResult<f64> {
    let kind = match kind {
        "j" => BesselKind::J,
        "jprime" => BesselKind::JPrime,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown Bessel kind '{other}'; expected j or jprime"
            )))
        }
    };
    bessel::bessel_root(kind, n, m).map_err(err)
}

// --------------------------------------------------------------- friction

/// Local dielectric response of a half-space surface.
#[pyclass(name = "Dielectric")]
#[derive(Clone)]
struct PyDielectric {
    inner: DielectricModel,
}

#[pymethods]
impl PyDielectric {
    #[staticmethod]
    fn drude(omega_p: f64, gamma: f64) -> PyResult<Self> {
        Ok(Self {
            inner: DielectricModel::drude(omega_p, gamma).map_err(err)?,
        })
    }

    #[staticmethod]
    fn lorentz(omega0: f64, omega_p: f64, gamma: f64) -> PyResult<Self> {
        Ok(Self {
            inner: DielectricModel::lorentz(omega0, omega_p, gamma).map_err(err)?,
        })
    }

    /// Complex permittivity at the given frequency.
    fn epsilon(&self, omega: f64) -> PyResult<Complex64> {
        self.inner.epsilon(omega).map_err(err)
    }

    /// Surface noise spectrum Im[(eps - 1) / (eps + 1)].
    fn surface_response(&self, omega: f64) -> PyResult<f64> {
        friction::surface_response(&self.inner, omega).map_err(err)
    }
}

/// Quantum friction force per unit area between two identical surfaces
/// at separation d sliding at relative speed v (units of c); returns
/// (force, error_estimate, evaluations).
#[pyfunction]
fn friction_force(model: PyDielectric, d: f64, v: f64) -> PyResult<(f64, f64, usize)> {
    let scenario = FrictionScenario::new(model.inner, d, v).map_err(err)?;
    let out = friction::friction_force(&scenario).map_err(err)?;
    Ok((out.force, out.error_estimate, out.evaluations))
}

// ------------------------------------------------------------ plasma_sheet

/// Plasma sheet in a cavity, driven by a periodic carrier-density pulse.
#[pyclass(name = "Sheet")]
struct PySheet {
    model: SheetModel,
}

#[pymethods]
impl PySheet {
    /// v0 and vmax are the base and peak sheet potentials; the pulse
    /// rises as a half cosine over tau_e and relaxes exponentially with
    /// time constant tau_r, repeating with the given period.
    #[new]
    fn new(v0: f64, vmax: f64, tau_e: f64, period: f64, tau_r: f64) -> PyResult<Self> {
        let pulse = PulseShape::new(tau_e, period, tau_r).map_err(err)?;
        Ok(Self {
            model: SheetModel::new(v0, vmax, pulse).map_err(err)?,
        })
    }

    /// Effective cavity frequency of the sheet mode (n, my, mz).
    fn omega_bar(&self, lx: f64, ly: f64, lz: f64, mode: (usize, u32, u32)) -> PyResult<f64> {
        let spectrum = SheetSpectrum::compute(&self.model, lx, ly, lz, mode.0 + 2).map_err(err)?;
        spectrum.omega_bar(mode.0, mode.1, mode.2).map_err(err)
    }

    /// Modulation depth eps_n of the n-th longitudinal mode.
    fn modulation_depth(&self, lx: f64, n: usize) -> PyResult<f64> {
        let (eps, _) = plasma_sheet::modulation_depth(&self.model, lx, n).map_err(err)?;
        Ok(eps)
    }

    /// Photon number of the resonant sheet mode driven by the j-th
    /// pulse harmonic after time t.
    fn photon_number(
        &self,
        lx: f64,
        ly: f64,
        lz: f64,
        mode: (usize, u32, u32),
        j: u32,
        t: f64,
    ) -> PyResult<f64> {
        plasma_sheet::sheet_photon_number(&self.model, lx, ly, lz, mode, j, t).map_err(err)
    }
}

/// First `count` longitudinal wavenumbers of a sheet of potential v
/// centered in a cavity of length lx.
#[pyfunction]
fn sheet_wavenumbers(v: f64, lx: f64, count: usize) -> PyResult<Vec<f64>> {
    plasma_sheet::sheet_wavenumbers(v, lx, count).map_err(err)
}

// -------------------------------------------------------------- estimates

/// Order-of-magnitude photon yield of a driven cavity; returns a dict
/// with n_max, t_max, t_max_si, p_max_si and feasible.
#[pyfunction]
fn estimate_max_photons(
    py: Python<'_>,
    q_factor: f64,
    eps: f64,
    omega: f64,
    eta: f64,
) -> PyResult<PyObject> {
    let input = scenario::EstimateInput::new(q_factor, eps, omega, eta).map_err(err)?;
    let out = scenario::estimate_max_photons(&input);
    let dict = pyo3::types::PyDict::new_bound(py);
    dict.set_item("n_max", out.n_max)?;
    dict.set_item("t_max", out.t_max)?;
    dict.set_item("t_max_si", out.t_max_si)?;
    dict.set_item("p_max_si", out.p_max_si)?;
    dict.set_item("feasible", out.feasible)?;
    Ok(dict.into())
}

/// Effective modulation depth of an optical parametric drive.
#[pyfunction]
fn opo_modulation_depth(chi1: f64, chi2: f64, e_pump: f64) -> PyResult<f64> {
    scenario::opo_modulation_depth(chi1, chi2, e_pump).map_err(err)
}

// -------------------------------------------------------------- scenarios

/// Run a scenario file or built-in preset; returns
/// (succeeded, failed, json_path).
#[pyfunction]
#[pyo3(signature = (scenario, out_dir=".", jobs=1))]
fn run_scenario(scenario: &str, out_dir: &str, jobs: usize) -> PyResult<(usize, usize, String)> {
    let sc = scenario::resolve_scenario(scenario).map_err(err)?;
    let summary =
        scenario::run_scenario(&sc, std::path::Path::new(out_dir), jobs.max(1)).map_err(err)?;
    Ok((
        summary.succeeded,
        summary.failed,
        summary.json_path.display().to_string(),
    ))
}

#[pymodule]
fn dce_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(to_natural, m)?)?;
    m.add_function(wrap_pyfunction!(susceptibility_1d, m)?)?;
    m.add_function(wrap_pyfunction!(mirror_force_1d, m)?)?;
    m.add_function(wrap_pyfunction!(mirror_force_3d, m)?)?;
    m.add_function(wrap_pyfunction!(radiated_energy_and_rate, m)?)?;
    m.add_function(wrap_pyfunction!(mirror_damping_rate, m)?)?;
    m.add_function(wrap_pyfunction!(mirror_decoherence_time, m)?)?;
    m.add_function(wrap_pyfunction!(coupling_g, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_root, m)?)?;
    m.add_function(wrap_pyfunction!(friction_force, m)?)?;
    m.add_function(wrap_pyfunction!(sheet_wavenumbers, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_max_photons, m)?)?;
    m.add_function(wrap_pyfunction!(opo_modulation_depth, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_class::<PyMooreSolution>()?;
    m.add_class::<PyCavity>()?;
    m.add_class::<PyDielectric>()?;
    m.add_class::<PySheet>()?;
    Ok(())
}
