//! Photon creation in a three-dimensional cavity with one oscillating
//! wall (the z = Lz cap moving as Lz [1 + eps sin(Omega t)]).
//!
//! Two routes are provided. `integrate_modes` steps the first-order
//! coupled mode equations directly; `msa_evolve` integrates the
//! multiple-scale slow-amplitude equations, where only resonant terms
//! survive the averaging. Bogoliubov coefficients and photon numbers are
//! extracted once the wall has stopped.

use crate::domain::modes::{CavityGeometry, ModeIndex, Polarization};
use crate::domain::motion::MotionProfile;
use crate::error::{Error, Result};
use crate::numerics::expm::{expm, CMatrix};
use crate::numerics::ode::{integrate, OdeOptions};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Relative tolerance for resonance conditions on the spectrum.
pub const TAU_RES: f64 = 1e-9;

/// Intermode coupling coefficient for the Dirichlet (sine) z-basis,
/// g = (-1)^(mz+jz) 2 mz jz / (jz^2 - mz^2) for mz != jz, zero on the
/// diagonal.
pub fn coupling_g(mz: u32, jz: u32) -> Result<f64> {
    if mz == 0 || jz == 0 {
        return Err(Error::Domain(
            "the sine basis starts at index 1; use coupling_g_tm for the cosine basis".into(),
        ));
    }
    if mz == jz {
        return Ok(0.0);
    }
    let (m, j) = (mz as f64, jz as f64);
    let sign = if (mz + jz) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * 2.0 * m * j / (j * j - m * m))
}

/// Antisymmetrized coupling for the TM (cosine) z-basis, which includes
/// the nz = 0 mode.
pub fn coupling_g_tm(mz: u32, jz: u32) -> f64 {
    if mz == jz {
        return 0.0;
    }
    let parity = |k: u32| if k % 2 == 0 { 1.0 } else { -1.0 };
    if mz == 0 {
        parity(jz) * FRAC_1_SQRT_2
    } else if jz == 0 {
        -parity(mz) * FRAC_1_SQRT_2
    } else {
        let (m, j) = (mz as f64, jz as f64);
        parity(mz + jz) * (m * m + j * j) / (j * j - m * m)
    }
}

/// Coupling between two full mode indices: zero unless the polarization
/// and transverse indices agree.
pub fn coupling_between(m: ModeIndex, j: ModeIndex) -> Result<f64> {
    if m.pol != j.pol || m.nx != j.nx || m.ny != j.ny {
        return Ok(0.0);
    }
    match m.pol {
        Polarization::Tm => Ok(coupling_g_tm(m.nz, j.nz)),
        _ => coupling_g(m.nz, j.nz),
    }
}

/// Diagonal drive strength d_m: kz^2 for scalar and TE modes,
/// 2 omega^2 - kz^2 for TM modes.
fn drive_strength(geom: &CavityGeometry, m: ModeIndex, omega_m: f64) -> f64 {
    let kz = geom.k_z(m);
    match m.pol {
        Polarization::Scalar | Polarization::Te => kz * kz,
        Polarization::Tm => 2.0 * omega_m * omega_m - kz * kz,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResonanceClass {
    /// At least one mode sits at Omega = 2 omega and nothing couples to it.
    Uncoupled,
    /// The resonantly connected component of the coupling graph.
    CoupledSet(Vec<ModeIndex>),
    OffResonance,
}

#[derive(Debug, Clone)]
pub struct ResonanceReport {
    /// Modes with 2 omega_m = Omega.
    pub resonant: Vec<ModeIndex>,
    /// Pairs with |omega_m +- omega_j| = Omega and nonzero coupling.
    pub coupled_pairs: Vec<(ModeIndex, ModeIndex)>,
    pub classification: ResonanceClass,
    /// Near-misses within 10x the resonance tolerance.
    pub warnings: Vec<String>,
}

/// Scan the spectrum (indices up to `search_bound`) for parametric
/// resonances and resonant intermode couplings at drive frequency Omega.
pub fn find_resonances(
    geom: &CavityGeometry,
    omega_drive: f64,
    pol: Polarization,
    search_bound: u32,
) -> Result<ResonanceReport> {
    if omega_drive <= 0.0 {
        return Err(Error::Validation("drive frequency must be positive".into()));
    }
    let mut modes = Vec::new();
    for nx in 0..=search_bound {
        for ny in 0..=search_bound {
            for nz in 0..=search_bound {
                let m = ModeIndex::new(pol, nx, ny, nz);
                if geom.check_mode(m).is_ok() {
                    modes.push((m, geom.omega(m)?));
                }
            }
        }
    }
    let tol = TAU_RES * omega_drive;
    let mut warnings = Vec::new();
    let mut resonant = Vec::new();
    for &(m, w) in &modes {
        let miss = (2.0 * w - omega_drive).abs();
        if miss <= tol {
            resonant.push(m);
        } else if miss <= 10.0 * tol {
            warnings.push(format!(
                "mode {m} misses the parametric resonance by {miss:.3e} (within 10x tolerance)"
            ));
        }
    }
    let mut coupled_pairs = Vec::new();
    for (i, &(m, wm)) in modes.iter().enumerate() {
        for &(j, wj) in &modes[i + 1..] {
            if coupling_between(m, j)? == 0.0 {
                continue;
            }
            let sum_miss = (wm + wj - omega_drive).abs();
            let diff_miss = ((wm - wj).abs() - omega_drive).abs();
            if sum_miss <= tol || diff_miss <= tol {
                coupled_pairs.push((m, j));
            } else if sum_miss <= 10.0 * tol || diff_miss <= 10.0 * tol {
                warnings.push(format!(
                    "pair {m}, {j} misses a coupling resonance within 10x tolerance"
                ));
            }
        }
    }
    let classification = if resonant.is_empty() && coupled_pairs.is_empty() {
        ResonanceClass::OffResonance
    } else {
        // connected component of the resonant modes under the pair graph
        let mut set: Vec<ModeIndex> = resonant.clone();
        let mut grew = true;
        while grew {
            grew = false;
            for &(a, b) in &coupled_pairs {
                if set.contains(&a) && !set.contains(&b) {
                    set.push(b);
                    grew = true;
                }
                if set.contains(&b) && !set.contains(&a) {
                    set.push(a);
                    grew = true;
                }
            }
        }
        if set.len() <= resonant.len() && coupled_pairs.is_empty() {
            ResonanceClass::Uncoupled
        } else if set.len() == resonant.len() {
            // pairs exist but none touch a resonant mode
            ResonanceClass::Uncoupled
        } else {
            set.sort();
            ResonanceClass::CoupledSet(set)
        }
    };
    Ok(ResonanceReport {
        resonant,
        coupled_pairs,
        classification,
        warnings,
    })
}

/// Mode amplitudes Q_m^(n) and their velocities for each seed mode n.
#[derive(Debug, Clone)]
pub struct ModeAmplitudeState {
    pub modes: Vec<ModeIndex>,
    pub omegas: Vec<f64>,
    /// Seed rows, as indices into `modes`.
    pub seeds: Vec<usize>,
    /// q[seed][mode]
    pub q: Vec<Vec<Complex64>>,
    pub qdot: Vec<Vec<Complex64>>,
    pub t: f64,
    pub motion_stopped: bool,
}

fn first_order_rhs(
    t: f64,
    y: &[f64],
    dy: &mut [f64],
    omegas: &[f64],
    drives: &[f64],
    g: &[f64],
    profile: &MotionProfile,
) {
    let k = omegas.len();
    let eps = profile.eps;
    let big_omega = profile.omega;
    let (s, c, on) = if profile.drive_active(t) {
        ((big_omega * t).sin(), (big_omega * t).cos(), true)
    } else {
        (0.0, 0.0, false)
    };
    // layout: y[4m..4m+4] = [Re Q, Im Q, Re Qdot, Im Qdot]
    for m in 0..k {
        let (qr, qi, vr, vi) = (y[4 * m], y[4 * m + 1], y[4 * m + 2], y[4 * m + 3]);
        let w2 = omegas[m] * omegas[m];
        let mut ar = -w2 * qr;
        let mut ai = -w2 * qi;
        if on {
            ar += 2.0 * eps * drives[m] * s * qr;
            ai += 2.0 * eps * drives[m] * s * qi;
            for j in 0..k {
                let gmj = g[m * k + j];
                if gmj == 0.0 {
                    continue;
                }
                ar += -eps * big_omega * big_omega * s * gmj * y[4 * j]
                    + 2.0 * eps * big_omega * c * gmj * y[4 * j + 2];
                ai += -eps * big_omega * big_omega * s * gmj * y[4 * j + 1]
                    + 2.0 * eps * big_omega * c * gmj * y[4 * j + 3];
            }
        }
        dy[4 * m] = vr;
        dy[4 * m + 1] = vi;
        dy[4 * m + 2] = ar;
        dy[4 * m + 3] = ai;
    }
}

/// Integrate the first-order coupled mode equations for the given seeds
/// (all seeds must belong to the truncation set).
pub fn integrate_modes(
    geom: &CavityGeometry,
    profile: &MotionProfile,
    seeds: &[ModeIndex],
    set: &[ModeIndex],
    t_final: f64,
) -> Result<ModeAmplitudeState> {
    geom.validate()?;
    if set.is_empty() {
        return Err(Error::Validation("empty truncation set".into()));
    }
    let mut modes = set.to_vec();
    modes.sort();
    modes.dedup();
    let seed_idx: Vec<usize> = seeds
        .iter()
        .map(|s| {
            modes.iter().position(|m| m == s).ok_or_else(|| {
                Error::Precondition(format!("seed mode {s} is not in the truncation set"))
            })
        })
        .collect::<Result<_>>()?;
    let omegas: Vec<f64> = modes.iter().map(|&m| geom.omega(m)).collect::<Result<_>>()?;
    let drives: Vec<f64> = modes
        .iter()
        .zip(&omegas)
        .map(|(&m, &w)| drive_strength(geom, m, w))
        .collect();
    let k = modes.len();
    let mut g = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            g[a * k + b] = coupling_between(modes[a], modes[b])?;
        }
    }

    let opts = OdeOptions {
        rel_tol: 1e-10,
        abs_tol: 1e-13,
        ..OdeOptions::default()
    };
    let mut q = Vec::with_capacity(seed_idx.len());
    let mut qdot = Vec::with_capacity(seed_idx.len());
    for &s in &seed_idx {
        let mut y = vec![0.0; 4 * k];
        y[4 * s] = 1.0 / (2.0 * omegas[s]).sqrt();
        y[4 * s + 3] = -(omegas[s] / 2.0).sqrt();
        // split at the drive switch-off so the integrator never steps
        // across the kink in the right-hand side
        let mut segments = vec![t_final];
        if let Some(te) = profile.t_end {
            if te > 0.0 && te < t_final {
                segments.insert(0, te);
            }
        }
        let mut t0 = 0.0;
        for &t1 in &segments {
            integrate(
                |t, y, dy| first_order_rhs(t, y, dy, &omegas, &drives, &g, profile),
                t0,
                t1,
                &mut y,
                &opts,
                None,
            )?;
            t0 = t1;
        }
        q.push(
            (0..k)
                .map(|m| Complex64::new(y[4 * m], y[4 * m + 1]))
                .collect(),
        );
        qdot.push(
            (0..k)
                .map(|m| Complex64::new(y[4 * m + 2], y[4 * m + 3]))
                .collect(),
        );
    }
    Ok(ModeAmplitudeState {
        modes,
        omegas,
        seeds: seed_idx,
        q,
        qdot,
        t: t_final,
        motion_stopped: !profile.drive_active(t_final) || profile.eps == 0.0,
    })
}

/// Bogoliubov matrices (alpha, beta), indexed [seed][mode].
pub fn extract_bogoliubov(
    state: &ModeAmplitudeState,
) -> Result<(Vec<Vec<Complex64>>, Vec<Vec<Complex64>>)> {
    if !state.motion_stopped {
        return Err(Error::Precondition(
            "Bogoliubov extraction requires the wall at rest".into(),
        ));
    }
    let i = Complex64::new(0.0, 1.0);
    let t = state.t;
    let mut alpha = Vec::with_capacity(state.seeds.len());
    let mut beta = Vec::with_capacity(state.seeds.len());
    for (qrow, vrow) in state.q.iter().zip(&state.qdot) {
        let mut arow = Vec::with_capacity(state.modes.len());
        let mut brow = Vec::with_capacity(state.modes.len());
        for (m, (&qm, &vm)) in qrow.iter().zip(vrow).enumerate() {
            let w = state.omegas[m];
            let a = ((-i * w * t).exp()) * (qm + vm / (i * w)) / 2.0;
            let b = ((i * w * t).exp()) * (qm - vm / (i * w)) / 2.0;
            let norm = (2.0 * w).sqrt();
            arow.push(norm * b); // alpha_nm
            brow.push(norm * a); // beta_nm
        }
        alpha.push(arow);
        beta.push(brow);
    }
    Ok((alpha, beta))
}

/// Per-mode photon numbers <N_m> = sum_n |beta_nm|^2 from a set of seed
/// rows covering the initially populated modes.
pub fn photon_numbers_from_beta(beta: &[Vec<Complex64>]) -> Vec<f64> {
    if beta.is_empty() {
        return Vec::new();
    }
    let k = beta[0].len();
    (0..k)
        .map(|m| beta.iter().map(|row| row[m].norm_sqr()).sum())
        .collect()
}

/// Slow amplitudes (A, B) per seed after multiple-scale averaging.
#[derive(Debug, Clone)]
pub struct SlowAmplitudeState {
    pub modes: Vec<ModeIndex>,
    pub omegas: Vec<f64>,
    /// a[seed][mode], b[seed][mode]; seeds run over all modes in order.
    pub a: Vec<Vec<Complex64>>,
    pub b: Vec<Vec<Complex64>>,
    pub t: f64,
    pub warnings: Vec<String>,
}

impl SlowAmplitudeState {
    /// <N_m> = sum_n 2 omega_m |A_m^(n)|^2.
    pub fn photon_numbers(&self) -> Vec<f64> {
        (0..self.modes.len())
            .map(|m| {
                2.0 * self.omegas[m]
                    * self.a.iter().map(|row| row[m].norm_sqr()).sum::<f64>()
            })
            .collect()
    }
}

/// Build the real generator of the slow-amplitude system on the state
/// [B_1..B_K, A_1..A_K]; the true evolution is exp(eps * M * t).
fn msa_generator(
    geom: &CavityGeometry,
    omega_drive: f64,
    modes: &[ModeIndex],
    omegas: &[f64],
) -> Result<(Vec<f64>, Vec<String>)> {
    let k = modes.len();
    let tol = TAU_RES * omega_drive;
    let mut gen = vec![0.0; 4 * k * k]; // (2K)^2
    let dim = 2 * k;
    let mut warnings = Vec::new();
    let add = |row: usize, col: usize, v: f64, gen: &mut Vec<f64>| {
        gen[row * dim + col] += v;
    };
    for m in 0..k {
        let wm = omegas[m];
        let dm = drive_strength(geom, modes[m], wm);
        let miss = (2.0 * wm - omega_drive).abs();
        if miss <= tol {
            // B rows are 0..K, A rows are K..2K
            add(k + m, m, -dm / (2.0 * wm), &mut gen);
            add(m, k + m, -dm / (2.0 * wm), &mut gen);
        } else if miss <= 10.0 * tol {
            warnings.push(format!(
                "mode {} near-misses the diagonal resonance (off by {miss:.3e})",
                modes[m]
            ));
        }
        for j in 0..k {
            if j == m {
                continue;
            }
            let gmj = coupling_between(modes[m], modes[j])?;
            if gmj == 0.0 {
                continue;
            }
            let wj = omegas[j];
            let pref = omega_drive / (2.0 * wm) * gmj;
            let sum_miss = (wm + wj - omega_drive).abs();
            let dplus_miss = (wm - wj - omega_drive).abs();
            let dminus_miss = (wm - wj + omega_drive).abs();
            if sum_miss <= tol {
                let c = (-wj + omega_drive / 2.0) * pref;
                add(k + m, j, c, &mut gen); // dA_m <- B_j
                add(m, k + j, c, &mut gen); // dB_m <- A_j
            } else if sum_miss <= 10.0 * tol {
                warnings.push(format!(
                    "pair {}, {} near-misses the sum resonance",
                    modes[m], modes[j]
                ));
            }
            let mut scatter = 0.0;
            if dplus_miss <= tol {
                scatter += (wj + omega_drive / 2.0) * pref;
            } else if dplus_miss <= 10.0 * tol {
                warnings.push(format!(
                    "pair {}, {} near-misses a scattering resonance",
                    modes[m], modes[j]
                ));
            }
            if dminus_miss <= tol {
                scatter += (wj - omega_drive / 2.0) * pref;
            } else if dminus_miss <= 10.0 * tol {
                warnings.push(format!(
                    "pair {}, {} near-misses a scattering resonance",
                    modes[m], modes[j]
                ));
            }
            if scatter != 0.0 {
                add(k + m, k + j, scatter, &mut gen); // dA_m <- A_j
                add(m, j, scatter, &mut gen); // dB_m <- B_j
            }
        }
    }
    Ok((gen, warnings))
}

/// Evolve the slow amplitudes to tFinal by dense matrix exponential.
/// Every mode of the set is used as a seed.
pub fn msa_evolve(
    geom: &CavityGeometry,
    profile: &MotionProfile,
    set: &[ModeIndex],
    t_final: f64,
) -> Result<SlowAmplitudeState> {
    msa_evolve_impl(geom, profile, set, t_final, false)
}

/// Same evolution through the adaptive ODE path; kept as an independent
/// cross-check of the matrix exponential.
pub fn msa_evolve_ode(
    geom: &CavityGeometry,
    profile: &MotionProfile,
    set: &[ModeIndex],
    t_final: f64,
) -> Result<SlowAmplitudeState> {
    msa_evolve_impl(geom, profile, set, t_final, true)
}

fn msa_evolve_impl(
    geom: &CavityGeometry,
    profile: &MotionProfile,
    set: &[ModeIndex],
    t_final: f64,
    use_ode: bool,
) -> Result<SlowAmplitudeState> {
    geom.validate()?;
    if set.is_empty() {
        return Err(Error::Validation("empty mode set".into()));
    }
    let mut modes = set.to_vec();
    modes.sort();
    modes.dedup();
    let omegas: Vec<f64> = modes.iter().map(|&m| geom.omega(m)).collect::<Result<_>>()?;
    let k = modes.len();
    let dim = 2 * k;
    let (gen, warnings) = msa_generator(geom, profile.omega, &modes, &omegas)?;
    // the drive only acts inside its window
    let t_on = profile
        .t_end
        .map_or(t_final, |te| te.min(t_final))
        .max(0.0);

    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    if use_ode {
        for s in 0..k {
            let mut y = vec![0.0; dim];
            y[s] = 1.0 / (2.0 * omegas[s]).sqrt();
            let opts = OdeOptions {
                rel_tol: 1e-12,
                abs_tol: 1e-16,
                ..OdeOptions::default()
            };
            integrate(
                |_t, y, dy| {
                    for r in 0..dim {
                        let mut acc = 0.0;
                        for c in 0..dim {
                            acc += gen[r * dim + c] * y[c];
                        }
                        dy[r] = profile.eps * acc;
                    }
                },
                0.0,
                t_on,
                &mut y,
                &opts,
                None,
            )?;
            b.push((0..k).map(|m| Complex64::new(y[m], 0.0)).collect());
            a.push((0..k).map(|m| Complex64::new(y[k + m], 0.0)).collect());
        }
    } else {
        let mut mat = CMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                mat.set(r, c, Complex64::new(profile.eps * t_on * gen[r * dim + c], 0.0));
            }
        }
        let prop = expm(&mat);
        for s in 0..k {
            let mut v0 = vec![Complex64::new(0.0, 0.0); dim];
            v0[s] = Complex64::new(1.0 / (2.0 * omegas[s]).sqrt(), 0.0);
            let v = prop.matvec(&v0);
            b.push(v[..k].to_vec());
            a.push(v[k..].to_vec());
        }
    }
    Ok(SlowAmplitudeState {
        modes,
        omegas,
        a,
        b,
        t: t_final,
        warnings,
    })
}

/// Photon number of an uncoupled parametrically resonant mode from the
/// closed-form sinh^2 law. Errors out for coupled modes, whose growth
/// must come from `msa_evolve`.
pub fn photon_number_closed_form(
    geom: &CavityGeometry,
    mode: ModeIndex,
    eps: f64,
    t: f64,
    omega_drive: f64,
) -> Result<f64> {
    geom.check_mode(mode)?;
    let w = geom.omega(mode)?;
    if (2.0 * w - omega_drive).abs() > TAU_RES * omega_drive {
        return Err(Error::Domain(format!(
            "mode {mode} is not parametrically resonant at the given drive"
        )));
    }
    // search for resonant partners within a generous index window
    let bound = mode.nx.max(mode.ny).max(mode.nz) + 8;
    let report = find_resonances(geom, omega_drive, mode.pol, bound)?;
    if report
        .coupled_pairs
        .iter()
        .any(|&(a, b)| a == mode || b == mode)
    {
        return Err(Error::Domain(format!(
            "mode {mode} couples resonantly to other modes; use msa_evolve"
        )));
    }
    let lambda = drive_strength(geom, mode, w) / (2.0 * w);
    Ok((lambda * eps * t).sinh().powi(2))
}

/// Independent oracle for the uncoupled resonance: integrates the
/// parametrically driven oscillator (Mathieu equation) with the vacuum
/// initial data and reads off the photon number.
pub fn mathieu_reference(
    geom: &CavityGeometry,
    mode: ModeIndex,
    eps: f64,
    omega_drive: f64,
    t_final: f64,
) -> Result<f64> {
    geom.check_mode(mode)?;
    let w = geom.omega(mode)?;
    let d = drive_strength(geom, mode, w);
    let opts = OdeOptions {
        rel_tol: 1e-10,
        abs_tol: 1e-13,
        ..OdeOptions::default()
    };
    let mut y = vec![1.0 / (2.0 * w).sqrt(), 0.0, 0.0, -(w / 2.0).sqrt()];
    integrate(
        |t, y, dy| {
            let w2eff = w * w - 2.0 * eps * d * (omega_drive * t).sin();
            dy[0] = y[2];
            dy[1] = y[3];
            dy[2] = -w2eff * y[0];
            dy[3] = -w2eff * y[1];
        },
        0.0,
        t_final,
        &mut y,
        &opts,
        None,
    )?;
    let i = Complex64::new(0.0, 1.0);
    let q = Complex64::new(y[0], y[1]);
    let v = Complex64::new(y[2], y[3]);
    let a = ((-i * w * t_final).exp()) * (q + v / (i * w)) / 2.0;
    Ok(2.0 * w * a.norm_sqr())
}

/// Per-mode report of a photon creation run.
#[derive(Debug, Clone)]
pub struct PhotonReport {
    pub modes: Vec<ModeIndex>,
    pub numbers: Vec<f64>,
    pub growth_rate: Option<f64>,
    pub classification: ResonanceClass,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn cube() -> CavityGeometry {
        CavityGeometry::Rect {
            lx: 1.0,
            ly: 1.0,
            lz: 1.0,
        }
    }

    #[test]
    fn coupling_closed_form_and_quadrature() {
        assert_relative_eq!(coupling_g(1, 2).unwrap(), -4.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(coupling_g(2, 1).unwrap(), 4.0 / 3.0, max_relative = 1e-14);
        assert_eq!(coupling_g(3, 3).unwrap(), 0.0);
        // oracle: g = L * int_0^L dz (d phi_m / dL) phi_j for the
        // normalized sine basis phi_m = sqrt(2/L) sin(m pi z / L)
        let l = 1.37f64;
        let rule = crate::numerics::quad::GaussRule::new(60);
        for (m, j) in [(1u32, 2u32), (2, 5), (3, 4)] {
            let (mf, jf) = (m as f64, j as f64);
            let dphi_dl = |z: f64| {
                let s = (2.0 / l).sqrt();
                -0.5 / l * s * (mf * PI * z / l).sin()
                    - s * (mf * PI * z / l).cos() * mf * PI * z / (l * l)
            };
            let phi_j = |z: f64| (2.0 / l).sqrt() * (jf * PI * z / l).sin();
            let num = l * rule.integrate(0.0, l, |z| dphi_dl(z) * phi_j(z));
            assert_relative_eq!(num, coupling_g(m, j).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn tm_coupling_is_antisymmetric() {
        for m in 0..6u32 {
            for j in 0..6u32 {
                let a = coupling_g_tm(m, j);
                let b = coupling_g_tm(j, m);
                assert_relative_eq!(a, -b, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn cube_scalar_resonance_structure() {
        let omega = 2.0 * 3.0f64.sqrt() * PI;
        let rep = find_resonances(&cube(), omega, Polarization::Scalar, 6).unwrap();
        assert_eq!(rep.resonant, vec![ModeIndex::scalar(1, 1, 1)]);
        assert!(rep
            .coupled_pairs
            .contains(&(ModeIndex::scalar(1, 1, 1), ModeIndex::scalar(1, 1, 5))));
        match &rep.classification {
            ResonanceClass::CoupledSet(set) => {
                assert!(set.contains(&ModeIndex::scalar(1, 1, 5)));
            }
            other => panic!("expected a coupled set, got {other:?}"),
        }
    }

    #[test]
    fn cube_te_degenerate_uncoupled() {
        let g = cube();
        let w101 = g.omega(ModeIndex::new(Polarization::Te, 1, 0, 1)).unwrap();
        let rep = find_resonances(&g, 2.0 * w101, Polarization::Te, 5).unwrap();
        assert_eq!(rep.resonant.len(), 2); // (1,0,1) and (0,1,1)
        assert_eq!(rep.classification, ResonanceClass::Uncoupled);
    }

    #[test]
    fn te_tm_cubic_degeneracy() {
        let g = cube();
        let te = g.omega(ModeIndex::new(Polarization::Te, 1, 0, 1)).unwrap();
        let tm = g.omega(ModeIndex::new(Polarization::Tm, 1, 1, 0)).unwrap();
        assert_relative_eq!(te, tm, max_relative = 1e-14);
        assert_relative_eq!(te, 2.0f64.sqrt() * PI, max_relative = 1e-14);
    }

    #[test]
    fn free_evolution_reproduces_phases() {
        let g = cube();
        let m = ModeIndex::scalar(1, 1, 1);
        let profile = MotionProfile::harmonic_length(1.0, 0.0, 1.0, 0.0, Some(2.0)).unwrap();
        let st = integrate_modes(&g, &profile, &[m], &[m], 3.0).unwrap();
        let w = g.omega(m).unwrap();
        let expect = Complex64::from_polar(1.0 / (2.0 * w).sqrt(), -w * 3.0);
        let got = st.q[0][0];
        assert_relative_eq!(got.re, expect.re, epsilon = 1e-8);
        assert_relative_eq!(got.im, expect.im, epsilon = 1e-8);
        let (alpha, beta) = extract_bogoliubov(&st).unwrap();
        assert_relative_eq!(alpha[0][0].norm(), 1.0, epsilon = 1e-8);
        assert!(beta[0][0].norm() < 1e-8);
    }

    #[test]
    fn mathieu_validates_closed_form() {
        let g = cube();
        let m = ModeIndex::new(Polarization::Te, 1, 0, 1);
        let w = g.omega(m).unwrap();
        let eps = 1e-3;
        // eps * omega * t = 0.3
        let t = 0.3 / (eps * w);
        let closed = photon_number_closed_form(&g, m, eps, t, 2.0 * w).unwrap();
        let oracle = mathieu_reference(&g, m, eps, 2.0 * w, t).unwrap();
        assert_relative_eq!(oracle, closed, max_relative = 0.05);
        assert!(closed > 1e-4);
    }

    #[test]
    fn detuned_drive_suppresses_growth() {
        let g = cube();
        let m = ModeIndex::new(Polarization::Te, 1, 0, 1);
        let w = g.omega(m).unwrap();
        let eps = 1e-2;
        let t = 0.5 / (eps * w);
        let resonant = mathieu_reference(&g, m, eps, 2.0 * w, t).unwrap();
        let detuned = mathieu_reference(&g, m, eps, 2.2 * w, t).unwrap();
        assert!(detuned < 0.5 * resonant);
    }

    #[test]
    fn uncoupled_msa_matches_sinh_law() {
        // non-cubic box so the resonant scalar mode has no partners
        let g = CavityGeometry::Rect {
            lx: 2.3,
            ly: 2.7,
            lz: 1.0,
        };
        let m = ModeIndex::scalar(1, 1, 1);
        let w = g.omega(m).unwrap();
        let eps = 1e-3;
        let t = 0.4 / (eps * w);
        let profile =
            MotionProfile::harmonic_length(1.0, eps, 2.0 * w, 0.0, Some(t)).unwrap();
        let st = msa_evolve(&g, &profile, &[m], t).unwrap();
        let n = st.photon_numbers()[0];
        let closed = photon_number_closed_form(&g, m, eps, t, 2.0 * w).unwrap();
        assert_relative_eq!(n, closed, max_relative = 1e-10);
    }

    #[test]
    fn msa_matrix_and_ode_routes_agree() {
        let g = cube();
        let set = [ModeIndex::scalar(1, 1, 1), ModeIndex::scalar(1, 1, 5)];
        let w = g.omega(set[0]).unwrap();
        let eps = 1e-3;
        let t = 3.0 / (eps * w);
        let profile =
            MotionProfile::harmonic_length(1.0, eps, 2.0 * w, 0.0, Some(t)).unwrap();
        let a = msa_evolve(&g, &profile, &set, t).unwrap();
        let b = msa_evolve_ode(&g, &profile, &set, t).unwrap();
        for s in 0..set.len() {
            for m in 0..set.len() {
                assert_relative_eq!(
                    a.a[s][m].re,
                    b.a[s][m].re,
                    max_relative = 1e-8,
                    epsilon = 1e-10
                );
                assert_relative_eq!(
                    a.b[s][m].re,
                    b.b[s][m].re,
                    max_relative = 1e-8,
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn coupled_mode_rejects_closed_form() {
        let g = cube();
        let m = ModeIndex::scalar(1, 1, 1);
        let w = g.omega(m).unwrap();
        let err = photon_number_closed_form(&g, m, 1e-3, 1.0, 2.0 * w);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn eps_zero_msa_is_constant() {
        let g = cube();
        let set = [ModeIndex::scalar(1, 1, 1), ModeIndex::scalar(1, 1, 5)];
        let w = g.omega(set[0]).unwrap();
        let profile = MotionProfile::harmonic_length(1.0, 0.0, 2.0 * w, 0.0, None).unwrap();
        let st = msa_evolve(&g, &profile, &set, 100.0).unwrap();
        let n = st.photon_numbers();
        assert!(n.iter().all(|&x| x.abs() < 1e-14));
    }
}
