//! Scenario-file driven execution. A scenario is a JSON document naming
//! a verb, a parameter block, optional sweep axes, and an output format;
//! running it dispatches into the physics modules and writes a JSON
//! report (and optionally CSV) with deterministic formatting.
//!
//! Physical parameters are plain numbers in natural units (hbar = c = 1,
//! meters) or objects `{"value": x, "unit": "Hz"}` converted through
//! `domain::units`.

pub mod estimate;
pub mod presets;
pub mod report;

use crate::cavity3d::{self, ResonanceClass};
use crate::domain::modes::{CavityGeometry, ModeIndex, Polarization};
use crate::domain::motion::MotionProfile;
use crate::domain::units::Unit;
use crate::error::{Error, Result};
use crate::friction::{friction_force, DielectricModel, FrictionScenario};
use crate::mirror_vacuum::{self, FieldType, MirrorOscillatorParams, MirrorTrajectory};
use crate::moore1d;
use crate::plasma_sheet::{self, PulseShape, SheetModel};
use serde::Deserialize;
use serde_json::{Map, Value};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

pub use estimate::{estimate_max_photons, opo_modulation_depth, EstimateInput, EstimateResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verb {
    Mirror,
    Moore,
    Cavity,
    Friction,
    Plasma,
    Estimate,
}

impl Verb {
    pub fn as_str(self) -> &'static str {
        match self {
            Verb::Mirror => "mirror",
            Verb::Moore => "moore",
            Verb::Cavity => "cavity",
            Verb::Friction => "friction",
            Verb::Plasma => "plasma",
            Verb::Estimate => "estimate",
        }
    }

    pub fn parse(s: &str) -> Result<Verb> {
        Ok(match s {
            "mirror" => Verb::Mirror,
            "moore" => Verb::Moore,
            "cavity" => Verb::Cavity,
            "friction" => Verb::Friction,
            "plasma" => Verb::Plasma,
            "estimate" => Verb::Estimate,
            other => return Err(Error::Validation(format!("unknown verb '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Both,
}

impl OutputFormat {
    pub fn wants_csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub param: String,
    pub grid: Vec<Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub verb: Verb,
    /// Verb-specific operation selector, for verbs with several.
    #[serde(default)]
    pub op: Option<String>,
    /// Free-text note copied into the report.
    #[serde(default)]
    pub annotation: Option<String>,
    pub params: Map<String, Value>,
    #[serde(default)]
    pub sweep: Vec<SweepAxis>,
    #[serde(default)]
    pub output: OutputSpec,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        let scenario: Scenario = serde_json::from_str(text)?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c))
        {
            return Err(Error::Validation(format!(
                "scenario name '{}' must be a nonempty filename stem",
                self.name
            )));
        }
        let mut seen = Vec::new();
        for axis in &self.sweep {
            if axis.grid.is_empty() {
                return Err(Error::Validation(format!(
                    "sweep axis '{}' has an empty grid",
                    axis.param
                )));
            }
            if seen.contains(&&axis.param) {
                return Err(Error::Validation(format!(
                    "sweep axis '{}' appears twice",
                    axis.param
                )));
            }
            seen.push(&axis.param);
            lookup_path(&self.params, &axis.param).ok_or_else(|| {
                Error::Validation(format!(
                    "sweep axis '{}' does not match a parameter",
                    axis.param
                ))
            })?;
            for v in &axis.grid {
                validate_grid_value(&axis.param, v)?;
            }
        }
        Ok(())
    }
}

fn validate_grid_value(axis: &str, v: &Value) -> Result<()> {
    let finite = |x: &Value| x.as_f64().is_some_and(f64::is_finite);
    let ok = match v {
        Value::Number(_) => finite(v),
        Value::Object(map) => {
            map.len() == 2
                && map.get("value").is_some_and(|x| finite(x))
                && map.get("unit").is_some_and(Value::is_string)
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "sweep axis '{axis}' has a grid entry that is not a finite quantity: {v}"
        )))
    }
}

fn lookup_path<'a>(params: &'a Map<String, Value>, path: &str) -> Option<&'a Value> {
    let mut parts = path.split('.');
    let mut cur = params.get(parts.next()?)?;
    for p in parts {
        cur = cur.as_object()?.get(p)?;
    }
    Some(cur)
}

fn set_path(params: &mut Map<String, Value>, path: &str, value: Value) -> Result<()> {
    let mut parts: Vec<&str> = path.split('.').collect();
    let last = parts.pop().expect("split yields at least one part");
    let mut cur = params;
    for p in parts {
        cur = cur
            .get_mut(p)
            .and_then(Value::as_object_mut)
            .ok_or_else(|| {
                Error::Validation(format!("sweep axis '{path}' does not match a parameter"))
            })?;
    }
    if !cur.contains_key(last) {
        return Err(Error::Validation(format!(
            "sweep axis '{path}' does not match a parameter"
        )));
    }
    cur.insert(last.to_string(), value);
    Ok(())
}

/// Convert a parameter value to natural units: plain numbers pass
/// through, objects `{"value": x, "unit": u}` go through the unit table.
fn quantity(field: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Number(_) => v
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::Validation(format!("parameter '{field}' is not finite"))),
        Value::Object(map) => {
            let raw = map
                .get("value")
                .and_then(Value::as_f64)
                .filter(|x| x.is_finite())
                .ok_or_else(|| {
                    Error::Validation(format!("parameter '{field}' needs a finite 'value'"))
                })?;
            let unit = map
                .get("unit")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Validation(format!("parameter '{field}' needs a 'unit'")))?;
            Ok(Unit::parse(unit)?.to_natural(raw))
        }
        other => Err(Error::Validation(format!(
            "parameter '{field}' must be a number or {{value, unit}}, got {other}"
        ))),
    }
}

struct Params<'a>(&'a Map<String, Value>);

impl Params<'_> {
    fn req(&self, field: &str) -> Result<f64> {
        let v = lookup_path(self.0, field)
            .ok_or_else(|| Error::Validation(format!("missing parameter '{field}'")))?;
        quantity(field, v)
    }

    fn opt(&self, field: &str) -> Result<Option<f64>> {
        match lookup_path(self.0, field) {
            Some(v) => quantity(field, v).map(Some),
            None => Ok(None),
        }
    }

    fn req_u32(&self, field: &str) -> Result<u32> {
        lookup_path(self.0, field)
            .and_then(Value::as_u64)
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| {
                Error::Validation(format!("parameter '{field}' must be a small non-negative integer"))
            })
    }

    fn opt_u32(&self, field: &str, default: u32) -> Result<u32> {
        match lookup_path(self.0, field) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| {
                    Error::Validation(format!(
                        "parameter '{field}' must be a small non-negative integer"
                    ))
                }),
        }
    }

    fn str(&self, field: &str, default: &'static str) -> Result<String> {
        match lookup_path(self.0, field) {
            None => Ok(default.to_string()),
            Some(v) => v
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Validation(format!("parameter '{field}' must be a string"))),
        }
    }

    fn mode_triple(&self, field: &str) -> Result<(u32, u32, u32)> {
        let arr = lookup_path(self.0, field)
            .and_then(Value::as_array)
            .ok_or_else(|| {
                Error::Validation(format!("parameter '{field}' must be an index triple"))
            })?;
        if arr.len() != 3 {
            return Err(Error::Validation(format!(
                "parameter '{field}' must have exactly three indices"
            )));
        }
        let idx = |i: usize| {
            arr[i]
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| {
                    Error::Validation(format!("parameter '{field}[{i}]' must be a mode index"))
                })
        };
        Ok((idx(0)?, idx(1)?, idx(2)?))
    }
}

/// One output row; keys keep insertion order for deterministic reports.
pub type Record = Map<String, Value>;

fn rec(pairs: &[(&str, Value)]) -> Record {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

#[derive(Debug)]
pub struct PointOutcome {
    /// Swept parameter assignments for this point, empty without a sweep.
    pub sweep_values: Map<String, Value>,
    pub result: Result<Vec<Record>>,
}

#[derive(Debug)]
pub struct RunReport {
    pub points: Vec<PointOutcome>,
}

impl RunReport {
    pub fn succeeded(&self) -> usize {
        self.points.iter().filter(|p| p.result.is_ok()).count()
    }

    pub fn failed(&self) -> usize {
        self.points.len() - self.succeeded()
    }
}

/// Run every sweep point of the scenario, with `jobs` worker threads.
/// Per-point numeric failures are captured, not propagated; output order
/// is by point index regardless of execution order.
pub fn execute(scenario: &Scenario, jobs: usize) -> Result<RunReport> {
    scenario.validate()?;
    let points = enumerate_points(scenario)?;
    let jobs = jobs.max(1).min(points.len().max(1));
    let mut slots: Vec<Option<PointOutcome>> = Vec::new();
    slots.resize_with(points.len(), || None);
    if jobs <= 1 {
        for (slot, (sweep_values, params)) in slots.iter_mut().zip(&points) {
            *slot = Some(PointOutcome {
                sweep_values: sweep_values.clone(),
                result: run_point(scenario, params),
            });
        }
    } else {
        let next = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            let workers: Vec<_> = (0..jobs)
                .map(|_| {
                    scope.spawn(|| {
                        let mut done = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= points.len() {
                                return done;
                            }
                            let (sweep_values, params) = &points[i];
                            done.push((
                                i,
                                PointOutcome {
                                    sweep_values: sweep_values.clone(),
                                    result: run_point(scenario, params),
                                },
                            ));
                        }
                    })
                })
                .collect();
            for worker in workers {
                for (i, outcome) in worker.join().expect("worker panicked") {
                    slots[i] = Some(outcome);
                }
            }
        });
    }
    Ok(RunReport {
        points: slots.into_iter().map(|s| s.expect("slot filled")).collect(),
    })
}

type Point = (Map<String, Value>, Map<String, Value>);

fn enumerate_points(scenario: &Scenario) -> Result<Vec<Point>> {
    if scenario.sweep.is_empty() {
        return Ok(vec![(Map::new(), scenario.params.clone())]);
    }
    let total: usize = scenario.sweep.iter().map(|a| a.grid.len()).product();
    let mut points = Vec::with_capacity(total);
    let mut counters = vec![0usize; scenario.sweep.len()];
    for _ in 0..total {
        let mut sweep_values = Map::new();
        let mut params = scenario.params.clone();
        for (axis, &c) in scenario.sweep.iter().zip(&counters) {
            let value = axis.grid[c].clone();
            sweep_values.insert(axis.param.clone(), value.clone());
            set_path(&mut params, &axis.param, value)?;
        }
        points.push((sweep_values, params));
        // odometer increment, last axis fastest
        for i in (0..counters.len()).rev() {
            counters[i] += 1;
            if counters[i] < scenario.sweep[i].grid.len() {
                break;
            }
            counters[i] = 0;
        }
    }
    Ok(points)
}

fn run_point(scenario: &Scenario, params: &Map<String, Value>) -> Result<Vec<Record>> {
    let p = Params(params);
    let op = scenario.op.as_deref();
    match scenario.verb {
        Verb::Mirror => run_mirror(&p, op),
        Verb::Moore => run_moore(&p, op),
        Verb::Cavity => run_cavity(&p, op),
        Verb::Friction => run_friction(&p, op),
        Verb::Plasma => run_plasma(&p, op),
        Verb::Estimate => run_estimate(&p, op),
    }
}

fn unknown_op(verb: &str, op: Option<&str>) -> Error {
    Error::Validation(format!(
        "unknown op '{}' for verb '{verb}'",
        op.unwrap_or("")
    ))
}

fn run_mirror(p: &Params, op: Option<&str>) -> Result<Vec<Record>> {
    match op.unwrap_or("force") {
        "force" => {
            let q0 = p.req("q0")?;
            let omega = p.req("omega")?;
            let damping = p.opt("damping_time")?;
            let t = p.req("t")?;
            let traj = MirrorTrajectory::harmonic(q0, omega, damping)?;
            let mut out = rec(&[
                ("t", t.into()),
                ("force_1d", mirror_vacuum::force_1d(&traj, t)?.into()),
            ]);
            if let Some(area) = p.opt("area")? {
                let field = match p.str("field", "em")?.as_str() {
                    "scalar" => FieldType::Scalar,
                    "em" => FieldType::Em,
                    other => {
                        return Err(Error::Validation(format!("unknown field type '{other}'")));
                    }
                };
                out.insert(
                    "force_3d".into(),
                    mirror_vacuum::force_3d(&traj, area, field, t)?.into(),
                );
            }
            out.insert(
                "chi_im".into(),
                mirror_vacuum::susceptibility_1d(omega).im.into(),
            );
            Ok(vec![out])
        }
        "rate" => {
            let (energy, rate) = mirror_vacuum::radiated_energy_and_rate(
                p.req("q0")?,
                p.req("omega")?,
                p.req("damping_time")?,
                p.req("area")?,
            )?;
            let rate_si = rate * crate::domain::units::C_SI;
            Ok(vec![rec(&[
                ("energy", energy.into()),
                ("rate", rate.into()),
                ("rate_per_second", rate_si.into()),
            ])])
        }
        "decoherence" => {
            let params =
                MirrorOscillatorParams::new(p.req("mass")?, p.req("omega")?, p.req("p0")?)?;
            Ok(vec![rec(&[
                ("damping_rate", mirror_vacuum::damping_rate(&params).into()),
                (
                    "momentum_diffusion",
                    mirror_vacuum::momentum_diffusion(&params).into(),
                ),
                (
                    "decoherence_time",
                    mirror_vacuum::decoherence_time(&params)?.into(),
                ),
            ])])
        }
        other => Err(unknown_op("mirror", Some(other))),
    }
}

fn run_moore(p: &Params, op: Option<&str>) -> Result<Vec<Record>> {
    if op.is_some() && op != Some("trajectory") {
        return Err(unknown_op("moore", op));
    }
    let q = p.req_u32("q")?;
    let eps = p.req("eps")?;
    let l0 = p.opt("l0")?.unwrap_or(1.0);
    let t_max = p.req("t_max")?;
    let samples = p.opt_u32("samples", 512)? as usize;
    if samples < 2 {
        return Err(Error::Validation("need at least two samples".into()));
    }
    let method = p.str("method", "rg")?;
    let sol = match method.as_str() {
        "rg" => moore1d::moore_rg(q, eps, l0)?,
        "numeric" => {
            let omega = q as f64 * std::f64::consts::PI / l0;
            let profile = MotionProfile::harmonic_length(l0, eps, omega, 0.0, None)?;
            moore1d::moore_numeric(profile, t_max)?
        }
        other => {
            return Err(Error::Validation(format!("unknown moore method '{other}'")));
        }
    };
    let mut records = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = t_max * i as f64 / (samples - 1) as f64;
        let d = sol.derivatives(t)?;
        records.push(rec(&[
            ("t", t.into()),
            ("r", d.r.into()),
            ("r_prime", d.r1.into()),
            ("energy", moore1d::intracavity_energy(&sol, t)?.into()),
        ]));
    }
    Ok(records)
}

fn parse_geometry(p: &Params) -> Result<CavityGeometry> {
    let v = lookup_path(p.0, "geometry")
        .ok_or_else(|| Error::Validation("missing parameter 'geometry'".into()))?;
    let geom: CavityGeometry = serde_json::from_value(v.clone())
        .map_err(|e| Error::Validation(format!("bad geometry: {e}")))?;
    geom.validate()?;
    Ok(geom)
}

fn parse_pol(s: &str) -> Result<Polarization> {
    Ok(match s {
        "scalar" => Polarization::Scalar,
        "te" => Polarization::Te,
        "tm" => Polarization::Tm,
        other => {
            return Err(Error::Validation(format!("unknown polarization '{other}'")));
        }
    })
}

fn mode_record(mode: ModeIndex, omega: f64, photons: f64) -> Record {
    rec(&[
        ("pol", mode.pol.tag().into()),
        ("nx", mode.nx.into()),
        ("ny", mode.ny.into()),
        ("nz", mode.nz.into()),
        ("omega", omega.into()),
        ("photons", photons.into()),
    ])
}

fn run_cavity(p: &Params, op: Option<&str>) -> Result<Vec<Record>> {
    let geom = parse_geometry(p)?;
    let pol = parse_pol(&p.str("pol", "scalar")?)?;
    let (nx, ny, nz) = p.mode_triple("mode")?;
    let mode = ModeIndex::new(pol, nx, ny, nz);
    geom.check_mode(mode)?;
    let w = geom.omega(mode)?;
    let omega_drive = p.opt("drive")?.unwrap_or(2.0 * w);
    let eps = p.req("eps")?;
    let t = p.req("t")?;
    match op.unwrap_or("msa") {
        "closed" => {
            let n = cavity3d::photon_number_closed_form(&geom, mode, eps, t, omega_drive)?;
            Ok(vec![mode_record(mode, w, n)])
        }
        "msa" => {
            let bound = nx.max(ny).max(nz) + 6;
            let report = cavity3d::find_resonances(&geom, omega_drive, pol, bound)?;
            let set = match &report.classification {
                ResonanceClass::CoupledSet(set) if set.contains(&mode) => set.clone(),
                _ if report.resonant.contains(&mode) => vec![mode],
                _ => {
                    return Err(Error::Domain(format!(
                        "mode {mode} is not resonant at the drive frequency {omega_drive:.6e}"
                    )));
                }
            };
            let profile =
                MotionProfile::harmonic_length(geom.lz(), eps, omega_drive, 0.0, None)?;
            let state = cavity3d::msa_evolve(&geom, &profile, &set, t)?;
            let numbers = state.photon_numbers();
            Ok(state
                .modes
                .iter()
                .zip(&state.omegas)
                .zip(&numbers)
                .map(|((&m, &wm), &n)| mode_record(m, wm, n))
                .collect())
        }
        other => Err(unknown_op("cavity", Some(other))),
    }
}

fn parse_dielectric(p: &Params) -> Result<DielectricModel> {
    match p.str("model.kind", "drude")?.as_str() {
        "drude" => DielectricModel::drude(p.req("model.omega_p")?, p.req("model.gamma")?),
        "lorentz" => DielectricModel::lorentz(
            p.req("model.omega0")?,
            p.req("model.omega_p")?,
            p.req("model.gamma")?,
        ),
        other => Err(Error::Validation(format!(
            "unknown dielectric model '{other}'"
        ))),
    }
}

fn run_friction(p: &Params, op: Option<&str>) -> Result<Vec<Record>> {
    if op.is_some() && op != Some("force") {
        return Err(unknown_op("friction", op));
    }
    let scenario = FrictionScenario::new(parse_dielectric(p)?, p.req("d")?, p.req("v")?)?;
    let result = friction_force(&scenario)?;
    Ok(vec![rec(&[
        ("force", result.force.into()),
        ("error_estimate", result.error_estimate.into()),
        ("evaluations", (result.evaluations as u64).into()),
    ])])
}

fn run_plasma(p: &Params, op: Option<&str>) -> Result<Vec<Record>> {
    if op.is_some() && op != Some("photons") {
        return Err(unknown_op("plasma", op));
    }
    let v0 = p.req("v0")?;
    let vmax = p.req("vmax")?;
    let lx = p.req("lx")?;
    let ly = p.req("ly")?;
    let lz = p.req("lz")?;
    let (m, my, mz) = p.mode_triple("mode")?;
    let j = p.opt_u32("harmonic", 1)?;
    let t = p.req("t")?;
    if m == 0 {
        return Err(Error::Validation("sheet mode index starts at 1".into()));
    }
    let k0 = *plasma_sheet::sheet_wavenumbers(v0, lx, m as usize)?
        .last()
        .expect("count >= 1");
    let w = (k0 * k0
        + (my as f64 * std::f64::consts::PI / ly).powi(2)
        + (mz as f64 * std::f64::consts::PI / lz).powi(2))
    .sqrt();
    // default period tunes the j-th harmonic to the parametric resonance
    let period = p
        .opt("period")?
        .unwrap_or(std::f64::consts::PI * j as f64 / w);
    let tau_e = p.opt("tau_e")?.unwrap_or(0.05 * period);
    let tau_r = p.opt("tau_r")?.unwrap_or(0.1 * period);
    let model = SheetModel::new(v0, vmax, PulseShape::new(tau_e, period, tau_r)?)?;
    let (eps_n, warnings) = plasma_sheet::modulation_depth(&model, lx, m as usize)?;
    let f_j = model.pulse.fourier_amplitude(j)?;
    let photons =
        plasma_sheet::sheet_photon_number(&model, lx, ly, lz, (m as usize, my, mz), j, t)?;
    let mut out = rec(&[
        ("k0", k0.into()),
        ("omega_bar", w.into()),
        ("period", period.into()),
        ("eps_n", eps_n.into()),
        ("f_j", f_j.into()),
        ("photons", photons.into()),
    ]);
    if !warnings.is_empty() {
        out.insert("warning".into(), warnings.join("; ").into());
    }
    Ok(vec![out])
}

fn run_estimate(p: &Params, op: Option<&str>) -> Result<Vec<Record>> {
    match op.unwrap_or("photons") {
        "photons" => {
            let input = EstimateInput::new(
                p.req("q_factor")?,
                p.req("eps")?,
                p.req("omega")?,
                p.opt("eta")?.unwrap_or(1.0),
            )?;
            let out = estimate_max_photons(&input);
            Ok(vec![rec(&[
                ("n_max", out.n_max.into()),
                ("t_max_s", out.t_max_si.into()),
                ("p_max_w", out.p_max_si.into()),
                ("feasible", out.feasible.into()),
            ])])
        }
        "opo" => {
            let depth =
                opo_modulation_depth(p.req("chi1")?, p.req("chi2")?, p.req("e_pump")?)?;
            Ok(vec![rec(&[("modulation_depth", depth.into())])])
        }
        other => Err(unknown_op("estimate", Some(other))),
    }
}

/// Assemble the JSON report document.
pub fn build_json(scenario: &Scenario, report: &RunReport) -> Value {
    let mut doc = Map::new();
    let mut head = Map::new();
    head.insert("name".into(), scenario.name.clone().into());
    head.insert("verb".into(), scenario.verb.as_str().into());
    if let Some(op) = &scenario.op {
        head.insert("op".into(), op.clone().into());
    }
    if let Some(note) = &scenario.annotation {
        head.insert("annotation".into(), note.clone().into());
    }
    doc.insert("scenario".into(), Value::Object(head));
    doc.insert("git_describe".into(), report::git_describe().into());
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for (i, point) in report.points.iter().enumerate() {
        match &point.result {
            Ok(records) => {
                let mut entry = Map::new();
                entry.insert("point".into(), Value::Object(point.sweep_values.clone()));
                entry.insert(
                    "records".into(),
                    Value::Array(records.iter().cloned().map(Value::Object).collect()),
                );
                results.push(Value::Object(entry));
            }
            Err(err) => {
                let mut entry = Map::new();
                entry.insert("index".into(), (i as u64).into());
                entry.insert("point".into(), Value::Object(point.sweep_values.clone()));
                entry.insert("error".into(), err.to_string().into());
                failures.push(Value::Object(entry));
            }
        }
    }
    doc.insert("results".into(), Value::Array(results));
    doc.insert("failures".into(), Value::Array(failures));
    Value::Object(doc)
}

fn csv_cell_of_sweep(value: &Value) -> Value {
    match value {
        Value::Object(map) => map.get("value").cloned().unwrap_or(Value::Null),
        other => other.clone(),
    }
}

/// Assemble the CSV document, or None when no point succeeded.
pub fn build_csv(scenario: &Scenario, report: &RunReport) -> Result<Option<String>> {
    let first = match report.points.iter().find_map(|p| p.result.as_ref().ok()) {
        Some(records) if !records.is_empty() => &records[0],
        _ => return Ok(None),
    };
    let axis_names: Vec<String> = scenario.sweep.iter().map(|a| a.param.clone()).collect();
    let mut header = axis_names.clone();
    header.extend(first.keys().cloned());
    let mut rows = Vec::new();
    for point in &report.points {
        let Ok(records) = &point.result else {
            continue;
        };
        for record in records {
            let mut row = Vec::with_capacity(header.len());
            for axis in &axis_names {
                row.push(csv_cell_of_sweep(
                    point.sweep_values.get(axis).unwrap_or(&Value::Null),
                ));
            }
            for key in first.keys() {
                row.push(record.get(key).cloned().unwrap_or(Value::Null));
            }
            rows.push(row);
        }
    }
    report::render_csv(&header, &rows).map(Some)
}

#[derive(Debug)]
pub struct RunSummary {
    pub json_path: PathBuf,
    pub csv_path: Option<PathBuf>,
    pub succeeded: usize,
    pub failed: usize,
}

/// Execute a scenario and write its report files into `out_dir`.
pub fn run_scenario(scenario: &Scenario, out_dir: &Path, jobs: usize) -> Result<RunSummary> {
    let report = execute(scenario, jobs)?;
    std::fs::create_dir_all(out_dir)?;
    let json_path = out_dir.join(format!("{}.json", scenario.name));
    report::write_atomic(&json_path, &report::render_json(&build_json(scenario, &report)))?;
    let csv_path = if scenario.output.format.wants_csv() {
        match build_csv(scenario, &report)? {
            Some(doc) => {
                let path = out_dir.join(format!("{}.csv", scenario.name));
                report::write_atomic(&path, &doc)?;
                Some(path)
            }
            None => None,
        }
    } else {
        None
    };
    Ok(RunSummary {
        json_path,
        csv_path,
        succeeded: report.succeeded(),
        failed: report.failed(),
    })
}


/// Load a scenario from a file path or a built-in preset name.
pub fn resolve_scenario(input: &str) -> Result<Scenario> {
    let path = Path::new(input);
    if path.exists() {
        return Scenario::from_json(&std::fs::read_to_string(path)?);
    }
    match presets::preset(input) {
        Some(text) => Scenario::from_json(text),
        None => Err(Error::Validation(format!(
            "'{input}' is neither a scenario file nor a preset ({})",
            presets::PRESET_NAMES.join(", ")
        ))),
    }
}
