//! Run configuration: TOML layout, presets and resolution into model inputs.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use plasmosense::plasmon::raman_element_from_a4_per_amu;
use plasmosense::response::{linear_grid, DriveStrength, PumpTuning};
use plasmosense::{
    AnisotropicMaterial, DriveConfig, DrudeModel, Geometry, MechanicalMode, Scenario, SweepAxis, SweepSpec,
};

use crate::error::{CliError, Result};
use crate::units::{to_si, Dimension, Quantity};

pub const DEFAULT_ENHANCEMENT: f64 = 10.0;
pub const DEFAULT_CASIMIR_GAP: f64 = 3e-9;
/// Half-width of the default detuning window in units of γ_m.
pub const DEFAULT_GRID_HALF_WIDTH: f64 = 20.0;
pub const DEFAULT_GRID_POINTS: usize = 2001;

const SILVER_ISO: &str = include_str!("../presets/silver-iso.toml");
const ANISO_01: &str = include_str!("../presets/aniso-AR0.1.toml");
const ANISO_001: &str = include_str!("../presets/aniso-AR0.01.toml");
const ANISO_0002: &str = include_str!("../presets/aniso-AR0.002.toml");

/// Plasma frequency used by the `-caption` preset variants.
const CAPTION_OMEGA_P: &str = "[material]\nomega_p = { value = 0.19, units = \"Prad/s\" }\n";

pub const PRESET_NAMES: &[&str] = &[
    "silver-iso",
    "aniso-AR0.1",
    "aniso-AR0.01",
    "aniso-AR0.002",
    "silver-iso-caption",
    "aniso-AR0.1-caption",
    "aniso-AR0.01-caption",
    "aniso-AR0.002-caption",
];

/// Keys that replace each other when a file is layered over a preset.
const EXCLUSIVE: &[(&str, &[&str])] = &[
    ("material", &["ar_inf", "tangential"]),
    ("mechanics", &["raman_squared", "raman_element"]),
    ("drive", &["pump_intensity", "pump_rate"]),
    ("drive", &["probe_intensity", "probe_rate"]),
    ("drive", &["pump_detuning", "pump_frequency"]),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub preset: Option<String>,
    #[serde(default)]
    pub frequencies_are_ordinary: bool,
    pub output_dir: Option<PathBuf>,
    pub material: RawMaterial,
    pub geometry: RawGeometry,
    pub mechanics: RawMechanics,
    pub drive: RawDrive,
    #[serde(default)]
    pub modes: RawModes,
    #[serde(default)]
    pub spectrum: RawSpectrum,
    #[serde(default)]
    pub sense: RawSense,
    pub sweep: Option<RawSweep>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMaterial {
    pub eps_inf: f64,
    pub omega_p: Quantity,
    pub gamma_p: Quantity,
    pub ar_inf: Option<f64>,
    /// Independent tangential Drude parameters (general two-Drude material).
    pub tangential: Option<RawDrude>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDrude {
    pub eps_inf: f64,
    pub omega_p: Quantity,
    pub gamma_p: Quantity,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGeometry {
    pub radius: Quantity,
    pub r_m: Quantity,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMechanics {
    pub omega_m: Quantity,
    pub gamma_m: Quantity,
    pub mass: Quantity,
    /// Raman activity `R̄²` in `A^4/amu`, polarizability-volume convention.
    pub raman_squared: Option<Quantity>,
    /// Raman tensor element already in SI (`units = "SI"`).
    pub raman_element: Option<Quantity>,
    /// Quantum yield; carried as metadata only.
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDrive {
    pub pump_intensity: Option<Quantity>,
    pub pump_rate: Option<Quantity>,
    pub probe_intensity: Option<Quantity>,
    pub probe_rate: Option<Quantity>,
    pub enhancement: Option<f64>,
    pub pump_detuning: Option<Quantity>,
    pub pump_frequency: Option<Quantity>,
    pub grid: Option<RawGrid>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrid {
    pub start: Quantity,
    pub stop: Quantity,
    pub points: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModes {
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    #[serde(default = "default_response")]
    pub response: Vec<u32>,
}

fn default_n_max() -> u32 {
    4
}

fn default_response() -> Vec<u32> {
    vec![1]
}

impl Default for RawModes {
    fn default() -> Self {
        Self { n_max: default_n_max(), response: default_response() }
    }
}

/// Coupling-spectrum grid in units of the radial plasma frequency.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpectrum {
    #[serde(default = "default_spectrum_start")]
    pub start: f64,
    #[serde(default = "default_spectrum_stop")]
    pub stop: f64,
    #[serde(default = "default_spectrum_points")]
    pub points: usize,
}

fn default_spectrum_start() -> f64 {
    0.02
}

fn default_spectrum_stop() -> f64 {
    0.6
}

fn default_spectrum_points() -> usize {
    5801
}

impl Default for RawSpectrum {
    fn default() -> Self {
        Self { start: default_spectrum_start(), stop: default_spectrum_stop(), points: default_spectrum_points() }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSense {
    pub fwhm_override: Option<Quantity>,
    pub casimir_gap: Option<Quantity>,
    /// Replace the probe spectrum by a unit Lorentzian of this width.
    pub synthetic_width: Option<Quantity>,
    pub window: Option<RawWindow>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawWindow {
    pub start: Quantity,
    pub stop: Quantity,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSweep {
    pub axis: String,
    pub values: Vec<f64>,
    pub units: Option<String>,
}

/// Where a value the model needs but the inputs may omit came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assumed {
    pub value: f64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SenseOptions {
    pub fwhm_override: Option<f64>,
    pub casimir_gap: f64,
    pub synthetic_width: Option<f64>,
}

/// Fully validated run inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub frequencies_are_ordinary: bool,
    pub output_dir: Option<PathBuf>,
    pub scenario: Scenario,
    pub eta: Option<f64>,
    pub enhancement: Assumed,
    pub pump_detuning: Option<Assumed>,
    pub grid_source: String,
    /// Coupling-spectrum frequencies in rad/s.
    pub coupling_grid: Vec<f64>,
    pub sense: SenseOptions,
    pub sweep: Option<SweepSpec>,
}

impl RunConfig {
    pub fn omega_p(&self) -> f64 {
        self.scenario.material.radial.omega_p
    }
}

/// Preset source text by name.
pub fn preset_text(name: &str) -> Option<String> {
    let (base, caption) = match name.strip_suffix("-caption") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let text = match base {
        "silver-iso" => SILVER_ISO,
        "aniso-AR0.1" => ANISO_01,
        "aniso-AR0.01" => ANISO_001,
        "aniso-AR0.002" => ANISO_0002,
        _ => return None,
    };
    if caption {
        let mut t: Table = text.parse().ok()?;
        merge(&mut t, CAPTION_OMEGA_P.parse().ok()?);
        Some(toml::to_string(&t).ok()?)
    } else {
        Some(text.to_string())
    }
}

fn merge(base: &mut Table, over: Table) {
    for (section, keys) in EXCLUSIVE {
        if let (Some(Value::Table(b)), Some(Value::Table(o))) = (base.get_mut(*section), over.get(*section)) {
            if keys.iter().any(|k| o.contains_key(*k)) {
                for k in *keys {
                    if !o.contains_key(*k) {
                        b.remove(*k);
                    }
                }
            }
        }
    }
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(Value::Table(b)), Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

fn parse_table(text: &str, origin: &str) -> Result<Table> {
    text.parse::<Table>().map_err(|e| CliError::validation(origin, format!("not valid TOML: {e}")))
}

/// Layers the optional config text over the chosen preset and resolves it.
/// `preset_flag` wins over a `preset` key in the file.
pub fn load(config_text: Option<&str>, preset_flag: Option<&str>) -> Result<RunConfig> {
    let user = match config_text {
        Some(t) => parse_table(t, "<config>")?,
        None => Table::new(),
    };
    let file_preset = match user.get("preset") {
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(CliError::validation("preset", "must be a string")),
        None => None,
    };
    let preset = preset_flag.map(str::to_string).or(file_preset);
    if config_text.is_none() && preset.is_none() {
        return Err(CliError::validation("<root>", "no configuration given; pass --config or --preset"));
    }
    let mut table = match &preset {
        Some(name) => {
            let text = preset_text(name).ok_or_else(|| {
                CliError::validation("preset", format!("unknown preset {name:?}; available: {PRESET_NAMES:?}"))
            })?;
            parse_table(&text, "preset")?
        }
        None => Table::new(),
    };
    merge(&mut table, user);
    if let Some(name) = &preset {
        table.insert("preset".into(), Value::String(name.clone()));
    }
    let raw: RawConfig = serde_path_to_error::deserialize(Value::Table(table)).map_err(|e| {
        let mut path = e.path().to_string();
        let message = e.into_inner().to_string();
        let message = message.lines().next().unwrap_or_default().to_string();
        if let Some(field) = message.strip_prefix("missing field `").and_then(|m| m.split('`').next()) {
            path = if path == "." { field.to_string() } else { format!("{path}.{field}") };
        }
        CliError::validation(if path == "." { "<root>".to_string() } else { path }, message)
    })?;
    resolve(raw)
}

/// Reads and resolves a config file.
pub fn load_file(path: Option<&Path>, preset_flag: Option<&str>) -> Result<RunConfig> {
    let text = match path {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?),
        None => None,
    };
    load(text.as_deref(), preset_flag)
}

struct Ctx {
    ordinary: bool,
}

impl Ctx {
    fn q(&self, path: &str, q: &Quantity, dim: Dimension) -> Result<f64> {
        to_si(q, dim, self.ordinary).map_err(|m| CliError::validation(format!("{path}.units"), m))
    }

    fn positive(&self, path: &str, q: &Quantity, dim: Dimension) -> Result<f64> {
        let v = self.q(path, q, dim)?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(CliError::validation(format!("{path}.value"), format!("must be positive, got {}", q.value)))
        }
    }
}

fn check<T>(path: &str, r: plasmosense::Result<T>) -> Result<T> {
    r.map_err(|e| CliError::validation(path, e.to_string()))
}

fn drude(ctx: &Ctx, path: &str, eps_inf: f64, omega_p: &Quantity, gamma_p: &Quantity) -> Result<DrudeModel> {
    let wp = ctx.positive(&format!("{path}.omega_p"), omega_p, Dimension::Frequency)?;
    let gp = ctx.q(&format!("{path}.gamma_p"), gamma_p, Dimension::Frequency)?;
    check(path, DrudeModel::new(eps_inf, wp, gp))
}

fn strength(ctx: &Ctx, which: &str, intensity: &Option<Quantity>, rate: &Option<Quantity>) -> Result<DriveStrength> {
    match (intensity, rate) {
        (Some(i), None) => {
            let v = ctx.q(&format!("drive.{which}_intensity"), i, Dimension::Intensity)?;
            if v < 0.0 {
                return Err(CliError::validation(format!("drive.{which}_intensity.value"), "must be non-negative"));
            }
            Ok(DriveStrength::Intensity(v))
        }
        (None, Some(r)) => {
            let v = ctx.q(&format!("drive.{which}_rate"), r, Dimension::Frequency)?;
            if v < 0.0 {
                return Err(CliError::validation(format!("drive.{which}_rate.value"), "must be non-negative"));
            }
            Ok(DriveStrength::Rate(v))
        }
        (None, None) => Err(CliError::validation(
            format!("drive.{which}_intensity"),
            format!("missing; give {which}_intensity or {which}_rate"),
        )),
        (Some(_), Some(_)) => Err(CliError::validation(
            format!("drive.{which}_rate"),
            format!("conflicts with drive.{which}_intensity"),
        )),
    }
}

fn resolve(raw: RawConfig) -> Result<RunConfig> {
    let ctx = Ctx { ordinary: raw.frequencies_are_ordinary };

    let m = &raw.material;
    let radial = drude(&ctx, "material", m.eps_inf, &m.omega_p, &m.gamma_p)?;
    let material = match (&m.ar_inf, &m.tangential) {
        (Some(ar), None) => check("material.ar_inf", AnisotropicMaterial::from_radial(radial, *ar))?,
        (None, Some(t)) => {
            AnisotropicMaterial::general(radial, drude(&ctx, "material.tangential", t.eps_inf, &t.omega_p, &t.gamma_p)?)
        }
        (None, None) => return Err(CliError::validation("material.ar_inf", "missing; give ar_inf or [material.tangential]")),
        (Some(_), Some(_)) => return Err(CliError::validation("material.tangential", "conflicts with material.ar_inf")),
    };

    let g = &raw.geometry;
    let radius = ctx.positive("geometry.radius", &g.radius, Dimension::Length)?;
    let r_m = ctx.positive("geometry.r_m", &g.r_m, Dimension::Length)?;
    let geometry = check("geometry.r_m", Geometry::new(radius, r_m))?;

    let k = &raw.mechanics;
    let omega_m = ctx.positive("mechanics.omega_m", &k.omega_m, Dimension::Frequency)?;
    let gamma_m = ctx.positive("mechanics.gamma_m", &k.gamma_m, Dimension::Frequency)?;
    let mass = ctx.positive("mechanics.mass", &k.mass, Dimension::Mass)?;
    let raman = match (&k.raman_squared, &k.raman_element) {
        (Some(q), None) => {
            if q.units.trim() != "A^4/amu" {
                return Err(CliError::validation(
                    "mechanics.raman_squared.units",
                    format!("expected \"A^4/amu\", got {:?}", q.units),
                ));
            }
            check("mechanics.raman_squared", raman_element_from_a4_per_amu(q.value))?
        }
        (None, Some(q)) => {
            if q.units.trim() != "SI" {
                return Err(CliError::validation(
                    "mechanics.raman_element.units",
                    format!("expected \"SI\", got {:?}", q.units),
                ));
            }
            q.value
        }
        (None, None) => {
            return Err(CliError::validation("mechanics.raman_squared", "missing; give raman_squared or raman_element"))
        }
        (Some(_), Some(_)) => {
            return Err(CliError::validation("mechanics.raman_element", "conflicts with mechanics.raman_squared"))
        }
    };
    let mech = check("mechanics", MechanicalMode::new(omega_m, gamma_m, mass, raman))?;
    if let Some(eta) = k.eta {
        if !(eta.is_finite() && eta >= 0.0) {
            return Err(CliError::validation("mechanics.eta", format!("must be non-negative, got {eta}")));
        }
    }

    let d = &raw.drive;
    let pump = strength(&ctx, "pump", &d.pump_intensity, &d.pump_rate)?;
    let probe = strength(&ctx, "probe", &d.probe_intensity, &d.probe_rate)?;
    let enhancement = match d.enhancement {
        Some(e) => Assumed { value: e, source: "config".into() },
        None => Assumed { value: DEFAULT_ENHANCEMENT, source: "default".into() },
    };
    let (tuning, pump_detuning) = match (&d.pump_detuning, &d.pump_frequency) {
        (None, None) => (
            PumpTuning::RedSideband,
            Some(Assumed { value: omega_m, source: "default: red mechanical sideband, Delta = omega_m".into() }),
        ),
        (Some(q), None) => {
            let v = ctx.q("drive.pump_detuning", q, Dimension::Frequency)?;
            (PumpTuning::Detuning(v), Some(Assumed { value: v, source: "config".into() }))
        }
        (None, Some(q)) => (PumpTuning::PumpFrequency(ctx.positive("drive.pump_frequency", q, Dimension::Frequency)?), None),
        (Some(_), Some(_)) => {
            return Err(CliError::validation("drive.pump_frequency", "conflicts with drive.pump_detuning"))
        }
    };
    let (delta_grid, grid_source) = match &d.grid {
        Some(gr) => {
            let a = ctx.q("drive.grid.start", &gr.start, Dimension::Frequency)?;
            let b = ctx.q("drive.grid.stop", &gr.stop, Dimension::Frequency)?;
            if gr.points < 2 {
                return Err(CliError::validation("drive.grid.points", "need at least 2 points"));
            }
            if !(b > a) {
                return Err(CliError::validation("drive.grid.stop", "must exceed drive.grid.start"));
            }
            (linear_grid(a, b, gr.points), "config".to_string())
        }
        None => {
            let c = -omega_m;
            let h = DEFAULT_GRID_HALF_WIDTH * gamma_m;
            (
                linear_grid(c - h, c + h, DEFAULT_GRID_POINTS),
                format!(
                    "default: {DEFAULT_GRID_POINTS} points on -omega_m +/- {DEFAULT_GRID_HALF_WIDTH} gamma_m"
                ),
            )
        }
    };
    let drive = DriveConfig { pump, probe, enhancement: enhancement.value, tuning, delta_grid };
    check("drive.enhancement", drive.validate())?;

    if raw.modes.n_max == 0 {
        return Err(CliError::validation("modes.n_max", "empty mode range; n_max must be at least 1"));
    }
    if raw.modes.response.is_empty() {
        return Err(CliError::validation("modes.response", "select at least one mode"));
    }
    if let Some(bad) = raw.modes.response.iter().find(|&&n| n == 0) {
        return Err(CliError::validation("modes.response", format!("mode index must be >= 1, got {bad}")));
    }

    let peak_window = match &raw.sense.window {
        Some(w) => {
            let a = ctx.q("sense.window.start", &w.start, Dimension::Frequency)?;
            let b = ctx.q("sense.window.stop", &w.stop, Dimension::Frequency)?;
            if !(b > a) {
                return Err(CliError::validation("sense.window.stop", "must exceed sense.window.start"));
            }
            (a, b)
        }
        None => (drive.delta_grid[0], *drive.delta_grid.last().unwrap_or(&drive.delta_grid[0])),
    };

    let scenario = Scenario {
        material,
        geometry,
        mech,
        drive,
        response_modes: raw.modes.response.clone(),
        n_max: raw.modes.n_max,
        peak_window,
    };
    check("<root>", scenario.validate())?;

    let sp = &raw.spectrum;
    if !(sp.start > 0.0 && sp.stop > sp.start && sp.stop.is_finite()) {
        return Err(CliError::validation("spectrum", "need 0 < start < stop (units of omega_p)"));
    }
    if sp.points < 2 {
        return Err(CliError::validation("spectrum.points", "need at least 2 points"));
    }
    let coupling_grid = linear_grid(sp.start * radial.omega_p, sp.stop * radial.omega_p, sp.points);

    let s = &raw.sense;
    let sense = SenseOptions {
        fwhm_override: s
            .fwhm_override
            .as_ref()
            .map(|q| ctx.positive("sense.fwhm_override", q, Dimension::Frequency))
            .transpose()?,
        casimir_gap: s
            .casimir_gap
            .as_ref()
            .map(|q| ctx.positive("sense.casimir_gap", q, Dimension::Length))
            .transpose()?
            .unwrap_or(DEFAULT_CASIMIR_GAP),
        synthetic_width: s
            .synthetic_width
            .as_ref()
            .map(|q| ctx.positive("sense.synthetic_width", q, Dimension::Frequency))
            .transpose()?,
    };

    let sweep = raw.sweep.as_ref().map(|sw| sweep_spec(&ctx, sw)).transpose()?;

    Ok(RunConfig {
        preset: raw.preset,
        frequencies_are_ordinary: raw.frequencies_are_ordinary,
        output_dir: raw.output_dir,
        scenario,
        eta: raw.mechanics.eta,
        enhancement,
        pump_detuning,
        grid_source,
        coupling_grid,
        sense,
        sweep,
    })
}

fn sweep_spec(ctx: &Ctx, sw: &RawSweep) -> Result<SweepSpec> {
    let (axis, dim) = match sw.axis.as_str() {
        "ar_inf" => (SweepAxis::ArInf, None),
        "r_m" => (SweepAxis::Distance, Some(Dimension::Length)),
        "radius" => (SweepAxis::Radius, Some(Dimension::Length)),
        "pump_intensity" => (SweepAxis::PumpIntensity, Some(Dimension::Intensity)),
        "n" => (SweepAxis::Mode, None),
        other => {
            return Err(CliError::validation(
                "sweep.axis",
                format!("unknown axis {other:?}; expected ar_inf, r_m, radius, pump_intensity or n"),
            ))
        }
    };
    let values = match (dim, &sw.units) {
        (Some(dim), Some(u)) => sw
            .values
            .iter()
            .map(|&v| ctx.q("sweep", &Quantity { value: v, units: u.clone() }, dim))
            .collect::<Result<Vec<_>>>()?,
        (Some(_), None) => return Err(CliError::validation("sweep.units", format!("axis {} needs units", sw.axis))),
        (None, Some(u)) if u.trim() != "1" => {
            return Err(CliError::validation("sweep.units", format!("axis {} is dimensionless", sw.axis)))
        }
        (None, _) => sw.values.clone(),
    };
    let spec = SweepSpec { axis, values };
    check("sweep.values", spec.validate())?;
    Ok(spec)
}
