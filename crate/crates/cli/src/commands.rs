//! The five verbs. Each returns the files it would write, in a fixed order.

use std::path::{Path, PathBuf};

use plasmosense::export::{coupling_csv, modes_csv, spectrum_csv, sweep_csv, to_json};
use plasmosense::response::transmission_spectrum;
use plasmosense::sensing::{
    casimir_force, find_peak_fn, mass_resolution, run_sweep, ReferenceCheck, PUBLISHED_CASIMIR_FORCE,
    PUBLISHED_MASS_RESOLUTION,
};
use plasmosense::PlasmonMode;

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::schema::{CasimirEstimate, Conventions, Metadata, ModeSense, SenseSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Modes,
    Spectrum,
    Transmission,
    Sense,
    Sweep,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Modes => "modes",
            Verb::Spectrum => "spectrum",
            Verb::Transmission => "transmission",
            Verb::Sense => "sense",
            Verb::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub figure_axes: bool,
    pub mode: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub name: String,
    pub contents: String,
}

fn conventions(cfg: &RunConfig, figure_axes: bool) -> Conventions {
    Conventions {
        frequency_units: "rad/s (angular)".into(),
        frequencies_are_ordinary: cfg.frequencies_are_ordinary,
        delta: "delta = omega_pr - omega_pu".into(),
        figure_axis: figure_axes.then(|| "delta_fig = omega_n - omega_pr = Delta - delta".into()),
        transmission_rate: "|t|^2 with t = 1 - 2 kappa a_plus / Omega_pr".into(),
        pump_detuning: cfg.pump_detuning.clone(),
        enhancement: cfg.enhancement.clone(),
        detuning_grid: cfg.grid_source.clone(),
        raman_convention: "polarizability volume, R_SI = 4 pi eps0 sqrt(R^2)".into(),
    }
}

fn base_warnings(cfg: &RunConfig) -> Vec<String> {
    let mut w = Vec::new();
    if cfg.scenario.geometry.nonlocal_warning() {
        w.push(format!(
            "r_m = {} m is below the nonlocal-validity distance; local-response results are unreliable",
            cfg.scenario.geometry.r_m
        ));
    }
    w
}

fn finish(cfg: &RunConfig, verb: Verb, opts: &Options, mut files: Vec<Output>, warnings: Vec<String>) -> Result<Vec<Output>> {
    let meta = Metadata {
        tool: "plasmosense".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: verb.name().into(),
        preset: cfg.preset.clone(),
        conventions: conventions(cfg, opts.figure_axes),
        scenario: cfg.scenario.clone(),
        eta: cfg.eta,
        outputs: files.iter().map(|f| f.name.clone()).collect(),
        warnings,
    };
    files.push(Output { name: format!("{}.meta.json", verb.name()), contents: to_json(&meta)? });
    Ok(files)
}

/// Applies command-line overrides to a resolved configuration.
pub fn apply_options(cfg: &mut RunConfig, opts: &Options) -> Result<()> {
    if let Some(n) = opts.mode {
        if n == 0 {
            return Err(CliError::validation("--mode", "mode index must be >= 1"));
        }
        cfg.scenario.response_modes = vec![n];
        cfg.scenario.n_max = cfg.scenario.n_max.max(n);
    }
    Ok(())
}

pub fn run(cfg: &RunConfig, verb: Verb, opts: &Options) -> Result<Vec<Output>> {
    match verb {
        Verb::Modes => modes(cfg, opts),
        Verb::Spectrum => spectrum(cfg, opts),
        Verb::Transmission => transmission(cfg, opts),
        Verb::Sense => sense(cfg, opts),
        Verb::Sweep => sweep(cfg, opts),
    }
}

fn modes(cfg: &RunConfig, opts: &Options) -> Result<Vec<Output>> {
    let catalog = cfg.scenario.catalog()?;
    let files = vec![Output { name: "modes.csv".into(), contents: modes_csv(&catalog, cfg.omega_p())? }];
    finish(cfg, Verb::Modes, opts, files, base_warnings(cfg))
}

fn spectrum(cfg: &RunConfig, opts: &Options) -> Result<Vec<Output>> {
    let catalog = cfg.scenario.catalog()?;
    let files = vec![Output {
        name: "coupling.csv".into(),
        contents: coupling_csv(&catalog, &cfg.coupling_grid, cfg.omega_p())?,
    }];
    finish(cfg, Verb::Spectrum, opts, files, base_warnings(cfg))
}

fn mode(cfg: &RunConfig, n: u32) -> Result<PlasmonMode> {
    let s = &cfg.scenario;
    Ok(PlasmonMode::new(&s.material, &s.geometry, &s.mech, n)?)
}

fn transmission(cfg: &RunConfig, opts: &Options) -> Result<Vec<Output>> {
    let s = &cfg.scenario;
    let mut files = Vec::new();
    let mut warnings = base_warnings(cfg);
    for &n in &s.response_modes {
        let spec = transmission_spectrum(&mode(cfg, n)?, &s.mech, &s.drive)?;
        warnings.extend(spec.warnings.iter().map(|w| format!("mode {n}: {w}")));
        let bad = spec.points.iter().filter(|p| p.flag.is_some()).count();
        if bad > 0 {
            warnings.push(format!("mode {n}: {bad} grid points hit a response pole"));
        }
        files.push(Output { name: format!("transmission_n{n}.csv"), contents: spectrum_csv(&spec, opts.figure_axes)? });
    }
    finish(cfg, Verb::Transmission, opts, files, warnings)
}

/// Builds the sensing summary without writing anything.
pub fn sense_summary(cfg: &RunConfig) -> Result<(SenseSummary, Vec<String>)> {
    let s = &cfg.scenario;
    let mut warnings = base_warnings(cfg);
    let mut modes = Vec::new();
    for &n in &s.response_modes {
        let m = mode(cfg, n)?;
        let mut mode_warnings = Vec::new();
        let (peak, omega_pu, source) = match cfg.sense.synthetic_width {
            Some(width) => {
                let grid = &s.drive.delta_grid;
                let center = 0.5 * (grid[0] + grid[grid.len() - 1]);
                let h = width / 2.0;
                let f = move |x: f64| 1.0 + h * h / ((x - center).powi(2) + h * h);
                let peak = find_peak_fn(&f, grid, s.peak_window)?;
                (peak, s.drive.rate(s.drive.pump, &m)?, "synthetic")
            }
            None => {
                let run = s.run_mode(n)?;
                mode_warnings.extend(run.spectrum.warnings.iter().cloned());
                (run.peak, run.spectrum.model.omega_pu, "extracted")
            }
        };
        let (fwhm, source) = match cfg.sense.fwhm_override {
            Some(w) => (w, "override"),
            None => (peak.fwhm, source),
        };
        let delta_m = mass_resolution(&s.mech, fwhm)?;
        let mass_check = ReferenceCheck::new("mass_resolution_kg", delta_m, PUBLISHED_MASS_RESOLUTION);
        if mass_check.paper_discrepancy {
            warnings.push(format!(
                "mode {n}: mass resolution {delta_m:e} kg differs from the published {PUBLISHED_MASS_RESOLUTION:e} kg"
            ));
        }
        modes.push(ModeSense {
            n,
            omega_n: m.omega_n,
            omega_pu,
            peak,
            fwhm,
            fwhm_source: source.into(),
            delta_m,
            mass_check,
            warnings: mode_warnings,
        });
    }
    let radius = s.geometry.radius;
    let gap = cfg.sense.casimir_gap;
    let force = casimir_force(radius, gap)?;
    let check = ReferenceCheck::new("casimir_force_n", force.abs(), PUBLISHED_CASIMIR_FORCE);
    if check.paper_discrepancy {
        warnings.push(format!(
            "Casimir force magnitude {:e} N differs from the published {PUBLISHED_CASIMIR_FORCE:e} N",
            force.abs()
        ));
    }
    let summary = SenseSummary { options: cfg.sense.clone(), modes, casimir: CasimirEstimate { radius, gap, force, check } };
    Ok((summary, warnings))
}

fn sense(cfg: &RunConfig, opts: &Options) -> Result<Vec<Output>> {
    let (summary, warnings) = sense_summary(cfg)?;
    let files = vec![Output { name: "sense.json".into(), contents: to_json(&summary)? }];
    finish(cfg, Verb::Sense, opts, files, warnings)
}

fn sweep(cfg: &RunConfig, opts: &Options) -> Result<Vec<Output>> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::validation("sweep", "the sweep command needs a [sweep] section"))?;
    let rows = run_sweep(&cfg.scenario, spec)?;
    let mut warnings = base_warnings(cfg);
    warnings.extend(rows.iter().filter_map(|r| {
        r.error.as_ref().map(|e| format!("{} = {:e}, mode {}: {e}", spec.axis.name(), r.axis_value, r.n))
    }));
    let files = vec![Output { name: "sweep.csv".into(), contents: sweep_csv(spec.axis, &rows)? }];
    finish(cfg, Verb::Sweep, opts, files, warnings)
}

/// Writes outputs into `dir`, creating it if needed.
pub fn write_outputs(dir: &Path, files: &[Output]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    files
        .iter()
        .map(|f| {
            let p = dir.join(&f.name);
            std::fs::write(&p, &f.contents).map_err(|source| CliError::Io { path: p.clone(), source })?;
            Ok(p)
        })
        .collect()
}
