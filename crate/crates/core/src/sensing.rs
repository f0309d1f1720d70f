//! Spectrum analytics: peak statistics, mass resolution, the sphere-plate
//! Casimir estimate and parameter sweeps.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::material::AnisotropicMaterial;
use crate::plasmon::{mode_catalog, Geometry, MechanicalMode, PlasmonMode};
use crate::response::{transmission_spectrum, DriveConfig, DriveStrength, ProbeSpectrum};

/// Fewest grid points accepted inside a peak window.
pub const MIN_WINDOW_POINTS: usize = 16;

/// Relative difference above which a computed value is flagged against a
/// published one.
pub const DISCREPANCY_THRESHOLD: f64 = 0.10;

/// Published minimum measurable mass for the reference parameters, in kg.
pub const PUBLISHED_MASS_RESOLUTION: f64 = 1.2e-24;
/// Published sphere-plate Casimir force magnitude for R = 10 nm, h = 3 nm, in N.
pub const PUBLISHED_CASIMIR_FORCE: f64 = 9e-27;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakStats {
    /// Peak position (rad/s).
    pub center: f64,
    pub height: f64,
    /// Full width at half maximum above the baseline (rad/s).
    pub fwhm: f64,
    pub baseline: f64,
    /// Half-maximum crossings.
    pub left: f64,
    pub right: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (a.abs() + b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn bisect_level(f: &dyn Fn(f64) -> f64, level: f64, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if f(mid) > level {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}

/// Peak statistics of a response sampled on `grid` and available as the
/// continuous function `f`, restricted to `window = (lo, hi)`.
///
/// The sampled maximum is refined on `f`; the half-maximum crossings are
/// located by bisection on `f`. The baseline is the median of the outermost
/// 10% of window points.
pub fn find_peak_fn(f: &dyn Fn(f64) -> f64, grid: &[f64], window: (f64, f64)) -> Result<PeakStats> {
    let (lo, hi) = window;
    if !(lo < hi) {
        return Err(Error::Domain(format!("peak window must satisfy lo < hi, got ({lo}, {hi})")));
    }
    let xs: Vec<f64> = grid.iter().copied().filter(|x| *x >= lo && *x <= hi).collect();
    if xs.len() < MIN_WINDOW_POINTS {
        return Err(Error::Domain(format!(
            "peak window holds {} grid points, need at least {MIN_WINDOW_POINTS}",
            xs.len()
        )));
    }
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let (imax, ymax) = ys
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, y)| y.is_finite())
        .fold((usize::MAX, f64::NEG_INFINITY), |acc, (i, y)| if y > acc.1 { (i, y) } else { acc });
    if imax == usize::MAX || imax == 0 || imax == xs.len() - 1 || !(ymax > ys[imax - 1] || ymax > ys[imax + 1]) {
        return Err(Error::NotFound("no interior local maximum in the peak window".into()));
    }

    let edge = ((xs.len() as f64 * 0.05).ceil() as usize).max(1);
    let mut outer: Vec<f64> = ys[..edge].to_vec();
    outer.extend_from_slice(&ys[ys.len() - edge..]);
    let baseline = median(outer.into_iter().filter(|v| v.is_finite()).collect());

    let center = golden_max(f, xs[imax - 1], xs[imax + 1]);
    let height = f(center).max(ymax);
    if !(height > baseline) {
        return Err(Error::NotFound("peak does not rise above the baseline".into()));
    }
    let half = baseline + 0.5 * (height - baseline);

    let left_idx = (0..imax).rev().find(|&k| ys[k] <= half);
    let right_idx = (imax + 1..xs.len()).find(|&k| ys[k] <= half);
    let (Some(li), Some(ri)) = (left_idx, right_idx) else {
        return Err(Error::Truncation("half-maximum not reached on both sides inside the window".into()));
    };
    let left = bisect_level(f, half, xs[li + 1].min(center), xs[li]);
    let right = bisect_level(f, half, xs[ri - 1].max(center), xs[ri]);
    Ok(PeakStats { center, height, fwhm: right - left, baseline, left, right })
}

/// Peak statistics of a probe spectrum; the continuous response is
/// re-evaluated from the stored model.
pub fn find_peak(spectrum: &ProbeSpectrum, window: (f64, f64)) -> Result<PeakStats> {
    let model = &spectrum.model;
    let f = |d: f64| model.transmission_rate(d);
    find_peak_fn(&f, &spectrum.deltas(), window)
}

/// Minimum measurable mass `Δm = 2mΔω/ω_m`.
pub fn mass_resolution(mech: &MechanicalMode, fwhm: f64) -> Result<f64> {
    if !(fwhm.is_finite() && fwhm >= 0.0) {
        return Err(Error::Domain(format!("linewidth must be non-negative, got {fwhm}")));
    }
    Ok(2.0 * mech.mass * fwhm / mech.omega_m)
}

/// Sphere-plate Casimir force `−π³ℏcR/(360h³)` (attractive, negative).
pub fn casimir_force(radius: f64, gap: f64) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0 && gap > 0.0) {
        return Err(Error::Domain(format!("radius and gap must be positive, got ({radius}, {gap})")));
    }
    Ok(-PI.powi(3) * HBAR * SPEED_OF_LIGHT * radius / (360.0 * gap.powi(3)))
}

/// A computed quantity next to a published value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCheck {
    pub quantity: String,
    pub computed: f64,
    pub published: f64,
    pub relative_difference: f64,
    pub paper_discrepancy: bool,
}

impl ReferenceCheck {
    pub fn new(quantity: &str, computed: f64, published: f64) -> Self {
        let relative_difference = (computed - published).abs() / published.abs();
        Self {
            quantity: quantity.to_string(),
            computed,
            published,
            relative_difference,
            paper_discrepancy: relative_difference > DISCREPANCY_THRESHOLD,
        }
    }
}

/// A complete single-point configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub material: AnisotropicMaterial,
    pub geometry: Geometry,
    pub mech: MechanicalMode,
    pub drive: DriveConfig,
    /// Modes whose probe response is computed.
    pub response_modes: Vec<u32>,
    /// Largest multipole in the mode catalog.
    pub n_max: u32,
    /// Window for peak extraction in probe-pump detuning (rad/s).
    pub peak_window: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeRun {
    pub mode: PlasmonMode,
    pub spectrum: ProbeSpectrum,
    pub peak: PeakStats,
    pub delta_m: f64,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if self.response_modes.is_empty() {
            return Err(Error::Domain("no response mode selected".into()));
        }
        if self.n_max == 0 {
            return Err(Error::Domain("n_max must be at least 1".into()));
        }
        self.drive.validate()
    }

    pub fn catalog(&self) -> Result<Vec<PlasmonMode>> {
        mode_catalog(&self.material, &self.geometry, &self.mech, self.n_max)
    }

    /// Spectrum, peak and mass resolution for mode `n`.
    pub fn run_mode(&self, n: u32) -> Result<ModeRun> {
        let mode = PlasmonMode::new(&self.material, &self.geometry, &self.mech, n)?;
        let spectrum = transmission_spectrum(&mode, &self.mech, &self.drive)?;
        let peak = find_peak(&spectrum, self.peak_window)?;
        let delta_m = mass_resolution(&self.mech, peak.fwhm)?;
        Ok(ModeRun { mode, spectrum, peak, delta_m })
    }

    /// Copy of this scenario with one parameter replaced.
    pub fn with_axis(&self, axis: SweepAxis, value: f64) -> Result<Scenario> {
        let mut s = self.clone();
        match axis {
            SweepAxis::ArInf => s.material = AnisotropicMaterial::from_radial(self.material.radial, value)?,
            SweepAxis::Distance => s.geometry = Geometry::new(self.geometry.radius, value)?,
            SweepAxis::Radius => s.geometry = Geometry::new(value, self.geometry.r_m)?,
            SweepAxis::PumpIntensity => s.drive.pump = DriveStrength::Intensity(value),
            SweepAxis::Mode => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= f64::from(u32::MAX)) {
                    return Err(Error::Domain(format!("mode index must be a positive integer, got {value}")));
                }
                s.response_modes = vec![value as u32];
            }
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    ArInf,
    /// Center-to-ribbon distance r_m.
    Distance,
    Mode,
    PumpIntensity,
    Radius,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::ArInf => "ar_inf",
            SweepAxis::Distance => "r_m",
            SweepAxis::Mode => "n",
            SweepAxis::PumpIntensity => "pump_intensity",
            SweepAxis::Radius => "radius",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::Domain("sweep has no values".into()));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("sweep values must be finite".into()));
        }
        let inc = self.values.windows(2).all(|w| w[1] > w[0]);
        let dec = self.values.windows(2).all(|w| w[1] < w[0]);
        if !(inc || dec) {
            return Err(Error::Domain("sweep values must be strictly monotone".into()));
        }
        Ok(())
    }
}

/// One sweep result row; failed points carry the error text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub axis_value: f64,
    pub n: u32,
    pub omega_n: Option<f64>,
    pub kappa: Option<f64>,
    pub g_op: Option<f64>,
    pub omega_pu: Option<f64>,
    pub peak_center: Option<f64>,
    pub peak_height: Option<f64>,
    pub fwhm: Option<f64>,
    pub baseline: Option<f64>,
    pub delta_m: Option<f64>,
    pub error: Option<String>,
}

fn row(index: usize, axis_value: f64, n: u32, result: Result<ModeRun>) -> SweepRow {
    match result {
        Ok(r) => SweepRow {
            index,
            axis_value,
            n,
            omega_n: Some(r.mode.omega_n),
            kappa: Some(r.mode.kappa),
            g_op: Some(r.mode.g_op),
            omega_pu: Some(r.spectrum.model.omega_pu),
            peak_center: Some(r.peak.center),
            peak_height: Some(r.peak.height),
            fwhm: Some(r.peak.fwhm),
            baseline: Some(r.peak.baseline),
            delta_m: Some(r.delta_m),
            error: None,
        },
        Err(e) => SweepRow {
            index,
            axis_value,
            n,
            omega_n: None,
            kappa: None,
            g_op: None,
            omega_pu: None,
            peak_center: None,
            peak_height: None,
            fwhm: None,
            baseline: None,
            delta_m: None,
            error: Some(e.to_string()),
        },
    }
}

/// Evaluates every sweep point concurrently; rows are ordered by axis index,
/// then mode.
pub fn run_sweep(base: &Scenario, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    base.validate()?;
    spec.validate()?;
    let rows: Vec<Vec<SweepRow>> = spec
        .values
        .par_iter()
        .enumerate()
        .map(|(index, &value)| match base.with_axis(spec.axis, value) {
            Ok(s) => s.response_modes.iter().map(|&n| row(index, value, n, s.run_mode(n))).collect(),
            Err(e) => {
                let modes = if spec.axis == SweepAxis::Mode { vec![0] } else { base.response_modes.clone() };
                modes.into_iter().map(|n| row(index, value, n, Err(e.clone()))).collect()
            }
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lorentz(center: f64, width: f64) -> impl Fn(f64) -> f64 {
        move |x| {
            let h = width / 2.0;
            h * h / ((x - center).powi(2) + h * h)
        }
    }

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
    }

    fn mech() -> MechanicalMode {
        MechanicalMode::new(470e9, 1.9e9, 3e-22, 8.6e-16).unwrap()
    }

    #[test]
    fn lorentzian_width_recovered() {
        let w = 1.9e9;
        let f = lorentz(0.0, w);
        let g = grid(-4000.0 * w, 4000.0 * w, 200_001);
        let p = find_peak_fn(&f, &g, (-4000.0 * w, 4000.0 * w)).unwrap();
        assert_relative_eq!(p.fwhm, w, max_relative = 1e-6);
        assert!(p.left < p.center && p.center < p.right);
        assert!(p.center.abs() < 1e-6 * w);
    }

    #[test]
    fn translation_invariance() {
        let w = 1.0;
        let g = grid(-30.0, 30.0, 6001);
        let f = |x: f64| lorentz(-10.0, w)(x) + lorentz(10.0, w)(x);
        let a = find_peak_fn(&f, &g, (-20.0, 0.0)).unwrap();
        let b = find_peak_fn(&f, &g, (0.0, 20.0)).unwrap();
        assert_relative_eq!(a.fwhm, b.fwhm, max_relative = 1e-9);
        assert_relative_eq!(a.height, b.height, max_relative = 1e-12);
        assert_relative_eq!(a.center, -b.center, max_relative = 1e-7);
    }

    #[test]
    fn degenerate_inputs() {
        let g = grid(0.0, 1.0, 100);
        assert!(matches!(find_peak_fn(&|x| x, &g, (0.0, 1.0)), Err(Error::NotFound(_))));
        assert!(matches!(find_peak_fn(&|x| x, &g, (0.0, 0.05)), Err(Error::Domain(_))));
        // peak too close to the edge for the left half-maximum
        let f = lorentz(0.02, 0.2);
        assert!(matches!(find_peak_fn(&f, &g, (0.0, 1.0)), Err(Error::Truncation(_))));
    }

    #[test]
    fn grid_robust() {
        let w = 2.0;
        let f = |x: f64| 1.0 + 0.01 * lorentz(0.3, w)(x);
        let a = find_peak_fn(&f, &grid(-60.0, 60.0, 301), (-60.0, 60.0)).unwrap();
        let b = find_peak_fn(&f, &grid(-60.0, 60.0, 601), (-60.0, 60.0)).unwrap();
        assert!((a.fwhm / b.fwhm - 1.0).abs() < 1e-3);
    }

    #[test]
    fn mass_resolution_values() {
        let m = mech();
        assert_eq!(mass_resolution(&m, 0.0).unwrap(), 0.0);
        assert_relative_eq!(mass_resolution(&m, 0.18e9).unwrap(), 2.297_872_340_425_532e-25, max_relative = 1e-14);
        assert_relative_eq!(
            mass_resolution(&m, 0.36e9).unwrap(),
            2.0 * mass_resolution(&m, 0.18e9).unwrap(),
            max_relative = 1e-15
        );
        assert!(mass_resolution(&m, -1.0).is_err());
    }

    #[test]
    fn casimir_values() {
        let f = casimir_force(10e-9, 3e-9).unwrap();
        assert!(f < 0.0);
        assert_relative_eq!(f.abs(), 1.01e-9, max_relative = 0.01);
        let g = casimir_force(10e-9, 1.5e-9).unwrap();
        assert_relative_eq!(g / f, 8.0, max_relative = 1e-14);
        assert!(casimir_force(10e-9, 1e3).unwrap().abs() < 1e-30);
        let check = ReferenceCheck::new("casimir", f.abs(), PUBLISHED_CASIMIR_FORCE);
        assert!(check.paper_discrepancy);
    }

    #[test]
    fn sweep_spec_validation() {
        assert!(SweepSpec { axis: SweepAxis::ArInf, values: vec![] }.validate().is_err());
        assert!(SweepSpec { axis: SweepAxis::ArInf, values: vec![1.0, 0.1, 0.5] }.validate().is_err());
        assert!(SweepSpec { axis: SweepAxis::ArInf, values: vec![1.0, 0.1, 0.01] }.validate().is_ok());
    }
}
