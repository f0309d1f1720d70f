//! Pump-probe response of a single plasmon mode coupled to the mechanical
//! mode: drive strengths, the optomechanical steady state, the linearized
//! probe sideband and the probe transmission.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::error::{Error, Result};
use crate::plasmon::{MechanicalMode, PlasmonMode};

/// Probe-to-pump ratio above which the weak-probe assumption is flagged.
pub const WEAK_PROBE_RATIO: f64 = 0.1;

/// Sideband-to-mean amplitude ratio above which linearization is flagged.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;

/// How a drive strength is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveStrength {
    /// Incident intensity in W/m².
    Intensity(f64),
    /// Coupling rate Ω given directly in rad/s.
    Rate(f64),
}

/// How the pump frequency is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PumpTuning {
    /// Pump on the red mechanical sideband, `Δ = ω_n − ω_pu = ω_m`.
    RedSideband,
    /// Explicit detuning `Δ` in rad/s.
    Detuning(f64),
    /// Explicit pump angular frequency ω_pu in rad/s.
    PumpFrequency(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriveConfig {
    pub pump: DriveStrength,
    pub probe: DriveStrength,
    /// Near-field enhancement `E_m/E_inc`.
    pub enhancement: f64,
    pub tuning: PumpTuning,
    /// Probe-pump detunings `δ = ω_pr − ω_pu` in rad/s, strictly increasing.
    pub delta_grid: Vec<f64>,
}

impl DriveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.enhancement.is_finite() && self.enhancement >= 1.0) {
            return Err(Error::Domain(format!("enhancement factor must be >= 1, got {}", self.enhancement)));
        }
        for (name, d) in [("pump", self.pump), ("probe", self.probe)] {
            let v = match d {
                DriveStrength::Intensity(v) | DriveStrength::Rate(v) => v,
            };
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Domain(format!("{name} strength must be non-negative, got {v}")));
            }
        }
        if self.delta_grid.is_empty() {
            return Err(Error::Domain("detuning grid is empty".into()));
        }
        if self.delta_grid.iter().any(|d| !d.is_finite()) {
            return Err(Error::Domain("detuning grid contains non-finite values".into()));
        }
        if self.delta_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("detuning grid must be strictly increasing".into()));
        }
        Ok(())
    }

    /// Pump detuning Δ for the given mode.
    pub fn pump_detuning(&self, mode: &PlasmonMode, mech: &MechanicalMode) -> f64 {
        match self.tuning {
            PumpTuning::RedSideband => mech.omega_m,
            PumpTuning::Detuning(d) => d,
            PumpTuning::PumpFrequency(w) => mode.omega_n - w,
        }
    }

    pub fn rate(&self, strength: DriveStrength, mode: &PlasmonMode) -> Result<f64> {
        match strength {
            DriveStrength::Intensity(i) => drive_coupling(mode, i, self.enhancement),
            DriveStrength::Rate(r) => Ok(r),
        }
    }
}

/// Drive rate `Ω = κ√(ε₀V/(2ℏω_n))·E_m/2` with `E_m = enhancement·√(2I/(ε₀c))`.
pub fn drive_coupling(mode: &PlasmonMode, intensity: f64, enhancement: f64) -> Result<f64> {
    if !(intensity.is_finite() && intensity >= 0.0) {
        return Err(Error::Domain(format!("intensity must be non-negative, got {intensity}")));
    }
    let e_inc = (2.0 * intensity / (VACUUM_PERMITTIVITY * SPEED_OF_LIGHT)).sqrt();
    let e_m = enhancement * e_inc;
    Ok(mode.kappa * (VACUUM_PERMITTIVITY * mode.mode_volume / (2.0 * HBAR * mode.omega_n)).sqrt() * e_m / 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyState {
    pub a0: Complex64,
    /// Mean photon number `|a₀|²`.
    pub omega0: f64,
    /// Mean mechanical displacement `2gω₀/ω_m`.
    pub n0: f64,
    /// Set when the cubic has more than one non-negative root.
    pub multistable: bool,
    /// All non-negative roots of the cubic, ascending.
    pub roots: Vec<f64>,
}

fn cubic(a: f64, delta: f64, kappa: f64, o2: f64, w: f64) -> f64 {
    let d = delta - a * w;
    w * (d * d + kappa * kappa) - o2
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Non-negative roots of `ω₀[(Δ − aω₀)² + κ²] = Ω²`.
pub fn photon_number_roots(a: f64, delta: f64, kappa: f64, omega_drive: f64) -> Result<Vec<f64>> {
    let o2 = omega_drive * omega_drive;
    if o2 == 0.0 {
        return Ok(vec![0.0]);
    }
    if a == 0.0 {
        return Ok(vec![o2 / (delta * delta + kappa * kappa)]);
    }
    let upper = o2 / (kappa * kappa);
    let mut breaks = vec![0.0];
    let disc = delta * delta - 3.0 * kappa * kappa;
    if disc > 0.0 {
        let s = disc.sqrt();
        for c in [(2.0 * delta - s) / (3.0 * a), (2.0 * delta + s) / (3.0 * a)] {
            if c > 0.0 && c < upper {
                breaks.push(c);
            }
        }
    }
    breaks.push(upper);
    let f = |w: f64| cubic(a, delta, kappa, o2, w);
    let mut roots = Vec::new();
    for pair in breaks.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let (flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 && lo > 0.0 {
            roots.push(lo);
        } else if (flo < 0.0) != (fhi < 0.0) || fhi == 0.0 {
            roots.push(bisect(&f, lo, hi));
        }
    }
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * x.abs().max(y.abs()));
    if roots.is_empty() {
        return Err(Error::Internal("steady-state cubic has no non-negative root".into()));
    }
    Ok(roots)
}

/// Mean-field steady state under pump rate `omega_pu` and pump detuning Δ.
pub fn steady_state(
    mode: &PlasmonMode,
    mech: &MechanicalMode,
    delta_pump: f64,
    omega_pu: f64,
) -> Result<SteadyState> {
    if !(mode.kappa > 0.0) {
        return Err(Error::Domain("plasmon damping must be positive".into()));
    }
    let g = mode.g_op;
    let a = 2.0 * g * g / mech.omega_m;
    let roots = photon_number_roots(a, delta_pump, mode.kappa, omega_pu)?;
    let w = roots[0];
    let n_root = 2.0 * g * w / mech.omega_m;
    let a0 = Complex64::new(omega_pu, 0.0) / Complex64::new(mode.kappa, delta_pump - g * n_root);
    let omega0 = a0.norm_sqr();
    let n0 = 2.0 * g * omega0 / mech.omega_m;
    Ok(SteadyState { a0, omega0, n0, multistable: roots.len() > 1, roots })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeResponse {
    pub delta: f64,
    pub a_plus: Complex64,
    pub a_minus_conj: Complex64,
    pub n_plus: Complex64,
    pub t: Complex64,
    /// `|t|²`.
    pub transmission_rate: f64,
    pub w: Complex64,
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

/// Linearized probe sideband amplitude at probe-pump detuning δ.
///
/// With `w = ω_m² − δ² − iγδ`, `x = κ − iδ`, `y = i(Δ − gn₀)`,
/// `z = 2iω_mω₀g²`: `a₊ = Ω_pr[w(x−y) + z]/[w(x² − y²) + 2yz]`.
pub fn probe_amplitude(
    mode: &PlasmonMode,
    mech: &MechanicalMode,
    ss: &SteadyState,
    delta_pump: f64,
    delta: f64,
    omega_pr: f64,
) -> Result<ProbeResponse> {
    if !(omega_pr.is_finite() && omega_pr > 0.0) {
        return Err(Error::Domain(format!("probe rate must be positive, got {omega_pr}")));
    }
    let i = Complex64::i();
    let g = mode.g_op;
    let wm = mech.omega_m;
    let w = Complex64::new(wm * wm - delta * delta, -mech.gamma_m * delta);
    let x = Complex64::new(mode.kappa, -delta);
    let y = i * (delta_pump - ss.n0 * g);
    let z = i * (2.0 * wm * ss.omega0 * g * g);
    let wxy = w * (x - y) + z;
    let den = w * (x * x - y * y) + 2.0 * y * z;
    let scale = (w * x * x).norm() + (w * y * y).norm() + (y * z).norm();
    if den.norm() <= 1e-14 * scale || wxy.norm() == 0.0 {
        return Err(Error::Pole(format!(
            "probe response pole at delta = {delta} (Delta = {delta_pump}, kappa = {}, g = {g})",
            mode.kappa
        )));
    }
    let a_plus = omega_pr * wxy / den;
    let a_minus_conj = -2.0 * i * wm * g * g * ss.a0.conj() * ss.a0.conj() * a_plus / wxy;
    let n_plus = 2.0 * wm * g * ss.a0.conj() * a_plus * (x - y) / wxy;
    let t = 1.0 - 2.0 * mode.kappa * a_plus / omega_pr;
    Ok(ProbeResponse { delta, a_plus, a_minus_conj, n_plus, t, transmission_rate: t.norm_sqr(), w, x, y, z })
}

/// Everything needed to evaluate the probe response at any detuning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeModel {
    pub mode: PlasmonMode,
    pub mech: MechanicalMode,
    pub steady: SteadyState,
    /// Pump detuning Δ in rad/s.
    pub delta_pump: f64,
    pub omega_pu: f64,
    pub omega_pr: f64,
}

impl ProbeModel {
    pub fn new(mode: PlasmonMode, mech: MechanicalMode, delta_pump: f64, omega_pu: f64, omega_pr: f64) -> Result<Self> {
        let steady = steady_state(&mode, &mech, delta_pump, omega_pu)?;
        Ok(Self { mode, mech, steady, delta_pump, omega_pu, omega_pr })
    }

    pub fn response(&self, delta: f64) -> Result<ProbeResponse> {
        probe_amplitude(&self.mode, &self.mech, &self.steady, self.delta_pump, delta, self.omega_pr)
    }

    /// `|t(δ)|²`, NaN at a pole.
    pub fn transmission_rate(&self, delta: f64) -> f64 {
        self.response(delta).map_or(f64::NAN, |r| r.transmission_rate)
    }

    /// `|a₊|/|a₀|` at δ, `None` without a pump.
    pub fn perturbative_ratio(&self, delta: f64) -> Option<f64> {
        let a0 = self.steady.a0.norm();
        if a0 == 0.0 {
            return None;
        }
        self.response(delta).ok().map(|r| r.a_plus.norm() / a0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub delta: f64,
    pub t: Complex64,
    pub t_sq: f64,
    /// Non-empty when the point could not be evaluated.
    pub flag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSpectrum {
    pub model: ProbeModel,
    pub points: Vec<SpectrumPoint>,
    /// Largest `|a₊|/|a₀|` over the grid.
    pub max_perturbative_ratio: Option<f64>,
    pub warnings: Vec<String>,
}

impl ProbeSpectrum {
    pub fn deltas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.delta).collect()
    }

    pub fn t_sq(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t_sq).collect()
    }
}

/// Probe transmission over the detuning grid of `drive`.
pub fn transmission_spectrum(mode: &PlasmonMode, mech: &MechanicalMode, drive: &DriveConfig) -> Result<ProbeSpectrum> {
    drive.validate()?;
    let omega_pu = drive.rate(drive.pump, mode)?;
    let omega_pr = drive.rate(drive.probe, mode)?;
    let delta_pump = drive.pump_detuning(mode, mech);
    let model = ProbeModel::new(*mode, *mech, delta_pump, omega_pu, omega_pr)?;

    let mut warnings = Vec::new();
    if let (DriveStrength::Intensity(_), DriveStrength::Intensity(_)) = (drive.pump, drive.probe) {
        if omega_pu == 0.0 || omega_pr / omega_pu >= WEAK_PROBE_RATIO {
            warnings.push(format!(
                "probe not weak: Omega_pr/Omega_pu = {}",
                if omega_pu == 0.0 { f64::INFINITY } else { omega_pr / omega_pu }
            ));
        }
    }
    if model.steady.multistable {
        warnings.push(format!("multistable steady state, roots {:?}; smallest used", model.steady.roots));
    }

    let points: Vec<SpectrumPoint> = drive
        .delta_grid
        .par_iter()
        .map(|&delta| match model.response(delta) {
            Ok(r) => SpectrumPoint { delta, t: r.t, t_sq: r.transmission_rate, flag: None },
            Err(e) => SpectrumPoint {
                delta,
                t: Complex64::new(f64::NAN, f64::NAN),
                t_sq: f64::NAN,
                flag: Some(e.to_string()),
            },
        })
        .collect();

    let max_ratio = if model.steady.a0.norm() == 0.0 {
        None
    } else {
        let a0 = model.steady.a0.norm();
        drive
            .delta_grid
            .iter()
            .filter_map(|&d| model.response(d).ok())
            .map(|r| r.a_plus.norm() / a0)
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
    };
    if let Some(r) = max_ratio {
        if r > PERTURBATIVE_LIMIT {
            warnings.push(format!("linearization questionable: max |a+|/|a0| = {r}"));
        }
    }
    Ok(ProbeSpectrum { model, points, max_perturbative_ratio: max_ratio, warnings })
}

/// Uniform grid of `count` points on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|k| lo + step * k as f64).collect()
}
