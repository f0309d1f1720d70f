//! Localized surface plasmon modes of the (effective) sphere and their
//! optomechanical coupling to a mechanical mode at distance `r_m`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{ANGSTROM, ATOMIC_MASS_UNIT, HBAR, NANOMETER, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::error::{Error, Result};
use crate::material::{effective_mode, AnisotropicMaterial, DrudeModel};
use crate::mie::{mie_bm_exact, mie_bn_exact, MieInputs};
use crate::specfun::{double_factorial, riccati_zeta, sph_hankel1};

/// Below this center distance nonlocal effects are no longer negligible.
pub const NONLOCAL_DISTANCE: f64 = 11.0 * NANOMETER;

/// Default truncation order of the Green's function multipole sum.
pub const DEFAULT_GREENS_NMAX: u32 = 12;

/// Conversion from a Raman element given as a polarizability-volume
/// derivative (m²·kg^{-1/2}) to SI (C·V⁻¹·kg^{-1/2}).
pub const RAMAN_VOLUME_TO_SI: f64 = 4.0 * PI * VACUUM_PERMITTIVITY;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    /// Sphere radius R in meters.
    pub radius: f64,
    /// Center-to-ribbon distance r_m in meters.
    pub r_m: f64,
}

impl Geometry {
    pub fn new(radius: f64, r_m: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {radius}")));
        }
        if !(r_m.is_finite() && r_m > radius) {
            return Err(Error::Domain(format!("r_m ({r_m}) must exceed the radius ({radius})")));
        }
        Ok(Self { radius, r_m })
    }

    /// True when `r_m` is closer than [`NONLOCAL_DISTANCE`].
    pub fn nonlocal_warning(&self) -> bool {
        self.r_m < NONLOCAL_DISTANCE
    }

    /// Surface-to-ribbon gap `r_m − R`.
    pub fn gap(&self) -> f64 {
        self.r_m - self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MechanicalMode {
    /// Mechanical angular frequency ω_m (rad/s).
    pub omega_m: f64,
    /// Mechanical damping rate γ (rad/s).
    pub gamma_m: f64,
    /// Effective mass in kg.
    pub mass: f64,
    /// Raman element R̄ in SI units.
    pub raman_element: f64,
}

impl MechanicalMode {
    pub fn new(omega_m: f64, gamma_m: f64, mass: f64, raman_element: f64) -> Result<Self> {
        for (name, v) in [("omega_m", omega_m), ("gamma_m", gamma_m), ("mass", mass), ("raman_element", raman_element)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { omega_m, gamma_m, mass, raman_element })
    }

    pub fn quality_factor(&self) -> f64 {
        self.omega_m / self.gamma_m
    }

    /// Zero-point displacement scale `√(ℏ/2ω_m)` (units of √(kg)·m).
    pub fn zero_point(&self) -> f64 {
        (HBAR / (2.0 * self.omega_m)).sqrt()
    }
}

/// `R̄` in SI from `R̄²` given in Å⁴/amu.
pub fn raman_element_from_a4_per_amu(r2: f64) -> Result<f64> {
    if !(r2.is_finite() && r2 > 0.0) {
        return Err(Error::Domain(format!("Raman activity must be positive, got {r2}")));
    }
    let r_vol = (r2 * ANGSTROM.powi(4) / ATOMIC_MASS_UNIT).sqrt();
    Ok(RAMAN_VOLUME_TO_SI * r_vol)
}

/// One LSP mode with its damping, mode volume and coupling strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasmonMode {
    pub n: u32,
    pub nu: f64,
    pub drude_eff: DrudeModel,
    pub omega_n: f64,
    pub gamma_ohmic: f64,
    pub gamma_rad: f64,
    pub gamma_total: f64,
    pub kappa: f64,
    /// Mode volume in m³.
    pub mode_volume: f64,
    pub g_op: f64,
}

impl PlasmonMode {
    pub fn new(
        material: &AnisotropicMaterial,
        geometry: &Geometry,
        mech: &MechanicalMode,
        n: u32,
    ) -> Result<Self> {
        let eff = effective_mode(material, n)?;
        let omega_n = lsp_frequency(material, n)?;
        let gamma_rad = radiative_width(material, geometry, n)?;
        let gamma_ohmic = eff.drude_eff.gamma_p;
        let gamma_total = gamma_ohmic + gamma_rad;
        let mode_volume = mode_volume(material, geometry, n)?;
        let g_op = g_from_volume(mech, omega_n, mode_volume);
        Ok(Self {
            n,
            nu: eff.nu,
            drude_eff: eff.drude_eff,
            omega_n,
            gamma_ohmic,
            gamma_rad,
            gamma_total,
            kappa: gamma_total / 2.0,
            mode_volume,
            g_op,
        })
    }

    /// Weight of the coupling spectrum, `∫K_n dω`; equals `g_op/2`.
    pub fn spectral_weight(&self) -> f64 {
        self.g_op / 2.0
    }

    /// Lorentzian coupling spectrum at any real ω.
    pub fn coupling_lorentzian(&self, omega: f64) -> f64 {
        let half = self.gamma_total / 2.0;
        let d = omega - self.omega_n;
        self.spectral_weight() * (self.gamma_total / (2.0 * PI)) / (d * d + half * half)
    }

    /// Coupling spectrum `K_n(ω)` for physical frequencies ω > 0.
    pub fn coupling_spectrum(&self, omega: f64) -> Result<f64> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Domain(format!("omega must be positive, got {omega}")));
        }
        Ok(self.coupling_lorentzian(omega))
    }
}

fn effective_denominator(d: &DrudeModel, n: u32) -> f64 {
    let nf = f64::from(n);
    nf * d.eps_inf + nf + 1.0
}

/// LSP resonance `ω_n = ω_p^ani √(n/(nε_∞^ani + n + 1))`.
pub fn lsp_frequency(material: &AnisotropicMaterial, n: u32) -> Result<f64> {
    let d = effective_mode(material, n)?.drude_eff;
    Ok(d.omega_p * (f64::from(n) / effective_denominator(&d, n)).sqrt())
}

/// Radiation damping rate of the n-th mode.
pub fn radiative_width(material: &AnisotropicMaterial, geometry: &Geometry, n: u32) -> Result<f64> {
    let d = effective_mode(material, n)?.drude_eff;
    let omega_n = lsp_frequency(material, n)?;
    let nf = f64::from(n);
    let ni = i64::from(n);
    let kr = omega_n * geometry.radius / SPEED_OF_LIGHT;
    let df = double_factorial(2 * ni - 1)? * double_factorial(2 * ni + 1)?;
    Ok(omega_n * (2.0 * nf + 1.0) * (nf + 1.0) * kr.powi(2 * n as i32 + 1)
        / (nf * effective_denominator(&d, n) * df))
}

/// Mode volume `8π(nε_∞^ani + n + 1) r_m^{2n+4} / (n(n+1)(2n+1) R^{2n+1})`.
pub fn mode_volume(material: &AnisotropicMaterial, geometry: &Geometry, n: u32) -> Result<f64> {
    let d = effective_mode(material, n)?.drude_eff;
    let nf = f64::from(n);
    let p = 2 * n as i32;
    // ratio form keeps intermediate powers in range
    let ratio = geometry.r_m / geometry.radius;
    Ok(8.0 * PI * effective_denominator(&d, n) * ratio.powi(p + 1) * geometry.r_m.powi(3)
        / (nf * (nf + 1.0) * (2.0 * nf + 1.0)))
}

fn g_from_volume(mech: &MechanicalMode, omega_n: f64, volume: f64) -> f64 {
    mech.raman_element * mech.zero_point() * omega_n / (VACUUM_PERMITTIVITY * volume)
}

/// `g_op = R̄√(ℏ/2ω_m)·ω_n/(ε₀V_n)`.
pub fn coupling_strength(
    material: &AnisotropicMaterial,
    geometry: &Geometry,
    mech: &MechanicalMode,
    n: u32,
) -> Result<f64> {
    let omega_n = lsp_frequency(material, n)?;
    let v = mode_volume(material, geometry, n)?;
    Ok(g_from_volume(mech, omega_n, v))
}

/// Coupling strength written out without the mode volume.
pub fn coupling_strength_explicit(
    material: &AnisotropicMaterial,
    geometry: &Geometry,
    mech: &MechanicalMode,
    n: u32,
) -> Result<f64> {
    let d = effective_mode(material, n)?.drude_eff;
    let omega_n = lsp_frequency(material, n)?;
    let nf = f64::from(n);
    let radius_pow = geometry.radius.powi(2 * n as i32 + 1);
    let rm_pow = geometry.r_m.powi(2 * n as i32 + 4);
    Ok(mech.zero_point() * mech.raman_element * omega_n * nf * (nf + 1.0) * (2.0 * nf + 1.0) * radius_pow
        / (8.0 * PI * VACUUM_PERMITTIVITY * effective_denominator(&d, n) * rm_pow))
}

/// `K_n(ω)` for the n-th mode.
pub fn coupling_spectrum(
    material: &AnisotropicMaterial,
    geometry: &Geometry,
    mech: &MechanicalMode,
    n: u32,
    omega: f64,
) -> Result<f64> {
    PlasmonMode::new(material, geometry, mech, n)?.coupling_spectrum(omega)
}

/// Modes `1..=n_max`.
pub fn mode_catalog(
    material: &AnisotropicMaterial,
    geometry: &Geometry,
    mech: &MechanicalMode,
    n_max: u32,
) -> Result<Vec<PlasmonMode>> {
    if n_max == 0 {
        return Err(Error::Domain("mode catalog needs n_max >= 1".into()));
    }
    (1..=n_max).map(|n| PlasmonMode::new(material, geometry, mech, n)).collect()
}

/// Partial multipole sum of the tangential scattered Green's function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreensSum {
    pub value: Complex64,
    pub n_max: u32,
    /// `|term(n_max)| / |term(n_max − 1)|` (zero when `n_max = 1`).
    pub term_ratio: f64,
    /// `|term(n_max)| / |sum|`.
    pub tail: f64,
    /// Set when the terms stopped decreasing.
    pub truncation_warning: bool,
}

/// Tangential component of the scattered Green's tensor at the ribbon,
/// summed over multipoles `1..=n_max`.
pub fn greens_tangential(
    material: &AnisotropicMaterial,
    geometry: &Geometry,
    omega: f64,
    n_max: u32,
) -> Result<GreensSum> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let x = Complex64::new(omega * geometry.r_m / SPEED_OF_LIGHT, 0.0);
    let pre = Complex64::i() * omega / (8.0 * PI * SPEED_OF_LIGHT);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev = 0.0;
    let mut last = 0.0;
    let mut ratio = 0.0;
    for n in 1..=n_max {
        let inputs = MieInputs::new(geometry.radius, *material, n, omega)?;
        let bn = mie_bn_exact(&inputs)?;
        let bm = mie_bm_exact(&inputs)?;
        let nf = f64::from(n);
        let dz = riccati_zeta(nf, x)?.derivative / x;
        let h = sph_hankel1(nf, x)?;
        let term = pre * (2.0 * nf + 1.0) * (bn * dz * dz + bm * h * h);
        sum += term;
        last = term.norm();
        if n > 1 {
            ratio = if prev > 0.0 { last / prev } else { f64::INFINITY };
        }
        prev = last;
    }
    let tail = if sum.norm() > 0.0 { last / sum.norm() } else { 0.0 };
    Ok(GreensSum { value: sum, n_max, term_ratio: ratio, tail, truncation_warning: ratio >= 1.0 })
}
