//! Material dispersion.
//!
//! A radially anisotropic sphere has permittivity tensor
//! `ε = (ε_r − ε_t) r̂r̂ + ε_t I`, with both components Drude-like. When the
//! two components share the damping rate and the ratio `ω_p²/ε_∞`, the
//! anisotropy ratio `AR = ε_t/ε_r` is frequency independent and, for the
//! n-th multipole, the sphere responds like an isotropic sphere of
//! permittivity `(ν/n)·ε_r`, which is again Drude-like.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used to decide whether two Drude components obey
/// the shared-damping / shared `ω_p²/ε_∞` relations.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-12;

/// Free-electron permittivity `ε(ω) = ε_∞ − ω_p²/(ω(ω + iΓ_p))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrudeModel {
    /// High-frequency permittivity ε_∞ (dimensionless).
    pub eps_inf: f64,
    /// Plasma frequency ω_p in rad/s.
    pub omega_p: f64,
    /// Damping rate Γ_p in rad/s.
    pub gamma_p: f64,
}

impl DrudeModel {
    pub fn new(eps_inf: f64, omega_p: f64, gamma_p: f64) -> Result<Self> {
        if !(eps_inf.is_finite() && eps_inf > 0.0) {
            return Err(Error::Domain(format!("eps_inf must be positive, got {eps_inf}")));
        }
        if !(omega_p.is_finite() && omega_p > 0.0) {
            return Err(Error::Domain(format!("omega_p must be positive, got {omega_p}")));
        }
        if !(gamma_p.is_finite() && gamma_p >= 0.0) {
            return Err(Error::Domain(format!("gamma_p must be non-negative, got {gamma_p}")));
        }
        Ok(Self { eps_inf, omega_p, gamma_p })
    }

    /// Relative permittivity at `omega` (rad/s).
    pub fn eps(&self, omega: f64) -> Result<Complex64> {
        drude_eps(self, omega)
    }

    /// Frequency at which Re ε crosses zero for Γ_p = 0, `ω_p/√ε_∞`.
    pub fn zero_crossing(&self) -> f64 {
        self.omega_p / self.eps_inf.sqrt()
    }
}

/// Radially anisotropic Drude material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnisotropicMaterial {
    pub radial: DrudeModel,
    pub tangential: DrudeModel,
    constrained: bool,
}

impl AnisotropicMaterial {
    /// Isotropic material: both components equal.
    pub fn isotropic(model: DrudeModel) -> Self {
        Self { radial: model, tangential: model, constrained: true }
    }

    /// Constraint-mode material built from the radial component and the
    /// high-frequency anisotropy ratio `AR_∞ = ε_∞t/ε_∞r`.
    ///
    /// The tangential component is `(AR_∞ ε_∞r, √AR_∞ ω_pr, Γ_pr)`, which
    /// satisfies the shared-ratio relations exactly.
    pub fn from_radial(radial: DrudeModel, ar_inf: f64) -> Result<Self> {
        if !(ar_inf.is_finite() && ar_inf > 0.0) {
            return Err(Error::Domain(format!("AR_inf must be positive, got {ar_inf}")));
        }
        if ar_inf == 1.0 {
            return Ok(Self::isotropic(radial));
        }
        let tangential = DrudeModel::new(
            ar_inf * radial.eps_inf,
            ar_inf.sqrt() * radial.omega_p,
            radial.gamma_p,
        )?;
        Ok(Self { radial, tangential, constrained: true })
    }

    /// Arbitrary pair of Drude components. Constraint mode is detected, not
    /// assumed: it holds when `ω_pr²/ε_∞r = ω_pt²/ε_∞t` to within
    /// [`CONSTRAINT_TOLERANCE`] and the damping rates are equal.
    pub fn general(radial: DrudeModel, tangential: DrudeModel) -> Self {
        let lhs = radial.omega_p * radial.omega_p / radial.eps_inf;
        let rhs = tangential.omega_p * tangential.omega_p / tangential.eps_inf;
        let ratio_ok = ((lhs - rhs) / lhs).abs() <= CONSTRAINT_TOLERANCE;
        let damping_ok = radial.gamma_p == tangential.gamma_p;
        Self { radial, tangential, constrained: ratio_ok && damping_ok }
    }

    /// Whether the anisotropy ratio is frequency independent.
    pub fn is_constrained(&self) -> bool {
        self.constrained
    }

    pub fn is_isotropic(&self) -> bool {
        self.radial == self.tangential
    }

    /// High-frequency anisotropy ratio `ε_∞t/ε_∞r`.
    pub fn ar_inf(&self) -> f64 {
        self.tangential.eps_inf / self.radial.eps_inf
    }

    pub fn eps_radial(&self, omega: f64) -> Result<Complex64> {
        drude_eps(&self.radial, omega)
    }

    pub fn eps_tangential(&self, omega: f64) -> Result<Complex64> {
        drude_eps(&self.tangential, omega)
    }

    /// `AR(ω) = ε_t(ω)/ε_r(ω)`; equals `AR_∞` at every ω in constraint mode.
    pub fn anisotropy_ratio(&self, omega: f64) -> Result<Complex64> {
        if self.constrained {
            // ω > 0 is still enforced.
            drude_eps(&self.radial, omega)?;
            return Ok(Complex64::new(self.ar_inf(), 0.0));
        }
        Ok(self.eps_tangential(omega)? / self.eps_radial(omega)?)
    }
}

/// Per-multipole effective isotropic description of an anisotropic sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveMode {
    pub n: u32,
    /// Effective (non-integer) angular order ν.
    pub nu: f64,
    /// Effective Drude parameters `(ε_∞^ani, ω_p^ani, Γ_p)`.
    pub drude_eff: DrudeModel,
}

pub fn drude_eps(model: &DrudeModel, omega: f64) -> Result<Complex64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::Domain(format!("angular frequency must be positive, got {omega}")));
    }
    let denom = Complex64::new(omega * omega, omega * model.gamma_p);
    Ok(model.eps_inf - model.omega_p * model.omega_p / denom)
}

/// Effective angular order `ν = √(n(n+1)·AR + 1/4) − 1/2`.
pub fn effective_order(n: u32, ar: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("multipole index must be at least 1".into()));
    }
    if !(ar.is_finite() && ar > 0.0) {
        return Err(Error::Domain(format!("anisotropy ratio must be positive, got {ar}")));
    }
    let nf = f64::from(n);
    Ok((nf * (nf + 1.0) * ar + 0.25).sqrt() - 0.5)
}

/// Effective order for a complex anisotropy ratio (general two-Drude
/// materials away from constraint mode). Principal square root.
pub(crate) fn effective_order_complex(n: u32, ar: Complex64) -> Complex64 {
    let nf = f64::from(n);
    (ar * (nf * (nf + 1.0)) + 0.25).sqrt() - 0.5
}

/// Effective permittivity `(ν/n)·ε_r(ω)` seen by the n-th multipole.
pub fn effective_eps(material: &AnisotropicMaterial, n: u32, omega: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain("multipole index must be at least 1".into()));
    }
    let eps_r = material.eps_radial(omega)?;
    let nf = f64::from(n);
    if material.is_constrained() {
        let nu = effective_order(n, material.ar_inf())?;
        Ok(eps_r * (nu / nf))
    } else {
        let ar = material.eps_tangential(omega)? / eps_r;
        Ok(eps_r * effective_order_complex(n, ar) / nf)
    }
}

/// Effective Drude parameters of the n-th multipole:
/// `ω_p^ani = √(ν/n)·ω_pr`, `ε_∞^ani = (ν/n)·ε_∞r`, same Γ_p.
pub fn effective_drude(material: &AnisotropicMaterial, n: u32) -> Result<DrudeModel> {
    Ok(effective_mode(material, n)?.drude_eff)
}

pub fn effective_mode(material: &AnisotropicMaterial, n: u32) -> Result<EffectiveMode> {
    if !material.is_constrained() {
        return Err(Error::Configuration(
            "effective Drude parameters need a frequency-independent anisotropy ratio \
             (shared damping and shared omega_p^2/eps_inf)"
                .into(),
        ));
    }
    let nu = effective_order(n, material.ar_inf())?;
    let scale = nu / f64::from(n);
    let drude_eff = DrudeModel::new(
        scale * material.radial.eps_inf,
        scale.sqrt() * material.radial.omega_p,
        material.radial.gamma_p,
    )?;
    Ok(EffectiveMode { n, nu, drude_eff })
}
