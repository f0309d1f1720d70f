//! T-matrix elements and Mie coefficients of a radially anisotropic sphere
//! in vacuum, in exact form and in the quasi-static limit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::material::{effective_eps, effective_order, AnisotropicMaterial};
use crate::specfun::{double_factorial, riccati_psi, riccati_zeta};

/// Upper bound on `k₁R` for the quasi-static forms.
pub const QSA_LIMIT: f64 = 0.1;

/// Relative threshold below which a denominator counts as a pole.
pub const POLE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MieInputs {
    /// Sphere radius in meters.
    pub radius: f64,
    pub material: AnisotropicMaterial,
    /// Multipole index, `n ≥ 1`.
    pub n: u32,
    /// Angular frequency in rad/s.
    pub omega: f64,
}

impl MieInputs {
    pub fn new(radius: f64, material: AnisotropicMaterial, n: u32, omega: f64) -> Result<Self> {
        let inputs = Self { radius, material, n, omega };
        inputs.validate()?;
        Ok(inputs)
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {}", self.radius)));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::Domain(format!("omega must be positive, got {}", self.omega)));
        }
        if self.n == 0 {
            return Err(Error::Domain("multipole index must be at least 1".into()));
        }
        Ok(())
    }

    /// Size parameter `k₁R = ωR/c`.
    pub fn size_parameter(&self) -> f64 {
        self.omega * self.radius / SPEED_OF_LIGHT
    }

    /// Effective order at this frequency. Requires a real anisotropy ratio.
    pub fn order(&self) -> Result<f64> {
        let ar = self.material.anisotropy_ratio(self.omega)?;
        if ar.im.abs() > 1e-12 * ar.re.abs() || ar.re <= 0.0 {
            return Err(Error::Configuration(format!(
                "exact Mie coefficients need a real positive anisotropy ratio, got {ar}"
            )));
        }
        effective_order(self.n, ar.re)
    }
}

/// `√ε` on the branch with `Im ≥ 0`.
pub fn decaying_sqrt(eps: Complex64) -> Complex64 {
    let s = eps.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// `(T11, T12)` of the TM (`N`) channel.
pub fn t_matrix_n(inputs: &MieInputs) -> Result<(Complex64, Complex64)> {
    inputs.validate()?;
    let nu = inputs.order()?;
    let n = f64::from(inputs.n);
    let x = Complex64::new(inputs.size_parameter(), 0.0);
    let eps_t = inputs.material.eps_tangential(inputs.omega)?;
    let m = decaying_sqrt(eps_t);
    let xt = m * x;

    let psi_t = riccati_psi(nu, xt)?;
    let psi_1 = riccati_psi(n, x)?;
    let zeta_1 = riccati_zeta(n, x)?;

    // 1/η_t = √ε_t, η₁ = 1; the common denominator is the Wronskian of the
    // interior functions, i/η_t.
    let denom = Complex64::i() * m;
    let t11 = (psi_t.value * zeta_1.derivative * m - zeta_1.value * psi_t.derivative) / denom;
    let t12 = (psi_t.value * psi_1.derivative * m - psi_1.value * psi_t.derivative) / denom;
    if t11.norm() == 0.0 {
        return Err(Error::Degenerate(format!(
            "T11 vanishes at omega = {} (lossless resonance)",
            inputs.omega
        )));
    }
    Ok((t11, t12))
}

/// Exact TM coefficient `B_N = −T12/T11`.
pub fn mie_bn_exact(inputs: &MieInputs) -> Result<Complex64> {
    let (t11, t12) = t_matrix_n(inputs)?;
    Ok(-t12 / t11)
}

/// Exact TE coefficient `B_M`, taken as the isotropic TE form of order n with
/// the tangential permittivity.
pub fn mie_bm_exact(inputs: &MieInputs) -> Result<Complex64> {
    inputs.validate()?;
    let n = f64::from(inputs.n);
    let x = Complex64::new(inputs.size_parameter(), 0.0);
    let m = decaying_sqrt(inputs.material.eps_tangential(inputs.omega)?);
    let psi_in = riccati_psi(n, m * x)?;
    let psi_1 = riccati_psi(n, x)?;
    let zeta_1 = riccati_zeta(n, x)?;
    let num = psi_in.value * psi_1.derivative - m * psi_1.value * psi_in.derivative;
    let den = psi_in.value * zeta_1.derivative - m * zeta_1.value * psi_in.derivative;
    if den.norm() == 0.0 {
        return Err(Error::Degenerate("TE denominator vanishes".into()));
    }
    Ok(-num / den)
}

/// Quasi-static TM coefficient from the multipole index, effective order,
/// tangential permittivity and size parameter.
pub fn bn_qsa_from_parts(n: u32, nu: f64, eps_t: Complex64, k1r: f64) -> Result<Complex64> {
    if !(k1r > 0.0 && k1r < QSA_LIMIT) {
        return Err(Error::Validity(format!("quasi-static form needs 0 < k1*R < {QSA_LIMIT}, got {k1r}")));
    }
    let nf = f64::from(n);
    let den = eps_t * nf + (nu + 1.0);
    let scale = (eps_t * nf).norm() + nu + 1.0;
    if den.norm() < POLE_THRESHOLD * scale {
        return Err(Error::Resonance(format!(
            "quasi-static pole: n*eps_t + nu + 1 = {den} for n = {n}"
        )));
    }
    let num = eps_t * (nf + 1.0) - (nu + 1.0);
    let ni = i64::from(n);
    let df = double_factorial(2 * ni - 1)? * double_factorial(2 * ni + 1)?;
    Ok(Complex64::i() * k1r.powi(2 * n as i32 + 1) * num / (den * df))
}

/// Quasi-static TM coefficient.
pub fn mie_bn_qsa(inputs: &MieInputs) -> Result<Complex64> {
    inputs.validate()?;
    let nu = inputs.order()?;
    let eps_t = inputs.material.eps_tangential(inputs.omega)?;
    bn_qsa_from_parts(inputs.n, nu, eps_t, inputs.size_parameter())
}

/// Multipole polarizability of an isotropic sphere with permittivity `eps`,
/// `n(ε − 1)R^{2n+1}/(nε + n + 1)`.
pub fn polarizability_from_eps(n: u32, eps: Complex64, radius: f64) -> Result<Complex64> {
    let nf = f64::from(n);
    let den = eps * nf + nf + 1.0;
    let scale = (eps * nf).norm() + nf + 1.0;
    if den.norm() < POLE_THRESHOLD * scale {
        return Err(Error::Resonance(format!("polarizability pole at eps = {eps} for n = {n}")));
    }
    Ok((eps - 1.0) * nf * radius.powi(2 * n as i32 + 1) / den)
}

/// Quasi-static polarizability of the effective sphere (units m^{2n+1}).
pub fn polarizability_eff(inputs: &MieInputs) -> Result<Complex64> {
    inputs.validate()?;
    if inputs.size_parameter() >= QSA_LIMIT {
        return Err(Error::Validity(format!(
            "quasi-static polarizability needs k1*R < {QSA_LIMIT}, got {}",
            inputs.size_parameter()
        )));
    }
    let eps_eff = effective_eps(&inputs.material, inputs.n, inputs.omega)?;
    polarizability_from_eps(inputs.n, eps_eff, inputs.radius)
}

/// Constant `c_n` with `B_N^{qsa} = i·k₁^{2n+1}·c_n·α`.
pub fn bn_alpha_factor(n: u32) -> f64 {
    let nf = f64::from(n);
    let ni = i64::from(n);
    let df = double_factorial(2 * ni - 1).unwrap_or(1.0) * double_factorial(2 * ni + 1).unwrap_or(1.0);
    (nf + 1.0) / (nf * df)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::DrudeModel;
    use approx::assert_relative_eq;
    use plasmosense_oracles as oracle;

    const WP: f64 = 1.9e15;
    const R: f64 = 10e-9;

    fn silver() -> DrudeModel {
        DrudeModel::new(6.0, WP, 1.2e13).unwrap()
    }

    fn omega_for(k1r: f64) -> f64 {
        k1r * SPEED_OF_LIGHT / R
    }

    fn inputs(ar: f64, n: u32, omega: f64) -> MieInputs {
        MieInputs::new(R, AnisotropicMaterial::from_radial(silver(), ar).unwrap(), n, omega).unwrap()
    }

    #[test]
    fn vacuum_sphere_does_not_scatter() {
        let vac = DrudeModel::new(1.0, 1e-30, 0.0).unwrap();
        let mie = MieInputs::new(R, AnisotropicMaterial::isotropic(vac), 1, omega_for(0.05)).unwrap();
        assert!(mie_bn_exact(&mie).unwrap().norm() < 1e-20);
        let q = bn_qsa_from_parts(2, 2.0, Complex64::new(1.0, 0.0), 0.05).unwrap();
        assert_eq!(q.norm(), 0.0);
    }

    #[test]
    fn isotropic_matches_classical_mie() {
        for n in 1..=4 {
            for &k1r in &[0.1, 0.02, 0.003] {
                let mie = inputs(1.0, n, omega_for(k1r));
                let eps = silver().eps(mie.omega).unwrap();
                let a = oracle::bh_mie_an(n as usize, decaying_sqrt(eps), k1r);
                let b = mie_bn_exact(&mie).unwrap();
                assert!((b + a).norm() <= 1e-9 * a.norm(), "n={n} k1r={k1r}: {b} vs {a}");
                let bo = oracle::bh_mie_bn(n as usize, decaying_sqrt(eps), k1r);
                let bm = mie_bm_exact(&mie).unwrap();
                assert!((bm + bo).norm() <= 1e-9 * bo.norm(), "n={n} k1r={k1r}");
            }
        }
    }

    #[test]
    fn silver_golden() {
        // arbitrary-precision Bohren-Huffman a_1 at k1R = 0.02
        let b = mie_bn_exact(&inputs(1.0, 1, omega_for(0.02))).unwrap();
        assert_relative_eq!(b.re, -7.680_147_237_418_621e-7, max_relative = 1e-9);
        assert_relative_eq!(b.im, 1.311_915_542_243_118_3e-5, max_relative = 1e-9);
    }

    #[test]
    fn exact_matches_qsa_at_small_size() {
        for &ar in &[1.0, 0.01] {
            let k1r = 0.01;
            let mie = inputs(ar, 1, omega_for(k1r));
            let e = mie_bn_exact(&mie).unwrap();
            let q = mie_bn_qsa(&mie).unwrap();
            assert!((e - q).norm() / e.norm() <= 5.0 * k1r * k1r, "ar={ar}");
        }
    }

    #[test]
    fn qsa_poles() {
        // Fröhlich condition
        let r = bn_qsa_from_parts(1, 1.0, Complex64::new(-2.0, 0.0), 0.01);
        assert!(matches!(r, Err(Error::Resonance(_))));
        // anisotropic: pole where the effective permittivity equals −(n+1)/n,
        // i.e. at ε_r = −(n+1)/ν
        for n in 1..=3u32 {
            let nf = f64::from(n);
            let ar = 0.01;
            let nu = effective_order(n, ar).unwrap();
            let eps_r = -(nf + 1.0) / nu;
            assert_relative_eq!(nu / nf * eps_r, -(nf + 1.0) / nf, max_relative = 1e-14);
            let eps_t = Complex64::new(ar * eps_r, 0.0);
            let den = eps_t * nf + (nu + 1.0);
            assert!(den.norm() < 1e-6);
            assert!(matches!(
                bn_qsa_from_parts(n, nu, eps_t, 0.01),
                Err(Error::Resonance(_))
            ));
        }
        assert!(matches!(bn_qsa_from_parts(1, 1.0, Complex64::new(-3.0, 0.0), 0.1), Err(Error::Validity(_))));
    }

    #[test]
    fn polarizability_textbook_dipole() {
        let e = Complex64::new(-5.0, 0.3);
        let a = polarizability_from_eps(1, e, R).unwrap();
        let cm = (e - 1.0) * R.powi(3) / (e + 2.0);
        assert!((a - cm).norm() < 1e-15 * cm.norm());
        assert_eq!(polarizability_from_eps(3, Complex64::new(1.0, 0.0), R).unwrap().norm(), 0.0);
    }

    #[test]
    fn polarizability_silver_and_bn_ratio() {
        let omega = 0.3 * WP;
        let eps = silver().eps(omega).unwrap();
        let mie = inputs(1.0, 1, omega);
        let a = polarizability_eff(&mie).unwrap();
        let direct = (eps - 1.0) * R.powi(3) / (eps + 2.0);
        assert!((a - direct).norm() < 1e-14 * direct.norm());
        let k1 = omega / SPEED_OF_LIGHT;
        let b = mie_bn_qsa(&mie).unwrap();
        let pred = Complex64::i() * k1.powi(3) * bn_alpha_factor(1) * a;
        assert!((b - pred).norm() < 1e-12 * b.norm());
    }

    #[test]
    fn polarizability_passive() {
        let mat = AnisotropicMaterial::from_radial(silver(), 0.01).unwrap();
        for n in 1..=3 {
            for k in 1..200 {
                let omega = WP * f64::from(k) / 200.0;
                let mie = MieInputs::new(R, mat, n, omega).unwrap();
                assert!(polarizability_eff(&mie).unwrap().im >= 0.0);
            }
        }
    }

    #[test]
    fn complex_anisotropy_refused() {
        let mat = AnisotropicMaterial::general(silver(), DrudeModel::new(3.0, 1e15, 2e13).unwrap());
        let mie = MieInputs::new(R, mat, 1, 0.3 * WP).unwrap();
        assert!(matches!(mie_bn_exact(&mie), Err(Error::Configuration(_))));
        assert!(polarizability_eff(&mie).is_ok());
    }
}
