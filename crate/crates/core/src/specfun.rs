//! Special functions: gamma, double factorials, fractional-order spherical
//! Bessel functions and the Riccati functions built from them.
//!
//! Spherical Bessel functions of real order `ν ≥ 0` are evaluated from their
//! ascending series, which is accurate for moderate arguments
//! (`|z| ≤ SERIES_RADIUS`). Orders at or within [`HALF_INTEGER_SNAP`] of a
//! half-integer use the integer-order Neumann series for `y_ν`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest argument modulus accepted by the ascending series.
pub const SERIES_RADIUS: f64 = 30.0;

/// Largest argument modulus accepted by [`qsa_riccati`].
pub const QSA_RADIUS: f64 = 0.1;

/// Orders closer than this to a half-integer are treated as half-integers
/// when evaluating `y_ν`.
pub const HALF_INTEGER_SNAP: f64 = 1e-7;

const SERIES_TOL: f64 = 1e-16;
const SERIES_MAX_TERMS: usize = 200;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Value and derivative (with respect to the argument) of a Riccati function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiccatiPair {
    pub value: Complex64,
    pub derivative: Complex64,
}

/// Leading small-argument forms of `ψ_ν, ζ_ν` and their derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QsaRiccati {
    pub psi: Complex64,
    pub zeta: Complex64,
    pub dpsi: Complex64,
    pub dzeta: Complex64,
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `sin(πx)`, exact at integers and half-integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == -0.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// `cos(πx)`, exact at integers and half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// Euler gamma function.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma argument must be finite, got {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("gamma has a pole at {x}")));
    }
    if x < 0.5 {
        // reflection with an exact sin(πx)
        return Ok(PI / (sin_pi(x) * statrs::function::gamma::gamma(1.0 - x)));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// `1/Γ(x)`, zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x < 0.5 {
        return sin_pi(x) * statrs::function::gamma::gamma(1.0 - x) / PI;
    }
    if x > 171.0 {
        return (-statrs::function::gamma::ln_gamma(x)).exp();
    }
    1.0 / statrs::function::gamma::gamma(x)
}

/// `k!! = k(k−2)(k−4)···`, with `0!! = (−1)!! = 1`.
pub fn double_factorial(k: i64) -> Result<f64> {
    if k < -1 {
        return Err(Error::Domain(format!("double factorial needs k >= -1, got {k}")));
    }
    let mut acc = 1.0;
    let mut j = k;
    while j > 1 {
        acc *= j as f64;
        j -= 2;
    }
    Ok(acc)
}

fn check_order(nu: f64) -> Result<()> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::Domain(format!("order must be a finite non-negative real, got {nu}")));
    }
    Ok(())
}

fn check_argument(z: Complex64, singular_at_zero: bool) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {z}")));
    }
    if z.norm() > SERIES_RADIUS {
        return Err(Error::Validity(format!(
            "|z| = {} exceeds the series radius {SERIES_RADIUS}",
            z.norm()
        )));
    }
    if singular_at_zero && z == Complex64::new(0.0, 0.0) {
        return Err(Error::Singularity("second-kind function is singular at z = 0".into()));
    }
    Ok(())
}

/// `Σ_k (−z²/4)^k / (k!·Γ(k + a))` summed by term ratios.
fn ascending_sum(a: f64, z: Complex64) -> Complex64 {
    let q = -z * z / 4.0;
    let mut term = Complex64::new(rgamma(a), 0.0);
    let mut k = 0usize;
    // Leading coefficients vanish when a is a non-positive integer; start at
    // the first non-zero term.
    if term.re == 0.0 {
        let first = (-a).round() as usize + 1;
        // 1/Γ(first + a) with first + a = 1, times q^first / first!
        let mut t = Complex64::new(1.0, 0.0);
        for j in 1..=first {
            t *= q / j as f64;
        }
        term = t;
        k = first;
    }
    let mut sum = term;
    for _ in 0..SERIES_MAX_TERMS {
        term *= q / ((k + 1) as f64 * (k as f64 + a));
        sum += term;
        k += 1;
        if term.norm() < SERIES_TOL * sum.norm() {
            break;
        }
    }
    sum
}

fn principal_pow(z: Complex64, p: f64) -> Complex64 {
    (z.ln() * p).exp()
}

/// Spherical Bessel function of the first kind `j_ν(z) = √(π/2z) J_{ν+1/2}(z)`.
pub fn sph_bessel_j(nu: f64, z: Complex64) -> Result<Complex64> {
    check_order(nu)?;
    check_argument(z, false)?;
    Ok(j_unchecked(nu, z))
}

fn j_unchecked(nu: f64, z: Complex64) -> Complex64 {
    let s = ascending_sum(nu + 1.5, z);
    if z == Complex64::new(0.0, 0.0) {
        return if nu == 0.0 { s * (PI.sqrt() / 2.0) } else { Complex64::new(0.0, 0.0) };
    }
    principal_pow(z / 2.0, nu) * s * (PI.sqrt() / 2.0)
}

/// Spherical Bessel function of the second kind `y_ν(z) = √(π/2z) Y_{ν+1/2}(z)`.
pub fn sph_bessel_y(nu: f64, z: Complex64) -> Result<Complex64> {
    check_order(nu)?;
    check_argument(z, true)?;
    Ok(y_unchecked(nu, z))
}

fn y_unchecked(nu: f64, z: Complex64) -> Complex64 {
    let m = nu + 0.5;
    let m_round = m.round();
    if (m - m_round).abs() < HALF_INTEGER_SNAP && m_round >= 1.0 {
        return (PI / (2.0 * z)).sqrt() * neumann_integer(m_round as usize, z);
    }
    let j = j_unchecked(nu, z);
    let b = principal_pow(z / 2.0, -nu - 1.0) * ascending_sum(0.5 - nu, z) * (PI.sqrt() / 2.0);
    (-j * sin_pi(nu) - b) / cos_pi(nu)
}

/// Integer-order Neumann function `Y_m(z)`.
fn neumann_integer(m: usize, z: Complex64) -> Complex64 {
    let half = z / 2.0;
    let q = half * half;
    let mut finite = Complex64::new(0.0, 0.0);
    if m > 0 {
        // Σ_{k<m} (m−k−1)!/k! · q^k
        let mut fact_mk1 = (1..m).fold(1.0, |a, j| a * j as f64);
        let mut qk = Complex64::new(1.0, 0.0);
        let mut kfact = 1.0;
        for k in 0..m {
            finite += qk * (fact_mk1 / kfact);
            qk *= q;
            kfact *= (k + 1) as f64;
            if m - k - 1 > 0 {
                fact_mk1 /= (m - k - 1) as f64;
            }
        }
    }
    let inv_half_m = principal_pow(half, -(m as f64));
    let half_m = principal_pow(half, m as f64);

    // J_m(z) = (z/2)^m Σ (−q)^k/(k!(m+k)!)
    let mfact = (1..=m).fold(1.0, |a, j| a * j as f64);
    let mut term = Complex64::new(1.0 / mfact, 0.0);
    let mut psi_sum = -2.0 * EULER_GAMMA + (1..=m).map(|j| 1.0 / j as f64).sum::<f64>();
    let mut jsum = term;
    let mut log_sum = term * psi_sum;
    let mut hk = 0.0;
    let mut hmk: f64 = (1..=m).map(|j| 1.0 / j as f64).sum();
    for k in 0..SERIES_MAX_TERMS {
        term *= -q / ((k + 1) as f64 * (m + k + 1) as f64);
        hk += 1.0 / (k + 1) as f64;
        hmk += 1.0 / (m + k + 1) as f64;
        psi_sum = -2.0 * EULER_GAMMA + hk + hmk;
        jsum += term;
        log_sum += term * psi_sum;
        if term.norm() * psi_sum.abs().max(1.0) < SERIES_TOL * log_sum.norm().min(jsum.norm()) {
            break;
        }
    }
    let jm = half_m * jsum;
    -inv_half_m * finite / PI + half.ln() * jm * (2.0 / PI) - half_m * log_sum / PI
}

/// Spherical Hankel function of the first kind `h_ν = j_ν + i·y_ν`.
pub fn sph_hankel1(nu: f64, z: Complex64) -> Result<Complex64> {
    check_order(nu)?;
    check_argument(z, true)?;
    Ok(j_unchecked(nu, z) + Complex64::i() * y_unchecked(nu, z))
}

/// `ψ_ν(z) = z·j_ν(z)` and its derivative.
pub fn riccati_psi(nu: f64, z: Complex64) -> Result<RiccatiPair> {
    check_order(nu)?;
    check_argument(z, false)?;
    let j = j_unchecked(nu, z);
    let j1 = j_unchecked(nu + 1.0, z);
    Ok(RiccatiPair { value: z * j, derivative: j * (nu + 1.0) - z * j1 })
}

/// `ζ_ν(z) = z·h_ν^{(1)}(z)` and its derivative.
pub fn riccati_zeta(nu: f64, z: Complex64) -> Result<RiccatiPair> {
    check_order(nu)?;
    check_argument(z, true)?;
    let i = Complex64::i();
    let h = j_unchecked(nu, z) + i * y_unchecked(nu, z);
    let h1 = j_unchecked(nu + 1.0, z) + i * y_unchecked(nu + 1.0, z);
    Ok(RiccatiPair { value: z * h, derivative: h * (nu + 1.0) - z * h1 })
}

/// Leading-order small-argument forms of the Riccati functions.
///
/// `ψ_ν ≈ √π z^{ν+1}/(2^{ν+1}Γ(ν+3/2))` and
/// `ζ_ν ≈ ψ_ν(1 − i·tan νπ) − i·2^ν Γ(ν+1/2)/(√π z^ν)`; the `tan νπ` term is
/// dropped at half-integer orders.
pub fn qsa_riccati(nu: f64, z: Complex64) -> Result<QsaRiccati> {
    check_order(nu)?;
    if !z.is_finite() || z.norm() >= QSA_RADIUS {
        return Err(Error::Validity(format!(
            "small-argument forms need |z| < {QSA_RADIUS}, got {}",
            z.norm()
        )));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Singularity("zeta is singular at z = 0".into()));
    }
    let i = Complex64::i();
    let psi = principal_pow(z, nu + 1.0) * (PI.sqrt() * rgamma(nu + 1.5) / 2f64.powf(nu + 1.0));
    let dpsi = psi * (nu + 1.0) / z;
    let c = gamma_fn(nu + 0.5)? * 2f64.powf(nu) / PI.sqrt();
    let cosv = cos_pi(nu);
    let tan = if cosv == 0.0 { 0.0 } else { sin_pi(nu) / cosv };
    let sing = principal_pow(z, -nu) * c;
    let zeta = psi * (1.0 - i * tan) - i * sing;
    let dzeta = dpsi * (1.0 - i * tan) + i * sing * nu / z;
    Ok(QsaRiccati { psi, zeta, dpsi, dzeta })
}
