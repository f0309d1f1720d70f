//! Reference implementations used by the test suites. Each one is coded
//! independently of the main crate, by a different algorithm where possible.

use num_complex::Complex64;

const C0: f64 = 299_792_458.0;
const EPS0: f64 = 8.8541878128e-12;
const HBAR: f64 = 1.054571817e-34;

/// Spherical Bessel functions `j_0..=j_nmax` by Miller's downward recurrence,
/// normalised with `j_0 = sin z / z`.
pub fn miller_sph_j(nmax: usize, z: Complex64) -> Vec<Complex64> {
    let start = nmax + 40 + (2.0 * z.norm()) as usize;
    let mut vals = vec![Complex64::new(0.0, 0.0); start + 2];
    vals[start + 1] = Complex64::new(0.0, 0.0);
    vals[start] = Complex64::new(1.0, 0.0);
    for k in (1..=start).rev() {
        vals[k - 1] = vals[k] * ((2 * k + 1) as f64) / z - vals[k + 1];
        if vals[k - 1].norm() > 1e100 {
            for v in vals.iter_mut().skip(k - 1) {
                *v *= 1e-100;
            }
        }
    }
    let j0 = z.sin() / z;
    let j1 = z.sin() / (z * z) - z.cos() / z;
    let scale = if j0.norm() >= j1.norm() { j0 / vals[0] } else { j1 / vals[1] };
    vals.truncate(nmax + 1);
    vals.iter().map(|v| v * scale).collect()
}

/// Spherical Bessel functions `y_0..=y_nmax` of a real argument, upward recurrence.
pub fn upward_sph_y(nmax: usize, x: f64) -> Vec<f64> {
    let mut y = vec![-x.cos() / x, -x.cos() / (x * x) - x.sin() / x];
    for k in 1..nmax {
        let next = (2 * k + 1) as f64 / x * y[k] - y[k - 1];
        y.push(next);
    }
    y.truncate(nmax + 1);
    y
}

fn riccati_terms(nmax: usize, x: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let j = miller_sph_j(nmax, Complex64::new(x, 0.0));
    let y = upward_sph_y(nmax, x);
    let psi: Vec<Complex64> = j.iter().map(|v| v * x).collect();
    let zeta: Vec<Complex64> = (0..=nmax).map(|k| psi[k] + Complex64::new(0.0, x * y[k])).collect();
    (psi, zeta)
}

/// Logarithmic derivative `D_k(w) = ψ_k'(w)/ψ_k(w)`, downward recurrence.
fn log_derivative(nmax: usize, w: Complex64) -> Vec<Complex64> {
    let start = nmax + 30 + (w.norm() * 2.0) as usize;
    let mut d = vec![Complex64::new(0.0, 0.0); start + 1];
    for k in (1..=start).rev() {
        let kw = Complex64::new(k as f64, 0.0) / w;
        d[k - 1] = kw - 1.0 / (d[k] + kw);
    }
    d.truncate(nmax + 1);
    d
}

/// Isotropic-sphere electric coefficient `a_n` (Bohren-Huffman convention) for
/// relative refractive index `m` and size parameter `x`.
pub fn bh_mie_an(n: usize, m: Complex64, x: f64) -> Complex64 {
    let (psi, zeta) = riccati_terms(n, x);
    let d = log_derivative(n, m * x);
    let f = d[n] / m + n as f64 / x;
    (f * psi[n] - psi[n - 1]) / (f * zeta[n] - zeta[n - 1])
}

/// Isotropic-sphere magnetic coefficient `b_n` (Bohren-Huffman convention).
pub fn bh_mie_bn(n: usize, m: Complex64, x: f64) -> Complex64 {
    let (psi, zeta) = riccati_terms(n, x);
    let d = log_derivative(n, m * x);
    let f = d[n] * m + n as f64 / x;
    (f * psi[n] - psi[n - 1]) / (f * zeta[n] - zeta[n - 1])
}

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Intracavity photon number by fixed-point iteration of
/// `ω₀ = Ω²/((Δ − aω₀)² + κ²)` starting from zero.
pub fn fixed_point_photon_number(a: f64, delta: f64, kappa: f64, omega_drive: f64) -> f64 {
    let o2 = omega_drive * omega_drive;
    let mut w = 0.0;
    for _ in 0..100_000 {
        let next = o2 / ((delta - a * w).powi(2) + kappa * kappa);
        if (next - w).abs() <= 1e-15 * next.abs() {
            return next;
        }
        w = next;
    }
    w
}

/// Gaussian elimination with partial pivoting for a 3×3 complex system.
pub fn solve3(mut m: [[Complex64; 3]; 3], mut b: [Complex64; 3]) -> [Complex64; 3] {
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())
            .unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (k, v) in m[row].iter_mut().enumerate().skip(col) {
                *v -= f * pivot_row[k];
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for row in (0..3).rev() {
        let mut s = b[row];
        for k in row + 1..3 {
            s -= m[row][k] * x[k];
        }
        x[row] = s / m[row][row];
    }
    x
}

/// Linearised probe sideband amplitude from the three coupled sideband
/// equations, solved as a linear system for `(a₊, a₋*, n₊)`.
#[allow(clippy::too_many_arguments)]
pub fn probe_sideband(
    kappa: f64,
    delta_pump: f64,
    delta: f64,
    g: f64,
    omega_m: f64,
    gamma_m: f64,
    a0: Complex64,
    omega_probe: f64,
) -> Complex64 {
    let i = Complex64::i();
    let n0 = 2.0 * g * a0.norm_sqr() / omega_m;
    // (κ + i(Δ − g n₀) − iδ) a₊ − i g a₀ n₊ = Ω_pr
    // (κ − i(Δ − g n₀) − iδ) a₋* + i g a₀* n₊ = 0
    // (ω_m² − δ² − iγδ) n₊ − 2ω_m g (a₀* a₊ + a₀ a₋*) = 0
    let d = delta_pump - g * n0;
    let m = [
        [kappa + i * d - i * delta, Complex64::new(0.0, 0.0), -i * g * a0],
        [Complex64::new(0.0, 0.0), kappa - i * d - i * delta, i * g * a0.conj()],
        [
            -2.0 * omega_m * g * a0.conj(),
            -2.0 * omega_m * g * a0,
            Complex64::new(omega_m * omega_m - delta * delta, -gamma_m * delta),
        ],
    ];
    let b = [Complex64::new(omega_probe, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
    solve3(m, b)[0]
}

/// Isotropic-sphere dipole-family formulas written out longhand.
pub mod isotropic {
    use super::{C0, EPS0, HBAR};

    fn dfact(k: i64) -> f64 {
        let mut p = 1.0;
        let mut j = k;
        while j > 1 {
            p *= j as f64;
            j -= 2;
        }
        p
    }

    pub fn lsp_frequency(eps_inf: f64, omega_p: f64, n: u32) -> f64 {
        let n = n as f64;
        (omega_p * omega_p * n / (n * eps_inf + n + 1.0)).sqrt()
    }

    pub fn radiative_width(eps_inf: f64, omega_p: f64, radius: f64, n: u32) -> f64 {
        let w = lsp_frequency(eps_inf, omega_p, n);
        let nf = n as f64;
        let k = w / C0;
        let ni = n as i64;
        w * (2.0 * nf + 1.0) * (nf + 1.0) * (k * radius).powf(2.0 * nf + 1.0)
            / (nf * (nf * eps_inf + nf + 1.0) * dfact(2 * ni - 1) * dfact(2 * ni + 1))
    }

    pub fn mode_volume(eps_inf: f64, radius: f64, r_m: f64, n: u32) -> f64 {
        let nf = n as f64;
        8.0 * std::f64::consts::PI * (nf * eps_inf + nf + 1.0) * r_m.powf(2.0 * nf + 4.0)
            / (nf * (nf + 1.0) * (2.0 * nf + 1.0) * radius.powf(2.0 * nf + 1.0))
    }

    #[allow(clippy::too_many_arguments)]
    pub fn coupling(
        eps_inf: f64,
        omega_p: f64,
        radius: f64,
        r_m: f64,
        n: u32,
        raman: f64,
        omega_m: f64,
    ) -> f64 {
        let w = lsp_frequency(eps_inf, omega_p, n);
        let nf = n as f64;
        (HBAR / (2.0 * omega_m)).sqrt() * raman * w * nf * (nf + 1.0) * (2.0 * nf + 1.0)
            * radius.powf(2.0 * nf + 1.0)
            / (8.0 * std::f64::consts::PI * EPS0 * (nf * eps_inf + nf + 1.0) * r_m.powf(2.0 * nf + 4.0))
    }

    /// Isotropic quasi-static electric coefficient (Bohren-Huffman sign).
    pub fn qsa_an(eps: num_complex::Complex64, x: f64, n: u32) -> num_complex::Complex64 {
        let nf = n as f64;
        let ni = n as i64;
        -num_complex::Complex64::i() * x.powf(2.0 * nf + 1.0) * (nf + 1.0) * (eps - 1.0)
            / ((nf * eps + nf + 1.0) * dfact(2 * ni - 1) * dfact(2 * ni + 1))
    }
}
