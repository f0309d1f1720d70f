#![allow(dead_code)]

use plasmosense::plasmon::raman_element_from_a4_per_amu;
use plasmosense::response::{linear_grid, DriveStrength, PumpTuning};
use plasmosense::{AnisotropicMaterial, DriveConfig, DrudeModel, Geometry, MechanicalMode, Scenario};

pub const OMEGA_P: f64 = 1.9e15;
pub const OMEGA_M: f64 = 470e9;
pub const GAMMA_M: f64 = 1.9e9;
/// 1 kW/cm² in W/m².
pub const KW_PER_CM2: f64 = 1e7;

pub fn silver() -> DrudeModel {
    DrudeModel::new(6.0, OMEGA_P, 1.2e13).unwrap()
}

pub fn material(ar: f64) -> AnisotropicMaterial {
    AnisotropicMaterial::from_radial(silver(), ar).unwrap()
}

pub fn mech() -> MechanicalMode {
    MechanicalMode::new(OMEGA_M, GAMMA_M, 3e-22, raman_element_from_a4_per_amu(1e3).unwrap()).unwrap()
}

pub fn geometry(r_m_nm: f64) -> Geometry {
    Geometry::new(10e-9, r_m_nm * 1e-9).unwrap()
}

pub fn drive(pump_kw: f64) -> DriveConfig {
    DriveConfig {
        pump: DriveStrength::Intensity(pump_kw * KW_PER_CM2),
        probe: DriveStrength::Intensity(KW_PER_CM2),
        enhancement: 10.0,
        tuning: PumpTuning::RedSideband,
        delta_grid: linear_grid(-OMEGA_M - 20.0 * GAMMA_M, -OMEGA_M + 20.0 * GAMMA_M, 2001),
    }
}

pub fn scenario(ar: f64, r_m_nm: f64, pump_kw: f64, n: u32) -> Scenario {
    let d = drive(pump_kw);
    let window = (d.delta_grid[0], *d.delta_grid.last().unwrap());
    Scenario {
        material: material(ar),
        geometry: geometry(r_m_nm),
        mech: mech(),
        drive: d,
        response_modes: vec![n],
        n_max: 4,
        peak_window: window,
    }
}

pub fn peak_height(ar: f64, r_m_nm: f64, pump_kw: f64, n: u32) -> f64 {
    scenario(ar, r_m_nm, pump_kw, n).run_mode(n).unwrap().peak.height
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| lo * (hi / lo).powf(k as f64 / (count - 1) as f64)).collect()
}
