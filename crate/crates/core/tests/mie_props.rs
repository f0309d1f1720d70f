mod common;

use common::{log_grid, loglog_slope, material, silver, OMEGA_P};
use num_complex::Complex64;
use plasmosense::constants::SPEED_OF_LIGHT;
use plasmosense::mie::{bn_alpha_factor, mie_bn_exact, mie_bn_qsa, polarizability_eff, MieInputs};
use plasmosense::{AnisotropicMaterial, DrudeModel};
use plasmosense_oracles::bh_mie_an;
use proptest::prelude::*;

fn inputs_at_size(ar: f64, n: u32, omega: f64, k1r: f64) -> MieInputs {
    MieInputs::new(k1r * SPEED_OF_LIGHT / omega, material(ar), n, omega).unwrap()
}

#[test]
fn qsa_converges_quadratically() {
    let omega = 0.2 * OMEGA_P;
    let sizes = log_grid(1e-3, 3e-2, 8);
    for n in 1..=3 {
        for &ar in &[1.0, 0.1, 0.01] {
            let errs: Vec<f64> = sizes
                .iter()
                .map(|&x| {
                    let i = inputs_at_size(ar, n, omega, x);
                    let e = mie_bn_exact(&i).unwrap();
                    (e - mie_bn_qsa(&i).unwrap()).norm() / e.norm()
                })
                .collect();
            let s = loglog_slope(&sizes, &errs);
            assert!((s - 2.0).abs() <= 0.2, "n={n} ar={ar}: slope {s}");
        }
    }
}

#[test]
fn coefficient_over_polarizability_is_size_independent() {
    for n in 1..=3u32 {
        for &ar in &[1.0, 0.1, 0.01] {
            let mut ratios = vec![];
            for &r in &[5e-9, 10e-9, 20e-9] {
                for &w in &[0.05, 0.15, 0.3, 0.45] {
                    let i = MieInputs::new(r, material(ar), n, w * OMEGA_P).unwrap();
                    let k = i.omega / SPEED_OF_LIGHT;
                    let b = mie_bn_qsa(&i).unwrap();
                    let a = polarizability_eff(&i).unwrap();
                    ratios.push(b / (Complex64::i() * k.powi(2 * n as i32 + 1) * a));
                }
            }
            for q in &ratios {
                assert!((q - bn_alpha_factor(n)).norm() < 1e-12 * bn_alpha_factor(n), "n={n} ar={ar}: {q}");
            }
        }
    }
}

proptest! {
    #[test]
    fn isotropic_sphere_matches_classical_mie(
        n in 1u32..5,
        w in 0.05f64..0.9,
        radius_nm in 2.0f64..40.0,
        gp in 1e12f64..1e14,
    ) {
        let d = DrudeModel::new(6.0, OMEGA_P, gp).unwrap();
        let m = AnisotropicMaterial::isotropic(d);
        let i = MieInputs::new(radius_nm * 1e-9, m, n, w * OMEGA_P).unwrap();
        let refr = plasmosense::mie::decaying_sqrt(d.eps(i.omega).unwrap());
        let oracle = -bh_mie_an(n as usize, refr, i.size_parameter());
        let got = mie_bn_exact(&i).unwrap();
        prop_assert!((got - oracle).norm() <= 1e-9 * oracle.norm(), "{} vs {}", got, oracle);
    }

    #[test]
    fn polarizability_is_passive(n in 1u32..5, ar in 1e-3f64..10.0, w in 1e-3f64..0.999) {
        let m = AnisotropicMaterial::from_radial(silver(), ar).unwrap();
        let i = MieInputs::new(10e-9, m, n, w * OMEGA_P).unwrap();
        prop_assert!(polarizability_eff(&i).unwrap().im >= 0.0);
    }
}
