mod common;

use common::{geometry, material, mech, silver, OMEGA_P};
use plasmosense::plasmon::{
    coupling_strength, coupling_strength_explicit, greens_tangential, lsp_frequency, mode_catalog, DEFAULT_GREENS_NMAX,
};
use plasmosense::{AnisotropicMaterial, Geometry, PlasmonMode};
use proptest::prelude::*;

fn separated(modes: &[PlasmonMode]) -> Vec<bool> {
    modes
        .windows(2)
        .map(|p| (p[1].omega_n - p[0].omega_n).abs() > (p[0].gamma_total + p[1].gamma_total) / 2.0)
        .collect()
}

proptest! {
    #[test]
    fn coupling_identity(n in 1u32..7, radius_nm in 2.0f64..50.0, gap in 1.05f64..3.0, ar in 1e-3f64..10.0) {
        let m = AnisotropicMaterial::from_radial(silver(), ar).unwrap();
        let g = Geometry::new(radius_nm * 1e-9, gap * radius_nm * 1e-9).unwrap();
        let a = coupling_strength(&m, &g, &mech(), n).unwrap();
        let b = coupling_strength_explicit(&m, &g, &mech(), n).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * b, "{} vs {}", a, b);
    }

    #[test]
    fn coupling_spectrum_is_nonnegative_and_symmetric(n in 1u32..5, ar in 1e-3f64..1.0, off in 0.0f64..50.0) {
        let mode = PlasmonMode::new(&material(ar), &geometry(14.0), &mech(), n).unwrap();
        let d = off * mode.gamma_total;
        prop_assume!(mode.omega_n - d > 0.0);
        let lo = mode.coupling_spectrum(mode.omega_n - d).unwrap();
        let hi = mode.coupling_spectrum(mode.omega_n + d).unwrap();
        prop_assert!(lo >= 0.0 && hi >= 0.0);
        prop_assert!((lo - hi).abs() <= 1e-9 * hi);
    }

    #[test]
    fn anisotropy_red_shifts_every_mode(ar in 1e-3f64..0.999) {
        for n in 1..=4 {
            prop_assert!(lsp_frequency(&material(ar), n).unwrap() < lsp_frequency(&material(1.0), n).unwrap());
        }
    }
}

#[test]
fn anisotropic_peaks_are_separated() {
    let aniso = mode_catalog(&material(0.01), &geometry(14.0), &mech(), 4).unwrap();
    assert!(separated(&aniso).iter().all(|&s| s));
    let iso = mode_catalog(&material(1.0), &geometry(14.0), &mech(), 4).unwrap();
    assert!(separated(&iso).iter().any(|&s| !s));
}

#[test]
fn scattered_green_function_is_passive() {
    for &ar in &[1.0, 0.1, 0.01] {
        for k in 1..=60 {
            let w = 0.01 * f64::from(k) * OMEGA_P;
            let g = greens_tangential(&material(ar), &geometry(14.0), w, DEFAULT_GREENS_NMAX).unwrap();
            assert!(g.value.im >= 0.0, "ar={ar} omega/omega_p={}: {}", w / OMEGA_P, g.value);
        }
    }
}
